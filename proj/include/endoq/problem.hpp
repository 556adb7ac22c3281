// Copyright 2026 the endoq authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ENDOQ_PROBLEM_HPP
#define ENDOQ_PROBLEM_HPP

#include <endoq/coalition.hpp>
#include <endoq/rational.hpp>

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

namespace endoq {

/**
 * A queueing problem: n agents with one unit job each, waiting weights
 * w_1 >= w_2 >= ... >= w_n > 0, and a per-machine cost b >= 0.  Every job
 * takes one period; an agent started in period s pays w_i * (s + 1).
 */
class QueueingProblem {
public:
    QueueingProblem(std::vector<Scalar> weights, Scalar machine_cost)
        : w_(std::move(weights)), b_(std::move(machine_cost))
    {
        if (w_.empty()) {
            throw std::invalid_argument("queueing problem needs at least one agent");
        }
        for (std::size_t i = 0; i < w_.size(); ++i) {
            if (w_[i] <= 0) {
                throw std::invalid_argument("weights must be positive");
            }
            if (i > 0 && w_[i] > w_[i - 1]) {
                throw std::invalid_argument("weights must be non-increasing");
            }
        }
        if (b_ < 0) {
            throw std::invalid_argument("machine cost must be non-negative");
        }
    }

    int n() const { return static_cast<int>(w_.size()); }
    const Scalar& machine_cost() const { return b_; }
    const std::vector<Scalar>& weights() const { return w_; }

    // Weight of agent i (1-based rank).
    const Scalar& weight(int agent) const
    {
        if (agent < 1 || agent > n()) {
            throw std::out_of_range("agent index out of range");
        }
        return w_[static_cast<std::size_t>(agent - 1)];
    }

    Coalition grand_coalition() const { return Coalition::full(n()); }

    // k-th largest weight within S (w^S_k).  Members keep the global order,
    // so this is the weight of the k-th member of S by increasing index.
    const Scalar& restricted_weight(Coalition s, int k) const
    {
        const std::vector<int> ms = s.members();
        if (k < 1 || k > static_cast<int>(ms.size())) {
            throw std::out_of_range("restricted weight index out of range");
        }
        return weight(ms[static_cast<std::size_t>(k - 1)]);
    }

    // k-th largest weight among agents outside T (w^{-T}_k).
    const Scalar& complement_weight(Coalition t, int k) const
    {
        return restricted_weight(grand_coalition().minus(t), k);
    }

private:
    std::vector<Scalar> w_;
    Scalar b_;
};

/**
 * A scheduling plan over machines 1..machines: each covered agent holds one
 * (machine, start period) slot and no two agents share a slot.
 */
struct SchedulingPlan {
    struct Slot {
        int agent = 0;
        int machine = 1;
        int start = 0;
    };

    int machines = 1;
    std::vector<Slot> slots;

    const Slot* find(int agent) const
    {
        for (const Slot& s : slots) {
            if (s.agent == agent) {
                return &s;
            }
        }
        return nullptr;
    }

    int start_of(int agent) const
    {
        const Slot* s = find(agent);
        if (s == nullptr) {
            throw std::invalid_argument("plan does not cover agent " +
                                        std::to_string(agent));
        }
        return s->start;
    }

    int machine_of(int agent) const
    {
        const Slot* s = find(agent);
        if (s == nullptr) {
            throw std::invalid_argument("plan does not cover agent " +
                                        std::to_string(agent));
        }
        return s->machine;
    }

    Coalition covered() const
    {
        Coalition c;
        for (const Slot& s : slots) {
            c = c.with(s.agent);
        }
        return c;
    }

    bool covers(Coalition s) const { return s.subset_of(covered()); }
};

namespace detail {

// Start times used per machine, indexed by machine - 1.
inline std::vector<std::vector<int>> machine_start_sets(const SchedulingPlan& plan)
{
    std::vector<std::vector<int>> starts(static_cast<std::size_t>(plan.machines));
    for (const SchedulingPlan::Slot& s : plan.slots) {
        if (s.machine < 1 || s.machine > plan.machines || s.start < 0) {
            throw std::invalid_argument("plan slot outside machine/period range");
        }
        starts[static_cast<std::size_t>(s.machine - 1)].push_back(s.start);
    }
    for (auto& v : starts) {
        std::sort(v.begin(), v.end());
        for (std::size_t t = 0; t + 1 < v.size(); ++t) {
            if (v[t] == v[t + 1]) {
                throw std::invalid_argument("two agents share a machine slot");
            }
        }
    }
    return starts;
}

// No idle gaps: each machine's start times are exactly 0..load-1.
inline bool has_prefix_starts(const SchedulingPlan& plan)
{
    for (const auto& v : machine_start_sets(plan)) {
        for (std::size_t t = 0; t < v.size(); ++t) {
            if (v[t] != static_cast<int>(t)) {
                return false;
            }
        }
    }
    return true;
}

} // namespace detail

/**
 * An initial position for the requeueing games: a queueing problem together
 * with an initial schedule sigma0 on m0 machines covering every agent.
 * sigma0 must be semi-active: no idle gaps and machine loads differing by at
 * most one, with every machine in 1..m0 actually used.
 */
class RequeueingProblem {
public:
    RequeueingProblem(QueueingProblem base, int m0, SchedulingPlan sigma0)
        : base_(std::move(base)), m0_(m0), sigma0_(std::move(sigma0))
    {
        const int n = base_.n();
        if (m0_ < 1 || m0_ > n) {
            throw std::invalid_argument("initial machine count must be in 1..n");
        }
        if (sigma0_.machines != m0_) {
            throw std::invalid_argument("sigma0 must use exactly m0 machines");
        }
        if (static_cast<int>(sigma0_.slots.size()) != n ||
            sigma0_.covered() != base_.grand_coalition()) {
            throw std::invalid_argument("sigma0 must cover every agent exactly once");
        }
        const auto starts = detail::machine_start_sets(sigma0_);
        std::size_t min_load = sigma0_.slots.size();
        std::size_t max_load = 0;
        for (const auto& v : starts) {
            min_load = std::min(min_load, v.size());
            max_load = std::max(max_load, v.size());
            for (std::size_t t = 0; t < v.size(); ++t) {
                if (v[t] != static_cast<int>(t)) {
                    throw std::invalid_argument("sigma0 has an idle gap");
                }
            }
        }
        if (min_load == 0) {
            throw std::invalid_argument("sigma0 leaves a machine unused");
        }
        if (max_load - min_load > 1) {
            throw std::invalid_argument("sigma0 machine loads differ by more than one");
        }
        machine0_.assign(static_cast<std::size_t>(n) + 1, 0);
        start0_.assign(static_cast<std::size_t>(n) + 1, 0);
        for (const SchedulingPlan::Slot& s : sigma0_.slots) {
            machine0_[static_cast<std::size_t>(s.agent)] = s.machine;
            start0_[static_cast<std::size_t>(s.agent)] = s.start;
        }
    }

    const QueueingProblem& base() const { return base_; }
    int n() const { return base_.n(); }
    int m0() const { return m0_; }
    const SchedulingPlan& sigma0() const { return sigma0_; }

    int machine0(int agent) const { return machine0_[static_cast<std::size_t>(agent)]; }
    int start0(int agent) const { return start0_[static_cast<std::size_t>(agent)]; }

    // Agents initially scheduled on the given machine.
    Coalition machine_users(int machine) const
    {
        Coalition c;
        for (const SchedulingPlan::Slot& s : sigma0_.slots) {
            if (s.machine == machine) {
                c = c.with(s.agent);
            }
        }
        return c;
    }

private:
    QueueingProblem base_;
    int m0_;
    SchedulingPlan sigma0_;
    std::vector<int> machine0_;
    std::vector<int> start0_;
};

/**
 * Builds the canonical balanced initial schedule: the given service order is
 * dealt over machines 1..m0 round-robin (machine 1 first within each period),
 * so the r-th agent in the order starts period (r-1)/m0 on machine
 * (r-1)%m0+1.  `order` must be a permutation of 1..n.
 */
inline RequeueingProblem round_robin_requeueing(QueueingProblem problem, int m0,
                                                const std::vector<int>& order)
{
    const int n = problem.n();
    if (m0 < 1 || m0 > n) {
        throw std::invalid_argument("initial machine count must be in 1..n");
    }
    if (static_cast<int>(order.size()) != n) {
        throw std::invalid_argument("service order must list every agent once");
    }
    std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
    for (int a : order) {
        if (a < 1 || a > n || seen[static_cast<std::size_t>(a)]) {
            throw std::invalid_argument("service order must be a permutation of 1..n");
        }
        seen[static_cast<std::size_t>(a)] = true;
    }
    SchedulingPlan plan;
    plan.machines = m0;
    for (int r = 1; r <= n; ++r) {
        plan.slots.push_back(
            {order[static_cast<std::size_t>(r - 1)], (r - 1) % m0 + 1, (r - 1) / m0});
    }
    return RequeueingProblem(std::move(problem), m0, std::move(plan));
}

} // namespace endoq

#endif // ENDOQ_PROBLEM_HPP
