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

#ifndef ENDOQ_SCHEDULING_HPP
#define ENDOQ_SCHEDULING_HPP

#include <endoq/problem.hpp>

#include <functional>
#include <vector>

namespace endoq {

inline constexpr int kBruteForceCap = 8;

/// Ceiling of i/k for positive ints.
inline int ceil_div(int i, int k) { return (i + k - 1) / k; }

/**
 * Semi-active check: (i) no machine has an idle gap (per machine the start
 * times are exactly 0..load-1) and (ii) machine loads differ by at most one.
 * Plans with overlapping slots are not semi-active.
 */
inline bool is_semi_active(const SchedulingPlan& plan)
{
    if (plan.machines < 1) {
        return false;
    }
    std::vector<std::vector<bool>> used(static_cast<std::size_t>(plan.machines));
    std::vector<int> load(static_cast<std::size_t>(plan.machines), 0);
    for (const SchedulingPlan::Slot& s : plan.slots) {
        if (s.machine < 1 || s.machine > plan.machines || s.start < 0) {
            return false;
        }
        auto& column = used[static_cast<std::size_t>(s.machine - 1)];
        if (column.size() <= static_cast<std::size_t>(s.start)) {
            column.resize(static_cast<std::size_t>(s.start) + 1, false);
        }
        if (column[static_cast<std::size_t>(s.start)]) {
            return false;
        }
        column[static_cast<std::size_t>(s.start)] = true;
        ++load[static_cast<std::size_t>(s.machine - 1)];
    }
    int min_load = static_cast<int>(plan.slots.size());
    int max_load = 0;
    for (int k = 0; k < plan.machines; ++k) {
        const auto& column = used[static_cast<std::size_t>(k)];
        if (static_cast<int>(column.size()) != load[static_cast<std::size_t>(k)]) {
            return false; // a gap: highest start exceeds load-1
        }
        min_load = std::min(min_load, load[static_cast<std::size_t>(k)]);
        max_load = std::max(max_load, load[static_cast<std::size_t>(k)]);
    }
    return max_load - min_load <= 1;
}

/**
 * Total cost of a plan for coalition S: sum of w_i * (s(i) + 1) over members,
 * plus machines * b when charge_machines is set.  The plan must cover S and
 * assign distinct slots.
 */
inline Scalar plan_cost(const QueueingProblem& problem, Coalition s,
                        const SchedulingPlan& plan, bool charge_machines)
{
    detail::machine_start_sets(plan); // validates slot ranges and distinctness
    if (!plan.covers(s)) {
        throw std::invalid_argument("plan does not cover the coalition");
    }
    Scalar total = 0;
    for (int agent : s.members()) {
        total += problem.weight(agent) * (plan.start_of(agent) + 1);
    }
    if (charge_machines) {
        total += Scalar(plan.machines) * problem.machine_cost();
    }
    return total;
}

/**
 * Cost of serving S optimally on exactly k machines:
 *   C(S, k) = k*b + sum_{i=1}^{|S|} ceil(i/k) * w^S_i.
 * k may exceed |S| (the extra machines are paid and idle), so cost sweeps
 * are total functions of k.  For empty S this is just k*b.
 */
inline Scalar fixed_machine_cost(const QueueingProblem& problem, Coalition s, int k)
{
    if (k < 1) {
        throw std::invalid_argument("machine count must be at least 1");
    }
    Scalar total = Scalar(k) * problem.machine_cost();
    const int q = s.size();
    for (int i = 1; i <= q; ++i) {
        total += Scalar(ceil_div(i, k)) * problem.restricted_weight(s, i);
    }
    return total;
}

/**
 * Threshold r^w_S(k) for 2 <= k <= |S|: the machine cost below which serving
 * S on k machines beats k-1 machines,
 *   r^w_S(k) = w^S_k + sum_{i=k+1}^{|S|} (ceil(i/(k-1)) - ceil(i/k)) * w^S_i.
 */
inline Scalar threshold(const QueueingProblem& problem, Coalition s, int k)
{
    const int q = s.size();
    if (k < 2 || k > q) {
        throw std::invalid_argument("threshold defined for 2 <= k <= |S|");
    }
    Scalar r = problem.restricted_weight(s, k);
    for (int i = k + 1; i <= q; ++i) {
        r += Scalar(ceil_div(i, k - 1) - ceil_div(i, k)) *
             problem.restricted_weight(s, i);
    }
    return r;
}

/// Thresholds r^w_S(2..|S|); entry j holds r^w_S(j + 2).
inline std::vector<Scalar> threshold_table(const QueueingProblem& problem, Coalition s)
{
    std::vector<Scalar> table;
    for (int k = 2; k <= s.size(); ++k) {
        table.push_back(threshold(problem, s, k));
    }
    return table;
}

/**
 * Optimal number of machines for S: the largest k with r^w_S(k) > b, and 1
 * when even r^w_S(2) <= b.  Thresholds are non-increasing in k, so this is
 * the smallest minimizer of fixed_machine_cost(S, .) (ties go to fewer
 * machines).
 */
inline int optimal_machine_count(const QueueingProblem& problem, Coalition s)
{
    if (s.empty()) {
        throw std::invalid_argument("optimal machine count needs a non-empty coalition");
    }
    int best = 1;
    for (int k = 2; k <= s.size(); ++k) {
        if (threshold(problem, s, k) > problem.machine_cost()) {
            best = k;
        }
    }
    return best;
}

struct BruteForceResult {
    Scalar cost;
    SchedulingPlan plan;
};

namespace detail {

// Slot capacity per period for q jobs spread over m machines with balanced
// loads: every complete assignment fills each period exactly to capacity.
inline std::vector<int> period_capacities(int q, int m)
{
    const int lo = q / m;
    const int rem = q % m;
    std::vector<int> cap(static_cast<std::size_t>(lo), m);
    if (rem > 0) {
        cap.push_back(rem);
    }
    return cap;
}

} // namespace detail

/**
 * Exhaustive oracle: minimal waiting cost of serving S with exactly m
 * machines over all semi-active plans, found by enumerating every
 * assignment of members to periods (machine symmetry quotiented away by
 * filling period t's agents onto machines 1..capacity(t)).
 */
inline BruteForceResult brute_force_best_waiting(const QueueingProblem& problem,
                                                 Coalition s, int m)
{
    const std::vector<int> members = s.members();
    const int q = static_cast<int>(members.size());
    if (q == 0 || m < 1) {
        throw std::invalid_argument("brute force needs a non-empty coalition and m >= 1");
    }
    if (q > kBruteForceCap) {
        throw cap_exceeded("brute-force enumeration capped at " +
                           std::to_string(kBruteForceCap) + " agents");
    }
    std::vector<int> cap = detail::period_capacities(q, std::min(m, q));
    std::vector<int> assigned(static_cast<std::size_t>(q), 0);
    std::vector<int> best_assigned;
    Scalar best = -1;

    const std::function<void(int, Scalar)> recurse = [&](int idx, Scalar waiting) {
        if (idx == q) {
            if (best < 0 || waiting < best) {
                best = waiting;
                best_assigned = assigned;
            }
            return;
        }
        const Scalar& w = problem.weight(members[static_cast<std::size_t>(idx)]);
        for (int t = 0; t < static_cast<int>(cap.size()); ++t) {
            if (cap[static_cast<std::size_t>(t)] == 0) {
                continue;
            }
            --cap[static_cast<std::size_t>(t)];
            assigned[static_cast<std::size_t>(idx)] = t;
            recurse(idx + 1, waiting + w * (t + 1));
            ++cap[static_cast<std::size_t>(t)];
        }
    };
    recurse(0, Scalar(0));

    SchedulingPlan plan;
    plan.machines = m;
    std::vector<int> next_machine(detail::period_capacities(q, std::min(m, q)).size(), 1);
    for (int t = 0; t < static_cast<int>(next_machine.size()); ++t) {
        for (int idx = 0; idx < q; ++idx) {
            if (best_assigned[static_cast<std::size_t>(idx)] == t) {
                plan.slots.push_back({members[static_cast<std::size_t>(idx)],
                                      next_machine[static_cast<std::size_t>(t)]++, t});
            }
        }
    }
    std::sort(plan.slots.begin(), plan.slots.end(),
              [](const auto& a, const auto& b) { return a.agent < b.agent; });
    return {best, plan};
}

/**
 * Exhaustive oracle for the full optimization: minimal total cost (waiting
 * plus m*b) over m in 1..max_machines and all semi-active plans, together
 * with one optimal plan.  Ties prefer fewer machines.
 */
inline BruteForceResult brute_force_min_cost(const QueueingProblem& problem,
                                             Coalition s, int max_machines)
{
    if (max_machines < 1) {
        throw std::invalid_argument("max_machines must be at least 1");
    }
    BruteForceResult best{Scalar(-1), {}};
    for (int m = 1; m <= max_machines; ++m) {
        BruteForceResult r = brute_force_best_waiting(problem, s, m);
        r.cost += Scalar(m) * problem.machine_cost();
        if (best.cost < 0 || r.cost < best.cost) {
            best = std::move(r);
        }
    }
    return best;
}

} // namespace endoq

#endif // ENDOQ_SCHEDULING_HPP
