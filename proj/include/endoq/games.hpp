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

#ifndef ENDOQ_GAMES_HPP
#define ENDOQ_GAMES_HPP

#include <endoq/detail/requeue_search.hpp>
#include <endoq/game_table.hpp>
#include <endoq/problem.hpp>
#include <endoq/scheduling.hpp>

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace endoq {

// Requeueing values are computed by exhaustive search; above this many agents
// the table builders refuse instead of silently taking hours.
inline constexpr int kEnumerationCap = 8;

// ---------------------------------------------------------------------------
// Cost games.
// ---------------------------------------------------------------------------

// Stand-alone cost of every coalition: members pick their own machine count.
inline GameTable queueing_cost_game(const QueueingProblem& problem)
{
    GameTable table(GameKind::cost, problem.n());
    for (Coalition s : all_coalitions(problem.n())) {
        Scalar best = fixed_machine_cost(problem, s, 1);
        for (int k = 2; k <= s.size(); ++k) {
            const Scalar c = fixed_machine_cost(problem, s, k);
            if (c < best) {
                best = c;
            }
        }
        table.set(s, best);
    }
    return table;
}

// Stand-alone cost minus the waiting costs a coalition's departure spares the
// outsiders, who close ranks behind it on a single machine.  Meaningful when
// the machine cost is high enough that every coalition queues on one machine;
// below that threshold the table still evaluates but carries a warning.
inline GameTable reduced_cost_game(const QueueingProblem& problem)
{
    const GameTable base = queueing_cost_game(problem);
    const int n = problem.n();
    GameTable table(GameKind::cost, n);
    for (Coalition t : all_coalitions(n)) {
        Scalar worth = base.at(t);
        for (int i = 1; i <= n - t.size() - 1; ++i) {
            worth -= Scalar(i) * problem.complement_weight(t, i + 1);
        }
        table.set(t, worth);
    }
    if (n >= 2 &&
        problem.machine_cost() < threshold(problem, problem.grand_coalition(), 2)) {
        table.set_warning(
            "machine cost is below the two-machine threshold, so coalitions may "
            "prefer several machines and the single-queue reduction loses its "
            "guarantees");
    }
    return table;
}

// ---------------------------------------------------------------------------
// Private requeueing: a coalition may buy machines for its own exclusive use
// and sell machines it fully occupies, while agents outside it keep their
// machine and must not be disturbed beyond what the variant tolerates.
// ---------------------------------------------------------------------------

/**
 * Checks a concrete plan against the private rearrangement rules:
 *   (a) outsiders stay on their initial machine,
 *   (b) swaps: no outsider starts later than initially;
 *       no_swaps: no outsider gains a predecessor she did not already have,
 *   (c) a machine may disappear only if the coalition held all of its slots.
 *
 * The plan must cover all agents, one per slot, with no idle gaps.  When the
 * plan has fewer machines than sigma0 the surviving initial machines are, by
 * default, 1..plan.machines; pass `removed` to name the dropped initial
 * machines explicitly (surviving ones are then renumbered in increasing
 * order, and any extra plan machines beyond them are new purchases).
 */
inline bool is_admissible_private(const RequeueingProblem& rq, Coalition T,
                                  const SchedulingPlan& plan, Variant variant,
                                  std::vector<int> removed = {})
{
    const int n = rq.n();
    if (static_cast<int>(plan.slots.size()) != n ||
        plan.covered() != rq.base().grand_coalition()) {
        throw std::invalid_argument("plan must cover every agent exactly once");
    }
    if (!detail::has_prefix_starts(plan)) {
        throw std::invalid_argument("plan has an idle gap or shared slot");
    }

    if (removed.empty() && plan.machines < rq.m0()) {
        for (int j = plan.machines + 1; j <= rq.m0(); ++j) {
            removed.push_back(j);
        }
    }
    std::sort(removed.begin(), removed.end());
    for (std::size_t c = 0; c < removed.size(); ++c) {
        if (removed[c] < 1 || removed[c] > rq.m0() ||
            (c > 0 && removed[c] == removed[c - 1])) {
            throw std::invalid_argument("removed machines must be distinct initial machines");
        }
    }
    const int surviving = rq.m0() - static_cast<int>(removed.size());
    if (plan.machines < surviving) {
        throw std::invalid_argument("plan drops machines not listed as removed");
    }

    for (int j : removed) {
        if (!rq.machine_users(j).subset_of(T)) {
            return false;
        }
    }

    // Plan machines 1..surviving are the remaining initial machines in order;
    // higher ids are newly bought.
    std::vector<int> original_of(static_cast<std::size_t>(surviving) + 1, 0);
    {
        int next = 1;
        for (int j = 1; j <= rq.m0(); ++j) {
            if (!std::binary_search(removed.begin(), removed.end(), j)) {
                original_of[static_cast<std::size_t>(next++)] = j;
            }
        }
    }

    for (int i = 1; i <= n; ++i) {
        if (T.contains(i)) {
            continue;
        }
        const int p = plan.machine_of(i);
        if (p > surviving || original_of[static_cast<std::size_t>(p)] != rq.machine0(i)) {
            return false;
        }
        if (variant == Variant::swaps) {
            if (plan.start_of(i) > rq.start0(i)) {
                return false;
            }
        } else {
            for (int j = 1; j <= n; ++j) {
                if (j == i || plan.machine_of(j) != p ||
                    plan.start_of(j) >= plan.start_of(i)) {
                    continue;
                }
                const bool was_before = rq.machine0(j) == rq.machine0(i) &&
                                        rq.start0(j) < rq.start0(i);
                if (!was_before) {
                    return false;
                }
            }
        }
    }
    return true;
}

namespace detail {

inline void check_enumeration_cap(int n, const char* what)
{
    if (n > kEnumerationCap) {
        throw cap_exceeded(std::string(what) +
                           " is limited to " + std::to_string(kEnumerationCap) +
                           " agents (got " + std::to_string(n) +
                           "); the caps are documented in the README");
    }
}

} // namespace detail

// Best achievable savings for T: waiting costs its members shed, minus the
// bill for extra machines, plus full proceeds for machines it sells.
inline Scalar private_requeueing_value(const RequeueingProblem& rq, Coalition T,
                                       Variant variant)
{
    detail::check_enumeration_cap(rq.n(), "private requeueing enumeration");
    if (T.empty()) {
        return Scalar(0);
    }
    detail::RequeueContext<long long> ictx;
    Scalar scale;
    if (detail::make_integer_context(rq, ictx, scale)) {
        detail::PrivateSearch<long long> search(ictx, T, variant);
        return Scalar(search.value()) / scale;
    }
    const detail::RequeueContext<Scalar> rctx = detail::make_rational_context(rq);
    detail::PrivateSearch<Scalar> search(rctx, T, variant);
    return search.value();
}

inline GameTable private_requeueing_game(const RequeueingProblem& rq, Variant variant)
{
    detail::check_enumeration_cap(rq.n(), "private requeueing enumeration");
    GameTable table(GameKind::value, rq.n());
    detail::RequeueContext<long long> ictx;
    Scalar scale;
    if (detail::make_integer_context(rq, ictx, scale)) {
        for (Coalition t : all_coalitions(rq.n())) {
            detail::PrivateSearch<long long> search(ictx, t, variant);
            table.set(t, Scalar(search.value()) / scale);
        }
        return table;
    }
    const detail::RequeueContext<Scalar> rctx = detail::make_rational_context(rq);
    for (Coalition t : all_coalitions(rq.n())) {
        detail::PrivateSearch<Scalar> search(rctx, t, variant);
        table.set(t, search.value());
    }
    return table;
}

// ---------------------------------------------------------------------------
// Public requeueing: machine changes shift the whole queue along a fixed
// priority order, and a coalition can only reorder its own members around
// that shift.
// ---------------------------------------------------------------------------

// Serving priority induced by sigma0: earlier start first, lower machine
// number breaking ties.
struct PriorityOrder {
    std::vector<int> rank;   // by agent, 1-based; rank[0] unused
    std::vector<int> agent;  // by rank, 1-based; agent[0] unused

    int size() const { return static_cast<int>(agent.size()) - 1; }

    int rank_of(int i) const
    {
        if (i < 1 || i >= static_cast<int>(rank.size())) {
            throw std::out_of_range("agent index out of range");
        }
        return rank[static_cast<std::size_t>(i)];
    }

    int agent_at(int r) const
    {
        if (r < 1 || r >= static_cast<int>(agent.size())) {
            throw std::out_of_range("priority rank out of range");
        }
        return agent[static_cast<std::size_t>(r)];
    }
};

inline PriorityOrder priority_order(const RequeueingProblem& rq)
{
    const int n = rq.n();
    PriorityOrder pi;
    pi.agent.resize(static_cast<std::size_t>(n) + 1, 0);
    pi.rank.resize(static_cast<std::size_t>(n) + 1, 0);
    std::vector<int> agents(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        agents[static_cast<std::size_t>(i - 1)] = i;
    }
    std::sort(agents.begin(), agents.end(), [&rq](int a, int b) {
        if (rq.start0(a) != rq.start0(b)) {
            return rq.start0(a) < rq.start0(b);
        }
        return rq.machine0(a) < rq.machine0(b);
    });
    for (int r = 1; r <= n; ++r) {
        const int a = agents[static_cast<std::size_t>(r - 1)];
        pi.agent[static_cast<std::size_t>(r)] = a;
        pi.rank[static_cast<std::size_t>(a)] = r;
    }
    return pi;
}

// Round-robin layout of the priority queue on k machines: rank p is served in
// period ceil(p/k)-1 on machine ((p-1) mod k)+1.
inline SchedulingPlan public_requeue_grid(const PriorityOrder& pi, int k)
{
    if (k < 1) {
        throw std::invalid_argument("machine count must be at least 1");
    }
    SchedulingPlan plan;
    plan.machines = k;
    for (int p = 1; p <= pi.size(); ++p) {
        plan.slots.push_back({pi.agent_at(p), (p - 1) % k + 1, (p - 1) / k});
    }
    return plan;
}

namespace detail {

// Value of forcing T onto k machines, in context units.  T's members are
// assigned to T's own slots, once around the initial schedule and once around
// the k-machine grid, and the better occasion wins; under swaps the two
// assignment problems coincide.  A sale (k < m0) must already be known
// feasible by the caller.
template <class Num>
Num public_value_k(const RequeueContext<Num>& ctx, const PriorityOrder& pi,
                   Coalition T, int k, Variant variant)
{
    const std::vector<int> members = T.members();
    const std::size_t tsize = members.size();

    AssignmentSearch<Num> search;
    std::vector<int> order(members);
    std::sort(order.begin(), order.end(), [&ctx](int a, int b) {
        return ctx.w[static_cast<std::size_t>(b)] < ctx.w[static_cast<std::size_t>(a)];
    });
    for (int a : order) {
        search.weight.push_back(ctx.w[static_cast<std::size_t>(a)]);
        search.start0.push_back(ctx.start0[static_cast<std::size_t>(a)]);
    }

    std::vector<int> ranks;
    for (int a : members) {
        ranks.push_back(pi.rank_of(a));
    }
    std::sort(ranks.begin(), ranks.end());
    for (int r : ranks) {
        search.slot_time.push_back((r - 1) / k);
    }

    const std::uint32_t everyone =
        tsize == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << tsize) - 1;
    Num gain{};
    if (variant == Variant::swaps) {
        search.elig.assign(tsize, everyone);
        search.solve(gain);
    } else {
        // Approaching an outsider from behind is allowed only for members
        // whose reference slot already preceded her on her machine; the
        // binding outsider is the next one downstream of the slot.
        const auto eligibility = [&](auto&& slot_machine, auto&& slot_time,
                                     auto&& agent_machine, auto&& agent_time) {
            std::vector<std::uint32_t> elig;
            for (int r : ranks) {
                const int jm = slot_machine(r);
                const int jt = slot_time(r);
                int limit = -1;
                for (int o = 1; o <= ctx.n; ++o) {
                    if (T.contains(o) || agent_machine(o) != jm ||
                        agent_time(o) <= jt) {
                        continue;
                    }
                    if (limit < 0 || agent_time(o) < limit) {
                        limit = agent_time(o);
                    }
                }
                std::uint32_t mask = 0;
                for (std::size_t x = 0; x < order.size(); ++x) {
                    const int a = order[x];
                    if (limit < 0 ||
                        (agent_machine(a) == jm && agent_time(a) < limit)) {
                        mask |= std::uint32_t{1} << x;
                    }
                }
                elig.push_back(mask);
            }
            return elig;
        };

        search.elig = eligibility(
            [k](int r) { return (r - 1) % k + 1; },
            [k](int r) { return (r - 1) / k; },
            [&](int a) { return (pi.rank_of(a) - 1) % k + 1; },
            [&](int a) { return (pi.rank_of(a) - 1) / k; });
        Num around_grid{};
        const bool grid_ok = search.solve(around_grid);

        search.elig = eligibility(
            [&](int r) { return ctx.machine0[static_cast<std::size_t>(pi.agent_at(r))]; },
            [&](int r) { return ctx.start0[static_cast<std::size_t>(pi.agent_at(r))]; },
            [&](int a) { return ctx.machine0[static_cast<std::size_t>(a)]; },
            [&](int a) { return ctx.start0[static_cast<std::size_t>(a)]; });
        Num around_initial{};
        const bool initial_ok = search.solve(around_initial);

        gain = grid_ok ? around_grid : around_initial;
        if (initial_ok && grid_ok && gain < around_initial) {
            gain = around_initial;
        }
    }

    if (k >= ctx.m0) {
        return gain - ctx.b * (k - ctx.m0);
    }
    return gain + ctx.b_over_n * (static_cast<int>(tsize) * (ctx.m0 - k));
}

inline int sellable_machines(const RequeueingProblem& rq, Coalition T)
{
    int owned = 0;
    for (int j = 1; j <= rq.m0(); ++j) {
        if (rq.machine_users(j).subset_of(T)) {
            ++owned;
        }
    }
    return owned;
}

} // namespace detail

// Value of forcing coalition T onto exactly k machines.  Selling down to
// k < m0 credits each member 1/n of the freed machines' worth and is possible
// only when T fully occupies m0-k machines; otherwise the value is 0.
inline Scalar public_value_fixed(const RequeueingProblem& rq, Coalition T, int k,
                                 Variant variant)
{
    if (k < 1 || k > rq.n()) {
        throw std::invalid_argument("machine count must be in 1..n");
    }
    if (T.empty()) {
        return Scalar(0);
    }
    if (k < rq.m0() && detail::sellable_machines(rq, T) < rq.m0() - k) {
        return Scalar(0);
    }
    const PriorityOrder pi = priority_order(rq);
    detail::RequeueContext<long long> ictx;
    Scalar scale;
    if (detail::make_integer_context(rq, ictx, scale)) {
        return Scalar(detail::public_value_k(ictx, pi, T, k, variant)) / scale;
    }
    const detail::RequeueContext<Scalar> rctx = detail::make_rational_context(rq);
    return detail::public_value_k(rctx, pi, T, k, variant);
}

inline Scalar public_requeueing_value(const RequeueingProblem& rq, Coalition T,
                                      Variant variant)
{
    Scalar best = 0;
    for (int k = 1; k <= rq.n(); ++k) {
        const Scalar v = public_value_fixed(rq, T, k, variant);
        if (v > best) {
            best = v;
        }
    }
    return best;
}

inline GameTable public_requeueing_game(const RequeueingProblem& rq, Variant variant)
{
    detail::check_enumeration_cap(rq.n(), "public requeueing enumeration");
    GameTable table(GameKind::value, rq.n());
    for (Coalition t : all_coalitions(rq.n())) {
        table.set(t, public_requeueing_value(rq, t, variant));
    }
    return table;
}

// ---------------------------------------------------------------------------
// Relaxed public game: sales never need consent and pay out in full, so the
// value of any machine count is a closed form in the priority ranks.
// ---------------------------------------------------------------------------

inline Scalar relaxed_public_value(const RequeueingProblem& rq, Coalition T, int k)
{
    if (k < 1 || k > rq.n()) {
        throw std::invalid_argument("machine count must be in 1..n");
    }
    const PriorityOrder pi = priority_order(rq);
    Scalar v = rq.base().machine_cost() * (rq.m0() - k);
    for (int i : T.members()) {
        const int r = pi.rank_of(i);
        v += Scalar(ceil_div(r, rq.m0()) - ceil_div(r, k)) * rq.base().weight(i);
    }
    return v;
}

struct RelaxedBest {
    Scalar value;
    int machines = 1;  // lowest maximizing machine count
};

inline RelaxedBest relaxed_public_best(const RequeueingProblem& rq, Coalition T)
{
    RelaxedBest best{relaxed_public_value(rq, T, 1), 1};
    for (int k = 2; k <= rq.n(); ++k) {
        const Scalar v = relaxed_public_value(rq, T, k);
        if (v > best.value) {
            best = {v, k};
        }
    }
    return best;
}

inline GameTable relaxed_public_game(const RequeueingProblem& rq)
{
    GameTable table(GameKind::value, rq.n());
    for (Coalition t : all_coalitions(rq.n())) {
        table.set(t, relaxed_public_best(rq, t).value);
    }
    return table;
}

} // namespace endoq

#endif // ENDOQ_GAMES_HPP
