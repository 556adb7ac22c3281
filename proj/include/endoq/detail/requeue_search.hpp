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

#ifndef ENDOQ_DETAIL_REQUEUE_SEARCH_HPP
#define ENDOQ_DETAIL_REQUEUE_SEARCH_HPP

#include <endoq/game_table.hpp>
#include <endoq/problem.hpp>

#include <algorithm>
#include <cstdint>
#include <vector>

namespace endoq::detail {

// The requeueing searches are exact but hot, so they run on a numeric type
// parameter: long long over an LCM-scaled copy of the weights when a
// magnitude guard passes, exact rationals otherwise.  Admissibility
// constraints are per-machine (an outsider's conditions only mention agents
// sharing her machine) and coalition savings are additive across members,
// which is what makes the per-machine decomposition below exhaustive.
template <class Num>
struct RequeueContext {
    int n = 0;
    int m0 = 1;
    std::vector<Num> w;            // by agent, 1-based
    Num b{};
    Num b_over_n{};                // exact: the scale is a multiple of n
    std::vector<int> start0;       // by agent, 1-based
    std::vector<int> machine0;     // by agent, 1-based
    std::vector<Coalition> users;  // by machine, 1-based
    std::vector<Coalition> pred0;  // by agent: original same-machine predecessors
};

inline constexpr long long kScaledMagnitudeCap = 1ll << 40;

// Try to express x*scale as a long long within the magnitude cap.
inline bool scaled_fits(const Scalar& x, const BigInt& scale, long long& out)
{
    const BigInt v = numerator(x) * (scale / denominator(x));
    if (v > kScaledMagnitudeCap || v < -kScaledMagnitudeCap) {
        return false;
    }
    out = v.convert_to<long long>();
    return true;
}

// Common denominator of the weights and machine cost, times n (so that the
// per-capita machine-credit b/n stays integral after scaling).
inline BigInt common_scale(const RequeueingProblem& rq)
{
    BigInt l = rq.n();
    const auto fold = [&l](const Scalar& x) {
        const BigInt d = denominator(x);
        l = l / gcd(l, d) * d;
    };
    for (int i = 1; i <= rq.n(); ++i) {
        fold(rq.base().weight(i));
    }
    fold(rq.base().machine_cost());
    return l;
}

template <class Num>
RequeueContext<Num> make_context(const RequeueingProblem& rq, const Num& scale_unused);

// Exact-rational context (scale 1).
inline RequeueContext<Scalar> make_rational_context(const RequeueingProblem& rq)
{
    RequeueContext<Scalar> ctx;
    ctx.n = rq.n();
    ctx.m0 = rq.m0();
    ctx.w.assign(static_cast<std::size_t>(ctx.n) + 1, Scalar(0));
    for (int i = 1; i <= ctx.n; ++i) {
        ctx.w[static_cast<std::size_t>(i)] = rq.base().weight(i);
    }
    ctx.b = rq.base().machine_cost();
    ctx.b_over_n = ctx.b / ctx.n;
    ctx.start0.assign(static_cast<std::size_t>(ctx.n) + 1, 0);
    ctx.machine0.assign(static_cast<std::size_t>(ctx.n) + 1, 0);
    ctx.pred0.assign(static_cast<std::size_t>(ctx.n) + 1, Coalition());
    ctx.users.assign(static_cast<std::size_t>(ctx.m0) + 1, Coalition());
    for (int i = 1; i <= ctx.n; ++i) {
        ctx.start0[static_cast<std::size_t>(i)] = rq.start0(i);
        ctx.machine0[static_cast<std::size_t>(i)] = rq.machine0(i);
        ctx.users[static_cast<std::size_t>(rq.machine0(i))] =
            ctx.users[static_cast<std::size_t>(rq.machine0(i))].with(i);
    }
    for (int i = 1; i <= ctx.n; ++i) {
        Coalition pred;
        for (int j = 1; j <= ctx.n; ++j) {
            if (rq.machine0(j) == rq.machine0(i) && rq.start0(j) < rq.start0(i)) {
                pred = pred.with(j);
            }
        }
        ctx.pred0[static_cast<std::size_t>(i)] = pred;
    }
    return ctx;
}

// Scaled-integer context; returns false when the guard fails.
inline bool make_integer_context(const RequeueingProblem& rq,
                                 RequeueContext<long long>& ctx, Scalar& scale_out)
{
    const BigInt scale = common_scale(rq);
    RequeueContext<Scalar> r = make_rational_context(rq);
    ctx.n = r.n;
    ctx.m0 = r.m0;
    ctx.start0 = r.start0;
    ctx.machine0 = r.machine0;
    ctx.users = r.users;
    ctx.pred0 = r.pred0;
    ctx.w.assign(r.w.size(), 0);
    for (std::size_t i = 1; i < r.w.size(); ++i) {
        if (!scaled_fits(r.w[i], scale, ctx.w[i])) {
            return false;
        }
    }
    if (!scaled_fits(r.b, scale, ctx.b)) {
        return false;
    }
    ctx.b_over_n = ctx.b / ctx.n;
    scale_out = Scalar(scale);
    return true;
}

// ---------------------------------------------------------------------------
// Per-machine ordering search.
//
// Given the outsiders pinned to one machine and a subset of coalition members
// joining them, find the best admissible ordering of the whole sequence
// (slots 0,1,2,...).  Every ordering is reached by the recursion; bound
// pruning only discards branches that provably cannot beat the incumbent.
// ---------------------------------------------------------------------------

template <class Num>
struct MachineSearch {
    const RequeueContext<Num>* ctx = nullptr;
    Variant variant = Variant::swaps;

    std::vector<int> agents;     // outsiders first (by start0), then members
    int outsiders = 0;           // prefix of `agents` that is outside T
    std::vector<char> placed;
    Coalition placed_set;
    Num best{};
    bool have_best = false;

    // Upper bound on the gain still collectible from unplaced members if the
    // next free slots start at `slot`: pair remaining weights (descending)
    // with the earliest slots, ignoring outsider constraints.
    Num optimistic(int slot) const
    {
        std::vector<std::pair<Num, int>> rest; // weight, start0
        for (std::size_t i = static_cast<std::size_t>(outsiders); i < agents.size(); ++i) {
            if (!placed[i]) {
                const int a = agents[i];
                rest.push_back({ctx->w[static_cast<std::size_t>(a)],
                                ctx->start0[static_cast<std::size_t>(a)]});
            }
        }
        std::sort(rest.begin(), rest.end(),
                  [](const auto& x, const auto& y) { return y.first < x.first; });
        Num bound{};
        int t = slot;
        for (const auto& [w, s0] : rest) {
            bound += w * (s0 - t);
            ++t;
        }
        return bound;
    }

    void run(int slot, const Num& gain)
    {
        if (static_cast<std::size_t>(slot) == agents.size()) {
            if (!have_best || best < gain) {
                best = gain;
                have_best = true;
            }
            return;
        }
        if (have_best) {
            const Num bound = gain + optimistic(slot);
            if (!(best < bound)) {
                return;
            }
        }
        for (std::size_t i = 0; i < agents.size(); ++i) {
            if (placed[i]) {
                continue;
            }
            const int a = agents[i];
            const bool outsider = static_cast<int>(i) < outsiders;
            if (outsider) {
                if (variant == Variant::swaps) {
                    if (slot > ctx->start0[static_cast<std::size_t>(a)]) {
                        continue;
                    }
                } else if (!placed_set.subset_of(ctx->pred0[static_cast<std::size_t>(a)])) {
                    continue;
                }
            }
            placed[i] = 1;
            placed_set = placed_set.with(a);
            if (outsider) {
                run(slot + 1, gain);
            } else {
                const Num w = ctx->w[static_cast<std::size_t>(a)];
                run(slot + 1,
                    gain + w * (ctx->start0[static_cast<std::size_t>(a)] - slot));
            }
            placed[i] = 0;
            placed_set = placed_set.without(a);
        }
    }
};

template <class Num>
class PrivateSearch {
public:
    PrivateSearch(const RequeueContext<Num>& ctx, Coalition T, Variant variant)
        : ctx_(ctx), t_(T), variant_(variant), members_(T.members())
    {
        const std::size_t size = members_.size();
        fresh_.assign(std::size_t{1} << size, Num{});
        fresh_done_.assign(std::size_t{1} << size, false);
        fresh_done_[0] = true;
    }

    // Best gain from placing exactly `mask` (compact member mask) alone on a
    // new, outsider-free machine: highest weights go first.
    const Num& fresh_value(std::uint32_t mask)
    {
        if (!fresh_done_[mask]) {
            std::vector<std::pair<Num, int>> picked;
            for (std::size_t i = 0; i < members_.size(); ++i) {
                if (mask & (std::uint32_t{1} << i)) {
                    const int a = members_[i];
                    picked.push_back({ctx_.w[static_cast<std::size_t>(a)],
                                      ctx_.start0[static_cast<std::size_t>(a)]});
                }
            }
            std::sort(picked.begin(), picked.end(),
                      [](const auto& x, const auto& y) { return y.first < x.first; });
            Num gain{};
            int t = 0;
            for (const auto& [w, s0] : picked) {
                gain += w * (s0 - t);
                ++t;
            }
            fresh_[mask] = gain;
            fresh_done_[mask] = true;
        }
        return fresh_[mask];
    }

    // Best gain from placing `mask` on original machine j alongside that
    // machine's outsiders.
    Num machine_value(int j, std::uint32_t mask)
    {
        const Coalition outsiders = ctx_.users[static_cast<std::size_t>(j)].minus(t_);
        if (outsiders.empty()) {
            return fresh_value(mask);
        }
        auto& memo = orig_memo_[static_cast<std::size_t>(j)];
        if (memo.empty()) {
            memo.assign(fresh_.size(), Num{});
            orig_done_[static_cast<std::size_t>(j)].assign(fresh_.size(), false);
        }
        if (orig_done_[static_cast<std::size_t>(j)][mask]) {
            return memo[mask];
        }
        MachineSearch<Num> search;
        search.ctx = &ctx_;
        search.variant = variant_;
        for (int a : outsiders.members()) {
            search.agents.push_back(a);
        }
        std::sort(search.agents.begin(), search.agents.end(), [this](int a, int b) {
            return ctx_.start0[static_cast<std::size_t>(a)] <
                   ctx_.start0[static_cast<std::size_t>(b)];
        });
        search.outsiders = static_cast<int>(search.agents.size());
        for (std::size_t i = 0; i < members_.size(); ++i) {
            if (mask & (std::uint32_t{1} << i)) {
                search.agents.push_back(members_[i]);
            }
        }
        search.placed.assign(search.agents.size(), 0);
        search.run(0, Num{});
        memo[mask] = search.best;
        orig_done_[static_cast<std::size_t>(j)][mask] = true;
        return memo[mask];
    }

    // Maximum over admissible plans of coalition savings minus the net
    // machine bill.  Machine counts range over selling 0..(fully owned)
    // machines and buying 0..|T| new ones; which fully-owned machines are
    // sold does not matter (they host no outsiders), so sales are
    // canonicalized to the highest-indexed owned machines.
    Num value()
    {
        orig_memo_.assign(static_cast<std::size_t>(ctx_.m0) + 1, {});
        orig_done_.assign(static_cast<std::size_t>(ctx_.m0) + 1, {});

        std::vector<int> owned;
        for (int j = 1; j <= ctx_.m0; ++j) {
            if (ctx_.users[static_cast<std::size_t>(j)].subset_of(t_)) {
                owned.push_back(j);
            }
        }
        const std::uint32_t fullmask =
            static_cast<std::uint32_t>(fresh_.size()) - 1;
        Num best{};
        bool have_best = false;
        for (int sold = 0; sold <= static_cast<int>(owned.size()); ++sold) {
            if (ctx_.m0 - sold < 1) {
                break;
            }
            std::vector<char> is_sold(static_cast<std::size_t>(ctx_.m0) + 1, 0);
            for (int c = 0; c < sold; ++c) {
                is_sold[static_cast<std::size_t>(owned[owned.size() - 1 -
                                                       static_cast<std::size_t>(c)])] = 1;
            }
            std::vector<Num> dp(fresh_.size());
            std::vector<char> feasible(fresh_.size(), 0);
            feasible[0] = 1;
            for (int j = 1; j <= ctx_.m0; ++j) {
                if (is_sold[static_cast<std::size_t>(j)]) {
                    continue;
                }
                extend(dp, feasible, [&](std::uint32_t sub) { return machine_value(j, sub); });
            }
            for (int bought = 0; bought <= static_cast<int>(members_.size()); ++bought) {
                if (feasible[fullmask]) {
                    const int m = ctx_.m0 - sold + bought;
                    const Num candidate =
                        dp[fullmask] - ctx_.b * (m - ctx_.m0);
                    if (!have_best || best < candidate) {
                        best = candidate;
                        have_best = true;
                    }
                }
                if (bought < static_cast<int>(members_.size())) {
                    extend(dp, feasible,
                           [&](std::uint32_t sub) { return fresh_value(sub); });
                }
            }
        }
        return best;
    }

private:
    template <class Value>
    void extend(std::vector<Num>& dp, std::vector<char>& feasible, Value&& value)
    {
        std::vector<Num> out(dp.size());
        std::vector<char> ok(dp.size(), 0);
        for (std::uint32_t mask = 0; mask < dp.size(); ++mask) {
            // sub = the members this machine takes; the rest came earlier.
            std::uint32_t sub = mask;
            while (true) {
                if (feasible[mask ^ sub]) {
                    const Num candidate = dp[mask ^ sub] + value(sub);
                    if (!ok[mask] || out[mask] < candidate) {
                        out[mask] = candidate;
                        ok[mask] = 1;
                    }
                }
                if (sub == 0) {
                    break;
                }
                sub = (sub - 1) & mask;
            }
        }
        dp = std::move(out);
        feasible = std::move(ok);
    }

    const RequeueContext<Num>& ctx_;
    Coalition t_;
    Variant variant_;
    std::vector<int> members_;
    std::vector<Num> fresh_;
    std::vector<char> fresh_done_;
    std::vector<std::vector<Num>> orig_memo_;
    std::vector<std::vector<char>> orig_done_;
};

// ---------------------------------------------------------------------------
// Assignment search for the public (grid) reorderings: members are matched
// to the coalition's fixed set of priority-rank slots, subject to a per
// (member, slot) eligibility mask.  Exhaustive over eligible bijections with
// the same rearrangement bound as above.
// ---------------------------------------------------------------------------

template <class Num>
struct AssignmentSearch {
    std::vector<Num> weight;           // per member
    std::vector<int> start0;           // per member
    std::vector<int> slot_time;        // per slot, ascending
    std::vector<std::uint32_t> elig;   // per slot: bitmask of members allowed
    std::vector<char> used;
    Num best{};
    bool have_best = false;

    Num optimistic(std::size_t next_slot) const
    {
        std::vector<std::pair<Num, int>> rest;
        for (std::size_t i = 0; i < weight.size(); ++i) {
            if (!used[i]) {
                rest.push_back({weight[i], start0[i]});
            }
        }
        std::sort(rest.begin(), rest.end(),
                  [](const auto& x, const auto& y) { return y.first < x.first; });
        Num bound{};
        std::size_t s = next_slot;
        for (const auto& [w, s0] : rest) {
            bound += w * (s0 - slot_time[s]);
            ++s;
        }
        return bound;
    }

    void run(std::size_t slot, const Num& gain)
    {
        if (slot == slot_time.size()) {
            if (!have_best || best < gain) {
                best = gain;
                have_best = true;
            }
            return;
        }
        if (have_best) {
            const Num bound = gain + optimistic(slot);
            if (!(best < bound)) {
                return;
            }
        }
        for (std::size_t i = 0; i < weight.size(); ++i) {
            if (used[i] || (elig[slot] & (std::uint32_t{1} << i)) == 0) {
                continue;
            }
            used[i] = 1;
            run(slot + 1, gain + weight[i] * (start0[i] - slot_time[slot]));
            used[i] = 0;
        }
    }

    // max gain over eligible bijections, or no value when none exists
    bool solve(Num& out)
    {
        used.assign(weight.size(), 0);
        have_best = false;
        run(0, Num{});
        if (have_best) {
            out = best;
        }
        return have_best;
    }
};

} // namespace endoq::detail

#endif // ENDOQ_DETAIL_REQUEUE_SEARCH_HPP
