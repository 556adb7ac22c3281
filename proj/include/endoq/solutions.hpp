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

#ifndef ENDOQ_SOLUTIONS_HPP
#define ENDOQ_SOLUTIONS_HPP

#include <endoq/game_table.hpp>
#include <endoq/games.hpp>
#include <endoq/problem.hpp>
#include <endoq/scheduling.hpp>
#include <endoq/simplex.hpp>

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace endoq {

// Core membership, emptiness certificates, and the coordinate probes all run
// linear programs with one column per coalition, so they are capped more
// tightly than plain game construction.
inline constexpr int kCoreCap = 12;

// One payoff (value games) or charge (cost games) per agent, index agent-1.
using Allocation = std::vector<Scalar>;

/**
 * Checks exact core membership of an allocation.
 *
 * The allocation must be efficient (sum over everyone equals the grand
 * coalition's worth) and no coalition may prefer to walk away: for cost games
 * every coalition's share stays at or below its stand-alone cost, for value
 * games at or above its stand-alone value.  Comparisons are exact; a
 * dimension mismatch throws std::invalid_argument.
 */
inline bool is_in_core(const GameTable& game, const Allocation& y)
{
    const int n = game.n();
    if (static_cast<int>(y.size()) != n) {
        throw std::invalid_argument("allocation size does not match the game");
    }
    const std::uint32_t full = Coalition::full(n).mask();
    std::vector<Scalar> share(full + 1, Scalar(0));
    for (std::uint32_t m = 1; m <= full; ++m) {
        int low = 0;
        while (!((m >> low) & 1u)) ++low;
        share[m] = share[m & (m - 1)] + y[static_cast<std::size_t>(low)];
    }
    if (share[full] != game.grand_worth()) return false;
    for (std::uint32_t m = 1; m < full; ++m) {
        const Scalar& worth = game.at(Coalition(m));
        if (game.kind() == GameKind::cost ? share[m] > worth : share[m] < worth) {
            return false;
        }
    }
    return true;
}

/**
 * Evidence for a core verdict that can be re-checked without re-solving.
 *
 * Nonempty cores carry a witness allocation; empty cores carry a balanced
 * family of proper coalitions (positive multipliers covering every agent with
 * total weight exactly one) whose weighted worth beats the grand coalition,
 * which rules out any efficient, coalitionally stable allocation.
 */
struct CoreCertificate {
    bool nonempty = false;
    Allocation witness;
    std::vector<std::pair<Coalition, Scalar>> multipliers;
    Scalar family_worth = Scalar(0);
};

/**
 * Decides core nonemptiness by an exact covering program.
 *
 * Minimizes the multiplier-weighted cost over all fractional covers of the
 * agent set by coalitions.  The optimum never exceeds the grand coalition's
 * cost (the grand coalition alone is a cover); it reaches that cost exactly
 * when the core is nonempty, and the optimal row multipliers then form a core
 * point.  When the optimum is strictly cheaper, rescaling the optimal cover
 * away from its grand-coalition component leaves a balanced family of proper
 * coalitions that certifies emptiness.  Value games run on the negated table
 * and flip the witness back.  Throws cap_exceeded above kCoreCap agents.
 */
inline CoreCertificate core_nonempty(const GameTable& game)
{
    const int n = game.n();
    if (n > kCoreCap) {
        throw cap_exceeded("core solver supports up to " + std::to_string(kCoreCap) +
                           " agents; got " + std::to_string(n));
    }
    const bool cost_game = game.kind() == GameKind::cost;
    const GameTable work = cost_game ? game : game.negated();
    const std::uint32_t full = Coalition::full(n).mask();

    detail::LinearProgram lp;
    lp.rhs.assign(static_cast<std::size_t>(n), Scalar(1));
    for (std::uint32_t m = 1; m <= full; ++m) {
        std::vector<Scalar> column(static_cast<std::size_t>(n), Scalar(0));
        for (int i : Coalition(m).members()) {
            column[static_cast<std::size_t>(i - 1)] = 1;
        }
        lp.columns.push_back(std::move(column));
        lp.cost.push_back(work.at(Coalition(m)));
    }
    std::vector<int> basis;
    for (int i = 1; i < n; ++i) {
        basis.push_back(static_cast<int>(1u << (i - 1)) - 1);
    }
    basis.push_back(static_cast<int>(full) - 1);
    const detail::SimplexSolution sol = detail::simplex_min(lp, basis);

    CoreCertificate cert;
    if (sol.objective == work.grand_worth()) {
        cert.nonempty = true;
        cert.witness.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            cert.witness[static_cast<std::size_t>(i)] =
                cost_game ? sol.duals[static_cast<std::size_t>(i)]
                          : -sol.duals[static_cast<std::size_t>(i)];
        }
        return cert;
    }
    const Scalar& lambda_grand = sol.primal[static_cast<std::size_t>(full) - 1];
    const Scalar rescale = Scalar(1) - lambda_grand;
    for (std::uint32_t m = 1; m < full; ++m) {
        const Scalar& lambda = sol.primal[m - 1];
        if (lambda != 0) {
            cert.multipliers.emplace_back(Coalition(m), lambda / rescale);
        }
    }
    for (const auto& [s, lambda] : cert.multipliers) {
        cert.family_worth += lambda * game.at(s);
    }
    return cert;
}

/**
 * Re-checks a certificate against the game it claims to describe.
 *
 * Runs no linear programs: a nonempty verdict is re-checked through
 * is_in_core, an empty verdict by re-summing the balanced family - every
 * multiplier positive on a proper coalition, per-agent coverage exactly one,
 * and the weighted worth strictly better for the family than for the grand
 * coalition (cheaper for cost games, richer for value games).
 */
inline bool verify_certificate(const GameTable& game, const CoreCertificate& cert)
{
    const int n = game.n();
    if (cert.nonempty) {
        return static_cast<int>(cert.witness.size()) == n && is_in_core(game, cert.witness);
    }
    if (cert.multipliers.empty()) return false;
    const Coalition everyone = Coalition::full(n);
    std::vector<Scalar> coverage(static_cast<std::size_t>(n), Scalar(0));
    Scalar family_worth(0);
    for (const auto& [s, lambda] : cert.multipliers) {
        if (s.empty() || s.mask() >= everyone.mask() || !s.subset_of(everyone)) return false;
        if (lambda <= 0) return false;
        for (int i : s.members()) {
            coverage[static_cast<std::size_t>(i - 1)] += lambda;
        }
        family_worth += lambda * game.at(s);
    }
    for (const Scalar& c : coverage) {
        if (c != 1) return false;
    }
    if (family_worth != cert.family_worth) return false;
    return game.kind() == GameKind::cost ? family_worth < game.grand_worth()
                                         : family_worth > game.grand_worth();
}

// Exact range of one agent's payoff over a nonempty core, with core points
// attaining each end.  min_value == max_value for every agent exactly when
// the core is a single point.
struct CoordinateRange {
    Scalar min_value;
    Scalar max_value;
    Allocation argmin;
    Allocation argmax;
};

/**
 * Computes one agent's exact payoff range over the core.
 *
 * Each end solves a covering-style program whose columns are the proper
 * coalitions plus the grand coalition in both orientations (the efficiency
 * equality split into two inequalities); its optimal row multipliers are a
 * core point attaining the bound.  Requires a nonempty core - probing an
 * empty core leaves the program unbounded, which surfaces as a logic_error.
 */
inline CoordinateRange core_coordinate_range(const GameTable& game, int agent)
{
    const int n = game.n();
    if (n > kCoreCap) {
        throw cap_exceeded("core solver supports up to " + std::to_string(kCoreCap) +
                           " agents; got " + std::to_string(n));
    }
    if (agent < 1 || agent > n) {
        throw std::invalid_argument("agent outside the player set");
    }
    const bool cost_game = game.kind() == GameKind::cost;
    const GameTable work = cost_game ? game : game.negated();
    const std::uint32_t full = Coalition::full(n).mask();

    detail::LinearProgram lp;
    for (std::uint32_t m = 1; m < full; ++m) {
        std::vector<Scalar> column(static_cast<std::size_t>(n), Scalar(0));
        for (int i : Coalition(m).members()) {
            column[static_cast<std::size_t>(i - 1)] = 1;
        }
        lp.columns.push_back(std::move(column));
        lp.cost.push_back(work.at(Coalition(m)));
    }
    const int grand_plus = static_cast<int>(lp.columns.size());
    lp.columns.emplace_back(static_cast<std::size_t>(n), Scalar(1));
    lp.cost.push_back(work.grand_worth());
    const int grand_minus = static_cast<int>(lp.columns.size());
    lp.columns.emplace_back(static_cast<std::size_t>(n), Scalar(-1));
    lp.cost.push_back(-work.grand_worth());

    const auto probe = [&](bool maximize) {
        lp.rhs.assign(static_cast<std::size_t>(n), Scalar(0));
        lp.rhs[static_cast<std::size_t>(agent - 1)] = maximize ? 1 : -1;
        std::vector<int> basis;
        if (n == 1) {
            basis.push_back(maximize ? grand_plus : grand_minus);
        } else if (maximize) {
            for (int i = 1; i <= n; ++i) {
                basis.push_back(static_cast<int>(1u << (i - 1)) - 1);
            }
        } else {
            for (int i = 1; i <= n; ++i) {
                if (i != agent) basis.push_back(static_cast<int>(1u << (i - 1)) - 1);
            }
            basis.push_back(grand_minus);
        }
        return detail::simplex_min(lp, basis);
    };

    const detail::SimplexSolution hi = probe(true);
    const detail::SimplexSolution lo = probe(false);
    const auto point = [&](const detail::SimplexSolution& sol) {
        Allocation y(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            y[static_cast<std::size_t>(i)] = cost_game
                ? sol.duals[static_cast<std::size_t>(i)]
                : -sol.duals[static_cast<std::size_t>(i)];
        }
        return y;
    };

    CoordinateRange range;
    if (cost_game) {
        range.max_value = hi.objective;
        range.min_value = -lo.objective;
        range.argmax = point(hi);
        range.argmin = point(lo);
    } else {
        range.max_value = lo.objective;
        range.min_value = -hi.objective;
        range.argmax = point(lo);
        range.argmin = point(hi);
    }
    return range;
}

// True when the (nonempty) core is a single allocation: every agent's payoff
// range collapses to a point.
inline bool core_unique(const GameTable& game)
{
    for (int i = 1; i <= game.n(); ++i) {
        const CoordinateRange range = core_coordinate_range(game, i);
        if (range.min_value != range.max_value) return false;
    }
    return true;
}

// Outcome of a concavity or convexity scan.  On failure, adding `agent` to
// `larger` changes the worth by more (concavity) or less (convexity) than
// adding it to its subset `smaller`.
struct ShapeCheck {
    bool holds = true;
    int agent = 0;
    Coalition smaller;
    Coalition larger;

    explicit operator bool() const { return holds; }
};

namespace detail {

inline ShapeCheck shape_check(const GameTable& game, bool concave)
{
    const int n = game.n();
    const std::uint32_t full = Coalition::full(n).mask();
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            if (j == i) continue;
            const std::uint32_t bits = (1u << (i - 1)) | (1u << (j - 1));
            for (std::uint32_t m = 0; m <= full; ++m) {
                if ((m & bits) != 0) continue;
                const Coalition s(m);
                const Scalar base_step = game.at(s.with(i)) - game.at(s);
                const Scalar wide_step =
                    game.at(s.with(i).with(j)) - game.at(s.with(j));
                if (concave ? wide_step > base_step : wide_step < base_step) {
                    return {false, i, s, s.with(j)};
                }
            }
        }
    }
    return {};
}

} // namespace detail

// Marginal contributions never grow as the host coalition grows.
inline ShapeCheck is_concave(const GameTable& game)
{
    return detail::shape_check(game, true);
}

// Marginal contributions never shrink as the host coalition grows.
inline ShapeCheck is_convex(const GameTable& game)
{
    return detail::shape_check(game, false);
}

/**
 * Core allocation for cheap machines: agent i is charged min(b + w_i, 2 w_i).
 *
 * Valid whenever the machine cost is at most the median weight w_{ceil(n/2)};
 * outside that range the formula can leave the core, so the call throws
 * std::domain_error instead of returning a misleading vector.
 */
inline Allocation cheap_machines_allocation(const QueueingProblem& problem)
{
    const int n = problem.n();
    const int median = (n + 1) / 2;
    const Scalar& b = problem.machine_cost();
    if (b > problem.weight(median)) {
        throw std::domain_error(
            "cheap-machines allocation needs machine cost <= w_" + std::to_string(median) +
            " = " + to_string(problem.weight(median)) + "; got " + to_string(b));
    }
    Allocation y(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        const Scalar with_machine = b + problem.weight(i);
        const Scalar doubled = problem.weight(i) * 2;
        y[static_cast<std::size_t>(i - 1)] =
            with_machine < doubled ? with_machine : doubled;
    }
    return y;
}

/**
 * The cheap-machines allocation when it is the unique core point.
 *
 * Machine costs up to w_{ceil((2n+1)/4)} pin the whole core to the single
 * allocation min(b + w_i, 2 w_i); beyond that bound uniqueness can fail, so
 * the call returns nullopt and callers fall back to the coordinate probes.
 */
inline std::optional<Allocation>
cheap_machines_unique_allocation(const QueueingProblem& problem)
{
    const int pivot = (2 * problem.n() + 4) / 4;
    if (problem.machine_cost() > problem.weight(pivot)) {
        return std::nullopt;
    }
    return cheap_machines_allocation(problem);
}

/**
 * Core allocation for the private requeueing games when machines are cheaper
 * than every weight: each agent keeps its own saving s0(i) * w_i - b from
 * buying one machine alone (zero for agents already served first).
 *
 * Under the same bound this is simultaneously a core point of the swaps and
 * the no-swaps game; outside it the call throws std::domain_error.
 */
inline Allocation own_machine_allocation(const RequeueingProblem& rq)
{
    const QueueingProblem& problem = rq.base();
    const int n = problem.n();
    const Scalar& b = problem.machine_cost();
    if (b > problem.weight(n)) {
        throw std::domain_error(
            "own-machine allocation needs machine cost <= w_" + std::to_string(n) +
            " = " + to_string(problem.weight(n)) + "; got " + to_string(b));
    }
    Allocation y(static_cast<std::size_t>(n), Scalar(0));
    for (int i = 1; i <= n; ++i) {
        const int start = rq.start0(i);
        if (start >= 1) {
            y[static_cast<std::size_t>(i - 1)] = Scalar(start) * problem.weight(i) - b;
        }
    }
    return y;
}

// One sufficient condition for a core property, with the exact bound values
// spelled out so reports stay self-contained.
struct CoreGuarantee {
    std::string name;
    std::string scope;
    bool applies = false;
    std::string detail;
};

namespace detail {

inline Scalar stand_alone_gap(const QueueingProblem& problem)
{
    Scalar total(0);
    for (int i = 2; i <= problem.n(); ++i) {
        total += Scalar(i - 1) * problem.weight(i);
    }
    return total;
}

inline std::string versus(const Scalar& lhs, bool at_most, const Scalar& rhs)
{
    const bool ok = at_most ? lhs <= rhs : lhs >= rhs;
    return to_string(lhs) + (ok ? (at_most ? " <= " : " >= ") : (at_most ? " > " : " < ")) +
           to_string(rhs);
}

} // namespace detail

/**
 * Evaluates the machine-cost conditions that settle the queueing game's core
 * without solving it.
 *
 * Four entries, each reporting whether its hypothesis holds here and the
 * exact numbers behind the comparison: nonemptiness for machine costs up to
 * the median weight, uniqueness up to w_{ceil((2n+1)/4)}, nonemptiness again
 * once machines cost at least the full stand-alone waiting gap
 * sum_i (i-1) w_i (where the game turns concave and matches its reduced
 * form), and guaranteed emptiness on the stretch from the grand coalition's
 * two-machine threshold up to that gap.
 */
inline std::vector<CoreGuarantee> core_guarantees(const QueueingProblem& problem)
{
    const int n = problem.n();
    const Scalar& b = problem.machine_cost();
    const int median = (n + 1) / 2;
    const int pivot = (2 * n + 4) / 4;
    const Scalar gap = detail::stand_alone_gap(problem);

    std::vector<CoreGuarantee> out;
    out.push_back({"cheap-machines-nonempty", "queueing",
                   b <= problem.weight(median),
                   "machine cost vs w_" + std::to_string(median) + ": " +
                       detail::versus(b, true, problem.weight(median))});
    out.push_back({"cheap-machines-unique", "queueing",
                   b <= problem.weight(pivot),
                   "machine cost vs w_" + std::to_string(pivot) + ": " +
                       detail::versus(b, true, problem.weight(pivot))});
    out.push_back({"expensive-machines-nonempty", "queueing",
                   b >= gap,
                   "machine cost vs sum_i (i-1) w_i: " + detail::versus(b, false, gap)});
    if (n < 2) {
        out.push_back({"mid-cost-empty", "queueing", false,
                       "needs at least two agents"});
    } else {
        const Scalar low = threshold(problem, problem.grand_coalition(), 2);
        const bool applies = b >= low && b < gap;
        out.push_back({"mid-cost-empty", "queueing", applies,
                       "machine cost in [" + to_string(low) + ", " + to_string(gap) +
                           "): " + to_string(b)});
    }
    return out;
}

/**
 * Evaluates the sufficient core conditions for the requeueing games built on
 * this initial assignment, covering both the private family (outsiders keep
 * their machines) and the public family (coalitions reorder around a shared
 * pool).
 *
 * The optimal-order guarantee for the public games is scoped to
 * single-initial-machine problems: with several initial machines a coalition
 * can pocket its population share of a subsidized machine sale, and that
 * income stream can empty the core even under an optimal order (the test
 * suite pins a four-agent example).  The all-served-first entry therefore
 * only reports its hypothesis; it makes no core promise.
 */
inline std::vector<CoreGuarantee> core_guarantees(const RequeueingProblem& rq)
{
    const QueueingProblem& problem = rq.base();
    const int n = problem.n();
    const Scalar& b = problem.machine_cost();

    std::vector<CoreGuarantee> out;
    out.push_back({"own-machine-core", "private",
                   b <= problem.weight(n),
                   "machine cost vs w_" + std::to_string(n) + ": " +
                       detail::versus(b, true, problem.weight(n))});

    Scalar front_bound(0);
    for (int j = 1; j <= (n + 1) / 2; ++j) {
        front_bound += Scalar(n - j) * problem.weight(j);
    }
    const bool single = rq.m0() == 1;
    out.push_back({"single-initial-machine-nonempty", "private",
                   single && b >= front_bound,
                   single ? "one initial machine; machine cost vs sum_{j<=ceil(n/2)} (n-j) w_j: " +
                                detail::versus(b, false, front_bound)
                          : "needs one initial machine; got " + std::to_string(rq.m0())});

    const PriorityOrder order = priority_order(rq);
    int bad_rank = 0;
    for (int r = 2; r <= n; ++r) {
        if (problem.weight(order.agent_at(r)) > problem.weight(order.agent_at(r - 1))) {
            bad_rank = r;
            break;
        }
    }
    std::string order_note =
        bad_rank == 0 ? "initial service order runs weights non-increasing"
                      : "initial service order puts the larger weight w_" +
                            std::to_string(order.agent_at(bad_rank)) + " behind w_" +
                            std::to_string(order.agent_at(bad_rank - 1));
    if (bad_rank == 0 && rq.m0() != 1) {
        order_note += ", but subsidized sales need a single initial machine; got " +
                      std::to_string(rq.m0());
    }
    out.push_back({"optimal-order-public-nonempty", "public",
                   bad_rank == 0 && rq.m0() == 1, std::move(order_note)});

    out.push_back({"all-served-first", "public",
                   rq.m0() == n,
                   "initial machines vs agents: " + std::to_string(rq.m0()) + " of " +
                       std::to_string(n)});
    return out;
}

// Core findings for one machine-cost sample.  Point entries sit exactly on a
// breakpoint; interval entries sample the open stretch between neighbours,
// the last one extending without bound.
struct RegimeEntry {
    Scalar lower;
    Scalar upper;
    bool is_point = false;
    bool unbounded = false;
    Scalar sample;
    CoreCertificate certificate;
    bool core_is_unique = false;
    std::vector<std::pair<Coalition, int>> machine_counts;
    std::vector<std::string> guarantee_names;
};

struct RegimeReport {
    std::vector<Scalar> breakpoints;
    std::vector<RegimeEntry> entries;
};

/**
 * Sweeps the machine cost across its full range and reports how the queueing
 * game behaves in each regime.
 *
 * Breakpoints collect every coalition's machine-count thresholds together
 * with the guarantee bounds above (and zero), which covers every cost where
 * optimal machine counts can move.  Each breakpoint and each open interval
 * between neighbours gets one exact sample: the core verdict with its
 * certificate, whether a nonempty core is a single point, every coalition's
 * optimal machine count, and the names of the guarantees that apply there.
 * Verdicts describe their sample; the open-interval samples sit at midpoints
 * (one past the last breakpoint for the unbounded tail).
 */
inline RegimeReport classify_regimes(const QueueingProblem& problem)
{
    const int n = problem.n();
    if (n > kCoreCap) {
        throw cap_exceeded("regime sweep supports up to " + std::to_string(kCoreCap) +
                           " agents; got " + std::to_string(n));
    }
    const std::uint32_t full = Coalition::full(n).mask();

    std::set<Scalar> cuts;
    cuts.insert(Scalar(0));
    for (std::uint32_t m = 1; m <= full; ++m) {
        const Coalition s(m);
        for (int k = 2; k <= s.size(); ++k) {
            cuts.insert(threshold(problem, s, k));
        }
    }
    cuts.insert(problem.weight((n + 1) / 2));
    cuts.insert(problem.weight((2 * n + 4) / 4));
    cuts.insert(problem.weight(n));
    cuts.insert(detail::stand_alone_gap(problem));

    RegimeReport report;
    report.breakpoints.assign(cuts.begin(), cuts.end());

    const auto study = [&](const Scalar& sample) {
        RegimeEntry entry;
        entry.sample = sample;
        const QueueingProblem at_sample(problem.weights(), sample);
        for (std::uint32_t m = 1; m <= full; ++m) {
            const Coalition s(m);
            entry.machine_counts.emplace_back(s, optimal_machine_count(at_sample, s));
        }
        const GameTable game = queueing_cost_game(at_sample);
        entry.certificate = core_nonempty(game);
        if (entry.certificate.nonempty) {
            entry.core_is_unique = core_unique(game);
        }
        for (const CoreGuarantee& g : core_guarantees(at_sample)) {
            if (g.applies) entry.guarantee_names.push_back(g.name);
        }
        return entry;
    };

    for (std::size_t i = 0; i < report.breakpoints.size(); ++i) {
        const Scalar& at = report.breakpoints[i];
        RegimeEntry point = study(at);
        point.lower = at;
        point.upper = at;
        point.is_point = true;
        report.entries.push_back(std::move(point));

        const bool last = i + 1 == report.breakpoints.size();
        const Scalar sample = last ? Scalar(at + 1)
                                   : Scalar((at + report.breakpoints[i + 1]) / 2);
        RegimeEntry stretch = study(sample);
        stretch.lower = at;
        stretch.upper = last ? at : report.breakpoints[i + 1];
        stretch.unbounded = last;
        report.entries.push_back(std::move(stretch));
    }
    return report;
}

} // namespace endoq

#endif // ENDOQ_SOLUTIONS_HPP
