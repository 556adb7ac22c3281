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

#ifndef ENDOQ_VERIFY_PAPER_HPP
#define ENDOQ_VERIFY_PAPER_HPP

#include <endoq/games.hpp>
#include <endoq/io.hpp>
#include <endoq/scheduling.hpp>
#include <endoq/solutions.hpp>

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace endoq {

/** One golden claim replayed against the bundled example fixtures. */
struct ClaimResult {
    std::string name;
    std::string source;
    bool passed = true;
    std::string detail;
};

namespace detail {

inline std::string claim_mismatch(const std::string& what, const Scalar& got,
                                  const Scalar& want)
{
    return what + " is " + to_string(got) + ", expected " + to_string(want);
}

inline std::string expect_worth(const GameTable& game, Coalition s,
                                const Scalar& want)
{
    if (game.at(s) != want) {
        return claim_mismatch("worth of " + s.to_string(), game.at(s), want);
    }
    return "";
}

// The emptiness family quoted for a table: positive multipliers on proper
// coalitions whose worths contradict the grand coalition.
inline std::string expect_family(const GameTable& game,
                                 std::vector<std::pair<Coalition, Scalar>> family)
{
    CoreCertificate cert;
    cert.nonempty = false;
    cert.multipliers = std::move(family);
    cert.family_worth = 0;
    for (const auto& [s, lambda] : cert.multipliers) {
        cert.family_worth += lambda * game.at(s);
    }
    if (!verify_certificate(game, cert)) {
        return "the quoted balanced family (worth " + to_string(cert.family_worth) +
               ") does not contradict the grand worth " +
               to_string(game.grand_worth());
    }
    return "";
}

} // namespace detail

/**
 * Replays every golden expectation against the bundled example problems and
 * reports one result per claim.  `fixture_dir` must hold example1.json,
 * example2.json and example3.json; a claim that throws (missing fixture,
 * malformed file) fails with the exception text, leaving other claims intact.
 */
inline std::vector<ClaimResult> reference_claims(const std::string& fixture_dir)
{
    std::vector<ClaimResult> results;
    const auto claim = [&](std::string name, std::string source,
                           const std::function<std::string()>& body) {
        ClaimResult r;
        r.name = std::move(name);
        r.source = std::move(source);
        try {
            r.detail = body();
            r.passed = r.detail.empty();
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = e.what();
        }
        results.push_back(std::move(r));
    };
    const auto load = [&](const std::string& file) {
        return io::problem_from_file(fixture_dir + "/" + file);
    };
    const auto ex1_at = [&](Scalar b) {
        return QueueingProblem(load("example1.json").base.weights(), std::move(b));
    };

    // ----- example 1: regimes of the machine cost ---------------------------

    claim("grand-two-machine-threshold", "example 1", [&]() -> std::string {
        const QueueingProblem p = load("example1.json").base;
        const Coalition all = p.grand_coalition();
        const Scalar r2 = threshold(p, all, 2);
        if (r2 != 35) {
            return detail::claim_mismatch("threshold(N, 2)", r2, Scalar(35));
        }
        Scalar bound = p.weight(2);
        for (int i = 3; i <= p.n(); ++i) {
            bound += Scalar(i - ceil_div(i, 2)) * p.weight(i);
        }
        if (r2 != bound) {
            return detail::claim_mismatch("closed-form bound", bound, r2);
        }
        return "";
    });

    claim("machine-counts-at-samples", "example 1", [&]() -> std::string {
        if (optimal_machine_count(ex1_at(30), Coalition::full(4)) != 2) {
            return "m(N) at b=30 is not 2";
        }
        Coalition s = Coalition().with(1).with(2).with(4);
        if (optimal_machine_count(ex1_at(17), s) != 2) {
            return "m({1,2,4}) at b=17 is not 2";
        }
        return "";
    });

    claim("pair-costs", "example 1", [&]() -> std::string {
        const QueueingProblem p = ex1_at(22);
        const GameTable game = queueing_cost_game(p);
        for (int i : {1, 2}) {
            for (int j : {3, 4}) {
                const Coalition s = Coalition().with(i).with(j);
                const Scalar want = Scalar(22) + p.weight(i) + 2 * p.weight(j);
                if (const std::string why = detail::expect_worth(game, s, want);
                    !why.empty()) {
                    return why;
                }
            }
        }
        return "";
    });

    claim("cheap-cost-allocation", "example 1", [&]() -> std::string {
        const QueueingProblem p = ex1_at(12);
        const Allocation y = cheap_machines_allocation(p);
        const Allocation want{32, 27, 20, 10};
        if (y != want) {
            return "allocation formula disagrees at b=12";
        }
        if (!is_in_core(queueing_cost_game(p), y)) {
            return "formula allocation is not in the core at b=12";
        }
        return "";
    });

    claim("core-witnesses", "example 1", [&]() -> std::string {
        if (!is_in_core(queueing_cost_game(ex1_at(22)), {37, 32, 25, 15})) {
            return "witness (37,32,25,15) rejected at b=22";
        }
        if (!is_in_core(queueing_cost_game(ex1_at(12)), {31, 26, 21, 11})) {
            return "witness (31,26,21,11) rejected at b=12";
        }
        return "";
    });

    claim("core-verdict-samples", "example 1", [&]() -> std::string {
        if (!core_nonempty(queueing_cost_game(ex1_at(12))).nonempty) {
            return "core empty at b=12";
        }
        if (core_nonempty(queueing_cost_game(ex1_at(40))).nonempty) {
            return "core nonempty at b=40";
        }
        const GameTable reduced = reduced_cost_game(ex1_at(50));
        if (!core_nonempty(queueing_cost_game(ex1_at(50))).nonempty) {
            return "core empty at b=50";
        }
        if (!is_concave(reduced).holds) {
            return "reduced game not concave at b=50";
        }
        return "";
    });

    claim("guarantee-scopes", "example 1", [&]() -> std::string {
        const auto applies = [&](const Scalar& b, const std::string& name) {
            for (const CoreGuarantee& g : core_guarantees(ex1_at(b))) {
                if (g.name == name) {
                    return g.applies;
                }
            }
            return false;
        };
        if (!applies(10, "cheap-machines-unique") ||
            applies(Scalar(21, 2), "cheap-machines-unique")) {
            return "uniqueness guarantee does not stop at b=10";
        }
        if (!applies(15, "cheap-machines-nonempty") ||
            applies(Scalar(31, 2), "cheap-machines-nonempty")) {
            return "membership guarantee does not stop at b=15";
        }
        if (!applies(50, "expensive-machines-nonempty") ||
            applies(Scalar(99, 2), "expensive-machines-nonempty")) {
            return "single-queue guarantee does not start at b=50";
        }
        if (!applies(35, "mid-cost-empty") || applies(Scalar(69, 2), "mid-cost-empty") ||
            applies(50, "mid-cost-empty")) {
            return "emptiness guarantee window is not [35,50)";
        }
        return "";
    });

    claim("regime-map", "example 1", [&]() -> std::string {
        const RegimeReport report = classify_regimes(load("example1.json").base);
        const std::vector<Scalar> cuts{0, 5, 10, 15, 20, 25, 35, 50};
        if (report.breakpoints != cuts) {
            return "breakpoints differ from {0,5,10,15,20,25,35,50}";
        }
        for (const RegimeEntry& e : report.entries) {
            const Scalar& b = e.sample;
            const bool nonempty = b <= 25 || b >= 50;
            if (e.certificate.nonempty != nonempty) {
                return "verdict at b=" + to_string(b) + " is " +
                       (e.certificate.nonempty ? "nonempty" : "empty") +
                       ", which is off the map";
            }
            if (b <= 10 && !e.core_is_unique) {
                return "the closed-form region b=" + to_string(b) +
                       " lost uniqueness";
            }
            if (b > 10 && b < 25 && e.core_is_unique) {
                return "b=" + to_string(b) + " should admit several allocations";
            }
        }
        return "";
    });

    // ----- example 2: private reordering on one machine ----------------------

    claim("private-swaps-table", "example 2", [&]() -> std::string {
        const RequeueingProblem rq = *load("example2.json").initial;
        const GameTable v = private_requeueing_game(rq, Variant::swaps);
        const auto c = [](std::initializer_list<int> agents) {
            Coalition s;
            for (int a : agents) {
                s = s.with(a);
            }
            return s;
        };
        for (const auto& [s, want] :
             std::vector<std::pair<Coalition, Scalar>>{{c({2, 3, 4}), 36},
                                                       {c({2, 3, 5}), 25},
                                                       {c({3, 4, 5}), 44},
                                                       {c({2, 4, 5}), 38},
                                                       {c({2, 3, 4, 5}), 46}}) {
            if (const std::string why = detail::expect_worth(v, s, want); !why.empty()) {
                return why;
            }
        }
        if (v.at(Coalition::singleton(1)) != 0) {
            return "the first-served agent is not a dummy";
        }
        return "";
    });

    claim("private-no-swaps-table", "example 2", [&]() -> std::string {
        const RequeueingProblem rq = *load("example2.json").initial;
        const GameTable vs = private_requeueing_game(rq, Variant::swaps);
        const GameTable vns = private_requeueing_game(rq, Variant::no_swaps);
        const Coalition special = Coalition().with(2).with(4).with(5);
        // The first-served agent is a dummy, so blocking the swap costs the
        // same two coalitions: {2,4,5} and its dummy extension.
        for (const Coalition s : {special, special.with(1)}) {
            if (vns.at(s) != 36) {
                return detail::claim_mismatch("worth of " + s.to_string(),
                                              vns.at(s), Scalar(36));
            }
        }
        const std::uint32_t full = rq.base().grand_coalition().mask();
        for (std::uint32_t m = 1; m <= full; ++m) {
            const Coalition s(m);
            if (s != special && s != special.with(1) && vns.at(s) != vs.at(s)) {
                return "variants disagree at " + s.to_string();
            }
        }
        return "";
    });

    claim("plan-admissibility", "example 2", [&]() -> std::string {
        const RequeueingProblem rq = *load("example2.json").initial;
        const Coalition t = Coalition().with(2).with(4).with(5);
        SchedulingPlan plan;
        plan.machines = 2;
        plan.slots = {{1, 1, 0}, {4, 1, 1}, {3, 1, 2}, {2, 2, 0}, {5, 2, 1}};
        if (!is_admissible_private(rq, t, plan, Variant::swaps)) {
            return "the two-machine rearrangement should be allowed with swaps";
        }
        if (is_admissible_private(rq, t, plan, Variant::no_swaps)) {
            return "agent 4 jumps an outsider, so no-swaps should reject the plan";
        }
        return "";
    });

    claim("private-core-empty", "example 2", [&]() -> std::string {
        const RequeueingProblem rq = *load("example2.json").initial;
        for (Variant variant : {Variant::swaps, Variant::no_swaps}) {
            if (core_nonempty(private_requeueing_game(rq, variant)).nonempty) {
                return "core nonempty under " + to_string(variant);
            }
        }
        return "";
    });

    claim("private-emptiness-families", "example 2", [&]() -> std::string {
        const RequeueingProblem rq = *load("example2.json").initial;
        const auto c = [](std::initializer_list<int> agents) {
            Coalition s;
            for (int a : agents) {
                s = s.with(a);
            }
            return s;
        };
        const std::vector<std::pair<Coalition, Scalar>> family{
            {c({1}), 1},
            {c({2, 3, 4}), Scalar(1, 3)},
            {c({2, 3, 5}), Scalar(1, 3)},
            {c({2, 4, 5}), Scalar(1, 3)},
            {c({3, 4, 5}), Scalar(1, 3)}};
        for (Variant variant : {Variant::swaps, Variant::no_swaps}) {
            const GameTable v = private_requeueing_game(rq, variant);
            if (const std::string why = detail::expect_family(v, family);
                !why.empty()) {
                return to_string(variant) + ": " + why;
            }
        }
        return "";
    });

    // ----- example 3: public reordering from a bad initial order -------------

    claim("priority-from-initial-order", "example 3", [&]() -> std::string {
        const RequeueingProblem rq = *load("example3.json").initial;
        const PriorityOrder pi = priority_order(rq);
        for (int i = 1; i <= 4; ++i) {
            if (pi.rank_of(i) != 5 - i) {
                return "agent " + std::to_string(i) + " has rank " +
                       std::to_string(pi.rank_of(i)) + ", expected " +
                       std::to_string(5 - i);
            }
        }
        return "";
    });

    claim("priority-grid-layouts", "example 3", [&]() -> std::string {
        const RequeueingProblem rq3 = *load("example3.json").initial;
        const SchedulingPlan grid3 = public_requeue_grid(priority_order(rq3), 2);
        for (int agent : {4, 3}) {
            if (grid3.start_of(agent) != 0) {
                return "agent " + std::to_string(agent) + " should start at 0";
            }
        }
        for (int agent : {2, 1}) {
            if (grid3.start_of(agent) != 1) {
                return "agent " + std::to_string(agent) + " should start at 1";
            }
        }
        const io::LoadedProblem five = load("example2.json");
        const RequeueingProblem rq5 = *five.initial;
        const SchedulingPlan grid5 = public_requeue_grid(priority_order(rq5), 2);
        for (int agent = 1; agent <= 5; ++agent) {
            const int machine = (agent - 1) % 2 + 1;
            const int start = (agent - 1) / 2;
            if (grid5.machine_of(agent) != machine || grid5.start_of(agent) != start) {
                return "five-agent grid misplaces agent " + std::to_string(agent);
            }
        }
        const RequeueingProblem two = round_robin_requeueing(five.base, 2,
                                                             {1, 2, 3, 4, 5});
        const PriorityOrder pi2 = priority_order(two);
        for (int agent = 1; agent <= 5; ++agent) {
            if (pi2.rank_of(agent) != agent) {
                return "two-machine layout should rank agents 1..5 in order";
            }
        }
        return "";
    });

    claim("fixed-machine-values", "example 3", [&]() -> std::string {
        const RequeueingProblem rq = *load("example3.json").initial;
        const Coalition t = Coalition().with(1).with(4);
        const std::vector<Scalar> want{36, 23, 8, -6};
        for (int k = 1; k <= 4; ++k) {
            const Scalar v = public_value_fixed(rq, t, k, Variant::swaps);
            if (v != want[static_cast<std::size_t>(k - 1)]) {
                return detail::claim_mismatch("value of {1,4} on " +
                                                  std::to_string(k) + " machines",
                                              v, want[static_cast<std::size_t>(k - 1)]);
            }
        }
        return "";
    });

    claim("public-swaps-table", "example 3", [&]() -> std::string {
        const RequeueingProblem rq = *load("example3.json").initial;
        const GameTable v = public_requeueing_game(rq, Variant::swaps);
        const auto c = [](std::initializer_list<int> agents) {
            Coalition s;
            for (int a : agents) {
                s = s.with(a);
            }
            return s;
        };
        for (const auto& [s, want] :
             std::vector<std::pair<Coalition, Scalar>>{{c({1, 4}), 36},
                                                       {c({2, 4}), 12},
                                                       {c({3, 4}), 5},
                                                       {c({1, 2, 3}), 31},
                                                       {c({1, 2, 3, 4}), 37}}) {
            if (const std::string why = detail::expect_worth(v, s, want); !why.empty()) {
                return why;
            }
        }
        return "";
    });

    claim("public-core-empty", "example 3", [&]() -> std::string {
        const RequeueingProblem rq = *load("example3.json").initial;
        const GameTable v = public_requeueing_game(rq, Variant::swaps);
        if (core_nonempty(v).nonempty) {
            return "public core should be empty";
        }
        const auto c = [](std::initializer_list<int> agents) {
            Coalition s;
            for (int a : agents) {
                s = s.with(a);
            }
            return s;
        };
        return detail::expect_family(v, {{c({1, 4}), Scalar(1, 3)},
                                         {c({2, 4}), Scalar(1, 3)},
                                         {c({3, 4}), Scalar(1, 3)},
                                         {c({1, 2, 3}), Scalar(2, 3)}});
    });

    claim("optimal-order-hypothesis", "example 3", [&]() -> std::string {
        const RequeueingProblem rq = *load("example3.json").initial;
        for (const CoreGuarantee& g : core_guarantees(rq)) {
            if (g.name == "optimal-order-public-nonempty") {
                return g.applies ? "the serving order 4,3,2,1 is not optimal, so the "
                                   "guarantee must not apply"
                                 : "";
            }
        }
        return "guarantee list lacks optimal-order-public-nonempty";
    });

    // ----- cross-cutting structure -------------------------------------------

    claim("balanced-load-rule", "scheduling", [&]() -> std::string {
        SchedulingPlan plan;
        plan.machines = 2;
        plan.slots = {{1, 1, 0}, {2, 1, 1}, {3, 1, 2}, {4, 2, 0}};
        if (is_semi_active(plan)) {
            return "loads 3 and 1 differ by more than one, so the plan is not "
                   "semi-active";
        }
        return "";
    });

    claim("reduced-marginal-identity", "reduced game", [&]() -> std::string {
        const QueueingProblem p = ex1_at(50);
        const GameTable reduced = reduced_cost_game(p);
        const std::uint32_t full = p.grand_coalition().mask();
        for (std::uint32_t m = 1; m <= full; ++m) {
            const Coalition t(m);
            for (int k = 1; k <= p.n(); ++k) {
                if (t.contains(k)) {
                    continue;
                }
                Scalar want = Scalar(k) * p.weight(k);
                for (int i = k + 1; i <= p.n(); ++i) {
                    want += p.weight(i);
                }
                const Scalar got = reduced.at(t.with(k)) - reduced.at(t);
                if (got != want) {
                    return "marginal of agent " + std::to_string(k) + " joining " +
                           t.to_string() + " is " + to_string(got) + ", expected " +
                           to_string(want);
                }
            }
        }
        return "";
    });

    claim("relaxed-game-dominance", "public game", [&]() -> std::string {
        const RequeueingProblem rq = *load("example2.json").initial;
        const std::uint32_t full = rq.base().grand_coalition().mask();
        for (std::uint32_t m = 1; m <= full; ++m) {
            const Coalition s(m);
            for (int k = 1; k <= rq.n(); ++k) {
                const Scalar fixed = public_value_fixed(rq, s, k, Variant::swaps);
                const Scalar relaxed = relaxed_public_value(rq, s, k);
                if (relaxed < fixed) {
                    return "relaxed value of " + s.to_string() + " on " +
                           std::to_string(k) + " machines drops below the exact value";
                }
                if (m == full && relaxed != fixed) {
                    return "relaxed and exact values differ for the grand coalition";
                }
            }
        }
        return "";
    });

    claim("relaxed-game-convex", "public game", [&]() -> std::string {
        const RequeueingProblem rq = *load("example2.json").initial;
        if (!is_convex(relaxed_public_game(rq)).holds) {
            return "relaxed game of an optimally ordered single-machine start "
                   "should be convex";
        }
        return "";
    });

    return results;
}

namespace io {

inline json to_json(const ClaimResult& r)
{
    json out;
    out["name"] = r.name;
    out["source"] = r.source;
    out["passed"] = r.passed;
    if (!r.detail.empty()) {
        out["detail"] = r.detail;
    }
    return out;
}

inline json to_json(const std::vector<ClaimResult>& rs)
{
    json out = json::array();
    for (const ClaimResult& r : rs) {
        out.push_back(to_json(r));
    }
    return out;
}

inline std::string to_text(const std::vector<ClaimResult>& rs)
{
    std::string out;
    for (const ClaimResult& r : rs) {
        out += std::string(r.passed ? "[pass] " : "[FAIL] ") + r.name + " (" +
               r.source + ")";
        if (!r.detail.empty()) {
            out += ": " + r.detail;
        }
        out += "\n";
    }
    return out;
}

} // namespace io

} // namespace endoq

#endif // ENDOQ_VERIFY_PAPER_HPP
