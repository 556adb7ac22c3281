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

#include <endoq/games.hpp>
#include <endoq/solutions.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <stdexcept>
#include <vector>

using endoq::Coalition;
using endoq::GameKind;
using endoq::GameTable;
using endoq::QueueingProblem;
using endoq::RequeueingProblem;
using endoq::Scalar;
using endoq::SchedulingPlan;
using endoq::Variant;

namespace {

QueueingProblem four_agents(Scalar b = Scalar(30))
{
    return QueueingProblem({Scalar(20), Scalar(15), Scalar(10), Scalar(5)},
                           std::move(b));
}

// Five agents on one machine, served heaviest first.
RequeueingProblem five_agent_line()
{
    QueueingProblem p({Scalar(20), Scalar(15), Scalar(13), Scalar(13), Scalar(5)},
                      Scalar(18));
    return endoq::round_robin_requeueing(p, 1, {1, 2, 3, 4, 5});
}

// Four agents on one machine, served lightest first.
RequeueingProblem reversed_line()
{
    QueueingProblem p({Scalar(13), Scalar(7), Scalar(6), Scalar(1)}, Scalar(15));
    return endoq::round_robin_requeueing(p, 1, {4, 3, 2, 1});
}

// Two balanced machines where blocking coalitions out-earn the grand
// coalition in both public variants.
RequeueingProblem two_machine_blocker()
{
    QueueingProblem p({Scalar(17), Scalar(16), Scalar(4), Scalar(1)}, Scalar(20));
    return endoq::round_robin_requeueing(p, 2, {1, 2, 3, 4});
}

} // namespace

TEST_CASE("queueing cost game minimizes over machine counts")
{
    const GameTable g = endoq::queueing_cost_game(four_agents());
    CHECK(g.kind() == GameKind::cost);
    CHECK(g.at(Coalition::singleton(1)) == 50);
    CHECK(g.at(Coalition::singleton(4)) == 35);
    CHECK(g.at(Coalition::of({2, 4})) == 55);
    CHECK(g.at(Coalition::of({1, 2, 3})) == 110);
    CHECK(g.grand_worth() == 125);
    CHECK(g.warning().empty());
}

TEST_CASE("queueing cost game agrees with the exhaustive scheduler")
{
    const QueueingProblem p({Scalar(13), Scalar(7), Scalar(6), Scalar(1)},
                            Scalar(15));
    const GameTable g = endoq::queueing_cost_game(p);
    for (const Coalition s : endoq::all_coalitions(4)) {
        CHECK(g.at(s) == endoq::brute_force_min_cost(p, s, s.size()).cost);
    }
}

TEST_CASE("reduced game subtracts the departed followers' displacement")
{
    const QueueingProblem p = four_agents(Scalar(50));
    const GameTable reduced = endoq::reduced_cost_game(p);
    const GameTable base = endoq::queueing_cost_game(p);

    CHECK(reduced.grand_worth() == base.grand_worth());
    CHECK(reduced.at(Coalition::singleton(1)) == 50);
    CHECK(reduced.warning().empty());

    // Joining any coalition costs an agent its own slot plus one period of
    // delay for every lighter agent, independent of who is already in.
    for (const Coalition t : endoq::all_coalitions(4)) {
        for (int k = 1; k <= 4; ++k) {
            if (t.contains(k) || t.empty()) continue;
            Scalar expected = Scalar(k) * p.weight(k);
            for (int i = k + 1; i <= 4; ++i) {
                expected += p.weight(i);
            }
            CHECK(reduced.at(t.with(k)) - reduced.at(t) == expected);
        }
    }
}

TEST_CASE("reduced game warns when several machines can pay off")
{
    CHECK(endoq::reduced_cost_game(four_agents(Scalar(34))).warning().find(
              "two-machine threshold") != std::string::npos);
    CHECK(endoq::reduced_cost_game(four_agents(Scalar(35))).warning().empty());
    CHECK(endoq::reduced_cost_game(four_agents(Scalar(50))).warning().empty());
}

TEST_CASE("private rearrangement rules accept swaps that help outsiders")
{
    const RequeueingProblem rq = five_agent_line();
    SchedulingPlan plan;
    plan.machines = 2;
    plan.slots = {{1, 1, 0}, {4, 1, 1}, {3, 1, 2}, {2, 2, 0}, {5, 2, 1}};

    const Coalition T = Coalition::of({2, 4, 5});
    CHECK(endoq::is_admissible_private(rq, T, plan, Variant::swaps));
    CHECK_FALSE(endoq::is_admissible_private(rq, T, plan, Variant::no_swaps));

    SchedulingPlan displaced;
    displaced.machines = 1;
    displaced.slots = {{2, 1, 0}, {1, 1, 1}, {3, 1, 2}, {4, 1, 3}, {5, 1, 4}};
    CHECK_FALSE(endoq::is_admissible_private(rq, Coalition::of({2}), displaced,
                                             Variant::swaps));

    SchedulingPlan gap;
    gap.machines = 1;
    gap.slots = {{1, 1, 0}, {2, 1, 1}, {3, 1, 2}, {4, 1, 3}, {5, 1, 5}};
    CHECK_THROWS_AS(endoq::is_admissible_private(rq, T, gap, Variant::swaps),
                    std::invalid_argument);

    SchedulingPlan partial;
    partial.machines = 1;
    partial.slots = {{1, 1, 0}, {2, 1, 1}};
    CHECK_THROWS_AS(endoq::is_admissible_private(rq, T, partial, Variant::swaps),
                    std::invalid_argument);
}

TEST_CASE("machines disappear only when the seller held every slot")
{
    QueueingProblem p({Scalar(9), Scalar(5), Scalar(2)}, Scalar(2));
    const RequeueingProblem rq = endoq::round_robin_requeueing(p, 2, {1, 2, 3});

    SchedulingPlan sale;
    sale.machines = 1;
    sale.slots = {{1, 1, 0}, {3, 1, 1}, {2, 1, 2}};
    CHECK(endoq::is_admissible_private(rq, Coalition::of({2}), sale, Variant::swaps));
    CHECK_FALSE(
        endoq::is_admissible_private(rq, Coalition::of({3}), sale, Variant::swaps));

    // Naming a removed machine that the coalition does not fully occupy.
    SchedulingPlan keep_second;
    keep_second.machines = 1;
    keep_second.slots = {{2, 1, 0}, {1, 1, 1}, {3, 1, 2}};
    CHECK_FALSE(endoq::is_admissible_private(rq, Coalition::of({2}), keep_second,
                                             Variant::swaps, {1}));
    CHECK_THROWS_AS(endoq::is_admissible_private(rq, Coalition::of({2}), keep_second,
                                                 Variant::swaps, {3}),
                    std::invalid_argument);
}

TEST_CASE("private values for the five-agent line")
{
    const RequeueingProblem rq = five_agent_line();
    const GameTable swaps = endoq::private_requeueing_game(rq, Variant::swaps);
    const GameTable frozen = endoq::private_requeueing_game(rq, Variant::no_swaps);

    CHECK(swaps.kind() == GameKind::value);
    CHECK(swaps.at(Coalition::singleton(1)) == 0);
    CHECK(swaps.at(Coalition::of({2, 3, 4})) == 36);
    CHECK(swaps.at(Coalition::of({2, 3, 5})) == 25);
    CHECK(swaps.at(Coalition::of({3, 4, 5})) == 44);
    CHECK(swaps.at(Coalition::of({2, 4, 5})) == 38);
    CHECK(swaps.at(Coalition::of({2, 3, 4, 5})) == 46);
    CHECK(swaps.grand_worth() == 46);

    // Freezing outsider predecessors bites for exactly two coalitions: the
    // swap through the front seat is worth 2 to {2,4,5} with or without the
    // front agent's help.
    CHECK(frozen.at(Coalition::of({2, 4, 5})) == 36);
    CHECK(frozen.at(Coalition::of({1, 2, 4, 5})) == 36);
    CHECK(swaps.at(Coalition::of({1, 2, 4, 5})) == 38);
    for (const Coalition s : endoq::all_coalitions(5)) {
        if (s == Coalition::of({2, 4, 5}) || s == Coalition::of({1, 2, 4, 5})) {
            continue;
        }
        CHECK(frozen.at(s) == swaps.at(s));
    }
}

TEST_CASE("allowing swaps never lowers a private value")
{
    for (const RequeueingProblem& rq : {five_agent_line(), reversed_line()}) {
        const GameTable swaps = endoq::private_requeueing_game(rq, Variant::swaps);
        const GameTable frozen =
            endoq::private_requeueing_game(rq, Variant::no_swaps);
        for (const Coalition s : endoq::all_coalitions(rq.n())) {
            CHECK(swaps.at(s) >= frozen.at(s));
            CHECK(frozen.at(s) >= 0);
        }
    }
}

TEST_CASE("priority order follows start times with machine ties")
{
    const endoq::PriorityOrder reversed = endoq::priority_order(reversed_line());
    for (int i = 1; i <= 4; ++i) {
        CHECK(reversed.rank_of(i) == 5 - i);
        CHECK(reversed.agent_at(5 - i) == i);
    }
    CHECK(reversed.size() == 4);
    CHECK_THROWS_AS(reversed.rank_of(5), std::out_of_range);
    CHECK_THROWS_AS(reversed.agent_at(0), std::out_of_range);

    QueueingProblem p({Scalar(9), Scalar(7), Scalar(5), Scalar(3), Scalar(1)},
                      Scalar(2));
    const RequeueingProblem grid_rq =
        endoq::round_robin_requeueing(p, 2, {1, 2, 3, 4, 5});
    const endoq::PriorityOrder pi = endoq::priority_order(grid_rq);
    CHECK(pi.agent_at(1) == 1);
    CHECK(pi.agent_at(2) == 2);
    CHECK(pi.agent_at(3) == 3);
    CHECK(pi.agent_at(4) == 4);
    CHECK(pi.agent_at(5) == 5);

    const SchedulingPlan grid = endoq::public_requeue_grid(pi, 2);
    CHECK(grid.machines == 2);
    CHECK(grid.machine_of(1) == 1);
    CHECK(grid.start_of(1) == 0);
    CHECK(grid.machine_of(2) == 2);
    CHECK(grid.start_of(2) == 0);
    CHECK(grid.machine_of(5) == 1);
    CHECK(grid.start_of(5) == 2);
    CHECK(endoq::is_semi_active(grid));
    CHECK_THROWS_AS(endoq::public_requeue_grid(pi, 0), std::invalid_argument);
}

TEST_CASE("public values for the reversed four-agent line")
{
    const RequeueingProblem rq = reversed_line();
    const Coalition heavy_pair = Coalition::of({1, 4});

    CHECK(endoq::public_value_fixed(rq, heavy_pair, 1, Variant::swaps) == 36);
    CHECK(endoq::public_value_fixed(rq, heavy_pair, 2, Variant::swaps) == 23);
    CHECK(endoq::public_value_fixed(rq, heavy_pair, 3, Variant::swaps) == 8);
    CHECK(endoq::public_value_fixed(rq, heavy_pair, 4, Variant::swaps) == -6);

    const GameTable g = endoq::public_requeueing_game(rq, Variant::swaps);
    CHECK(g.at(heavy_pair) == 36);
    CHECK(g.at(Coalition::of({2, 4})) == 12);
    CHECK(g.at(Coalition::of({3, 4})) == 5);
    CHECK(g.at(Coalition::of({1, 2, 3})) == 31);
    CHECK(g.grand_worth() == 37);

    CHECK_THROWS_AS(endoq::public_value_fixed(rq, heavy_pair, 0, Variant::swaps),
                    std::invalid_argument);
    CHECK_THROWS_AS(endoq::public_value_fixed(rq, heavy_pair, 5, Variant::swaps),
                    std::invalid_argument);
}

TEST_CASE("selling down needs fully occupied machines")
{
    const RequeueingProblem rq = two_machine_blocker();
    // Initial layout: machine 1 holds {1,3}, machine 2 holds {2,4}.
    CHECK(endoq::public_value_fixed(rq, Coalition::of({1, 2}), 1, Variant::swaps) ==
          0);
    CHECK(endoq::public_value_fixed(rq, Coalition::of({1, 3}), 1, Variant::swaps) !=
          0);
}

TEST_CASE("relaxed values dominate public values on an optimally ordered line")
{
    const RequeueingProblem rq = five_agent_line();
    const GameTable pub = endoq::public_requeueing_game(rq, Variant::swaps);
    const GameTable relaxed = endoq::relaxed_public_game(rq);

    for (const Coalition s : endoq::all_coalitions(5)) {
        for (int k = 1; k <= 5; ++k) {
            CHECK(endoq::relaxed_public_value(rq, s, k) >=
                  endoq::public_value_fixed(rq, s, k, Variant::swaps));
        }
    }
    CHECK(relaxed.grand_worth() == pub.grand_worth());
    CHECK(endoq::is_convex(relaxed).holds);

    const endoq::RelaxedBest best = endoq::relaxed_public_best(rq, Coalition::full(5));
    CHECK(best.value == relaxed.grand_worth());
    CHECK(best.machines >= 1);
    CHECK(endoq::relaxed_public_value(rq, Coalition::full(5), best.machines) ==
          best.value);
}

TEST_CASE("balanced two-machine start can out-earn the grand coalition")
{
    const RequeueingProblem rq = two_machine_blocker();

    for (Variant v : {Variant::swaps, Variant::no_swaps}) {
        const GameTable g = endoq::public_requeueing_game(rq, v);
        CHECK(g.grand_worth() == 0);
        const endoq::CoreCertificate cert = endoq::core_nonempty(g);
        CHECK_FALSE(cert.nonempty);
        CHECK(endoq::verify_certificate(g, cert));

        endoq::CoreCertificate by_hand;
        by_hand.nonempty = false;
        by_hand.multipliers = {{Coalition::singleton(2), Scalar(1)},
                               {Coalition::of({1, 3, 4}), Scalar(1)}};
        by_hand.family_worth =
            g.at(Coalition::singleton(2)) + g.at(Coalition::of({1, 3, 4}));
        CHECK(by_hand.family_worth == 9);
        CHECK(endoq::verify_certificate(g, by_hand));
    }

    const GameTable relaxed = endoq::relaxed_public_game(rq);
    CHECK_FALSE(endoq::is_convex(relaxed).holds);
    CHECK_FALSE(endoq::core_nonempty(relaxed).nonempty);
}

TEST_CASE("requeueing games refuse oversized instances")
{
    std::vector<Scalar> weights(9, Scalar(3));
    QueueingProblem p(std::move(weights), Scalar(1));
    std::vector<int> order;
    for (int i = 1; i <= 9; ++i) {
        order.push_back(i);
    }
    const RequeueingProblem rq = endoq::round_robin_requeueing(p, 1, order);
    CHECK_THROWS_AS(endoq::private_requeueing_game(rq, Variant::swaps),
                    endoq::cap_exceeded);
    CHECK_THROWS_AS(endoq::public_requeueing_game(rq, Variant::swaps),
                    endoq::cap_exceeded);
    CHECK_THROWS_AS(
        endoq::private_requeueing_value(rq, Coalition::of({1, 2}), Variant::swaps),
        endoq::cap_exceeded);
}

TEST_CASE("empty coalitions are worth nothing in every family")
{
    const RequeueingProblem rq = reversed_line();
    CHECK(endoq::private_requeueing_value(rq, Coalition(), Variant::swaps) == 0);
    CHECK(endoq::public_value_fixed(rq, Coalition(), 2, Variant::swaps) == 0);
    CHECK(endoq::public_requeueing_value(rq, Coalition(), Variant::no_swaps) == 0);
}
