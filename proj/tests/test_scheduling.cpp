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

#include <endoq/scheduling.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <stdexcept>

using endoq::Coalition;
using endoq::QueueingProblem;
using endoq::Scalar;
using endoq::SchedulingPlan;

namespace {

QueueingProblem example_problem(Scalar b = Scalar(30))
{
    return QueueingProblem({Scalar(20), Scalar(15), Scalar(10), Scalar(5)},
                           std::move(b));
}

} // namespace

TEST_CASE("ceil_div rounds up")
{
    CHECK(endoq::ceil_div(1, 1) == 1);
    CHECK(endoq::ceil_div(4, 2) == 2);
    CHECK(endoq::ceil_div(5, 2) == 3);
    CHECK(endoq::ceil_div(7, 3) == 3);
}

TEST_CASE("semi-active plans are gapless with balanced loads")
{
    SchedulingPlan good;
    good.machines = 2;
    good.slots = {{1, 1, 0}, {2, 2, 0}, {3, 1, 1}};
    CHECK(endoq::is_semi_active(good));

    SchedulingPlan gap;
    gap.machines = 1;
    gap.slots = {{1, 1, 0}, {2, 1, 2}};
    CHECK_FALSE(endoq::is_semi_active(gap));

    SchedulingPlan lopsided;
    lopsided.machines = 2;
    lopsided.slots = {{1, 1, 0}, {2, 1, 1}, {3, 1, 2}, {4, 2, 0}};
    CHECK_FALSE(endoq::is_semi_active(lopsided));

    SchedulingPlan overlap;
    overlap.machines = 1;
    overlap.slots = {{1, 1, 0}, {2, 1, 0}};
    CHECK_FALSE(endoq::is_semi_active(overlap));

    // Machines beyond the number of waiting agents may sit idle; loads of
    // (1, 1, 0) still differ by at most one.
    SchedulingPlan spare_machine;
    spare_machine.machines = 3;
    spare_machine.slots = {{1, 1, 0}, {2, 2, 0}};
    CHECK(endoq::is_semi_active(spare_machine));

    SchedulingPlan out_of_range;
    out_of_range.machines = 1;
    out_of_range.slots = {{1, 1, 0}, {2, 2, 0}};
    CHECK_FALSE(endoq::is_semi_active(out_of_range));
}

TEST_CASE("plan cost charges waiting and optionally machines")
{
    const QueueingProblem p = example_problem();
    SchedulingPlan plan;
    plan.machines = 2;
    plan.slots = {{1, 1, 0}, {2, 2, 0}, {3, 1, 1}, {4, 2, 1}};
    CHECK(endoq::plan_cost(p, Coalition::full(4), plan, false) == 65);
    CHECK(endoq::plan_cost(p, Coalition::full(4), plan, true) == 125);
    CHECK(endoq::plan_cost(p, Coalition::of({1, 3}), plan, false) == 40);
    CHECK_THROWS_AS(endoq::plan_cost(p, Coalition::of({5}), plan, false),
                    std::invalid_argument);

    SchedulingPlan partial;
    partial.machines = 1;
    partial.slots = {{2, 1, 0}};
    CHECK_THROWS_AS(endoq::plan_cost(p, Coalition::of({1, 2}), partial, false),
                    std::invalid_argument);
}

TEST_CASE("fixed machine cost follows the positional closed form")
{
    const QueueingProblem p = example_problem();
    const Coalition everyone = Coalition::full(4);
    CHECK(endoq::fixed_machine_cost(p, everyone, 1) == 130);
    CHECK(endoq::fixed_machine_cost(p, everyone, 2) == 125);
    CHECK(endoq::fixed_machine_cost(p, everyone, 3) == 145);
    CHECK(endoq::fixed_machine_cost(p, everyone, 4) == 170);
    CHECK(endoq::fixed_machine_cost(p, Coalition::of({2, 4}), 1) == 55);
    CHECK(endoq::fixed_machine_cost(p, Coalition(), 3) == 90);

    // Extra machines beyond the coalition size are paid but idle.
    CHECK(endoq::fixed_machine_cost(p, Coalition::singleton(1), 3) ==
          endoq::fixed_machine_cost(p, Coalition::singleton(1), 1) + 60);
    CHECK_THROWS_AS(endoq::fixed_machine_cost(p, everyone, 0), std::invalid_argument);
}

TEST_CASE("thresholds mark where an extra machine pays for itself")
{
    const QueueingProblem p = example_problem();
    const Coalition everyone = Coalition::full(4);
    CHECK(endoq::threshold(p, everyone, 2) == 35);
    CHECK(endoq::threshold(p, everyone, 3) == 10);
    CHECK(endoq::threshold(p, everyone, 4) == 5);
    CHECK(endoq::threshold(p, Coalition::of({1, 2, 3}), 2) == 25);
    CHECK(endoq::threshold(p, Coalition::of({1, 2, 4}), 2) == 20);

    const auto table = endoq::threshold_table(p, everyone);
    REQUIRE(table.size() == 3);
    CHECK(table[0] == 35);
    CHECK(table[1] == 10);
    CHECK(table[2] == 5);

    CHECK_THROWS_AS(endoq::threshold(p, everyone, 1), std::invalid_argument);
    CHECK_THROWS_AS(endoq::threshold(p, everyone, 5), std::invalid_argument);
}

TEST_CASE("threshold equals the cost difference of adjacent machine counts")
{
    const QueueingProblem p = example_problem();
    for (const Coalition s :
         {Coalition::full(4), Coalition::of({1, 2, 4}), Coalition::of({2, 3, 4})}) {
        for (int k = 2; k <= s.size(); ++k) {
            const Scalar r = endoq::threshold(p, s, k);
            const QueueingProblem at_r(p.weights(), r);
            CHECK(endoq::fixed_machine_cost(at_r, s, k) ==
                  endoq::fixed_machine_cost(at_r, s, k - 1));
        }
    }
}

TEST_CASE("optimal machine count breaks ties toward fewer machines")
{
    const Coalition everyone = Coalition::full(4);
    CHECK(endoq::optimal_machine_count(example_problem(Scalar(30)), everyone) == 2);
    CHECK(endoq::optimal_machine_count(example_problem(Scalar(35)), everyone) == 1);
    CHECK(endoq::optimal_machine_count(example_problem(Scalar(34)), everyone) == 2);
    CHECK(endoq::optimal_machine_count(example_problem(Scalar(10)), everyone) == 2);
    CHECK(endoq::optimal_machine_count(example_problem(Scalar(9)), everyone) == 3);
    CHECK(endoq::optimal_machine_count(example_problem(Scalar(0)), everyone) == 4);
    CHECK(endoq::optimal_machine_count(example_problem(Scalar(30)),
                                       Coalition::singleton(2)) == 1);
    CHECK_THROWS_AS(endoq::optimal_machine_count(example_problem(), Coalition()),
                    std::invalid_argument);
}

TEST_CASE("brute force matches the closed form on small instances")
{
    const QueueingProblem p({Scalar(13), Scalar(7), Scalar(6), Scalar(1)},
                            Scalar(15));
    for (const Coalition s : endoq::all_coalitions(4)) {
        for (int m = 1; m <= s.size(); ++m) {
            const auto result = endoq::brute_force_best_waiting(p, s, m);
            CHECK(result.cost + Scalar(m) * p.machine_cost() ==
                  endoq::fixed_machine_cost(p, s, m));
            CHECK(endoq::is_semi_active(result.plan));
            CHECK(result.plan.covers(s));
        }
        const auto best = endoq::brute_force_min_cost(p, s, s.size());
        Scalar expected = endoq::fixed_machine_cost(p, s, 1);
        for (int k = 2; k <= s.size(); ++k) {
            const Scalar candidate = endoq::fixed_machine_cost(p, s, k);
            if (candidate < expected) {
                expected = candidate;
            }
        }
        CHECK(best.cost == expected);
        CHECK(best.plan.machines == endoq::optimal_machine_count(p, s));
    }
}

TEST_CASE("single agents are served immediately on one machine")
{
    const QueueingProblem p({Scalar(11)}, Scalar(4));
    const auto best = endoq::brute_force_min_cost(p, Coalition::singleton(1), 1);
    CHECK(best.cost == 15);
    CHECK(best.plan.machines == 1);
    CHECK(best.plan.start_of(1) == 0);
    CHECK(endoq::optimal_machine_count(p, Coalition::singleton(1)) == 1);
}

TEST_CASE("brute force refuses oversized coalitions")
{
    std::vector<Scalar> weights(9, Scalar(2));
    const QueueingProblem p(std::move(weights), Scalar(1));
    CHECK_THROWS_AS(endoq::brute_force_best_waiting(p, Coalition::full(9), 2),
                    endoq::cap_exceeded);
    CHECK_THROWS_AS(endoq::brute_force_best_waiting(p, Coalition::full(4), 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(endoq::brute_force_best_waiting(p, Coalition(), 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(endoq::brute_force_min_cost(p, Coalition::full(4), 0),
                    std::invalid_argument);
}
