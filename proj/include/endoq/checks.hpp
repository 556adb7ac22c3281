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

#ifndef ENDOQ_CHECKS_HPP
#define ENDOQ_CHECKS_HPP

#include <endoq/games.hpp>
#include <endoq/problem.hpp>
#include <endoq/scheduling.hpp>
#include <endoq/solutions.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

// Randomized self-checks: every closed-form value the library produces is
// replayed against an independent exhaustive oracle, and every structural
// guarantee is exercised on instances drawn to satisfy its hypothesis.  The
// generators are fully determined by the seed, so any reported failure can be
// replayed from its seed and instance index alone.
namespace endoq::checks {

struct CheckResult {
    std::string name;
    bool passed = true;
    int instances = 0;
    std::string detail;
};

// Every core verdict taken during a check run can be logged here together
// with the game it was computed for, so callers can re-verify each
// certificate later without trusting the solver that produced it.
struct CertificateLog {
    struct Record {
        GameTable game;
        CoreCertificate certificate;
    };
    std::vector<Record> records;

    void add(const GameTable& game, const CoreCertificate& cert)
    {
        records.push_back({game, cert});
    }
};

namespace detail {

inline int pick(std::mt19937_64& rng, int lo, int hi)
{
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline std::vector<Scalar> random_weights(std::mt19937_64& rng, int n, int max_weight)
{
    std::vector<int> raw(static_cast<std::size_t>(n));
    for (int& w : raw) w = pick(rng, 1, max_weight);
    std::sort(raw.begin(), raw.end(), std::greater<int>());
    return std::vector<Scalar>(raw.begin(), raw.end());
}

// Machine costs that matter are the ones near the thresholds where optimal
// machine counts flip, so the draw mixes exact threshold hits, off-by-one
// neighbours, and uniform values across the whole interesting range.
inline Scalar crossing_cost(std::mt19937_64& rng, const std::vector<Scalar>& weights)
{
    const QueueingProblem probe(weights, Scalar(0));
    const int n = probe.n();
    std::vector<Scalar> cuts;
    const std::uint32_t full = Coalition::full(n).mask();
    for (std::uint32_t m = 1; m <= full; ++m) {
        const Coalition s(m);
        for (int k = 2; k <= s.size(); ++k) {
            cuts.push_back(threshold(probe, s, k));
        }
    }
    if (cuts.empty()) {
        return Scalar(pick(rng, 0, 5));
    }
    const Scalar top = *std::max_element(cuts.begin(), cuts.end());
    const int mode = pick(rng, 0, 9);
    if (mode < 4) {
        return Scalar(pick(rng, 0, static_cast<int>(top) + 3));
    }
    const Scalar& cut = cuts[static_cast<std::size_t>(
        pick(rng, 0, static_cast<int>(cuts.size()) - 1))];
    if (mode < 7) return cut;
    const Scalar shifted = mode < 9 ? Scalar(cut + 1) : Scalar(cut - 1);
    return shifted < 0 ? Scalar(0) : shifted;
}

inline QueueingProblem random_problem(std::mt19937_64& rng, int max_n, int max_weight)
{
    const int n = pick(rng, 2, max_n);
    std::vector<Scalar> w = random_weights(rng, n, max_weight);
    Scalar b = crossing_cost(rng, w);
    return QueueingProblem(std::move(w), std::move(b));
}

inline RequeueingProblem make_requeueing(QueueingProblem problem, int m0,
                                         const std::vector<int>& order)
{
    return round_robin_requeueing(std::move(problem), m0, order);
}

inline std::vector<int> random_order(std::mt19937_64& rng, int n)
{
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 1);
    for (int i = n - 1; i > 0; --i) {
        std::swap(order[static_cast<std::size_t>(i)],
                  order[static_cast<std::size_t>(pick(rng, 0, i))]);
    }
    return order;
}

inline std::string instance_tag(int index, const QueueingProblem& p)
{
    std::string tag = "instance " + std::to_string(index) + " (n=" +
                      std::to_string(p.n()) + ", w=";
    for (int i = 1; i <= p.n(); ++i) {
        tag += (i > 1 ? "," : "") + to_string(p.weight(i));
    }
    tag += ", b=" + to_string(p.machine_cost()) + ")";
    return tag;
}

} // namespace detail

/**
 * Replays the closed-form game construction against exhaustive search.
 *
 * For every coalition of every sampled instance, the cost table entry must
 * match the minimum over machine counts of waiting-plus-machine cost found by
 * enumerating all balanced period assignments, and the reported optimal
 * machine count must match the enumeration's lowest optimal count.
 */
inline CheckResult game_value_oracle(std::uint64_t seed, int instances, int max_n)
{
    CheckResult out;
    out.name = "game-value-oracle";
    std::mt19937_64 rng(seed);
    for (int it = 0; it < instances; ++it) {
        const QueueingProblem p = detail::random_problem(rng, max_n, 20);
        const GameTable game = queueing_cost_game(p);
        const std::uint32_t full = p.grand_coalition().mask();
        for (std::uint32_t m = 1; m <= full; ++m) {
            const Coalition s(m);
            const BruteForceResult bf = brute_force_min_cost(p, s, s.size());
            if (game.at(s) != bf.cost) {
                out.passed = false;
                out.detail = detail::instance_tag(it, p) + ": cost of " + s.to_string() +
                             " is " + to_string(game.at(s)) + ", enumeration finds " +
                             to_string(bf.cost);
                out.instances = it + 1;
                return out;
            }
            const int k = optimal_machine_count(p, s);
            if (k != bf.plan.machines) {
                out.passed = false;
                out.detail = detail::instance_tag(it, p) + ": machine count of " +
                             s.to_string() + " is " + std::to_string(k) +
                             ", enumeration finds " + std::to_string(bf.plan.machines);
                out.instances = it + 1;
                return out;
            }
        }
    }
    out.instances = instances;
    return out;
}

/**
 * Property suite for the machine-count thresholds.
 *
 * On every sampled instance: each coalition's threshold sequence is
 * non-increasing in the machine count; growing the coalition never lowers a
 * shared threshold nor the optimal machine count; and swapping a member for a
 * lighter one (higher index) never raises the optimal machine count.
 */
inline CheckResult threshold_monotonicity_suite(std::uint64_t seed, int instances,
                                                int max_n)
{
    CheckResult out;
    out.name = "threshold-monotonicity";
    std::mt19937_64 rng(seed);
    for (int it = 0; it < instances; ++it) {
        const QueueingProblem p = detail::random_problem(rng, max_n, 20);
        const int n = p.n();
        const std::uint32_t full = p.grand_coalition().mask();
        const auto fail = [&](std::string what) {
            out.passed = false;
            out.detail = detail::instance_tag(it, p) + ": " + std::move(what);
            out.instances = it + 1;
        };

        std::vector<int> best(full + 1, 0);
        for (std::uint32_t m = 1; m <= full; ++m) {
            best[m] = optimal_machine_count(p, Coalition(m));
        }
        for (std::uint32_t m = 1; m <= full && out.passed; ++m) {
            const Coalition s(m);
            for (int k = 3; k <= s.size(); ++k) {
                if (threshold(p, s, k) > threshold(p, s, k - 1)) {
                    fail("threshold of " + s.to_string() + " rises from count " +
                         std::to_string(k - 1) + " to " + std::to_string(k));
                    break;
                }
            }
        }
        for (std::uint32_t t = 1; t <= full && out.passed; ++t) {
            const Coalition big(t);
            for (std::uint32_t m = (t - 1) & t; m > 0 && out.passed; m = (m - 1) & t) {
                const Coalition small(m);
                if (best[m] > best[t]) {
                    fail("machine count drops from " + small.to_string() + " to " +
                         big.to_string());
                    break;
                }
                for (int k = 2; k <= small.size(); ++k) {
                    if (threshold(p, small, k) > threshold(p, big, k)) {
                        fail("threshold at count " + std::to_string(k) +
                             " drops from " + small.to_string() + " to " + big.to_string());
                        break;
                    }
                }
            }
        }
        for (std::uint32_t m = 0; m < full && out.passed; ++m) {
            const Coalition s(m);
            for (int i = 2; i <= n && out.passed; ++i) {
                if (s.contains(i)) continue;
                for (int j = 1; j < i; ++j) {
                    if (s.contains(j)) continue;
                    if (best[s.with(i).mask()] > best[s.with(j).mask()]) {
                        fail("adding lighter agent " + std::to_string(i) + " to " +
                             s.to_string() + " beats adding agent " + std::to_string(j));
                        break;
                    }
                }
            }
        }
        if (!out.passed) return out;
    }
    out.instances = instances;
    return out;
}

namespace detail {

inline Scalar front_loaded_bound(const QueueingProblem& p)
{
    Scalar bound(0);
    for (int j = 1; j <= (p.n() + 1) / 2; ++j) {
        bound += Scalar(p.n() - j) * p.weight(j);
    }
    return bound;
}

} // namespace detail

/**
 * Exercises each core guarantee on instances drawn inside its hypothesis.
 *
 * One result per guarantee name.  Beyond the bare verdicts, the suite pins
 * the structure each guarantee promises: allocations land in the cores they
 * are quoted for, unique cores collapse to the advertised point, the reduced
 * game agrees with the full game where it should, the private variants
 * coincide under cheap machines, and the relaxed public game stays convex
 * and inside the swaps core under an optimal initial order (where it must
 * also dominate level by level and agree on the grand coalition).  Verdicts
 * are logged with their games when a log is supplied.
 */
inline std::vector<CheckResult> guarantee_suite(std::uint64_t seed, int instances,
                                                int max_n, int convexity_max_n,
                                                CertificateLog* log = nullptr)
{
    std::vector<CheckResult> results;
    std::mt19937_64 rng(seed);
    const auto decide = [&](const GameTable& game) {
        CoreCertificate cert = core_nonempty(game);
        if (log != nullptr) log->add(game, cert);
        return cert;
    };

    {
        CheckResult r;
        r.name = "cheap-machines-nonempty";
        for (int it = 0; it < instances && r.passed; ++it) {
            std::vector<Scalar> w = detail::random_weights(rng, detail::pick(rng, 2, max_n), 20);
            const int median = (static_cast<int>(w.size()) + 1) / 2;
            const QueueingProblem p(w, Scalar(detail::pick(
                rng, 0, static_cast<int>(w[static_cast<std::size_t>(median - 1)]))));
            const GameTable game = queueing_cost_game(p);
            const CoreCertificate cert = decide(game);
            if (!cert.nonempty || !is_in_core(game, cheap_machines_allocation(p))) {
                r.passed = false;
                r.detail = detail::instance_tag(it, p) + ": allocation outside the core";
            }
            r.instances = it + 1;
        }
        results.push_back(std::move(r));
    }

    {
        CheckResult r;
        r.name = "cheap-machines-unique";
        for (int it = 0; it < instances && r.passed; ++it) {
            std::vector<Scalar> w = detail::random_weights(rng, detail::pick(rng, 2, max_n), 20);
            const int pivot = (2 * static_cast<int>(w.size()) + 4) / 4;
            const QueueingProblem p(w, Scalar(detail::pick(
                rng, 0, static_cast<int>(w[static_cast<std::size_t>(pivot - 1)]))));
            const GameTable game = queueing_cost_game(p);
            const CoreCertificate cert = decide(game);
            const auto y = cheap_machines_unique_allocation(p);
            if (!cert.nonempty || !y || !is_in_core(game, *y) || !core_unique(game)) {
                r.passed = false;
                r.detail = detail::instance_tag(it, p) + ": core is not the single advertised point";
            }
            r.instances = it + 1;
        }
        results.push_back(std::move(r));
    }

    {
        CheckResult r;
        r.name = "expensive-machines-nonempty";
        for (int it = 0; it < instances && r.passed; ++it) {
            std::vector<Scalar> w = detail::random_weights(rng, detail::pick(rng, 2, max_n), 20);
            const QueueingProblem probe(w, Scalar(0));
            const QueueingProblem p(w, endoq::detail::stand_alone_gap(probe) +
                                           detail::pick(rng, 0, 15));
            const GameTable game = queueing_cost_game(p);
            const GameTable reduced = reduced_cost_game(p);
            const CoreCertificate cert = decide(game);
            const CoreCertificate reduced_cert = decide(reduced);
            const int agent = detail::pick(rng, 1, p.n());
            const auto fine = [&] {
                if (!cert.nonempty || !reduced_cert.nonempty) return false;
                if (!is_in_core(game, reduced_cert.witness)) return false;
                if (!is_in_core(reduced, cert.witness)) return false;
                if (!is_concave(reduced).holds) return false;
                if (!reduced.warning().empty()) return false;
                const CoordinateRange a = core_coordinate_range(game, agent);
                const CoordinateRange b2 = core_coordinate_range(reduced, agent);
                return a.min_value == b2.min_value && a.max_value == b2.max_value;
            };
            if (!fine()) {
                r.passed = false;
                r.detail = detail::instance_tag(it, p) +
                           ": full and reduced cores disagree";
            }
            r.instances = it + 1;
        }
        results.push_back(std::move(r));
    }

    {
        CheckResult r;
        r.name = "mid-cost-empty";
        for (int it = 0; it < instances && r.passed; ++it) {
            std::vector<Scalar> w =
                detail::random_weights(rng, detail::pick(rng, 3, std::max(3, max_n)), 20);
            const QueueingProblem probe(w, Scalar(0));
            const Scalar low = threshold(probe, probe.grand_coalition(), 2);
            const Scalar high = endoq::detail::stand_alone_gap(probe);
            const QueueingProblem p(
                w, low + detail::pick(rng, 0, static_cast<int>(Scalar(high - low)) - 1));
            const GameTable game = queueing_cost_game(p);
            const CoreCertificate cert = decide(game);
            if (cert.nonempty || !verify_certificate(game, cert)) {
                r.passed = false;
                r.detail = detail::instance_tag(it, p) + ": expected a certified empty core";
            }
            r.instances = it + 1;
        }
        results.push_back(std::move(r));
    }

    {
        CheckResult r;
        r.name = "own-machine-core";
        for (int it = 0; it < instances && r.passed; ++it) {
            const int n = detail::pick(rng, 2, max_n);
            std::vector<Scalar> w = detail::random_weights(rng, n, 20);
            QueueingProblem p(w, Scalar(detail::pick(
                rng, 0, static_cast<int>(w[static_cast<std::size_t>(n - 1)]))));
            const RequeueingProblem rq = detail::make_requeueing(
                std::move(p), detail::pick(rng, 1, n), detail::random_order(rng, n));
            const GameTable swaps = private_requeueing_game(rq, Variant::swaps);
            const GameTable frozen = private_requeueing_game(rq, Variant::no_swaps);
            const Allocation y = own_machine_allocation(rq);
            const auto fine = [&] {
                const std::uint32_t full = rq.base().grand_coalition().mask();
                for (std::uint32_t m = 1; m <= full; ++m) {
                    Scalar expect(0);
                    for (int i : Coalition(m).members()) {
                        expect += y[static_cast<std::size_t>(i - 1)];
                    }
                    if (swaps.at(Coalition(m)) != expect) return false;
                    if (frozen.at(Coalition(m)) != expect) return false;
                }
                if (!is_in_core(swaps, y) || !is_in_core(frozen, y)) return false;
                return decide(swaps).nonempty && decide(frozen).nonempty;
            };
            if (!fine()) {
                r.passed = false;
                r.detail = detail::instance_tag(it, rq.base()) +
                           ": private games stray from the per-agent savings";
            }
            r.instances = it + 1;
        }
        results.push_back(std::move(r));
    }

    {
        CheckResult r;
        r.name = "single-initial-machine-nonempty";
        for (int it = 0; it < instances && r.passed; ++it) {
            const int n = detail::pick(rng, 2, max_n);
            std::vector<Scalar> w = detail::random_weights(rng, n, 20);
            const QueueingProblem probe(w, Scalar(0));
            QueueingProblem p(w, detail::front_loaded_bound(probe) + detail::pick(rng, 0, 15));
            const RequeueingProblem rq =
                detail::make_requeueing(std::move(p), 1, detail::random_order(rng, n));
            const CoreCertificate swaps = decide(private_requeueing_game(rq, Variant::swaps));
            const CoreCertificate frozen =
                decide(private_requeueing_game(rq, Variant::no_swaps));
            if (!swaps.nonempty || !frozen.nonempty) {
                r.passed = false;
                r.detail = detail::instance_tag(it, rq.base()) +
                           ": expensive single-machine start left an empty core";
            }
            r.instances = it + 1;
        }
        results.push_back(std::move(r));
    }

    {
        CheckResult r;
        r.name = "optimal-order-public-nonempty";
        for (int it = 0; it < instances && r.passed; ++it) {
            const int n = detail::pick(rng, 2, convexity_max_n);
            std::vector<Scalar> w = detail::random_weights(rng, n, 20);
            Scalar b = detail::crossing_cost(rng, w);
            std::vector<int> order(static_cast<std::size_t>(n));
            std::iota(order.begin(), order.end(), 1);
            const RequeueingProblem rq =
                detail::make_requeueing(QueueingProblem(w, std::move(b)), 1, order);
            const GameTable swaps = public_requeueing_game(rq, Variant::swaps);
            const GameTable frozen = public_requeueing_game(rq, Variant::no_swaps);
            const GameTable relaxed = relaxed_public_game(rq);
            const auto fine = [&] {
                if (!decide(swaps).nonempty || !decide(frozen).nonempty) return false;
                if (!is_convex(relaxed).holds) return false;
                const CoreCertificate bar = decide(relaxed);
                if (!bar.nonempty || !is_in_core(swaps, bar.witness)) return false;
                const std::uint32_t full = rq.base().grand_coalition().mask();
                for (std::uint32_t m = 1; m <= full; ++m) {
                    const Coalition s(m);
                    for (int k = 1; k <= n; ++k) {
                        const Scalar fixed = public_value_fixed(rq, s, k, Variant::swaps);
                        const Scalar bar_k = relaxed_public_value(rq, s, k);
                        if (bar_k < fixed) return false;
                        if (m == full && bar_k != fixed) return false;
                    }
                }
                return true;
            };
            if (!fine()) {
                r.passed = false;
                r.detail = detail::instance_tag(it, rq.base()) +
                           ": relaxed game fails to cap the reordering game";
            }
            r.instances = it + 1;
        }
        results.push_back(std::move(r));
    }

    // Optimally ordered starts with more than one machine (the all-served-
    // first layout among them) get the structure that survives subsidized
    // sales: the relaxed game caps the reordering game level by level and
    // matches it on the grand coalition, its optimal machine count never
    // drops when members join, its marginal gains are supermodular once the
    // empty set is priced by the same sale formula, and whenever its core is
    // nonempty the witness transfers.  A blanket nonemptiness claim would be
    // false here; the library documents a four-agent counterexample.
    {
        CheckResult r;
        r.name = "public-relaxed-dominance";
        for (int it = 0; it < instances && r.passed; ++it) {
            const int n = detail::pick(rng, 2, max_n);
            std::vector<Scalar> w = detail::random_weights(rng, n, 20);
            Scalar b = detail::crossing_cost(rng, w);
            const int m0 = it % 2 == 0 ? n : detail::pick(rng, 1, n);
            std::vector<int> order(static_cast<std::size_t>(n));
            std::iota(order.begin(), order.end(), 1);
            const RequeueingProblem rq = detail::make_requeueing(
                QueueingProblem(std::move(w), std::move(b)), m0, order);
            const GameTable swaps = public_requeueing_game(rq, Variant::swaps);
            const GameTable frozen = public_requeueing_game(rq, Variant::no_swaps);
            const GameTable relaxed = relaxed_public_game(rq);
            const Scalar empty_worth =
                Scalar(rq.m0() - 1) * rq.base().machine_cost();
            const std::uint32_t full = rq.base().grand_coalition().mask();
            const auto relaxed_at = [&](Coalition s) {
                return s.empty() ? empty_worth : relaxed.at(s);
            };
            const auto fine = [&] {
                for (std::uint32_t m = 1; m <= full; ++m) {
                    const Coalition s(m);
                    if (frozen.at(s) > swaps.at(s)) return false;
                    const int owned = endoq::detail::sellable_machines(rq, s);
                    for (int k = 1; k <= n; ++k) {
                        if (k < rq.m0() && owned < rq.m0() - k) continue;
                        const Scalar fixed = public_value_fixed(rq, s, k, Variant::swaps);
                        const Scalar bar_k = relaxed_public_value(rq, s, k);
                        if (bar_k < fixed) return false;
                        if (m == full && bar_k != fixed) return false;
                    }
                }
                if (frozen.grand_worth() != swaps.grand_worth()) return false;
                for (std::uint32_t m = 1; m <= full; ++m) {
                    const Coalition t(m);
                    const int machines = relaxed_public_best(rq, t).machines;
                    for (int i : t.members()) {
                        if (relaxed_public_best(rq, t.without(i)).machines > machines) {
                            return false;
                        }
                    }
                }
                for (int i = 2; i <= n; ++i) {
                    for (int j = 1; j < i; ++j) {
                        const std::uint32_t bits = (1u << (i - 1)) | (1u << (j - 1));
                        for (std::uint32_t m = 0; m <= full; ++m) {
                            if ((m & bits) != 0) continue;
                            const Coalition s(m);
                            const Scalar narrow =
                                relaxed_at(s.with(i)) - relaxed_at(s);
                            const Scalar wide =
                                relaxed_at(s.with(i).with(j)) - relaxed_at(s.with(j));
                            if (wide < narrow) return false;
                        }
                    }
                }
                const CoreCertificate bar = decide(relaxed);
                const CoreCertificate swaps_cert = decide(swaps);
                const CoreCertificate frozen_cert = decide(frozen);
                if (!verify_certificate(swaps, swaps_cert)) return false;
                if (!verify_certificate(frozen, frozen_cert)) return false;
                if (bar.nonempty) {
                    if (!is_in_core(swaps, bar.witness)) return false;
                    if (!swaps_cert.nonempty) return false;
                }
                return true;
            };
            if (!fine()) {
                r.passed = false;
                r.detail = detail::instance_tag(it, rq.base()) +
                           ": relaxed-game structure violated";
            }
            r.instances = it + 1;
        }
        results.push_back(std::move(r));
    }

    return results;
}

// Full self-check bundle with the standard sample sizes; the caller can scale
// the instance counts down for a quick pass.
inline std::vector<CheckResult> run_all_checks(std::uint64_t seed,
                                               int oracle_instances = 200,
                                               int property_instances = 100,
                                               int max_n = 6,
                                               CertificateLog* log = nullptr)
{
    std::vector<CheckResult> results;
    results.push_back(game_value_oracle(seed, oracle_instances, max_n));
    results.push_back(threshold_monotonicity_suite(seed + 1, property_instances, max_n));
    std::vector<CheckResult> guarantees =
        guarantee_suite(seed + 2, property_instances, max_n, std::min(max_n, 5), log);
    results.insert(results.end(), std::make_move_iterator(guarantees.begin()),
                   std::make_move_iterator(guarantees.end()));
    return results;
}

} // namespace endoq::checks

#endif // ENDOQ_CHECKS_HPP
