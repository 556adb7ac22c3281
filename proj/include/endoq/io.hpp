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

#ifndef ENDOQ_IO_HPP
#define ENDOQ_IO_HPP

#include <endoq/checks.hpp>
#include <endoq/game_table.hpp>
#include <endoq/problem.hpp>
#include <endoq/solutions.hpp>

#include <json.hpp>

#include <fstream>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace endoq::io {

using json = nlohmann::ordered_json;

// Coalitions are keyed by their member list, e.g. "2,4,5".
inline std::string coalition_key(Coalition s)
{
    std::string out;
    for (int a : s.members()) {
        if (!out.empty()) {
            out += ",";
        }
        out += std::to_string(a);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Problem files
// ---------------------------------------------------------------------------

/**
 * A parsed problem file: the queueing problem, plus the initial position when
 * the file carries an "initial" block (required by the requeueing families).
 */
struct LoadedProblem {
    QueueingProblem base;
    std::optional<RequeueingProblem> initial;
};

namespace detail {

inline Scalar scalar_field(const json& j, const std::string& what)
{
    if (j.is_number_integer()) {
        return Scalar(j.get<long long>());
    }
    if (j.is_string()) {
        return parse_scalar(j.get<std::string>());
    }
    throw std::invalid_argument(what + " must be an integer or a \"p/q\" string");
}

} // namespace detail

/**
 * Reads a problem object:
 *
 *   {"weights": [20, 15, "21/2"], "machine_cost": "5/2",
 *    "initial": {"machines": 2, "order": [3, 1, 2]}}
 *
 * Weights must be positive and non-increasing; "initial" is optional, its
 * "order" (agents by serving priority, default 1..n) is dealt over the
 * machines round-robin with machine 1 first.  Malformed input raises
 * std::invalid_argument with a diagnostic.
 */
inline LoadedProblem problem_from_json(const json& j)
{
    if (!j.is_object()) {
        throw std::invalid_argument("problem must be a JSON object");
    }
    if (!j.contains("weights") || !j["weights"].is_array() || j["weights"].empty()) {
        throw std::invalid_argument("problem needs a non-empty \"weights\" array");
    }
    std::vector<Scalar> w;
    for (const json& el : j["weights"]) {
        w.push_back(detail::scalar_field(el, "weight"));
    }
    if (!j.contains("machine_cost")) {
        throw std::invalid_argument("problem needs a \"machine_cost\" field");
    }
    const int n = static_cast<int>(w.size());
    QueueingProblem base(std::move(w), detail::scalar_field(j["machine_cost"],
                                                            "machine_cost"));
    LoadedProblem out{std::move(base), std::nullopt};
    if (!j.contains("initial")) {
        return out;
    }

    const json& init = j["initial"];
    if (!init.is_object() || !init.contains("machines") ||
        !init["machines"].is_number_integer()) {
        throw std::invalid_argument("\"initial\" needs an integer \"machines\" field");
    }
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 1);
    if (init.contains("order")) {
        if (!init["order"].is_array()) {
            throw std::invalid_argument("\"order\" must be an array of agent labels");
        }
        order.clear();
        for (const json& el : init["order"]) {
            if (!el.is_number_integer()) {
                throw std::invalid_argument("\"order\" must list integer agent labels");
            }
            order.push_back(el.get<int>());
        }
    }
    out.initial = round_robin_requeueing(out.base, init["machines"].get<int>(), order);
    return out;
}

inline LoadedProblem problem_from_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open problem file: " + path);
    }
    return problem_from_json(json::parse(in));
}

inline json to_json(const QueueingProblem& p)
{
    json weights = json::array();
    for (const Scalar& w : p.weights()) {
        weights.push_back(to_string(w));
    }
    json out;
    out["weights"] = std::move(weights);
    out["machine_cost"] = to_string(p.machine_cost());
    return out;
}

inline json to_json(const RequeueingProblem& rq)
{
    json out = to_json(rq.base());
    json init;
    init["machines"] = rq.m0();
    json order = json::array();
    std::vector<SchedulingPlan::Slot> slots = rq.sigma0().slots;
    std::sort(slots.begin(), slots.end(), [](const auto& a, const auto& b) {
        return a.start != b.start ? a.start < b.start : a.machine < b.machine;
    });
    for (const SchedulingPlan::Slot& s : slots) {
        order.push_back(s.agent);
    }
    init["order"] = std::move(order);
    out["initial"] = std::move(init);
    return out;
}

// ---------------------------------------------------------------------------
// Result serialization
// ---------------------------------------------------------------------------

inline json to_json(const GameTable& game)
{
    json worth = json::object();
    const std::uint32_t full = Coalition::full(game.n()).mask();
    for (std::uint32_t m = 1; m <= full; ++m) {
        worth[coalition_key(Coalition(m))] = to_string(game.at(Coalition(m)));
    }
    json out;
    out["kind"] = to_string(game.kind());
    out["n"] = game.n();
    out["worth"] = std::move(worth);
    if (!game.warning().empty()) {
        out["warning"] = game.warning();
    }
    return out;
}

inline json to_json(const CoreCertificate& cert)
{
    json out;
    out["nonempty"] = cert.nonempty;
    if (cert.nonempty) {
        json witness = json::array();
        for (const Scalar& y : cert.witness) {
            witness.push_back(to_string(y));
        }
        out["witness"] = std::move(witness);
    } else {
        json mult = json::object();
        for (const auto& [s, lambda] : cert.multipliers) {
            mult[coalition_key(s)] = to_string(lambda);
        }
        out["multipliers"] = std::move(mult);
        out["family_worth"] = to_string(cert.family_worth);
    }
    return out;
}

inline json to_json(const CoreGuarantee& g)
{
    json out;
    out["name"] = g.name;
    out["scope"] = g.scope;
    out["applies"] = g.applies;
    out["detail"] = g.detail;
    return out;
}

inline json to_json(const std::vector<CoreGuarantee>& gs)
{
    json out = json::array();
    for (const CoreGuarantee& g : gs) {
        out.push_back(to_json(g));
    }
    return out;
}

inline json to_json(const RegimeEntry& e)
{
    json out;
    out["lower"] = to_string(e.lower);
    if (!e.unbounded) {
        out["upper"] = to_string(e.upper);
    }
    out["point"] = e.is_point;
    out["unbounded"] = e.unbounded;
    out["sample"] = to_string(e.sample);
    out["core"] = to_json(e.certificate);
    out["unique"] = e.core_is_unique;
    json counts = json::object();
    for (const auto& [s, k] : e.machine_counts) {
        counts[coalition_key(s)] = k;
    }
    out["machine_counts"] = std::move(counts);
    out["guarantees"] = e.guarantee_names;
    return out;
}

inline json to_json(const RegimeReport& report)
{
    json breakpoints = json::array();
    for (const Scalar& b : report.breakpoints) {
        breakpoints.push_back(to_string(b));
    }
    json entries = json::array();
    for (const RegimeEntry& e : report.entries) {
        entries.push_back(to_json(e));
    }
    json out;
    out["breakpoints"] = std::move(breakpoints);
    out["entries"] = std::move(entries);
    return out;
}

inline json to_json(const checks::CheckResult& r)
{
    json out;
    out["name"] = r.name;
    out["passed"] = r.passed;
    out["instances"] = r.instances;
    if (!r.detail.empty()) {
        out["detail"] = r.detail;
    }
    return out;
}

inline json to_json(const std::vector<checks::CheckResult>& rs)
{
    json out = json::array();
    for (const checks::CheckResult& r : rs) {
        out.push_back(to_json(r));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Text rendering
// ---------------------------------------------------------------------------

inline std::string to_text(const GameTable& game)
{
    std::string out = to_string(game.kind()) + " game over " +
                      std::to_string(game.n()) + " agents\n";
    const std::uint32_t full = Coalition::full(game.n()).mask();
    for (std::uint32_t m = 1; m <= full; ++m) {
        const Coalition s(m);
        out += "  " + s.to_string() + ": " + to_string(game.at(s)) + "\n";
    }
    if (!game.warning().empty()) {
        out += "warning: " + game.warning() + "\n";
    }
    return out;
}

inline std::string to_text(const CoreCertificate& cert, const GameTable& game)
{
    if (cert.nonempty) {
        std::string out = "core: nonempty\n  y = (";
        for (std::size_t i = 0; i < cert.witness.size(); ++i) {
            out += (i > 0 ? ", " : "") + to_string(cert.witness[i]);
        }
        return out + ")\n";
    }
    std::string out = "core: empty\n  balanced family worth " +
                      to_string(cert.family_worth) +
                      (game.kind() == GameKind::cost ? " below" : " above") +
                      " the grand worth " + to_string(game.grand_worth()) + "\n";
    for (const auto& [s, lambda] : cert.multipliers) {
        out += "  " + to_string(lambda) + " x " + s.to_string() + "\n";
    }
    return out;
}

inline std::string to_text(const std::vector<CoreGuarantee>& gs)
{
    std::string out;
    for (const CoreGuarantee& g : gs) {
        out += g.name + " [" + g.scope + "]: " +
               (g.applies ? "applies" : "does not apply") + " (" + g.detail + ")\n";
    }
    return out;
}

inline std::string to_text(const RegimeReport& report)
{
    std::string out = "breakpoints:";
    for (const Scalar& b : report.breakpoints) {
        out += " " + to_string(b);
    }
    out += "\n";
    for (const RegimeEntry& e : report.entries) {
        std::string row;
        if (e.is_point) {
            row = "b = " + to_string(e.lower);
        } else if (e.unbounded) {
            row = "b > " + to_string(e.lower);
        } else {
            row = "b in (" + to_string(e.lower) + ", " + to_string(e.upper) + ")";
        }
        row += ": core " + std::string(e.certificate.nonempty ? "nonempty" : "empty");
        if (e.core_is_unique) {
            row += " (unique)";
        }
        std::string multi;
        for (const auto& [s, k] : e.machine_counts) {
            if (k > 1) {
                multi += (multi.empty() ? "" : ", ") + std::string("m(") +
                         s.to_string() + ")=" + std::to_string(k);
            }
        }
        row += "; " + (multi.empty() ? "one machine each" : multi);
        if (!e.guarantee_names.empty()) {
            row += "; guarantees:";
            for (const std::string& name : e.guarantee_names) {
                row += " " + name;
            }
        }
        out += row + "\n";
    }
    return out;
}

inline std::string to_text(const std::vector<checks::CheckResult>& rs)
{
    std::string out;
    for (const checks::CheckResult& r : rs) {
        out += std::string(r.passed ? "[pass] " : "[FAIL] ") + r.name + " (" +
               std::to_string(r.instances) + " instances)";
        if (!r.detail.empty()) {
            out += ": " + r.detail;
        }
        out += "\n";
    }
    return out;
}

} // namespace endoq::io

#endif // ENDOQ_IO_HPP
