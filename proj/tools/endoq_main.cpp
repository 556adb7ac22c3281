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

#include <endoq/endoq.hpp>

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <stdexcept>
#include <string>

#ifndef ENDOQ_FIXTURE_DIR
#define ENDOQ_FIXTURE_DIR "fixtures"
#endif

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitCapExceeded = 3;
constexpr int kExitCoreEmpty = 10;

struct RunConfig {
    std::string command;
    std::string problem_path;
    std::string family = "queueing";
    std::string variant = "swaps";
    std::string format = "json";
    std::string fixtures = ENDOQ_FIXTURE_DIR;
    std::uint64_t seed = 1;
    int max_n = 0;  // 0: only the library caps apply
};

endoq::Variant parse_variant(const std::string& name)
{
    if (name == "swaps") {
        return endoq::Variant::swaps;
    }
    if (name == "no-swaps" || name == "no_swaps") {
        return endoq::Variant::no_swaps;
    }
    throw std::invalid_argument("unknown variant '" + name +
                                "' (expected swaps or no-swaps)");
}

std::string check_format(const std::string& name)
{
    if (name != "json" && name != "text") {
        throw std::invalid_argument("unknown format '" + name +
                                    "' (expected json or text)");
    }
    return name;
}

endoq::io::LoadedProblem load_problem(const RunConfig& cfg)
{
    if (cfg.problem_path.empty()) {
        throw std::invalid_argument("this command needs --problem <file>");
    }
    endoq::io::LoadedProblem lp = endoq::io::problem_from_file(cfg.problem_path);
    if (cfg.max_n > 0 && lp.base.n() > cfg.max_n) {
        throw endoq::cap_exceeded("problem has " + std::to_string(lp.base.n()) +
                                  " agents but --max-n allows " +
                                  std::to_string(cfg.max_n));
    }
    return lp;
}

const endoq::RequeueingProblem& initial_position(const RunConfig& cfg,
                                                 const endoq::io::LoadedProblem& lp)
{
    if (!lp.initial) {
        throw std::invalid_argument("the " + cfg.family +
                                    " family needs an \"initial\" block in the "
                                    "problem file");
    }
    return *lp.initial;
}

endoq::GameTable build_table(const RunConfig& cfg, const endoq::io::LoadedProblem& lp)
{
    if (cfg.family == "queueing") {
        return endoq::queueing_cost_game(lp.base);
    }
    if (cfg.family == "reduced") {
        return endoq::reduced_cost_game(lp.base);
    }
    if (cfg.family == "private") {
        return endoq::private_requeueing_game(initial_position(cfg, lp),
                                              parse_variant(cfg.variant));
    }
    if (cfg.family == "public") {
        return endoq::public_requeueing_game(initial_position(cfg, lp),
                                             parse_variant(cfg.variant));
    }
    if (cfg.family == "relaxed") {
        return endoq::relaxed_public_game(initial_position(cfg, lp));
    }
    throw std::invalid_argument("unknown family '" + cfg.family +
                                "' (expected queueing, reduced, private, public "
                                "or relaxed)");
}

void emit(const std::string& body) { std::cout << body << std::flush; }

int cmd_game(const RunConfig& cfg)
{
    const endoq::io::LoadedProblem lp = load_problem(cfg);
    const endoq::GameTable table = build_table(cfg, lp);
    emit(cfg.format == "json" ? endoq::io::to_json(table).dump(2) + "\n"
                              : endoq::io::to_text(table));
    return kExitOk;
}

int cmd_core(const RunConfig& cfg)
{
    const endoq::io::LoadedProblem lp = load_problem(cfg);
    const endoq::GameTable table = build_table(cfg, lp);
    const endoq::CoreCertificate cert = endoq::core_nonempty(table);
    emit(cfg.format == "json" ? endoq::io::to_json(cert).dump(2) + "\n"
                              : endoq::io::to_text(cert, table));
    return cert.nonempty ? kExitOk : kExitCoreEmpty;
}

int cmd_regimes(const RunConfig& cfg)
{
    const endoq::io::LoadedProblem lp = load_problem(cfg);
    if (lp.initial) {
        throw std::invalid_argument(
            "regimes sweeps the machine cost of a queueing problem; drop the "
            "\"initial\" block");
    }
    const endoq::RegimeReport report = endoq::classify_regimes(lp.base);
    emit(cfg.format == "json" ? endoq::io::to_json(report).dump(2) + "\n"
                              : endoq::io::to_text(report));
    return kExitOk;
}

int cmd_verify_paper(const RunConfig& cfg)
{
    const std::vector<endoq::ClaimResult> claims =
        endoq::reference_claims(cfg.fixtures);
    emit(cfg.format == "json" ? endoq::io::to_json(claims).dump(2) + "\n"
                              : endoq::io::to_text(claims));
    for (const endoq::ClaimResult& c : claims) {
        if (!c.passed) {
            return kExitMismatch;
        }
    }
    return kExitOk;
}

int cmd_oracle_check(const RunConfig& cfg)
{
    const int max_n = cfg.max_n > 0 ? cfg.max_n : 6;
    const std::vector<endoq::checks::CheckResult> results =
        endoq::checks::run_all_checks(cfg.seed, 200, 100, max_n);
    emit(cfg.format == "json" ? endoq::io::to_json(results).dump(2) + "\n"
                              : endoq::io::to_text(results));
    for (const endoq::checks::CheckResult& r : results) {
        if (!r.passed) {
            return kExitMismatch;
        }
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"cooperative queueing games with an endogenous number of machines"};
    app.require_subcommand(1);

    RunConfig cfg;
    const auto add_common = [&cfg](CLI::App* sub, bool with_problem) {
        if (with_problem) {
            sub->add_option("--problem", cfg.problem_path, "problem JSON file")
                ->required();
        }
        sub->add_option("--format", cfg.format, "output format: json or text");
        sub->add_option("--max-n", cfg.max_n, "refuse problems above this size");
    };

    CLI::App* game = app.add_subcommand("game", "build a characteristic function");
    add_common(game, true);
    game->add_option("--family", cfg.family,
                     "queueing, reduced, private, public or relaxed");
    game->add_option("--variant", cfg.variant, "swaps or no-swaps");

    CLI::App* core = app.add_subcommand("core", "test core nonemptiness");
    add_common(core, true);
    core->add_option("--family", cfg.family,
                     "queueing, reduced, private, public or relaxed");
    core->add_option("--variant", cfg.variant, "swaps or no-swaps");

    CLI::App* regimes =
        app.add_subcommand("regimes", "sweep the machine cost of a queueing problem");
    add_common(regimes, true);

    CLI::App* verify =
        app.add_subcommand("verify-paper", "replay the bundled example expectations");
    add_common(verify, false);
    verify->add_option("--fixtures", cfg.fixtures, "directory with the example files");

    CLI::App* oracle =
        app.add_subcommand("oracle-check", "randomized equivalence and property runs");
    add_common(oracle, false);
    oracle->add_option("--seed", cfg.seed, "seed for the instance generator");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitBadInput;
    }

    try {
        check_format(cfg.format);
        if (game->parsed()) {
            return cmd_game(cfg);
        }
        if (core->parsed()) {
            return cmd_core(cfg);
        }
        if (regimes->parsed()) {
            return cmd_regimes(cfg);
        }
        if (verify->parsed()) {
            return cmd_verify_paper(cfg);
        }
        return cmd_oracle_check(cfg);
    } catch (const endoq::cap_exceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCapExceeded;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
}
