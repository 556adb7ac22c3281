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

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct RunResult {
    int status = -1;
    std::string output;
};

RunResult run_cli(const std::string& args, bool merge_stderr = true)
{
    const std::string command = std::string("\"") + ENDOQ_CLI_PATH + "\" " + args +
                                (merge_stderr ? " 2>&1" : " 2>/dev/null");
    RunResult result;
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buffer[4096];
    std::size_t got = 0;
    while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) {
        result.output.append(buffer, got);
    }
    const int raw = pclose(pipe);
    REQUIRE(raw != -1);
    result.status = WEXITSTATUS(raw);
    return result;
}

std::string fixture(const std::string& name)
{
    return std::string(ENDOQ_FIXTURES) + "/" + name;
}

std::string write_file(const std::string& name, const std::string& body)
{
    std::ofstream out(name);
    REQUIRE(out.good());
    out << body;
    out.close();
    return name;
}

bool contains(const std::string& haystack, const std::string& needle)
{
    return haystack.find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("help is printed with a clean exit")
{
    CHECK(run_cli("--help").status == 0);
    CHECK(run_cli("game --help").status == 0);

    const RunResult bare = run_cli("");
    CHECK(bare.status == 2);
}

TEST_CASE("game command prints coalition tables")
{
    const RunResult plain = run_cli("game --problem " + fixture("example1.json"));
    CHECK(plain.status == 0);
    CHECK(contains(plain.output, "\"kind\": \"cost\""));
    CHECK(contains(plain.output, "\"1,2,3,4\": \"125\""));

    const RunResult swaps = run_cli("game --problem " + fixture("example2.json") +
                                    " --family private --variant swaps");
    CHECK(swaps.status == 0);
    CHECK(contains(swaps.output, "\"kind\": \"value\""));
    CHECK(contains(swaps.output, "\"2,4,5\": \"38\""));

    const RunResult frozen = run_cli("game --problem " + fixture("example2.json") +
                                     " --family private --variant no-swaps");
    CHECK(frozen.status == 0);
    CHECK(contains(frozen.output, "\"2,4,5\": \"36\""));

    const RunResult text = run_cli("game --problem " + fixture("example1.json") +
                                   " --format text");
    CHECK(text.status == 0);
    CHECK(contains(text.output, "cost game over 4 agents"));
    CHECK(contains(text.output, "{1,2,3,4}: 125"));
}

TEST_CASE("core command reports emptiness through the exit code")
{
    const RunResult mid = run_cli("core --problem " + fixture("example1.json"));
    CHECK(mid.status == 10);
    CHECK(contains(mid.output, "\"nonempty\": false"));

    const RunResult priv = run_cli("core --problem " + fixture("example2.json") +
                                   " --family private --variant swaps");
    CHECK(priv.status == 10);

    const RunResult pub = run_cli("core --problem " + fixture("example3.json") +
                                  " --family public");
    CHECK(pub.status == 10);

    const std::string cheap = write_file(
        "cli_cheap_machines.json",
        "{\"weights\": [20, 15, 10, 5], \"machine_cost\": \"50\"}\n");
    const RunResult nonempty = run_cli("core --problem " + cheap);
    CHECK(nonempty.status == 0);
    CHECK(contains(nonempty.output, "\"nonempty\": true"));

    const RunResult text = run_cli("core --problem " + fixture("example1.json") +
                                   " --format text");
    CHECK(text.status == 10);
    CHECK(contains(text.output, "core: empty"));
}

TEST_CASE("regimes command sweeps bare queueing problems only")
{
    const RunResult sweep = run_cli("regimes --problem " + fixture("example1.json"));
    CHECK(sweep.status == 0);
    CHECK(contains(sweep.output, "\"breakpoints\""));
    CHECK(contains(sweep.output, "\"50\""));

    const RunResult scheduled =
        run_cli("regimes --problem " + fixture("example2.json"));
    CHECK(scheduled.status == 2);
    CHECK(contains(scheduled.output, "initial"));
}

TEST_CASE("verify-paper replays the bundled expectations")
{
    const RunResult result = run_cli("verify-paper --format text");
    CHECK(result.status == 0);
    CHECK(contains(result.output, "[pass]"));
    CHECK_FALSE(contains(result.output, "[FAIL]"));
}

TEST_CASE("malformed input exits with the input error code")
{
    CHECK(run_cli("game --problem does_not_exist.json").status == 2);

    const std::string broken = write_file("cli_broken.json", "{ \"weights\": [");
    CHECK(run_cli("game --problem " + broken).status == 2);

    const std::string increasing = write_file(
        "cli_increasing.json",
        "{\"weights\": [5, 10, 20], \"machine_cost\": \"3\"}\n");
    CHECK(run_cli("game --problem " + increasing).status == 2);

    const RunResult family = run_cli("game --problem " + fixture("example1.json") +
                                     " --family bogus");
    CHECK(family.status == 2);
    CHECK(contains(family.output, "family"));

    CHECK(run_cli("game --problem " + fixture("example2.json") +
                  " --family private --variant sometimes")
              .status == 2);
    CHECK(run_cli("game --problem " + fixture("example1.json") + " --format yaml")
              .status == 2);

    const RunResult missing = run_cli("game --problem " + fixture("example1.json") +
                                      " --family private");
    CHECK(missing.status == 2);
    CHECK(contains(missing.output, "initial"));
}

TEST_CASE("size caps exit with the cap code")
{
    const RunResult capped = run_cli("game --problem " + fixture("example2.json") +
                                     " --max-n 4");
    CHECK(capped.status == 3);

    std::string weights = "[";
    for (int w = 13; w >= 1; --w) {
        weights += (w < 13 ? ", " : "") + std::to_string(w);
    }
    weights += "]";
    const std::string big = write_file(
        "cli_thirteen.json",
        "{\"weights\": " + weights + ", \"machine_cost\": \"4\"}\n");
    CHECK(run_cli("regimes --problem " + big).status == 3);

    const std::string nine = write_file(
        "cli_nine.json",
        "{\"weights\": [9, 8, 7, 6, 5, 4, 3, 2, 1], \"machine_cost\": \"4\","
        " \"initial\": {\"machines\": 1, \"order\": [1, 2, 3, 4, 5, 6, 7, 8, 9]}}\n");
    CHECK(run_cli("game --problem " + nine + " --family private").status == 3);
}

TEST_CASE("json output is byte-identical across runs")
{
    const std::string sweep_args =
        "regimes --problem " + fixture("example1.json");
    const RunResult sweep_a = run_cli(sweep_args, false);
    const RunResult sweep_b = run_cli(sweep_args, false);
    CHECK(sweep_a.status == 0);
    CHECK(sweep_a.output == sweep_b.output);
    CHECK_FALSE(sweep_a.output.empty());

    const std::string check_args = "oracle-check --seed 7 --max-n 4";
    const RunResult check_a = run_cli(check_args, false);
    const RunResult check_b = run_cli(check_args, false);
    CHECK(check_a.status == 0);
    CHECK(check_a.output == check_b.output);
    CHECK(contains(check_a.output, "\"game-value-oracle\""));
    CHECK(contains(check_a.output, "\"passed\": true"));
}
