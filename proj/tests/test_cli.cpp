#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(WB_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult result;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) result.out.append(buf.data(), n);
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string data(const std::string& rel) { return std::string(WB_DATA_DIR) + "/" + rel; }

std::string slurp(const std::filesystem::path& path) {
    std::ifstream file(path, std::ios::binary);
    REQUIRE(file.good());
    std::ostringstream text;
    text << file.rdbuf();
    return text.str();
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("wbcli_" + name);
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("cli: run-life traces are deterministic and exact") {
    std::string args = "run-life --world builtin:echo-reward --agent index:1 --steps 10";
    RunResult first = run_cli(args);
    CHECK(first.exit_code == 0);
    CHECK(contains(first.out, "step,view,action,cumulative_value"));
    CHECK(contains(first.out, "life_value = 10"));
    CHECK(run_cli(args).out == first.out);

    SUBCASE("--out writes the same bytes as stdout") {
        auto path = temp_file("trace.csv");
        RunResult redirected = run_cli(args + " --out " + path.string());
        CHECK(redirected.exit_code == 0);
        CHECK(redirected.out.empty());
        CHECK(slurp(path) == first.out);
        std::filesystem::remove(path);
    }
    SUBCASE("seeded stochastic agents repeat too") {
        std::string noisy =
            "run-life --world builtin:two-door-bandit --agent learner --steps 200 --seed 7";
        CHECK(run_cli(noisy).out == run_cli(noisy).out);
    }
    SUBCASE("world files load the same as builtins") {
        RunResult from_file = run_cli("run-life --world " + data("worlds/echo-reward.world") +
                                      " --agent index:1 --steps 10");
        CHECK(from_file.exit_code == 0);
        CHECK(contains(from_file.out, "life_value = 10"));
    }
}

TEST_CASE("cli: bad inputs exit 1") {
    CHECK(run_cli("run-life --world /nonexistent.world").exit_code == 1);
    CHECK(run_cli("run-life --world builtin:echo-reward --agent const:zap").exit_code == 1);
    CHECK(run_cli("search --suite /nonexistent.suite").exit_code == 1);
    CHECK(run_cli("run-life").exit_code != 0);  // missing required --world
}

TEST_CASE("cli: check-world verdicts and exit codes") {
    RunResult maze = run_cli("check-world --world builtin:gated-maze");
    CHECK(maze.exit_code == 3);
    CHECK(contains(maze.out, "verdict = has_fatal_errors"));
    CHECK(contains(maze.out, "rate TRAP = -1"));
    CHECK(contains(maze.out, "reachable_fatal = TRAP"));

    RunResult safe = run_cli("check-world --world builtin:gated-maze-safe");
    CHECK(safe.exit_code == 0);
    CHECK(contains(safe.out, "verdict = good"));
    CHECK(contains(safe.out, "fatal_states =\n"));

    // stochastic worlds have no deterministic rate analysis
    CHECK(run_cli("check-world --world builtin:two-door-bandit").exit_code == 4);
}

TEST_CASE("cli: tree dumps") {
    RunResult root = run_cli("tree --world builtin:echo-reward --depth 0");
    CHECK(root.exit_code == 0);
    CHECK(root.out == "- g\n");

    RunResult one = run_cli("tree --world builtin:echo-reward --depth 1");
    CHECK(one.exit_code == 0);
    CHECK(one.out == "- g\nb b\ng g\n");

    RunResult states = run_cli("tree --world builtin:echo-reward --depth 1 --states");
    CHECK(states.exit_code == 0);
    CHECK(contains(states.out, "- G\n"));

    CHECK(run_cli("tree --world builtin:echo-reward --depth 12 --node-cap 100").exit_code == 1);
}

TEST_CASE("cli: search against shipped suites") {
    std::string echo_suite = data("suites/echo.suite");
    RunResult seq = run_cli("search --suite " + echo_suite);
    CHECK(seq.exit_code == 0);
    CHECK(contains(seq.out, "winner = 1\n"));
    CHECK(contains(seq.out, "winner_states = 1"));

    RunResult dove = run_cli("search --suite " + echo_suite + " --dovetail --slice 7");
    CHECK(dove.exit_code == 0);
    CHECK(contains(dove.out, "winner = 1\n"));

    RunResult hopeless = run_cli("search --suite " + data("suites/impossible.suite"));
    CHECK(hopeless.exit_code == 2);
    CHECK(contains(hopeless.out, "winner = none"));

    SUBCASE("reports are byte-identical run to run") {
        auto a = temp_file("report_a.txt");
        auto b = temp_file("report_b.txt");
        std::string args = "search --suite " + echo_suite + " --out ";
        CHECK(run_cli(args + a.string()).exit_code == 0);
        CHECK(run_cli(args + b.string()).exit_code == 0);
        CHECK(slurp(a) == slurp(b));
        std::filesystem::remove(a);
        std::filesystem::remove(b);
    }
}

TEST_CASE("cli: bench prints the enumeration table") {
    RunResult bench = run_cli("bench --max-states 3");
    CHECK(bench.exit_code == 0);
    CHECK(contains(bench.out, "states,policies,bit_length"));
    CHECK(contains(bench.out, "1,4,3\n"));
    CHECK(contains(bench.out, "2,256,11\n"));
    CHECK(contains(bench.out, "3,46656,21\n"));

    RunResult timed = run_cli("bench --max-states 2 --suite " + data("suites/echo.suite"));
    CHECK(timed.exit_code == 0);
    CHECK(contains(timed.out, "winner = 1"));
}
