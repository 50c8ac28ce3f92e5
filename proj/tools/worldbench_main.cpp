// worldbench: run lives in finite worlds, dump their trees, check worlds for
// fatal errors, and search length-ordered policy space against test suites.
//
// Exit codes: 0 success/good-world, 1 usage or input errors, 2 search ended
// without a winner, 3 world has fatal errors, 4 unsupported analysis.

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "worldbench/agents.hpp"
#include "worldbench/errors.hpp"
#include "worldbench/life_tree.hpp"
#include "worldbench/search.hpp"
#include "worldbench/suite_io.hpp"
#include "worldbench/worlds_lib.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNoWinner = 2;
constexpr int kExitFatalErrors = 3;
constexpr int kExitUnsupported = 4;

wb::ParsedWorld load_world_arg(const std::string& arg) {
    if (arg.rfind("builtin:", 0) == 0) return wb::builtin_world(arg.substr(8));
    return wb::load_world_file(arg);
}

// Agent specs: const:<omega-letter> | random | index:<n> | policy:<path> |
// learner[:window=..,eps=..,decay=..,alpha=..,gamma=..]
std::unique_ptr<wb::Agent> make_agent(const std::string& spec, const wb::ParsedWorld& world,
                                      std::uint64_t seed) {
    const auto& sigma = world.world.sigma();
    const auto& omega = world.world.omega();
    if (spec == "random") return wb::make_random(sigma.size(), omega.size(), seed);
    if (spec.rfind("const:", 0) == 0) {
        auto letter = omega.find(spec.substr(6));
        if (!letter) throw wb::ConfigError("constant letter '" + spec.substr(6) + "' not in omega");
        return wb::make_constant(*letter, sigma.size(), omega.size());
    }
    if (spec.rfind("index:", 0) == 0) {
        auto policy = wb::decode_policy(std::stoull(spec.substr(6)),
                                        static_cast<std::uint32_t>(sigma.size()),
                                        static_cast<std::uint32_t>(omega.size()));
        return std::make_unique<wb::TransducerAgent>(policy);
    }
    if (spec.rfind("policy:", 0) == 0) {
        std::ifstream file(spec.substr(7));
        if (!file) throw wb::ConfigError("cannot open policy file '" + spec.substr(7) + "'");
        std::ostringstream text;
        text << file.rdbuf();
        return std::make_unique<wb::TransducerAgent>(wb::parse_policy(text.str(), sigma, omega));
    }
    if (spec.rfind("learner", 0) == 0) {
        wb::LearnerParams params;
        if (spec.size() > 7 && spec[7] == ':') {
            std::istringstream opts(spec.substr(8));
            std::string kv;
            while (std::getline(opts, kv, ',')) {
                auto eq = kv.find('=');
                if (eq == std::string::npos) throw wb::ConfigError("bad learner option '" + kv + "'");
                std::string key = kv.substr(0, eq);
                std::string value = kv.substr(eq + 1);
                if (key == "window") params.window = static_cast<unsigned>(std::stoul(value));
                else if (key == "eps") params.eps0 = std::stod(value);
                else if (key == "decay") params.eps_decay = std::stod(value);
                else if (key == "alpha") params.alpha = std::stod(value);
                else if (key == "gamma") params.gamma = std::stod(value);
                else throw wb::ConfigError("unknown learner option '" + key + "'");
            }
        }
        return wb::make_history_learner(params, world.meaning, sigma.size(), omega.size(), seed);
    }
    throw wb::ConfigError("unknown agent spec '" + spec + "'");
}

class OutputSink {
public:
    explicit OutputSink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw wb::ConfigError("cannot open output file '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

int cmd_run_life(const std::string& world_arg, const std::string& agent_spec,
                 std::uint64_t steps, std::uint64_t seed, const std::string& out_path) {
    auto world = load_world_arg(world_arg);
    auto agent = make_agent(agent_spec, world, seed);
    auto life = wb::run_life(world.world, *agent, steps, seed);
    OutputSink sink(out_path);
    auto& os = sink.stream();
    os << "# worldbench run-life\n";
    os << "# world = " << world_arg << "\n";
    os << "# agent = " << agent_spec << "\n";
    os << "# steps = " << steps << "\n";
    os << "# seed = " << seed << "\n";
    os << "step,view,action,cumulative_value\n";
    long long cumulative = 0;
    for (std::size_t i = 0; i < life.length(); ++i) {
        cumulative += world.meaning.value_of(life.views[i]);
        os << i << "," << world.world.sigma().letter(life.views[i]) << ","
           << world.world.omega().letter(life.actions[i]) << "," << cumulative << "\n";
    }
    os << "life_value = " << wb::life_value(life, world.meaning) << "\n";
    return kExitOk;
}

int cmd_search(const std::string& suite_path, std::uint32_t max_states,
               std::uint64_t policy_cap, std::uint64_t step_budget, bool dovetail,
               std::uint64_t slice, const std::string& out_path) {
    auto suite = wb::parse_suite_file(suite_path);
    if (policy_cap != 0) suite.policy_cap = policy_cap;
    if (step_budget != 0) suite.step_budget = step_budget;
    wb::SearchReport report = dovetail ? wb::dovetail_search(suite, max_states, slice)
                                       : wb::search_ai(suite, max_states);
    OutputSink sink(out_path);
    auto& os = sink.stream();
    os << "# worldbench search\n";
    os << "# suite = " << suite_path << "\n";
    os << "# mode = " << (dovetail ? "dovetail" : "sequential") << "\n";
    os << "# max_states = " << max_states << "\n";
    if (dovetail) os << "# slice = " << slice << "\n";
    wb::write_report(os, report, suite);
    std::cerr << "search took " << report.wall_ms << " ms\n";
    return report.winner_index ? kExitOk : kExitNoWinner;
}

int cmd_check_world(const std::string& world_arg, const std::string& out_path) {
    auto world = load_world_arg(world_arg);
    auto report = wb::analyze_good_world(world.world, world.meaning);
    auto proxy = wb::complexity_proxy(world.world);
    OutputSink sink(out_path);
    auto& os = sink.stream();
    os << "# worldbench check-world\n";
    os << "# world = " << world_arg << "\n";
    for (wb::State s = 0; s < world.world.state_count(); ++s) {
        const auto& rate = report.rates[s];
        os << "rate " << world.world.state_name(s) << " = " << rate.numerator();
        if (rate.denominator() != 1) os << "/" << rate.denominator();
        os << "\n";
    }
    os << "fatal_states =";
    for (wb::State s : report.fatal_states) os << " " << world.world.state_name(s);
    os << "\nreachable_fatal =";
    for (wb::State s : report.reachable_fatal) os << " " << world.world.state_name(s);
    os << "\nstates = " << proxy.states << "\n";
    os << "minimized_states = " << proxy.minimized_states << "\n";
    os << "verdict = " << (report.good ? "good" : "has_fatal_errors") << "\n";
    return report.good ? kExitOk : kExitFatalErrors;
}

int cmd_tree(const std::string& world_arg, unsigned depth, bool states,
             std::uint64_t node_cap, const std::string& out_path) {
    auto world = load_world_arg(world_arg);
    OutputSink sink(out_path);
    auto& os = sink.stream();
    if (states) {
        auto tree = wb::expand_state_tree(world.world, depth, node_cap);
        os << wb::dump_state_tree(tree, world.world);
    } else {
        auto tree = wb::expand_life_tree(world.world, depth, node_cap);
        os << wb::dump_life_tree(tree, world.world.sigma(), world.world.omega());
    }
    return kExitOk;
}

int cmd_bench(std::uint32_t max_states, const std::string& suite_path,
              const std::string& out_path) {
    OutputSink sink(out_path);
    auto& os = sink.stream();
    os << "# worldbench bench\n";
    os << "# max_states = " << max_states << "\n";
    std::uint32_t sigma_size = 2, omega_size = 2;
    std::optional<wb::TestSuite> suite;
    if (!suite_path.empty()) {
        suite = wb::parse_suite_file(suite_path);
        sigma_size = static_cast<std::uint32_t>(suite->specs[0].world.sigma().size());
        omega_size = static_cast<std::uint32_t>(suite->specs[0].world.omega().size());
        os << "# suite = " << suite_path << "\n";
    }
    os << "states,policies,bit_length\n";
    for (std::uint32_t s = 1; s <= max_states; ++s) {
        auto count = wb::policy_count(s, sigma_size, omega_size);
        os << s << "," << (count ? std::to_string(*count) : std::string("overflow")) << ","
           << wb::policy_bit_length(s, sigma_size, omega_size) << "\n";
    }
    if (suite) {
        auto t0 = std::chrono::steady_clock::now();
        auto report = wb::search_ai(*suite, max_states);
        double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                        .count();
        os << "examined = " << report.examined << "\n";
        os << "total_steps = " << report.total_steps << "\n";
        os << "winner = ";
        if (report.winner_index) os << *report.winner_index << "\n";
        else os << "none\n";
        std::cerr << "evaluated " << report.examined << " candidates in " << ms << " ms\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"worldbench: finite-world agent simulation and policy search"};
    app.require_subcommand(1);

    std::string world_arg, agent_spec = "random", suite_path, out_path;
    std::uint64_t steps = 100, seed = 0, policy_cap = 0, step_budget = 0, slice = 64;
    std::uint64_t node_cap = wb::kDefaultTreeNodeCap;
    std::uint32_t max_states = 2;
    unsigned depth = 0;
    bool dovetail = false, state_tree = false;

    auto* run = app.add_subcommand("run-life", "run one agent life and trace it");
    run->add_option("--world", world_arg, "world file or builtin:<name>")->required();
    run->add_option("--agent", agent_spec, "agent spec (const:<l>|random|learner|index:<n>|policy:<path>)");
    run->add_option("--steps", steps, "life length");
    run->add_option("--seed", seed, "rng seed");
    run->add_option("--out", out_path, "write the trace to a file");

    auto* search = app.add_subcommand("search", "search policy space against a suite");
    search->add_option("--suite", suite_path, "suite file")->required();
    search->add_option("--max-states", max_states, "largest policy state count");
    search->add_option("--policy-cap", policy_cap, "max candidates (overrides suite)");
    search->add_option("--step-budget", step_budget, "per-candidate step cap (overrides suite)");
    search->add_flag("--dovetail", dovetail, "interleave candidates instead of sequential order");
    search->add_option("--slice", slice, "steps per candidate per dovetail round");
    search->add_option("--out", out_path, "write the report to a file");

    auto* check = app.add_subcommand("check-world", "fatal-error and complexity analysis");
    check->add_option("--world", world_arg, "world file or builtin:<name>")->required();
    check->add_option("--out", out_path, "write the report to a file");

    auto* tree = app.add_subcommand("tree", "dump the tree of life (or of states)");
    tree->add_option("--world", world_arg, "world file or builtin:<name>")->required();
    tree->add_option("--depth", depth, "tree depth");
    tree->add_flag("--states", state_tree, "dump states instead of view letters");
    tree->add_option("--node-cap", node_cap, "max tree nodes");
    tree->add_option("--out", out_path, "write the dump to a file");

    auto* bench = app.add_subcommand("bench", "measure the enumeration explosion");
    bench->add_option("--max-states", max_states, "largest policy state count");
    bench->add_option("--suite", suite_path, "optionally time a sequential search");
    bench->add_option("--out", out_path, "write the table to a file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run_life(world_arg, agent_spec, steps, seed, out_path);
        if (search->parsed())
            return cmd_search(suite_path, max_states, policy_cap, step_budget, dovetail, slice,
                              out_path);
        if (check->parsed()) return cmd_check_world(world_arg, out_path);
        if (tree->parsed()) return cmd_tree(world_arg, depth, state_tree, node_cap, out_path);
        if (bench->parsed()) return cmd_bench(max_states, suite_path, out_path);
    } catch (const wb::UnsupportedAnalysisError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUnsupported;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
