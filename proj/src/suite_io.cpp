#include "worldbench/suite_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "worldbench/errors.hpp"
#include "worldbench/worlds_lib.hpp"

namespace wb {

namespace {

struct PendingSpec {
    std::string name;
    ParsedWorld world;
    std::uint64_t train = 0;
    std::uint64_t eval = 0;
    std::uint64_t seed = 0;
    bool has_eval = false;
    std::string require;  // resolved once eval is known
    std::size_t require_line = 0;
};

std::uint64_t parse_u64(const std::string& text, std::size_t line) {
    try {
        return std::stoull(text);
    } catch (const std::exception&) {
        throw ParseError(ParseCode::bad_number, line, 1, "cannot parse number '" + text + "'");
    }
}

TestWorldSpec finish(PendingSpec&& p) {
    if (!p.has_eval) {
        throw ParseError(ParseCode::missing_section, p.require_line, 1,
                         "suite block '" + p.name + "' is missing 'eval'");
    }
    if (p.require.empty()) {
        throw ParseError(ParseCode::missing_section, p.require_line, 1,
                         "suite block '" + p.name + "' is missing 'require'");
    }
    TestWorldSpec spec;
    spec.name = std::move(p.name);
    spec.world = std::move(p.world.world);
    spec.meaning = std::move(p.world.meaning);
    spec.train_steps = p.train;
    spec.eval_steps = p.eval;
    spec.seed = p.seed;
    std::size_t colon = p.require.find(':');
    if (colon == std::string::npos) {
        spec.requirement = Requirement::value(std::stoll(p.require));
    } else {
        long long g = std::stoll(p.require.substr(0, colon));
        long long b = std::stoll(p.require.substr(colon + 1));
        spec.requirement = Requirement::ratio(g, b, spec.eval_steps);
    }
    return spec;
}

}  // namespace

TestSuite parse_suite_file(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw ConfigError("cannot open suite file '" + path + "'");
    const auto base_dir = std::filesystem::path(path).parent_path();

    TestSuite suite;
    std::optional<PendingSpec> current;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(file, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head) || head[0] == '#') continue;
        std::string arg;
        ls >> arg;
        if (head == "world") {
            if (current) suite.specs.push_back(finish(std::move(*current)));
            current = PendingSpec();
            current->require_line = line_no;
            if (arg.rfind("builtin:", 0) == 0) {
                current->name = arg.substr(8);
                current->world = builtin_world(current->name);
            } else {
                auto world_path = base_dir / arg;
                current->name = world_path.stem().string();
                current->world = load_world_file(world_path.string());
            }
        } else if (head == "train" && current) {
            current->train = parse_u64(arg, line_no);
        } else if (head == "eval" && current) {
            current->eval = parse_u64(arg, line_no);
            current->has_eval = true;
        } else if (head == "require" && current) {
            current->require = arg;
            current->require_line = line_no;
        } else if (head == "seed" && current) {
            current->seed = parse_u64(arg, line_no);
        } else if (head == "policy_cap" && !current) {
            suite.policy_cap = parse_u64(arg, line_no);
        } else if (head == "step_budget" && !current) {
            suite.step_budget = parse_u64(arg, line_no);
        } else {
            throw ParseError(ParseCode::bad_directive, line_no, 1,
                             "unexpected suite line '" + head + "'");
        }
    }
    if (current) suite.specs.push_back(finish(std::move(*current)));
    if (suite.specs.empty()) {
        throw ParseError(ParseCode::missing_section, line_no, 1, "suite has no world blocks");
    }
    return suite;
}

}  // namespace wb
