#include "worldbench/life_tree.hpp"

#include <deque>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "worldbench/errors.hpp"

namespace wb {

namespace {

void require_deterministic(const WorldDef& world, const char* what) {
    if (!world.deterministic()) {
        throw UnsupportedAnalysisError(std::string(what) + " requires a deterministic world");
    }
}

std::uint64_t checked_tree_nodes(std::uint32_t k, unsigned depth, std::uint64_t cap) {
    std::uint64_t nodes = 0;
    std::uint64_t level = 1;
    for (unsigned d = 0; d <= depth; ++d) {
        nodes += level;
        if (nodes > cap) {
            throw ResourceLimitError("tree would exceed the node cap of " + std::to_string(cap) +
                                     " nodes");
        }
        if (d < depth) {
            if (level > cap / k + 1) level = cap + 1;  // saturate, next loop trips the cap
            else level *= k;
        }
    }
    return nodes;
}

}  // namespace

std::uint64_t tree_node_count(std::uint32_t branching, unsigned depth) {
    std::uint64_t nodes = 0;
    std::uint64_t level = 1;
    for (unsigned d = 0; d <= depth; ++d) {
        nodes += level;
        level *= branching;
    }
    return nodes;
}

StateTree expand_state_tree(const WorldDef& world, unsigned depth, std::uint64_t node_cap) {
    require_deterministic(world, "tree expansion");
    const std::uint32_t k = static_cast<std::uint32_t>(world.omega().size());
    StateTree tree{depth, k, {}};
    tree.nodes.reserve(checked_tree_nodes(k, depth, node_cap));
    tree.nodes.push_back(world.start());
    // Level-order: children of node i sit at i*k+1 .. i*k+k.
    std::uint64_t internal = depth == 0 ? 0 : tree_node_count(k, depth - 1);
    for (std::uint64_t i = 0; i < internal; ++i) {
        State s = tree.nodes[i];
        for (Symbol a = 0; a < k; ++a) {
            tree.nodes.push_back(world.deterministic_step(s, a));
        }
    }
    return tree;
}

LifeTree expand_life_tree(const WorldDef& world, unsigned depth, std::uint64_t node_cap) {
    StateTree states = expand_state_tree(world, depth, node_cap);
    LifeTree tree{states.depth, states.branching, {}};
    tree.nodes.reserve(states.nodes.size());
    for (State s : states.nodes) tree.nodes.push_back(world.view(s));
    return tree;
}

bool states_indistinguishable(const WorldDef& world, State a, State b) {
    require_deterministic(world, "indistinguishability");
    const std::uint32_t k = static_cast<std::uint32_t>(world.omega().size());
    std::set<std::pair<State, State>> seen;
    std::deque<std::pair<State, State>> frontier{{a, b}};
    seen.insert({a, b});
    while (!frontier.empty()) {
        auto [s, t] = frontier.front();
        frontier.pop_front();
        if (world.view(s) != world.view(t)) return false;
        for (Symbol action = 0; action < k; ++action) {
            auto next = std::pair{world.deterministic_step(s, action),
                                  world.deterministic_step(t, action)};
            if (seen.insert(next).second) frontier.push_back(next);
        }
    }
    return true;
}

bool worlds_indistinguishable(const WorldDef& a, const WorldDef& b,
                              std::optional<unsigned> depth) {
    if (a.sigma() != b.sigma() || a.omega() != b.omega()) {
        throw ConfigError("worlds must share alphabets to be compared");
    }
    require_deterministic(a, "indistinguishability");
    require_deterministic(b, "indistinguishability");
    const std::uint32_t k = static_cast<std::uint32_t>(a.omega().size());
    // Synchronized BFS over state pairs. Memoizing on the pair alone is
    // sound for the bounded variant too: BFS reaches every pair at its
    // shallowest depth first, which dominates any later occurrence.
    std::set<std::pair<State, State>> seen;
    std::deque<std::tuple<State, State, unsigned>> frontier{{a.start(), b.start(), 0u}};
    seen.insert({a.start(), b.start()});
    while (!frontier.empty()) {
        auto [s, t, d] = frontier.front();
        frontier.pop_front();
        if (a.view(s) != b.view(t)) return false;
        if (depth && d >= *depth) continue;
        for (Symbol action = 0; action < k; ++action) {
            auto next = std::pair{a.deterministic_step(s, action),
                                  b.deterministic_step(t, action)};
            if (seen.insert(next).second) frontier.emplace_back(next.first, next.second, d + 1);
        }
    }
    return true;
}

std::vector<Symbol> life_path(const LifeTree& tree, const std::vector<Symbol>& actions) {
    if (actions.size() > tree.depth) {
        throw std::out_of_range("action sequence is longer than the tree depth");
    }
    std::vector<Symbol> views;
    views.reserve(actions.size() + 1);
    std::uint64_t node = 0;
    views.push_back(tree.nodes.at(node));
    for (Symbol action : actions) {
        if (action >= tree.branching) throw std::out_of_range("action letter out of range");
        node = node * tree.branching + 1 + action;
        views.push_back(tree.nodes.at(node));
    }
    return views;
}

namespace {

// Shared dump walker: emits "<path> <label>" per node, depth first so the
// output reads as root-to-leaf paths.
template <typename Label>
void dump_node(std::ostringstream& os, const std::vector<Label>& nodes, std::uint32_t k,
               unsigned depth, const Alphabet& omega, std::uint64_t node, unsigned level,
               std::string& path, const std::function<std::string(Label)>& format) {
    os << (path.empty() ? "-" : path) << " " << format(nodes[node]) << "\n";
    if (level == depth) return;
    for (Symbol a = 0; a < k; ++a) {
        std::size_t mark = path.size();
        if (!path.empty()) path += '.';
        path += omega.letter(a);
        dump_node(os, nodes, k, depth, omega, node * k + 1 + a, level + 1, path, format);
        path.resize(mark);
    }
}

}  // namespace

std::string dump_life_tree(const LifeTree& tree, const Alphabet& sigma, const Alphabet& omega) {
    std::ostringstream os;
    std::string path;
    std::function<std::string(Symbol)> format = [&](Symbol v) { return sigma.letter(v); };
    dump_node<Symbol>(os, tree.nodes, tree.branching, tree.depth, omega, 0, 0, path, format);
    return os.str();
}

std::string dump_state_tree(const StateTree& tree, const WorldDef& world) {
    std::ostringstream os;
    std::string path;
    std::function<std::string(State)> format = [&](State s) { return world.state_name(s); };
    dump_node<State>(os, tree.nodes, tree.branching, tree.depth, world.omega(), 0, 0, path,
                     format);
    return os.str();
}

}  // namespace wb
