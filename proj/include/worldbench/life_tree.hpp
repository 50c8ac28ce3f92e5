#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "worldbench/world.hpp"

namespace wb {

inline constexpr std::uint64_t kDefaultTreeNodeCap = 1u << 20;

// Complete k-ary tree (k = |omega|) of reached states, stored level order:
// root at 0, children of node i at i*k+1 .. i*k+k. The same world state may
// label many nodes.
struct StateTree {
    unsigned depth = 0;
    std::uint32_t branching = 1;
    std::vector<State> nodes;
};

// Same shape, each node holding the view letter of the reached state.
struct LifeTree {
    unsigned depth = 0;
    std::uint32_t branching = 1;
    std::vector<Symbol> nodes;

    bool operator==(const LifeTree&) const = default;
};

// Nodes in a complete k-ary tree of the given depth.
std::uint64_t tree_node_count(std::uint32_t branching, unsigned depth);

StateTree expand_state_tree(const WorldDef& world, unsigned depth,
                            std::uint64_t node_cap = kDefaultTreeNodeCap);
LifeTree expand_life_tree(const WorldDef& world, unsigned depth,
                          std::uint64_t node_cap = kDefaultTreeNodeCap);

// True iff both worlds produce the same tree of life. With a depth the
// trees are compared node-for-node to that depth; without one, the check
// memoizes state pairs and decides the unbounded (infinite-tree) question
// in O(|S_a| * |S_b| * k).
bool worlds_indistinguishable(const WorldDef& a, const WorldDef& b,
                              std::optional<unsigned> depth = std::nullopt);

// Same check between two start states of one world.
bool states_indistinguishable(const WorldDef& world, State a, State b);

// Views along the path selected by the actions: result[0] is the root
// letter, result[i+1] follows actions[i]. Throws std::out_of_range when the
// action sequence is longer than the tree depth.
std::vector<Symbol> life_path(const LifeTree& tree, const std::vector<Symbol>& actions);

// Line-oriented dump, one node per line: the action path from the root
// (letters joined by '.', '-' for the root) then the node's letter/state.
std::string dump_life_tree(const LifeTree& tree, const Alphabet& sigma, const Alphabet& omega);
std::string dump_state_tree(const StateTree& tree, const WorldDef& world);

}  // namespace wb
