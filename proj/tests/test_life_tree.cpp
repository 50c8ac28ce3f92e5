#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "helpers.hpp"
#include "worldbench/errors.hpp"
#include "worldbench/life_tree.hpp"

using namespace wbtest;

namespace {

// Renames every state via a permutation; the behavior must not change.
WorldDef permuted_world(const WorldDef& world, std::mt19937_64& rng) {
    const State n = world.state_count();
    std::vector<State> perm(n);
    for (State s = 0; s < n; ++s) perm[s] = s;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::string> names(n);
    std::vector<Symbol> views(n);
    std::vector<std::vector<State>> next(n, std::vector<State>(world.omega().size()));
    for (State s = 0; s < n; ++s) {
        names[perm[s]] = world.state_name(s);
        views[perm[s]] = world.view(s);
        for (Symbol a = 0; a < world.omega().size(); ++a) {
            next[perm[s]][a] = perm[world.deterministic_step(s, a)];
        }
    }
    return table_world(world.sigma(), world.omega(), std::move(views), std::move(next),
                       perm[world.start()]);
}

WorldDef constant_view_world() {
    // two states, both show "n", all actions flip
    return table_world(letters({"n", "g"}), letters({"a", "b"}), {0, 0}, {{1, 1}, {0, 0}});
}

}  // namespace

TEST_CASE("expand_state_tree on simple worlds") {
    SUBCASE("identity world holds the start state everywhere") {
        WorldDef id = identity_world(4, 2);
        StateTree tree = expand_state_tree(id, 3);
        for (State s : tree.nodes) CHECK(s == 2);
    }
    SUBCASE("flip world levels alternate") {
        StateTree tree = expand_state_tree(flip_world(), 2);
        std::vector<State> expected{0, 1, 1, 0, 0, 0, 0};
        CHECK(tree.nodes == expected);
    }
    SUBCASE("depth 0 is a single root") {
        StateTree tree = expand_state_tree(flip_world(), 0);
        CHECK(tree.nodes == std::vector<State>{0});
    }
}

TEST_CASE("tree expansion error paths") {
    auto bandit = builtin_world("two-door-bandit");
    CHECK_THROWS_AS(expand_state_tree(bandit.world, 3), UnsupportedAnalysisError);
    try {
        expand_state_tree(flip_world(), 30, 1000);
        FAIL("cap not enforced");
    } catch (const ResourceLimitError& e) {
        CHECK(std::string(e.what()).find("1000") != std::string::npos);
    }
}

TEST_CASE("expand_life_tree maps states through view") {
    SUBCASE("flip world, depth 1: root n, both children g") {
        LifeTree tree = expand_life_tree(flip_world(), 1);
        CHECK(tree.nodes == std::vector<Symbol>{0, 1, 1});
    }
    SUBCASE("constant-view world carries one letter everywhere") {
        LifeTree tree = expand_life_tree(constant_view_world(), 4);
        for (Symbol v : tree.nodes) CHECK(v == 0);
    }
    SUBCASE("state renaming never changes the life tree") {
        std::mt19937_64 rng(11);
        for (int trial = 0; trial < 30; ++trial) {
            WorldDef world = random_world(rng, 6);
            WorldDef renamed = permuted_world(world, rng);
            for (unsigned depth : {0u, 2u, 5u}) {
                CHECK(expand_life_tree(world, depth) == expand_life_tree(renamed, depth));
            }
        }
    }
}

TEST_CASE("worlds_indistinguishable") {
    WorldDef flip = flip_world();
    CHECK(worlds_indistinguishable(flip, flip));

    SUBCASE("renamed copies are indistinguishable at unbounded depth") {
        std::mt19937_64 rng(5);
        for (int trial = 0; trial < 30; ++trial) {
            WorldDef world = random_world(rng, 6);
            CHECK(worlds_indistinguishable(world, permuted_world(world, rng)));
        }
    }
    SUBCASE("flip vs constant view differ at depth 1") {
        WorldDef constant = constant_view_world();
        CHECK(worlds_indistinguishable(flip, constant, 0));  // both show n at the root
        CHECK_FALSE(worlds_indistinguishable(flip, constant, 1));
        CHECK_FALSE(worlds_indistinguishable(flip, constant));
    }
    SUBCASE("alphabet mismatch is a configuration error") {
        CHECK_THROWS_AS(worlds_indistinguishable(flip, identity_world(2)), ConfigError);
    }
    SUBCASE("equivalence relation on random triples") {
        std::mt19937_64 rng(23);
        for (int trial = 0; trial < 40; ++trial) {
            WorldDef a = random_world(rng, 4);
            WorldDef b = random_world(rng, 4);
            WorldDef c = random_world(rng, 4);
            CHECK(worlds_indistinguishable(a, a));
            CHECK(worlds_indistinguishable(a, b) == worlds_indistinguishable(b, a));
            if (worlds_indistinguishable(a, b) && worlds_indistinguishable(b, c)) {
                CHECK(worlds_indistinguishable(a, c));
            }
        }
    }
    SUBCASE("memoized unbounded check agrees with bounded comparison") {
        std::mt19937_64 rng(99);
        for (int trial = 0; trial < 60; ++trial) {
            WorldDef a = random_world(rng, 5);
            WorldDef b = random_world(rng, 5);
            unsigned depth = a.state_count() * b.state_count();
            CHECK(worlds_indistinguishable(a, b) == worlds_indistinguishable(a, b, depth));
        }
    }
}

TEST_CASE("life_path walks the tree") {
    LifeTree tree = expand_life_tree(flip_world(), 3);
    SUBCASE("empty action sequence gives the root letter") {
        CHECK(life_path(tree, {}) == std::vector<Symbol>{0});
    }
    SUBCASE("two actions in the flip world read n g n") {
        CHECK(life_path(tree, {0, 1}) == std::vector<Symbol>{0, 1, 0});
    }
    SUBCASE("too-long action sequences are a range error") {
        CHECK_THROWS_AS(life_path(tree, {0, 0, 0, 0}), std::out_of_range);
    }
}

TEST_CASE("tree and simulation agree on every random triple") {
    std::mt19937_64 rng(321);
    for (int trial = 0; trial < 100; ++trial) {
        WorldDef world = random_world(rng, 8);
        TransducerAgent agent(random_policy(rng, 3, 2, 2));
        unsigned depth = unsigned(1 + rng() % 8);
        LifeRecord life = run_life(world, agent, depth, 0);
        LifeTree tree = expand_life_tree(world, depth);
        std::vector<Symbol> actions(life.actions.begin(), life.actions.end() - 1);
        CHECK(life_path(tree, actions) == life.views);
    }
}

TEST_CASE("node count formula") {
    for (std::uint32_t k : {1u, 2u, 3u}) {
        for (unsigned depth = 0; depth <= 10; ++depth) {
            std::uint64_t expected =
                k == 1 ? depth + 1
                       : (std::uint64_t(std::pow(double(k), depth + 1)) - 1) / (k - 1);
            CHECK(tree_node_count(k, depth) == expected);
        }
    }
    // spot-check against a real expansion
    WorldDef flip = flip_world();
    CHECK(expand_state_tree(flip, 6).nodes.size() == tree_node_count(2, 6));
}

TEST_CASE("tree dumps are line oriented") {
    LifeTree tree = expand_life_tree(flip_world(), 1);
    WorldDef flip = flip_world();
    CHECK(dump_life_tree(tree, flip.sigma(), flip.omega()) == "- n\na g\nb g\n");
    StateTree states = expand_state_tree(flip, 1);
    CHECK(dump_state_tree(states, flip) == "- q0\na q1\nb q1\n");
}
