#pragma once

#include <compare>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "worldbench/alphabet.hpp"

namespace wb {

using Rng = std::mt19937_64;

// One outcome of a (state, action) cell with probability num/den.
// Deterministic cells hold a single branch with probability 1.
struct Branch {
    State target = 0;
    std::uint64_t num = 1;
    std::uint64_t den = 1;

    bool operator==(const Branch&) const = default;
};

// A finite world: states, a start state, a total transition table over
// (state, omega-letter), and a total view labeling into sigma.
class WorldDef {
public:
    WorldDef() = default;
    WorldDef(Alphabet sigma, Alphabet omega, std::vector<std::string> state_names,
             std::vector<Symbol> views, std::vector<std::vector<Branch>> transitions,
             State start);

    const Alphabet& sigma() const { return sigma_; }
    const Alphabet& omega() const { return omega_; }
    State state_count() const { return static_cast<State>(views_.size()); }
    State start() const { return start_; }
    Symbol view(State s) const;
    const std::string& state_name(State s) const { return state_names_.at(s); }
    const std::vector<std::string>& state_names() const { return state_names_; }
    bool deterministic() const { return deterministic_; }

    const std::vector<Branch>& branches(State s, Symbol action) const;

    // Successor of the unique branch; requires a deterministic cell.
    State deterministic_step(State s, Symbol action) const;

    bool operator==(const WorldDef& other) const;

private:
    std::size_t cell(State s, Symbol action) const;

    Alphabet sigma_;
    Alphabet omega_;
    std::vector<std::string> state_names_;
    std::vector<Symbol> views_;
    std::vector<std::vector<Branch>> transitions_;  // state-major, action-minor
    State start_ = 0;
    bool deterministic_ = true;
    std::uint64_t common_den_ = 1;  // lcm of all branch denominators, for exact sampling
};

// A finished or in-progress life: per-step actions and views, plus the
// visited states as a diagnostic.
struct LifeRecord {
    std::vector<Symbol> actions;  // d_0 .. d_t
    std::vector<Symbol> views;    // v_0 .. v_t
    std::vector<State> states;    // s_0 .. s_t

    std::size_t length() const { return views.size(); }

    bool operator==(const LifeRecord&) const = default;
};

class Agent;

// s' = World(s, d). Stochastic cells sample exactly over the cell's
// common-denominator grid, so equal rng states give equal successors.
State step_world(const WorldDef& world, State state, Symbol action, Rng& rng);

// v = View(s).
Symbol view_of(const WorldDef& world, State state);

// Runs one life of exactly `steps` steps from the start state. Within each
// step the agent first receives v_i = View(s_i), then emits d_i, then the
// world moves to s_{i+1} = World(s_i, d_i). The agent is reset before the
// first step.
LifeRecord run_life(const WorldDef& world, Agent& agent, std::uint64_t steps, std::uint64_t seed);

// Good-letter count minus bad-letter count over the views.
long long life_value(const LifeRecord& life, const MeaningOfLife& meaning);
long long views_value(const std::vector<Symbol>& views, const MeaningOfLife& meaning);

// Orders lives by value only; actions and states never matter.
std::strong_ordering compare_lives(const LifeRecord& a, const LifeRecord& b,
                                   const MeaningOfLife& meaning);

}  // namespace wb
