#include "worldbench/world.hpp"

#include <numeric>
#include <stdexcept>

#include "worldbench/agents.hpp"
#include "worldbench/errors.hpp"

namespace wb {

namespace {

std::uint64_t lcm64(std::uint64_t a, std::uint64_t b) { return a / std::gcd(a, b) * b; }

}  // namespace

WorldDef::WorldDef(Alphabet sigma, Alphabet omega, std::vector<std::string> state_names,
                   std::vector<Symbol> views, std::vector<std::vector<Branch>> transitions,
                   State start)
    : sigma_(std::move(sigma)),
      omega_(std::move(omega)),
      state_names_(std::move(state_names)),
      views_(std::move(views)),
      transitions_(std::move(transitions)),
      start_(start) {
    const State n = state_count();
    if (n == 0) throw ConfigError("world must have at least one state");
    if (state_names_.size() != n) throw ConfigError("state name count mismatch");
    if (start_ >= n) throw ConfigError("start state out of range");
    if (transitions_.size() != std::size_t{n} * omega_.size()) {
        throw ConfigError("transition table is not total over states x omega");
    }
    for (Symbol v : views_) {
        if (v >= sigma_.size()) throw ConfigError("view letter out of range");
    }
    for (auto& cell : transitions_) {
        if (cell.empty()) throw ConfigError("transition cell has no branches");
        std::uint64_t den = 1;
        for (auto& br : cell) {
            if (br.target >= n) throw ConfigError("transition target out of range");
            if (br.den == 0 || br.num == 0 || br.num > br.den) {
                throw ConfigError("branch probability must be in (0, 1]");
            }
            std::uint64_t g = std::gcd(br.num, br.den);
            br.num /= g;
            br.den /= g;
            den = lcm64(den, br.den);
        }
        // exact sum-to-one check on the cell's common denominator
        std::uint64_t sum = 0;
        for (const auto& br : cell) sum += br.num * (den / br.den);
        if (sum != den) throw ConfigError("branch probabilities of a cell must sum to 1");
        if (cell.size() > 1) deterministic_ = false;
        common_den_ = lcm64(common_den_, den);
    }
}

std::size_t WorldDef::cell(State s, Symbol action) const {
    if (s >= state_count()) throw std::out_of_range("world state out of range");
    if (action >= omega_.size()) throw std::out_of_range("action letter out of range");
    return std::size_t{s} * omega_.size() + action;
}

Symbol WorldDef::view(State s) const {
    if (s >= state_count()) throw std::out_of_range("world state out of range");
    return views_[s];
}

const std::vector<Branch>& WorldDef::branches(State s, Symbol action) const {
    return transitions_[cell(s, action)];
}

State WorldDef::deterministic_step(State s, Symbol action) const {
    const auto& cell_branches = branches(s, action);
    if (cell_branches.size() != 1) {
        throw UnsupportedAnalysisError("deterministic step on a stochastic cell");
    }
    return cell_branches[0].target;
}

bool WorldDef::operator==(const WorldDef& other) const {
    return sigma_ == other.sigma_ && omega_ == other.omega_ &&
           state_names_ == other.state_names_ && views_ == other.views_ &&
           transitions_ == other.transitions_ && start_ == other.start_;
}

State step_world(const WorldDef& world, State state, Symbol action, Rng& rng) {
    const auto& branches = world.branches(state, action);
    if (branches.size() == 1) return branches[0].target;
    // Sample on the cell's common denominator so the draw is exact.
    std::uint64_t den = 1;
    for (const auto& br : branches) den = br.den / std::gcd(den, br.den) * den;
    std::uint64_t draw = std::uniform_int_distribution<std::uint64_t>(0, den - 1)(rng);
    std::uint64_t acc = 0;
    for (const auto& br : branches) {
        acc += br.num * (den / br.den);
        if (draw < acc) return br.target;
    }
    return branches.back().target;  // unreachable: probabilities sum to 1
}

Symbol view_of(const WorldDef& world, State state) { return world.view(state); }

LifeRecord run_life(const WorldDef& world, Agent& agent, std::uint64_t steps,
                    std::uint64_t seed) {
    if (steps == 0) throw ConfigError("a life must have at least one step");
    if (agent.input_size() != world.sigma().size() ||
        agent.output_size() != world.omega().size()) {
        throw ConfigError("agent alphabets do not match the world");
    }
    agent.reset();
    Rng rng(seed);
    LifeRecord life;
    life.actions.reserve(steps);
    life.views.reserve(steps);
    life.states.reserve(steps);
    State s = world.start();
    for (std::uint64_t i = 0; i < steps; ++i) {
        Symbol v = world.view(s);
        Symbol d = agent.step(v);
        if (d >= world.omega().size()) throw ConfigError("agent emitted an unknown letter");
        life.states.push_back(s);
        life.views.push_back(v);
        life.actions.push_back(d);
        s = step_world(world, s, d, rng);
    }
    return life;
}

long long views_value(const std::vector<Symbol>& views, const MeaningOfLife& meaning) {
    long long value = 0;
    for (Symbol v : views) value += meaning.value_of(v);
    return value;
}

long long life_value(const LifeRecord& life, const MeaningOfLife& meaning) {
    return views_value(life.views, meaning);
}

std::strong_ordering compare_lives(const LifeRecord& a, const LifeRecord& b,
                                   const MeaningOfLife& meaning) {
    return life_value(a, meaning) <=> life_value(b, meaning);
}

}  // namespace wb
