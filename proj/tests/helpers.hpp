#pragma once

#include <random>
#include <string>
#include <vector>

#include "worldbench/agents.hpp"
#include "worldbench/world.hpp"
#include "worldbench/worlds_lib.hpp"

namespace wbtest {

using namespace wb;

inline Alphabet letters(std::vector<std::string> l) { return Alphabet(std::move(l)); }

inline std::vector<std::string> default_names(State n) {
    std::vector<std::string> names;
    for (State s = 0; s < n; ++s) names.push_back("q" + std::to_string(s));
    return names;
}

// Deterministic world from a (state, action) -> state table.
inline WorldDef table_world(Alphabet sigma, Alphabet omega, std::vector<Symbol> views,
                            std::vector<std::vector<State>> next, State start = 0) {
    State n = static_cast<State>(views.size());
    std::vector<std::vector<Branch>> cells;
    for (State s = 0; s < n; ++s) {
        for (std::size_t a = 0; a < omega.size(); ++a) {
            cells.push_back({Branch{next[s][a], 1, 1}});
        }
    }
    return WorldDef(std::move(sigma), std::move(omega), default_names(n), std::move(views),
                    std::move(cells), start);
}

// Two states, every action flips; views n, g.
inline WorldDef flip_world() {
    return table_world(letters({"n", "g"}), letters({"a", "b"}), {0, 1},
                       {{1, 1}, {0, 0}});
}

// Every action is a self-loop.
inline WorldDef identity_world(State n, State start = 0) {
    std::vector<Symbol> views(n, 0);
    std::vector<std::vector<State>> next(n, {0, 0});
    for (State s = 0; s < n; ++s) next[s] = {s, s};
    return table_world(letters({"x"}), letters({"a", "b"}), std::move(views), std::move(next),
                       start);
}

// Emits a fixed action sequence, then repeats the last one.
class ScriptedAgent : public Agent {
public:
    ScriptedAgent(std::vector<Symbol> actions, std::size_t sigma_size, std::size_t omega_size)
        : actions_(std::move(actions)), sigma_size_(sigma_size), omega_size_(omega_size) {}
    Symbol step(Symbol) override {
        Symbol a = actions_[std::min(pos_, actions_.size() - 1)];
        ++pos_;
        return a;
    }
    void reset() override { pos_ = 0; }
    std::size_t input_size() const override { return sigma_size_; }
    std::size_t output_size() const override { return omega_size_; }

private:
    std::vector<Symbol> actions_;
    std::size_t pos_ = 0;
    std::size_t sigma_size_;
    std::size_t omega_size_;
};

inline WorldDef random_world(std::mt19937_64& rng, State max_states, std::size_t sigma_size = 2,
                             std::size_t omega_size = 2) {
    State n = State(1 + rng() % max_states);
    std::vector<Symbol> views(n);
    std::vector<std::vector<State>> next(n, std::vector<State>(omega_size));
    for (State s = 0; s < n; ++s) {
        views[s] = Symbol(rng() % sigma_size);
        for (std::size_t a = 0; a < omega_size; ++a) next[s][a] = State(rng() % n);
    }
    std::vector<std::string> sigma, omega;
    for (std::size_t i = 0; i < sigma_size; ++i) sigma.push_back("v" + std::to_string(i));
    for (std::size_t i = 0; i < omega_size; ++i) omega.push_back("d" + std::to_string(i));
    return table_world(letters(sigma), letters(omega), std::move(views), std::move(next),
                       State(rng() % n));
}

inline TransducerPolicy random_policy(std::mt19937_64& rng, std::uint32_t max_states,
                                      std::uint32_t sigma_size, std::uint32_t omega_size) {
    TransducerPolicy p;
    p.state_count = std::uint32_t(1 + rng() % max_states);
    p.start = 0;
    p.sigma_size = sigma_size;
    p.omega_size = omega_size;
    std::size_t cells = std::size_t{p.state_count} * sigma_size;
    for (std::size_t c = 0; c < cells; ++c) {
        p.out.push_back(Symbol(rng() % omega_size));
        p.next.push_back(State(rng() % p.state_count));
    }
    return p;
}

// Independent oracle for analyze_good_world: enumerate every simple cycle
// (distinct states, one repeated endpoint), then give each state the best
// cycle mean among cycles reachable from it.
inline std::vector<Rat> brute_force_rates(const WorldDef& world, const MeaningOfLife& meaning) {
    const State n = world.state_count();
    const std::size_t k = world.omega().size();
    auto weight = [&](State target) { return meaning.value_of(world.view(target)); };

    // all simple cycles by DFS from each start, visiting only states >= start
    std::vector<std::pair<std::vector<State>, Rat>> cycles;  // (states on cycle, mean)
    for (State origin = 0; origin < n; ++origin) {
        std::vector<State> path{origin};
        std::vector<int> path_weight{0};
        std::vector<char> on_path(n, 0);
        on_path[origin] = 1;
        struct Frame {
            State state;
            std::size_t action = 0;
        };
        std::vector<Frame> stack{{origin}};
        while (!stack.empty()) {
            Frame& f = stack.back();
            if (f.action == k) {
                on_path[f.state] = 0;
                path.pop_back();
                path_weight.pop_back();
                stack.pop_back();
                continue;
            }
            State t = world.deterministic_step(f.state, Symbol(f.action));
            ++f.action;
            int w = weight(t);
            if (t == origin) {
                long long total = path_weight.back() + w;
                cycles.push_back({path, Rat(total, (long long)path.size())});
            } else if (t > origin && !on_path[t]) {
                on_path[t] = 1;
                path.push_back(t);
                path_weight.push_back(path_weight.back() + w);
                stack.push_back({t});
            }
        }
    }

    // reachability closure
    std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
    for (State s = 0; s < n; ++s) {
        std::vector<State> frontier{s};
        reach[s][s] = 1;
        while (!frontier.empty()) {
            State u = frontier.back();
            frontier.pop_back();
            for (std::size_t a = 0; a < k; ++a) {
                State t = world.deterministic_step(u, Symbol(a));
                if (!reach[s][t]) {
                    reach[s][t] = 1;
                    frontier.push_back(t);
                }
            }
        }
    }

    std::vector<Rat> rates(n, Rat(0));
    std::vector<char> have(n, 0);
    for (State s = 0; s < n; ++s) {
        for (const auto& [cycle_states, mean] : cycles) {
            if (!reach[s][cycle_states.front()]) continue;
            if (!have[s] || mean > rates[s]) {
                rates[s] = mean;
                have[s] = 1;
            }
        }
    }
    return rates;
}

}  // namespace wbtest
