#pragma once

#include <boost/rational.hpp>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "worldbench/alphabet.hpp"
#include "worldbench/world.hpp"

namespace wb {

using Rat = boost::rational<long long>;

struct ParsedWorld {
    WorldDef world;
    MeaningOfLife meaning;
    std::vector<std::string> good_letters;  // as declared, for printing
    std::vector<std::string> bad_letters;
};

// Line-oriented world format, '#' comments:
//   sigma <letters...>
//   omega <letters...>
//   good <letters...>
//   bad <letters...>
//   start <state>
//   state <name> view <letter>
//   on <state> <omega-letter> -> <state> [p=<rational>]
// Stochastic cells use several weighted lines whose probabilities sum to 1
// exactly as rationals. Throws ParseError with line/column diagnostics.
ParsedWorld parse_world(std::string_view text);
ParsedWorld load_world_file(const std::string& path);

// Canonical form: sigma, omega, good, bad, start, states in declaration
// order, then transitions by (state, action letter). parse(print(w)) == w.
std::string print_world(const ParsedWorld& world);

struct NamedWorld {
    std::string name;
    ParsedWorld parsed;
};

// The shipped corpus: echo-reward, period-{2,3,5} predictors, the two-door
// bandit, and the gated maze in fatal and recoverable variants.
std::vector<NamedWorld> builtin_worlds();
ParsedWorld builtin_world(const std::string& name);

struct GoodWorldReport {
    std::vector<Rat> rates;            // per state: max mean cycle value reachable from it
    std::vector<State> fatal_states;   // rate < rate(start)
    std::vector<State> reachable_fatal;
    bool good = true;                  // no fatal state reachable from start
};

// Builds the (state, action) graph with edges weighted by the successor
// view's value and computes each state's best asymptotic rate as the
// maximum mean cycle reachable from it (Karp's dynamic program per SCC,
// exact rationals). A state is fatal when its rate is strictly below the
// start state's.
GoodWorldReport analyze_good_world(const WorldDef& world, const MeaningOfLife& meaning);

struct ComplexityProxy {
    State states = 0;
    State minimized_states = 0;
};

// Raw state count versus the count after merging states whose rooted trees
// of life are equal at unbounded depth. A crude size proxy, never a gate.
ComplexityProxy complexity_proxy(const WorldDef& world);

// The quotient world behind complexity_proxy; indistinguishable from the
// input at unbounded depth.
WorldDef minimize_world(const WorldDef& world);

}  // namespace wb
