#include <sstream>

#include "worldbench/errors.hpp"
#include "worldbench/worlds_lib.hpp"

namespace wb {

namespace {

constexpr const char* kEchoReward = R"(# good iff the last action repeats the previous view letter
sigma b g
omega b g
good g
bad b
start G
state G view g
state B view b
on G b -> B
on G g -> G
on B b -> G
on B g -> B
)";

constexpr const char* kTwoDoorBandit = R"(# stochastic payoff: the left door pays off 3 times out of 4
sigma n g b
omega left right
good g
bad b
start HOME
state HOME view n
state WIN view g
state LOSE view b
on HOME left -> WIN p=3/4
on HOME left -> LOSE p=1/4
on HOME right -> WIN p=1/4
on HOME right -> LOSE p=3/4
on WIN left -> WIN p=3/4
on WIN left -> LOSE p=1/4
on WIN right -> WIN p=1/4
on WIN right -> LOSE p=3/4
on LOSE left -> WIN p=3/4
on LOSE left -> LOSE p=1/4
on LOSE right -> WIN p=1/4
on LOSE right -> LOSE p=3/4
)";

constexpr const char* kGatedMaze = R"(# a wrong turn in the hall drops into an absorbing trap
sigma n g b
omega fwd back
good g
bad b
start START
state START view n
state HALL view n
state GOAL view g
state TRAP view b
on START fwd -> HALL
on START back -> START
on HALL fwd -> GOAL
on HALL back -> TRAP
on GOAL fwd -> GOAL
on GOAL back -> HALL
on TRAP fwd -> TRAP
on TRAP back -> TRAP
)";

constexpr const char* kGatedMazeSafe = R"(# same maze, but the trap can be climbed out of
sigma n g b
omega fwd back
good g
bad b
start START
state START view n
state HALL view n
state GOAL view g
state TRAP view b
on START fwd -> HALL
on START back -> START
on HALL fwd -> GOAL
on HALL back -> TRAP
on GOAL fwd -> GOAL
on GOAL back -> HALL
on TRAP fwd -> TRAP
on TRAP back -> HALL
)";

// good iff the action names the next bit of a fixed period-p cycle. State
// (phase, flag): the flag remembers whether the previous prediction hit.
std::string period_world_text(const std::vector<int>& bits) {
    std::ostringstream os;
    os << "# good iff the action predicts the next bit of a period-" << bits.size()
       << " cycle\n";
    os << "sigma b g\nomega o0 o1\ngood g\nbad b\nstart s0g\n";
    const std::size_t p = bits.size();
    for (std::size_t ph = 0; ph < p; ++ph) {
        os << "state s" << ph << "g view g\n";
        os << "state s" << ph << "b view b\n";
    }
    for (std::size_t ph = 0; ph < p; ++ph) {
        for (const char* flag : {"g", "b"}) {
            std::size_t next = (ph + 1) % p;
            for (int action = 0; action < 2; ++action) {
                os << "on s" << ph << flag << " o" << action << " -> s" << next
                   << (action == bits[next] ? "g" : "b") << "\n";
            }
        }
    }
    return os.str();
}

struct BuiltinText {
    const char* name;
    std::string text;
};

const std::vector<BuiltinText>& builtin_texts() {
    static const std::vector<BuiltinText> worlds = {
        {"echo-reward", kEchoReward},
        {"period-2", period_world_text({0, 1})},
        {"period-3", period_world_text({0, 0, 1})},
        {"period-5", period_world_text({0, 1, 1, 0, 1})},
        {"two-door-bandit", kTwoDoorBandit},
        {"gated-maze", kGatedMaze},
        {"gated-maze-safe", kGatedMazeSafe},
    };
    return worlds;
}

}  // namespace

std::vector<NamedWorld> builtin_worlds() {
    std::vector<NamedWorld> result;
    for (const auto& [name, text] : builtin_texts()) {
        result.push_back({name, parse_world(text)});
    }
    return result;
}

ParsedWorld builtin_world(const std::string& name) {
    for (const auto& [builtin_name, text] : builtin_texts()) {
        if (name == builtin_name) return parse_world(text);
    }
    throw ConfigError("unknown builtin world '" + name + "'");
}

}  // namespace wb
