#include "worldbench/agents.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <sstream>

#include "worldbench/errors.hpp"

namespace wb {

namespace {

// a * b, nullopt on 64-bit overflow.
std::optional<std::uint64_t> checked_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::nullopt;
    return a * b;
}

std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t result = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        auto next = checked_mul(result, base);
        if (!next) return std::nullopt;
        result = *next;
    }
    return result;
}

// Cumulative count of policies with fewer than `states` states.
std::optional<std::uint64_t> block_start(std::uint32_t states, std::uint32_t sigma_size,
                                         std::uint32_t omega_size) {
    std::uint64_t total = 0;
    for (std::uint32_t s = 1; s < states; ++s) {
        auto count = policy_count(s, sigma_size, omega_size);
        if (!count) return std::nullopt;
        if (total > std::numeric_limits<std::uint64_t>::max() - *count) return std::nullopt;
        total += *count;
    }
    return total;
}

std::uint32_t elias_gamma_bits(std::uint32_t n) {
    return 2 * (std::bit_width(n) - 1) + 1;
}

}  // namespace

TransducerAgent::TransducerAgent(TransducerPolicy policy)
    : policy_(std::move(policy)), state_(policy_.start) {
    if (policy_.state_count == 0 || policy_.sigma_size == 0 || policy_.omega_size == 0) {
        throw ConfigError("transducer policy has empty dimensions");
    }
    if (policy_.start >= policy_.state_count) throw ConfigError("policy start out of range");
    std::size_t cells = std::size_t{policy_.state_count} * policy_.sigma_size;
    if (policy_.out.size() != cells || policy_.next.size() != cells) {
        throw ConfigError("policy table is not total");
    }
    for (Symbol o : policy_.out) {
        if (o >= policy_.omega_size) throw ConfigError("policy output letter out of range");
    }
    for (State t : policy_.next) {
        if (t >= policy_.state_count) throw ConfigError("policy next state out of range");
    }
}

Symbol TransducerAgent::step(Symbol view) {
    if (view >= policy_.sigma_size) throw std::out_of_range("input letter out of range");
    Symbol out = policy_.out_at(state_, view);
    state_ = policy_.next_at(state_, view);
    return out;
}

std::optional<std::uint64_t> policy_count(std::uint32_t states, std::uint32_t sigma_size,
                                          std::uint32_t omega_size) {
    auto radix = checked_mul(omega_size, states);
    if (!radix) return std::nullopt;
    return checked_pow(*radix, std::uint64_t{states} * sigma_size);
}

std::uint32_t policy_bit_length(std::uint32_t states, std::uint32_t sigma_size,
                                std::uint32_t omega_size) {
    std::uint64_t radix = std::uint64_t{omega_size} * states;
    std::uint32_t cell_bits = radix > 1 ? std::bit_width(radix - 1) : 0;
    return elias_gamma_bits(states) + states * sigma_size * cell_bits;
}

std::uint64_t encode_policy(const TransducerPolicy& policy) {
    if (policy.start != 0) {
        throw ConfigError("only start-state-0 policies have a canonical index");
    }
    auto start = block_start(policy.state_count, policy.sigma_size, policy.omega_size);
    if (!start) throw ConfigError("policy index overflows 64 bits");
    const std::uint64_t radix = std::uint64_t{policy.omega_size} * policy.state_count;
    std::uint64_t offset = 0;
    for (std::size_t c = 0; c < policy.out.size(); ++c) {
        auto shifted = checked_mul(offset, radix);
        if (!shifted) throw ConfigError("policy index overflows 64 bits");
        offset = *shifted + (std::uint64_t{policy.out[c]} * policy.state_count + policy.next[c]);
    }
    if (offset > std::numeric_limits<std::uint64_t>::max() - *start) {
        throw ConfigError("policy index overflows 64 bits");
    }
    return *start + offset;
}

TransducerPolicy decode_policy(std::uint64_t index, std::uint32_t sigma_size,
                               std::uint32_t omega_size) {
    if (sigma_size == 0 || omega_size == 0) throw ConfigError("empty alphabet");
    std::uint64_t remaining = index;
    std::uint32_t states = 1;
    for (;;) {
        auto count = policy_count(states, sigma_size, omega_size);
        if (!count) throw ConfigError("policy index overflows the enumerable range");
        if (remaining < *count) break;
        remaining -= *count;
        ++states;
    }
    TransducerPolicy policy;
    policy.state_count = states;
    policy.start = 0;
    policy.sigma_size = sigma_size;
    policy.omega_size = omega_size;
    const std::size_t cells = std::size_t{states} * sigma_size;
    const std::uint64_t radix = std::uint64_t{omega_size} * states;
    policy.out.assign(cells, 0);
    policy.next.assign(cells, 0);
    for (std::size_t c = cells; c-- > 0;) {
        std::uint64_t digit = remaining % radix;
        remaining /= radix;
        policy.out[c] = static_cast<Symbol>(digit / states);
        policy.next[c] = static_cast<State>(digit % states);
    }
    return policy;
}

PolicyEnumerator::PolicyEnumerator(std::uint32_t sigma_size, std::uint32_t omega_size,
                                   std::uint32_t max_states)
    : sigma_size_(sigma_size), omega_size_(omega_size) {
    if (max_states == 0) throw ConfigError("max_states must be positive");
    auto end = block_start(max_states + 1, sigma_size, omega_size);
    if (!end) throw ConfigError("policy enumeration range overflows 64 bits");
    total_ = *end;
}

std::optional<PolicyCode> PolicyEnumerator::next() {
    if (index_ >= total_) return std::nullopt;
    PolicyCode code;
    code.index = index_;
    code.policy = decode_policy(index_, sigma_size_, omega_size_);
    code.bit_length = policy_bit_length(code.policy.state_count, sigma_size_, omega_size_);
    ++index_;
    return code;
}

std::string print_policy(const TransducerPolicy& policy, const Alphabet& sigma,
                         const Alphabet& omega) {
    if (sigma.size() != policy.sigma_size || omega.size() != policy.omega_size) {
        throw ConfigError("alphabet sizes do not match the policy tables");
    }
    std::ostringstream os;
    os << "states=" << policy.state_count << " start=" << policy.start << "\n";
    for (State s = 0; s < policy.state_count; ++s) {
        for (Symbol in = 0; in < sigma.size(); ++in) {
            os << s << " " << sigma.letter(in) << " -> " << omega.letter(policy.out_at(s, in))
               << " " << policy.next_at(s, in) << "\n";
        }
    }
    return os.str();
}

TransducerPolicy parse_policy(const std::string& text, const Alphabet& sigma,
                              const Alphabet& omega) {
    std::istringstream is(text);
    std::string line;
    std::size_t line_no = 0;
    TransducerPolicy policy;
    policy.sigma_size = static_cast<std::uint32_t>(sigma.size());
    policy.omega_size = static_cast<std::uint32_t>(omega.size());
    bool have_header = false;
    std::vector<char> seen;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        if (!have_header) {
            std::string states_kv, start_kv;
            if (!(ls >> states_kv >> start_kv) || states_kv.rfind("states=", 0) != 0 ||
                start_kv.rfind("start=", 0) != 0) {
                throw ParseError(ParseCode::bad_directive, line_no, 1,
                                 "expected 'states=<n> start=<i>'");
            }
            policy.state_count = static_cast<std::uint32_t>(std::stoul(states_kv.substr(7)));
            policy.start = static_cast<State>(std::stoul(start_kv.substr(6)));
            if (policy.state_count == 0 || policy.start >= policy.state_count) {
                throw ParseError(ParseCode::out_of_range, line_no, 1, "bad state header");
            }
            std::size_t cells = std::size_t{policy.state_count} * sigma.size();
            policy.out.assign(cells, 0);
            policy.next.assign(cells, 0);
            seen.assign(cells, 0);
            have_header = true;
            continue;
        }
        std::uint64_t state = 0, next = 0;
        std::string in_letter, arrow, out_letter;
        if (!(ls >> state >> in_letter >> arrow >> out_letter >> next) || arrow != "->") {
            throw ParseError(ParseCode::bad_directive, line_no, 1,
                             "expected '<state> <in> -> <out> <next>'");
        }
        auto in = sigma.find(in_letter);
        if (!in) {
            throw ParseError(ParseCode::unknown_letter, line_no, 1,
                             "unknown sigma letter '" + in_letter + "'");
        }
        auto out = omega.find(out_letter);
        if (!out) {
            throw ParseError(ParseCode::unknown_letter, line_no, 1,
                             "unknown omega letter '" + out_letter + "'");
        }
        if (state >= policy.state_count || next >= policy.state_count) {
            throw ParseError(ParseCode::out_of_range, line_no, 1, "state index out of range");
        }
        std::size_t cell = state * sigma.size() + *in;
        if (seen[cell]) {
            throw ParseError(ParseCode::duplicate_transition, line_no, 1,
                             "duplicate row for state " + std::to_string(state) + " on '" +
                                 in_letter + "'");
        }
        seen[cell] = 1;
        policy.out[cell] = *out;
        policy.next[cell] = static_cast<State>(next);
    }
    if (!have_header) {
        throw ParseError(ParseCode::missing_section, line_no, 1, "missing policy header");
    }
    for (std::size_t cell = 0; cell < seen.size(); ++cell) {
        if (!seen[cell]) {
            throw ParseError(ParseCode::missing_transition, line_no, 1,
                             "missing row for state " + std::to_string(cell / sigma.size()) +
                                 " on '" + sigma.letter(Symbol(cell % sigma.size())) + "'");
        }
    }
    return policy;
}

namespace {

class ConstantAgent : public Agent {
public:
    ConstantAgent(Symbol letter, std::size_t sigma_size, std::size_t omega_size)
        : letter_(letter), sigma_size_(sigma_size), omega_size_(omega_size) {
        if (letter >= omega_size) throw ConfigError("constant letter is not in omega");
    }
    Symbol step(Symbol) override { return letter_; }
    void reset() override {}
    std::size_t input_size() const override { return sigma_size_; }
    std::size_t output_size() const override { return omega_size_; }

private:
    Symbol letter_;
    std::size_t sigma_size_;
    std::size_t omega_size_;
};

class RandomAgent : public Agent {
public:
    RandomAgent(std::size_t sigma_size, std::size_t omega_size, std::uint64_t seed)
        : sigma_size_(sigma_size), omega_size_(omega_size), seed_(seed), rng_(seed) {}
    Symbol step(Symbol) override {
        return std::uniform_int_distribution<Symbol>(0, Symbol(omega_size_ - 1))(rng_);
    }
    void reset() override { rng_.seed(seed_); }
    std::size_t input_size() const override { return sigma_size_; }
    std::size_t output_size() const override { return omega_size_; }

private:
    std::size_t sigma_size_;
    std::size_t omega_size_;
    std::uint64_t seed_;
    Rng rng_;
};

// Epsilon-greedy tabular learner keyed by the last `window` views. The
// reward for the step that produced view v is value_of(v), credited to the
// previous (key, action) pair when v arrives.
class HistoryLearnerAgent : public Agent {
public:
    HistoryLearnerAgent(const LearnerParams& params, MeaningOfLife meaning,
                        std::size_t sigma_size, std::size_t omega_size, std::uint64_t seed)
        : params_(params),
          meaning_(std::move(meaning)),
          sigma_size_(sigma_size),
          omega_size_(omega_size),
          seed_(seed),
          rng_(seed),
          eps_(params.eps0) {
        if (params.eps0 < 0.0 || params.eps0 > 1.0) throw ConfigError("eps0 must be in [0, 1]");
        if (params.eps_decay < 0.0 || params.eps_decay > 1.0) {
            throw ConfigError("eps_decay must be in [0, 1]");
        }
        if (params.alpha <= 0.0 || params.alpha > 1.0) throw ConfigError("alpha must be in (0, 1]");
        if (params.gamma < 0.0 || params.gamma >= 1.0) throw ConfigError("gamma must be in [0, 1)");
        if (meaning_.sigma_size() != sigma_size) {
            throw ConfigError("meaning of life does not match sigma");
        }
    }

    Symbol step(Symbol view) override {
        if (view >= sigma_size_) throw std::out_of_range("input letter out of range");
        history_.push_back(view);
        if (history_.size() > params_.window) history_.pop_front();
        std::uint64_t key = history_key();
        auto [it, inserted] = table_.try_emplace(key, std::vector<double>(omega_size_, 0.0));
        std::vector<double>& q_now = it->second;
        if (has_prev_) {
            double best = *std::max_element(q_now.begin(), q_now.end());
            double reward = meaning_.value_of(view);
            double& q = table_.find(prev_key_)->second[prev_action_];
            q += params_.alpha * (reward + params_.gamma * best - q);
        }
        Symbol action;
        if (std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < eps_) {
            action = std::uniform_int_distribution<Symbol>(0, Symbol(omega_size_ - 1))(rng_);
        } else {
            action = Symbol(std::max_element(q_now.begin(), q_now.end()) - q_now.begin());
        }
        eps_ *= params_.eps_decay;
        prev_key_ = key;
        prev_action_ = action;
        has_prev_ = true;
        return action;
    }

    void reset() override {
        table_.clear();
        history_.clear();
        has_prev_ = false;
        eps_ = params_.eps0;
        rng_.seed(seed_);
    }

    std::size_t input_size() const override { return sigma_size_; }
    std::size_t output_size() const override { return omega_size_; }

private:
    // Positional base-(|sigma|+1) code over the history; short histories
    // (before `window` views have arrived) get their own keys.
    std::uint64_t history_key() const {
        std::uint64_t key = 0;
        for (Symbol v : history_) key = key * (sigma_size_ + 1) + (v + 1);
        return key;
    }

    LearnerParams params_;
    MeaningOfLife meaning_;
    std::size_t sigma_size_;
    std::size_t omega_size_;
    std::uint64_t seed_;
    Rng rng_;
    double eps_;
    std::deque<Symbol> history_;
    std::unordered_map<std::uint64_t, std::vector<double>> table_;
    std::uint64_t prev_key_ = 0;
    Symbol prev_action_ = 0;
    bool has_prev_ = false;
};

}  // namespace

std::unique_ptr<Agent> make_constant(Symbol letter, std::size_t sigma_size,
                                     std::size_t omega_size) {
    return std::make_unique<ConstantAgent>(letter, sigma_size, omega_size);
}

std::unique_ptr<Agent> make_random(std::size_t sigma_size, std::size_t omega_size,
                                   std::uint64_t seed) {
    return std::make_unique<RandomAgent>(sigma_size, omega_size, seed);
}

std::unique_ptr<Agent> make_history_learner(const LearnerParams& params,
                                            const MeaningOfLife& meaning,
                                            std::size_t sigma_size, std::size_t omega_size,
                                            std::uint64_t seed) {
    return std::make_unique<HistoryLearnerAgent>(params, meaning, sigma_size, omega_size, seed);
}

}  // namespace wb
