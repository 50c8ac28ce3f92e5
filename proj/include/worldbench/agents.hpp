#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "worldbench/alphabet.hpp"
#include "worldbench/world.hpp"

namespace wb {

// The step device: consumes one sigma-letter, emits one omega-letter per
// call. reset() returns the agent to its birth state; two identically
// seeded resets behave identically.
class Agent {
public:
    virtual ~Agent() = default;
    virtual Symbol step(Symbol view) = 0;
    virtual void reset() = 0;
    virtual std::size_t input_size() const = 0;
    virtual std::size_t output_size() const = 0;
};

// Deterministic finite-state input/output machine; the enumerable program
// class. Tables are state-major, input-letter-minor.
struct TransducerPolicy {
    std::uint32_t state_count = 1;
    State start = 0;
    std::uint32_t sigma_size = 0;
    std::uint32_t omega_size = 0;
    std::vector<Symbol> out;  // (state, input) -> output letter
    std::vector<State> next;  // (state, input) -> next policy state

    Symbol out_at(State s, Symbol in) const { return out.at(std::size_t{s} * sigma_size + in); }
    State next_at(State s, Symbol in) const { return next.at(std::size_t{s} * sigma_size + in); }

    bool operator==(const TransducerPolicy&) const = default;
};

class TransducerAgent : public Agent {
public:
    explicit TransducerAgent(TransducerPolicy policy);

    Symbol step(Symbol view) override;
    void reset() override { state_ = policy_.start; }
    std::size_t input_size() const override { return policy_.sigma_size; }
    std::size_t output_size() const override { return policy_.omega_size; }

    const TransducerPolicy& policy() const { return policy_; }

private:
    TransducerPolicy policy_;
    State state_;
};

// A policy together with its position in the canonical enumeration order
// and the bit-length of its canonical encoding. Enumeration order is
// ascending state count, then lexicographic table order; index order and
// length order agree (lexicographic index breaks length ties).
struct PolicyCode {
    std::uint64_t index = 0;
    std::uint32_t bit_length = 0;
    TransducerPolicy policy;
};

// Number of distinct policies with exactly `states` states:
// (omega * states)^(states * sigma). nullopt when it overflows 64 bits.
std::optional<std::uint64_t> policy_count(std::uint32_t states, std::uint32_t sigma_size,
                                          std::uint32_t omega_size);

// Bit-length of the canonical encoding: Elias-gamma bits for the state
// count plus ceil(log2(omega*states)) bits per table cell.
std::uint32_t policy_bit_length(std::uint32_t states, std::uint32_t sigma_size,
                                std::uint32_t omega_size);

std::uint64_t encode_policy(const TransducerPolicy& policy);
TransducerPolicy decode_policy(std::uint64_t index, std::uint32_t sigma_size,
                               std::uint32_t omega_size);

// Yields every policy with at most max_states states exactly once, in
// canonical index order.
class PolicyEnumerator {
public:
    PolicyEnumerator(std::uint32_t sigma_size, std::uint32_t omega_size,
                     std::uint32_t max_states);

    std::optional<PolicyCode> next();
    std::uint64_t total() const { return total_; }

private:
    std::uint32_t sigma_size_;
    std::uint32_t omega_size_;
    std::uint64_t index_ = 0;
    std::uint64_t total_ = 0;
};

// Text format: header `states=<n> start=<i>`, then one line per
// (state, input) pair: `<state> <in-letter> -> <out-letter> <next-state>`.
std::string print_policy(const TransducerPolicy& policy, const Alphabet& sigma,
                         const Alphabet& omega);
TransducerPolicy parse_policy(const std::string& text, const Alphabet& sigma,
                              const Alphabet& omega);

struct LearnerParams {
    unsigned window = 1;        // history length h, in views
    double eps0 = 1.0;          // initial exploration rate
    double eps_decay = 0.999;   // multiplicative per-step decay
    double alpha = 0.2;         // learning rate
    double gamma = 0.9;         // discount
};

std::unique_ptr<Agent> make_constant(Symbol letter, std::size_t sigma_size,
                                     std::size_t omega_size);
std::unique_ptr<Agent> make_random(std::size_t sigma_size, std::size_t omega_size,
                                   std::uint64_t seed);

// Tabular value learner over keys made of the last h views. Rewards come
// from the meaning of life: effective-good +1, effective-bad -1, else 0.
std::unique_ptr<Agent> make_history_learner(const LearnerParams& params,
                                            const MeaningOfLife& meaning,
                                            std::size_t sigma_size, std::size_t omega_size,
                                            std::uint64_t seed);

}  // namespace wb
