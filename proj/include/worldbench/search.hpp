#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "worldbench/agents.hpp"
#include "worldbench/world.hpp"

namespace wb {

// Pass requirement over the evaluation window, stored as a life-value
// threshold. Ratio form g:b over w steps converts to
// threshold = ceil(w * (g - b) / (g + b)), the value a life scores when the
// good:bad split over the whole window is exactly g:b.
struct Requirement {
    long long threshold = 0;
    bool from_ratio = false;
    long long ratio_good = 0;
    long long ratio_bad = 0;

    static Requirement value(long long threshold);
    static Requirement ratio(long long good, long long bad, std::uint64_t eval_steps);

    bool operator==(const Requirement&) const = default;
};

struct TestWorldSpec {
    std::string name;
    WorldDef world;
    MeaningOfLife meaning;
    std::uint64_t train_steps = 0;
    std::uint64_t eval_steps = 1;
    Requirement requirement;
    std::uint64_t seed = 0;
};

struct TestSuite {
    std::vector<TestWorldSpec> specs;
    std::uint64_t step_budget = std::numeric_limits<std::uint64_t>::max();  // per candidate
    std::uint64_t policy_cap = 100000;  // max candidates examined
};

struct SpecResult {
    bool ran = false;  // false when skipped after an earlier spec failed
    bool pass = false;
    long long eval_value = 0;

    bool operator==(const SpecResult&) const = default;
};

struct CandidateResult {
    std::uint64_t index = 0;
    std::uint32_t bit_length = 0;
    std::vector<SpecResult> per_spec;
    bool passed_all = false;

    bool operator==(const CandidateResult&) const = default;
};

struct SearchReport {
    std::optional<std::uint64_t> winner_index;
    std::optional<PolicyCode> winner;
    std::vector<CandidateResult> candidates;  // indices 0 .. examined-1
    std::uint64_t examined = 0;
    std::uint64_t started = 0;      // candidates begun (dovetailing may start extras)
    std::uint64_t total_steps = 0;  // world steps across all examined candidates
    double wall_ms = 0.0;           // never serialized; reports stay byte-stable
};

// Runs one continuous life of train_steps + eval_steps steps from the
// world's start state (no reset between phases) and scores the final
// eval_steps views against the requirement.
std::pair<bool, long long> evaluate_candidate(const TransducerPolicy& policy,
                                              const TestWorldSpec& spec);

// Checks candidates in canonical enumeration order; the winner is the first
// one passing every spec. Specs are evaluated in suite order and a
// candidate stops at its first failure.
SearchReport search_ai(const TestSuite& suite, std::uint32_t max_states);

// Round-robin interleaving: each live candidate advances `slice` world
// steps per turn, one new candidate is admitted per round, failures retire
// immediately, and a passer is crowned only once every lower-indexed
// candidate has been retired. Winner and per-candidate table match
// search_ai on identical inputs.
SearchReport dovetail_search(const TestSuite& suite, std::uint32_t max_states,
                             std::uint64_t slice);

struct CrammerReport {
    std::optional<PolicyCode> crammer;  // passes the suite, fails held_out
    SpecResult held_out_result;
    std::uint64_t examined = 0;
};

// Walks suite passers in index order and returns the first that fails the
// held-out spec. crammer stays empty when no passer fails it within caps.
CrammerReport crammer_demo(const TestSuite& suite, const TestWorldSpec& held_out,
                           std::uint32_t max_states);

// Line-oriented summary plus a CSV per-candidate table:
// index,length,<spec>_value,<spec>_pass,... with '-' for skipped specs.
void write_report(std::ostream& os, const SearchReport& report, const TestSuite& suite);

}  // namespace wb
