#include "worldbench/search.hpp"

#include <chrono>
#include <deque>
#include <map>
#include <memory>

#include "worldbench/errors.hpp"

namespace wb {

Requirement Requirement::value(long long threshold) {
    Requirement r;
    r.threshold = threshold;
    return r;
}

Requirement Requirement::ratio(long long good, long long bad, std::uint64_t eval_steps) {
    if (good <= 0 || bad < 0 || good <= bad) {
        throw ConfigError("ratio requirement needs good > bad >= 0");
    }
    Requirement r;
    r.from_ratio = true;
    r.ratio_good = good;
    r.ratio_bad = bad;
    // Value of a window whose good:bad split is exactly good:bad, rounded up.
    long long w = static_cast<long long>(eval_steps);
    long long num = w * (good - bad);
    long long den = good + bad;
    r.threshold = num / den + (num % den != 0 ? 1 : 0);
    return r;
}

namespace {

void check_spec(const TestWorldSpec& spec) {
    if (spec.eval_steps == 0) throw ConfigError("eval_steps must be positive");
}

void check_alphabets(const TransducerPolicy& policy, const TestWorldSpec& spec) {
    if (policy.sigma_size != spec.world.sigma().size() ||
        policy.omega_size != spec.world.omega().size()) {
        throw ConfigError("policy alphabets do not match the test world");
    }
}

// Incremental evaluation of one candidate across the suite's specs, in
// order, as one resumable step stream. Both search variants drive their
// candidates through this type, so their verdicts agree step for step.
class CandidateRun {
public:
    CandidateRun(const TestSuite& suite, PolicyCode code)
        : suite_(&suite), code_(std::move(code)), agent_(code_.policy) {
        result_.index = code_.index;
        result_.bit_length = code_.bit_length;
        result_.per_spec.resize(suite.specs.size());
        for (const auto& spec : suite.specs) {
            check_spec(spec);
            check_alphabets(code_.policy, spec);
        }
    }

    // Advances up to `max_steps` world steps; returns the number taken.
    std::uint64_t advance(std::uint64_t max_steps) {
        std::uint64_t taken = 0;
        while (taken < max_steps && !done_) {
            if (!spec_live_) {
                const TestWorldSpec& spec = suite_->specs[spec_idx_];
                agent_.reset();
                rng_.seed(spec.seed);
                world_state_ = spec.world.start();
                step_ = 0;
                eval_value_ = 0;
                spec_live_ = true;
            }
            const TestWorldSpec& spec = suite_->specs[spec_idx_];
            if (steps_used_ >= suite_->step_budget) {
                // Budget ran out mid-spec: the candidate retires unfinished.
                done_ = true;
                break;
            }
            Symbol v = spec.world.view(world_state_);
            if (step_ >= spec.train_steps) eval_value_ += spec.meaning.value_of(v);
            Symbol d = agent_.step(v);
            world_state_ = step_world(spec.world, world_state_, d, rng_);
            ++step_;
            ++steps_used_;
            ++taken;
            if (step_ == spec.train_steps + spec.eval_steps) {
                bool pass = eval_value_ >= spec.requirement.threshold;
                result_.per_spec[spec_idx_] = SpecResult{true, pass, eval_value_};
                spec_live_ = false;
                ++spec_idx_;
                if (!pass) {
                    done_ = true;  // later specs stay unrun
                } else if (spec_idx_ == suite_->specs.size()) {
                    done_ = true;
                    result_.passed_all = true;
                }
            }
        }
        return taken;
    }

    bool done() const { return done_; }
    bool passed() const { return result_.passed_all; }
    const CandidateResult& result() const { return result_; }
    const PolicyCode& code() const { return code_; }

private:
    const TestSuite* suite_;
    PolicyCode code_;
    TransducerAgent agent_;
    CandidateResult result_;
    std::size_t spec_idx_ = 0;
    bool spec_live_ = false;
    bool done_ = false;
    State world_state_ = 0;
    Rng rng_;
    std::uint64_t step_ = 0;
    long long eval_value_ = 0;
    std::uint64_t steps_used_ = 0;
};

void check_suite(const TestSuite& suite) {
    if (suite.specs.empty()) throw ConfigError("test suite has no specs");
    if (suite.policy_cap == 0 || suite.step_budget == 0) {
        throw ConfigError("suite budgets must be positive");
    }
    const auto& sigma = suite.specs.front().world.sigma();
    const auto& omega = suite.specs.front().world.omega();
    for (const auto& spec : suite.specs) {
        if (!(spec.world.sigma() == sigma) || !(spec.world.omega() == omega)) {
            throw ConfigError("all suite specs must share sigma and omega");
        }
    }
}

}  // namespace

std::pair<bool, long long> evaluate_candidate(const TransducerPolicy& policy,
                                              const TestWorldSpec& spec) {
    check_spec(spec);
    check_alphabets(policy, spec);
    TestSuite one;
    one.specs.push_back(spec);
    PolicyCode code;
    code.policy = policy;
    CandidateRun run(one, code);
    while (!run.done()) run.advance(std::numeric_limits<std::uint64_t>::max());
    const SpecResult& r = run.result().per_spec.front();
    return {r.pass, r.eval_value};
}

SearchReport search_ai(const TestSuite& suite, std::uint32_t max_states) {
    check_suite(suite);
    auto t0 = std::chrono::steady_clock::now();
    const std::uint32_t sigma_size = static_cast<std::uint32_t>(suite.specs[0].world.sigma().size());
    const std::uint32_t omega_size = static_cast<std::uint32_t>(suite.specs[0].world.omega().size());
    PolicyEnumerator stream(sigma_size, omega_size, max_states);
    SearchReport report;
    while (report.examined < suite.policy_cap) {
        auto code = stream.next();
        if (!code) break;
        CandidateRun run(suite, *code);
        report.total_steps += run.advance(std::numeric_limits<std::uint64_t>::max());
        ++report.examined;
        ++report.started;
        report.candidates.push_back(run.result());
        if (run.passed()) {
            report.winner_index = code->index;
            report.winner = *code;
            break;
        }
    }
    report.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

SearchReport dovetail_search(const TestSuite& suite, std::uint32_t max_states,
                             std::uint64_t slice) {
    check_suite(suite);
    if (slice == 0) throw ConfigError("slice must be positive");
    auto t0 = std::chrono::steady_clock::now();
    const std::uint32_t sigma_size = static_cast<std::uint32_t>(suite.specs[0].world.sigma().size());
    const std::uint32_t omega_size = static_cast<std::uint32_t>(suite.specs[0].world.omega().size());
    PolicyEnumerator stream(sigma_size, omega_size, max_states);
    SearchReport report;
    std::deque<std::unique_ptr<CandidateRun>> live;  // ascending candidate index
    std::map<std::uint64_t, CandidateResult> verdicts;
    std::uint64_t lowest_open = 0;  // smallest index not yet retired
    std::optional<std::uint64_t> crowned;
    bool stream_open = true;
    while (!crowned) {
        // Admit one new candidate per round.
        if (stream_open && report.started < suite.policy_cap) {
            if (auto code = stream.next()) {
                live.push_back(std::make_unique<CandidateRun>(suite, std::move(*code)));
                ++report.started;
            } else {
                stream_open = false;
            }
        }
        if (live.empty()) break;  // everything retired, nothing left to admit
        for (auto& run : live) report.total_steps += run->advance(slice);
        // Collect finished candidates and crown the lowest passer whose
        // predecessors have all been retired.
        std::deque<std::unique_ptr<CandidateRun>> still_live;
        for (auto& run : live) {
            if (run->done()) {
                verdicts.emplace(run->result().index, run->result());
            } else {
                still_live.push_back(std::move(run));
            }
        }
        live = std::move(still_live);
        while (true) {
            auto it = verdicts.find(lowest_open);
            if (it == verdicts.end()) break;
            if (it->second.passed_all) {
                crowned = lowest_open;
                break;
            }
            ++lowest_open;
        }
    }
    if (crowned) {
        report.winner_index = crowned;
        PolicyCode code;
        code.index = *crowned;
        code.policy = decode_policy(*crowned, sigma_size, omega_size);
        code.bit_length = policy_bit_length(code.policy.state_count, sigma_size, omega_size);
        report.winner = code;
    }
    // The table mirrors search_ai: candidates 0..winner, or every examined
    // candidate when there is no winner.
    std::uint64_t table_end = crowned ? *crowned + 1 : report.started;
    for (std::uint64_t i = 0; i < table_end; ++i) {
        auto it = verdicts.find(i);
        if (it != verdicts.end()) report.candidates.push_back(it->second);
    }
    report.examined = report.candidates.size();
    report.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

CrammerReport crammer_demo(const TestSuite& suite, const TestWorldSpec& held_out,
                           std::uint32_t max_states) {
    check_suite(suite);
    check_spec(held_out);
    const std::uint32_t sigma_size = static_cast<std::uint32_t>(suite.specs[0].world.sigma().size());
    const std::uint32_t omega_size = static_cast<std::uint32_t>(suite.specs[0].world.omega().size());
    PolicyEnumerator stream(sigma_size, omega_size, max_states);
    CrammerReport report;
    while (report.examined < suite.policy_cap) {
        auto code = stream.next();
        if (!code) break;
        ++report.examined;
        CandidateRun run(suite, *code);
        while (!run.done()) run.advance(std::numeric_limits<std::uint64_t>::max());
        if (!run.passed()) continue;
        auto [pass, value] = evaluate_candidate(code->policy, held_out);
        if (!pass) {
            report.crammer = *code;
            report.held_out_result = SpecResult{true, pass, value};
            return report;
        }
    }
    return report;
}

void write_report(std::ostream& os, const SearchReport& report, const TestSuite& suite) {
    os << "# worldbench search report\n";
    os << "# specs = " << suite.specs.size() << "\n";
    os << "# policy_cap = " << suite.policy_cap << "\n";
    os << "# step_budget = " << suite.step_budget << "\n";
    if (report.winner_index) {
        os << "winner = " << *report.winner_index << "\n";
        os << "winner_length = " << report.winner->bit_length << "\n";
        os << "winner_states = " << report.winner->policy.state_count << "\n";
    } else {
        os << "winner = none\n";
    }
    os << "examined = " << report.examined << "\n";
    os << "started = " << report.started << "\n";
    os << "total_steps = " << report.total_steps << "\n";
    os << "index,length";
    for (const auto& spec : suite.specs) os << "," << spec.name << "_value," << spec.name << "_pass";
    os << "\n";
    for (const auto& row : report.candidates) {
        os << row.index << "," << row.bit_length;
        for (const auto& sr : row.per_spec) {
            if (sr.ran) {
                os << "," << sr.eval_value << "," << (sr.pass ? 1 : 0);
            } else {
                os << ",-,-";
            }
        }
        os << "\n";
    }
}

}  // namespace wb
