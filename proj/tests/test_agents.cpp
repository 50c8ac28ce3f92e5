#include <doctest.h>

#include <set>

#include "helpers.hpp"
#include "worldbench/errors.hpp"

using namespace wbtest;

namespace {

TransducerPolicy echo_policy(std::uint32_t size) {
    TransducerPolicy p;
    p.state_count = 1;
    p.sigma_size = size;
    p.omega_size = size;
    for (Symbol i = 0; i < size; ++i) {
        p.out.push_back(i);
        p.next.push_back(0);
    }
    return p;
}

}  // namespace

TEST_CASE("agent stepping") {
    SUBCASE("constant agent always emits its letter") {
        auto agent = make_constant(1, 2, 3);
        for (int i = 0; i < 5; ++i) CHECK(agent->step(Symbol(i % 2)) == 1);
    }
    SUBCASE("one-state echo transducer emits its input") {
        TransducerAgent agent(echo_policy(2));
        CHECK(agent.step(0) == 0);
        CHECK(agent.step(1) == 1);
        CHECK(agent.step(0) == 0);
    }
    SUBCASE("two-state alternator ignores its input") {
        TransducerPolicy p;
        p.state_count = 2;
        p.sigma_size = 2;
        p.omega_size = 2;
        p.out = {0, 0, 1, 1};
        p.next = {1, 1, 0, 0};
        TransducerAgent agent(p);
        std::vector<Symbol> emitted;
        for (Symbol in : {1u, 0u, 1u, 1u}) emitted.push_back(agent.step(in));
        CHECK(emitted == std::vector<Symbol>{0, 1, 0, 1});
    }
    SUBCASE("unknown letters are rejected") {
        TransducerAgent agent(echo_policy(2));
        CHECK_THROWS_AS(agent.step(5), std::out_of_range);
    }
}

TEST_CASE("policy enumeration counts and order") {
    SUBCASE("|sigma|=1, |omega|=2, one state: exactly two policies") {
        PolicyEnumerator stream(1, 2, 1);
        CHECK(stream.total() == 2);
        auto first = stream.next();
        auto second = stream.next();
        REQUIRE(first);
        REQUIRE(second);
        CHECK_FALSE(stream.next());
        CHECK(first->policy.out == std::vector<Symbol>{0});
        CHECK(second->policy.out == std::vector<Symbol>{1});
    }
    SUBCASE("|sigma|=2, |omega|=2, one state: exactly four policies") {
        PolicyEnumerator stream(2, 2, 1);
        CHECK(stream.total() == 4);
    }
    SUBCASE("the first policy is the all-first-letter constant") {
        PolicyEnumerator stream(3, 2, 2);
        auto first = stream.next();
        REQUIRE(first);
        CHECK(first->index == 0);
        CHECK(first->policy.state_count == 1);
        for (Symbol o : first->policy.out) CHECK(o == 0);
    }
    SUBCASE("bit length never decreases along the stream") {
        PolicyEnumerator stream(2, 2, 2);
        std::uint32_t last = 0;
        while (auto code = stream.next()) {
            CHECK(code->bit_length >= last);
            last = code->bit_length;
        }
    }
    SUBCASE("closed-form count matches explicit generation with dedup") {
        for (std::uint32_t m : {1u, 2u}) {
            for (std::uint32_t q : {1u, 2u}) {
                for (std::uint32_t s = 1; s <= 2; ++s) {
                    std::set<std::pair<std::vector<Symbol>, std::vector<State>>> seen;
                    PolicyEnumerator stream(m, q, s);
                    std::uint64_t yielded = 0;
                    while (auto code = stream.next()) {
                        ++yielded;
                        // every yield is a distinct table
                        CHECK(seen.insert({code->policy.out, code->policy.next}).second);
                    }
                    std::uint64_t expected = 0;
                    for (std::uint32_t states = 1; states <= s; ++states) {
                        expected += *policy_count(states, m, q);
                    }
                    CHECK(yielded == expected);
                }
            }
        }
    }
}

TEST_CASE("encode/decode round-trip") {
    SUBCASE("first 100000 indices") {
        for (std::uint64_t index = 0; index < 100000; ++index) {
            TransducerPolicy p = decode_policy(index, 2, 2);
            CHECK(encode_policy(p) == index);
        }
    }
    SUBCASE("random valid policies") {
        std::mt19937_64 rng(17);
        for (int trial = 0; trial < 1000; ++trial) {
            std::uint32_t m = std::uint32_t(1 + rng() % 3);
            std::uint32_t q = std::uint32_t(1 + rng() % 3);
            TransducerPolicy p = random_policy(rng, 4, m, q);
            CHECK(decode_policy(encode_policy(p), m, q) == p);
        }
    }
}

TEST_CASE("policy text round-trip") {
    Alphabet sigma = letters({"n", "g"});
    Alphabet omega = letters({"a", "b"});
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        TransducerPolicy p = random_policy(rng, 3, 2, 2);
        CHECK(parse_policy(print_policy(p, sigma, omega), sigma, omega) == p);
    }
    CHECK_THROWS_AS(parse_policy("states=1 start=0\n", sigma, omega), ParseError);
}

TEST_CASE("baseline agents") {
    SUBCASE("constant over a run") {
        auto agent = make_constant(1, 2, 2);
        LifeRecord life = run_life(flip_world(), *agent, 10, 0);
        for (Symbol d : life.actions) CHECK(d == 1);
    }
    SUBCASE("random letter frequencies stay near one half") {
        auto agent = make_random(2, 2, 12345);
        std::size_t ones = 0;
        const std::size_t steps = 10000;
        for (std::size_t i = 0; i < steps; ++i) ones += agent->step(0);
        double freq = double(ones) / double(steps);
        CHECK(freq > 0.45);
        CHECK(freq < 0.55);
    }
    SUBCASE("baselines are reproducible under equal seeds") {
        WorldDef flip = flip_world();
        MeaningOfLife meaning(flip.sigma(), {"g"}, {"n"});
        auto a = make_random(2, 2, 9);
        auto b = make_random(2, 2, 9);
        CHECK(run_life(flip, *a, 100, 4) == run_life(flip, *b, 100, 4));
        LearnerParams params;
        auto c = make_history_learner(params, meaning, 2, 2, 9);
        auto d = make_history_learner(params, meaning, 2, 2, 9);
        CHECK(run_life(flip, *c, 500, 4) == run_life(flip, *d, 500, 4));
    }
    SUBCASE("invalid learner parameters are configuration errors") {
        MeaningOfLife meaning(letters({"g", "b"}), {"g"}, {"b"});
        LearnerParams bad;
        bad.alpha = 0.0;
        CHECK_THROWS_AS(make_history_learner(bad, meaning, 2, 2, 0), ConfigError);
        bad = LearnerParams{};
        bad.gamma = 1.0;
        CHECK_THROWS_AS(make_history_learner(bad, meaning, 2, 2, 0), ConfigError);
        bad = LearnerParams{};
        bad.eps0 = 1.5;
        CHECK_THROWS_AS(make_history_learner(bad, meaning, 2, 2, 0), ConfigError);
    }
}

TEST_CASE("history learner masters echo-reward") {
    auto parsed = builtin_world("echo-reward");
    LearnerParams params;
    params.window = 1;
    auto learner = make_history_learner(params, parsed.meaning, 2, 2, 42);
    LifeRecord life = run_life(parsed.world, *learner, 5000, 1);
    long long tail = 0;
    for (std::size_t i = life.length() - 100; i < life.length(); ++i) {
        tail += parsed.meaning.value_of(life.views[i]);
    }
    CHECK(double(tail) / 100.0 >= 0.9);

    auto random_agent = make_random(2, 2, 42);
    LifeRecord random_life = run_life(parsed.world, *random_agent, 5000, 1);
    long long random_tail = 0;
    for (std::size_t i = random_life.length() - 100; i < random_life.length(); ++i) {
        random_tail += parsed.meaning.value_of(random_life.views[i]);
    }
    CHECK(double(random_tail) / 100.0 <= 0.2);
}

TEST_CASE("transducer reset makes runs independent of construction time") {
    WorldDef flip = flip_world();
    TransducerAgent agent(echo_policy(2));
    LifeRecord before = run_life(flip, agent, 20, 0);
    agent.step(1);  // disturb internal state
    LifeRecord after = run_life(flip, agent, 20, 0);
    CHECK(before == after);
}
