#include <doctest.h>

#include <algorithm>
#include <map>

#include "symca/constraints.hpp"

using namespace symca;

namespace {

Rule majority3() {
    return Rule::tabulate(2, 3, [](std::span<const State> u) { return State(u[0] + u[1] + u[2] >= 2); });
}

Word repeat(State s, std::int64_t count) { return Word(static_cast<std::size_t>(std::max<std::int64_t>(0, count)), s); }

Word cat(std::initializer_list<Word> parts) {
    Word w;
    for (const auto& p : parts) w.insert(w.end(), p.begin(), p.end());
    std::sort(w.begin(), w.end());
    return w;
}

// All multisets of size m over 0..n0-1, as sorted words.
std::vector<Word> multisets(std::uint64_t n0, int m) {
    std::vector<Word> out{{}};
    for (int i = 0; i < m; ++i) {
        std::vector<Word> next;
        for (const auto& w : out)
            for (State s = w.empty() ? 0 : w.back(); s < n0; ++s) {
                auto v = w;
                v.push_back(s);
                next.push_back(v);
            }
        out = std::move(next);
    }
    return out;
}

// Multiset transitions of subshift X_j written out by hand, with the roles
// of 0_0 and 1_0 in the counts matching the marker 0_0^(l-j) 1_0^j.
std::map<Word, State> ms_listing(const Rule& a0, std::uint64_t n, int k, int j) {
    const std::uint64_t n0 = a0.n();
    const int k0 = a0.k();
    const State zero = n - 2, one = n - 1;
    const std::int64_t l = (k - k0) / (k0 - 1);
    const std::int64_t o = k - k0 - (k0 - 1) * l;
    std::map<Word, State> out;
    for (const auto& x : multisets(n0, k0))
        out[cat({x, repeat(zero, (k0 - 1) * (l - j) + o), repeat(one, (k0 - 1) * j)})] = a0(x);
    for (const auto& x : multisets(n0, k0 - 1)) {
        for (std::int64_t s = 0; s <= o; ++s)
            out[cat({x, repeat(zero, (k0 - 1) * (l - j) + o + 1 - s), repeat(one, (k0 - 1) * j + s)})] = zero;
        out[cat({x, repeat(zero, (k0 - 1) * (l - j)), repeat(one, (k0 - 1) * j + o + 1)})] = one;
    }
    for (const auto& x : multisets(n0, k0))
        for (std::int64_t s = 0; s <= o - 1; ++s)
            out[cat({x, repeat(zero, (k0 - 1) * (l - j) + s), repeat(one, (k0 - 1) * j + o - s)})] = one;
    return out;
}

std::map<Word, State> entries_as_multisets(const ConstraintSet& cs) {
    std::map<Word, State> out;
    for (const auto& [key, e] : cs.entries) {
        auto w = e.tuple;
        std::sort(w.begin(), w.end());
        out[w] = e.output;
    }
    return out;
}

ConstructionParams params(Construction c) {
    ConstructionParams p;
    p.kind = c;
    return p;
}

}  // namespace

TEST_CASE("multiset constraints match the hand listing") {
    struct Case {
        Rule a0;
        std::uint64_t n;
        int k;
    };
    for (const auto& c : {Case{rules::xor2(), 10, 8}, Case{rules::xor2(), 12, 11}, Case{majority3(), 14, 19},
                          Case{majority3(), 14, 20}}) {
        const int k0 = c.a0.k();
        const int l = (c.k - k0) / (k0 - 1);
        for (int j : subshift_indices(params(Construction::MS), c.a0.n(), k0, c.n, c.k)) {
            if (j < k0 + 1 || j > l - k0 - 1) continue;
            CAPTURE(c.k);
            CAPTURE(j);
            const auto cs = build_constraints(params(Construction::MS), c.a0, c.n, c.k, j);
            CHECK(entries_as_multisets(cs) == ms_listing(c.a0, c.n, c.k, j));
            const auto bound = (2 * k0 + 1) * static_cast<std::size_t>(*checked_pow(c.a0.n(), k0));
            CHECK(cs.entries.size() <= bound);
        }
    }
}

TEST_CASE("hypotheses") {
    CHECK(subshift_indices(params(Construction::MS), 2, 2, 7, 8).empty());
    CHECK_FALSE(subshift_indices(params(Construction::MS), 2, 2, 10, 8).empty());
    try {
        check_hypotheses(params(Construction::KMS), rules::xor2(), 10, 8, 3);
        FAIL("xor is not captive");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::OutOfHypothesis);
    }
    CHECK_THROWS_AS(build_constraints(params(Construction::MS), rules::xor2(), 6, 8, 3), Error);
}

TEST_CASE("constructions simulate A0") {
    struct Case {
        Construction c;
        Rule a0;
        std::uint64_t n;
        int k;
    };
    const std::vector<Case> cases = {
        {Construction::MS, rules::xor2(), 10, 8},       {Construction::Tot, rules::xor2(), 10, 8},
        {Construction::OMS, rules::xor2(), 10, 8},      {Construction::KMS, rules::and2(), 10, 8},
        {Construction::KSet, rules::and2(), 10, 3},     {Construction::CaptiveFullshift, rules::and2(), 2, 2},
        {Construction::MS, majority3(), 14, 19},
    };
    for (const auto& c : cases) {
        const std::string name = to_string(c.c);
        CAPTURE(name);
        const auto p = params(c.c);
        const auto js = subshift_indices(p, c.a0.n(), c.a0.k(), c.n, c.k);
        REQUIRE_FALSE(js.empty());
        const auto cs = build_constraints(p, c.a0, c.n, c.k, js.front());
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const auto r = constrained_sample(cs, seed);
            CHECK(satisfies(r, cs));
            CHECK(verify_constructed_simulation(cs, c.a0, 6, seed).ok);
        }
    }
}

TEST_CASE("a mutated constraint breaks the simulation") {
    const auto cs = build_constraints(params(Construction::MS), rules::xor2(), 10, 8, 3);
    const auto bad = mutate_first_used(cs, rules::xor2(), 1);
    CHECK(bad.entries.size() == cs.entries.size());
    CHECK_FALSE(verify_constructed_simulation(bad, rules::xor2(), 6, 1).ok);
}

TEST_CASE("explicit requirements") {
    const auto ms = FamilySpec::parse("ms");
    const auto cs = constraints_from_tuples(ms, 2, 2, {{{0, 1}, 1}, {{1, 1}, 0}});
    CHECK(cs.entries.size() == 2);
    CHECK(exact_alpha(cs) == Rational(1, 4));
    CHECK(satisfies(rules::xor2(), cs));
    CHECK_FALSE(satisfies(rules::and2(), cs));
    // (1,0) has the key of (0,1)
    try {
        constraints_from_tuples(ms, 2, 2, {{{0, 1}, 1}, {{1, 0}, 0}});
        FAIL("expected a conflict");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ConstructionError);
    }
    try {
        constraints_from_tuples(FamilySpec::parse("k"), 3, 2, {{{0, 1}, 2}});
        FAIL("expected an infeasible output");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InfeasibleConstraint);
    }
}

TEST_CASE("construction names") {
    for (auto c : {Construction::MS, Construction::Tot, Construction::OMS, Construction::KMS, Construction::KSet,
                   Construction::CaptiveFullshift})
        CHECK(parse_construction(to_string(c)) == c);
    CHECK_THROWS_AS(parse_construction("nope"), Error);
}
