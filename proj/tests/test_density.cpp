#include <doctest.h>

#include <cmath>

#include "symca/density.hpp"

using namespace symca;

namespace {

ConstructionParams fullshift() {
    ConstructionParams p;
    p.kind = Construction::CaptiveFullshift;
    return p;
}

std::set<NKey> keys_of(const ConstraintSet& cs) {
    std::set<NKey> s;
    for (const auto& [key, e] : cs.entries) s.insert(key);
    return s;
}

}  // namespace

TEST_CASE("bound in log space") {
    const std::vector<double> a{0.25, 0.5, 0.1};
    CHECK(bound_lower(a) == doctest::Approx(1 - 0.75 * 0.5 * 0.9));
    CHECK(bound_lower(std::vector<double>{}) == 0.0);
    CHECK(bound_lower(std::vector<Rational>{Rational(1, 4), Rational(1, 4)}) == doctest::Approx(1 - 0.5625));
    for (double alpha : {1e-30, 1e-20, 1e-12}) {
        for (double count : {1e3, 1e12, 1e28}) {
            const double expected = -std::expm1(-count * alpha);
            CHECK(std::abs(bound_lower_repeated(alpha, count) - expected) <= 1e-6 * expected);
        }
    }
    CHECK(bound_lower_repeated(0.25, 17) > 0.99);
    CHECK(bound_lower_repeated(0.25, 16) < 0.99);
}

TEST_CASE("path specs") {
    const auto fk = PathSpec::parse("fixed-k:3");
    CHECK(fk.at(7) == std::make_pair(std::uint64_t{7}, 3));
    const auto fn = PathSpec::parse("fixed-n:10");
    CHECK(fn.at(8) == std::make_pair(std::uint64_t{10}, 8));
    const auto list = PathSpec::parse("list:10x8,12x9");
    CHECK(list.at(1) == std::make_pair(std::uint64_t{12}, 9));
    CHECK_FALSE(list.at(2));
    CHECK(PathSpec::parse(list.to_string()).list == list.list);
    CHECK_THROWS_AS(PathSpec::parse("fixed-k:x"), Error);
    CHECK_THROWS_AS(PathSpec::parse("spiral:3"), Error);
}

TEST_CASE("independence of key sets") {
    const auto ms = FamilySpec::parse("ms");
    const auto e1 = constraints_from_tuples(ms, 2, 2, {{{0, 0}, 1}});
    const auto e2 = constraints_from_tuples(ms, 2, 2, {{{1, 1}, 0}});
    CHECK(independence_check(ms, 2, 2, {keys_of(e1), keys_of(e2)}));
    CHECK_FALSE(independence_check(ms, 2, 2, {keys_of(e1), keys_of(e1)}));

    // exhaustive probability of meeting at least one set versus the bound
    const auto both = constraints_from_tuples(ms, 2, 2, {{{0, 0}, 1}, {{1, 1}, 0}});
    std::uint64_t hit = 0, total = 0;
    for_each_member(ms, 2, 2, [&](const Rule& r) {
        ++total;
        if (satisfies(r, e1) || satisfies(r, e2)) ++hit;
    });
    const Rational exact(hit, total);
    const Rational a1 = exact_alpha(e1), a2 = exact_alpha(e2);
    CHECK(exact == 1 - (1 - a1) * (1 - a2));
    CHECK(exact_alpha(both) == a1 * a2);
}

TEST_CASE("independence check refuses large overlapping families") {
    const auto all = FamilySpec::parse("all");
    const auto e = constraints_from_tuples(all, 3, 3, {{{0, 0, 0}, 1}});
    CHECK(independence_check(all, 3, 3, {keys_of(e)}));
    try {
        independence_check(all, 3, 3, {keys_of(e), keys_of(e)});
        FAIL("expected Inconclusive");
    } catch (const Error& err) {
        CHECK(err.kind() == ErrorKind::Inconclusive);
    }
}

TEST_CASE("fullshift curve crosses 0.99 where the closed form says") {
    // alpha = 1/4 per subshift and floor(x/2) subshifts at (x, 2)
    const int needed = static_cast<int>(std::ceil(std::log(0.01) / std::log(0.75)));
    const std::int64_t x_cross = 2 * needed;
    const auto rows = density_curve(PathSpec::parse("fixed-k:2"), fullshift(), rules::and2(), 2, x_cross + 3);
    double last = 0;
    for (const auto& r : rows) {
        CHECK(r.kind == "lower-bound");
        CHECK(r.alpha == Rational(1, 4));
        CHECK(r.j_count == static_cast<std::size_t>(r.x / 2));
        CHECK(r.bound >= last);
        last = r.bound;
        CHECK((r.bound >= 0.99) == (r.x >= x_cross));
    }
}

TEST_CASE("curve rows outside the hypotheses") {
    ConstructionParams ms;
    const auto rows = density_curve(PathSpec::parse("fixed-n:10"), ms, rules::xor2(), 6, 9);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].kind == "out-of-hypothesis");
    CHECK(rows[2].kind == "lower-bound");
    const auto csv = curve_csv(rows);
    CHECK(csv.rfind("x,n,k,j_count,alpha_exact,bound,kind\n", 0) == 0);
    CHECK(csv.find("8,10,8,1,1/10000000,") != std::string::npos);
}

TEST_CASE("wilson interval") {
    const auto [lo, hi] = wilson_interval(50, 100);
    CHECK(lo == doctest::Approx(0.4038).epsilon(1e-3));
    CHECK(hi == doctest::Approx(0.5962).epsilon(1e-3));
    CHECK(wilson_interval(0, 10).first == 0.0);
    CHECK(wilson_interval(10, 10).second == 1.0);
    CHECK_THROWS_AS(wilson_interval(0, 0), Error);
}

TEST_CASE("empirical density") {
    const auto k = FamilySpec::parse("k");
    const auto cs = constraints_from_tuples(k, 2, 2, {{{0, 1}, 1}, {{1, 0}, 0}});
    const auto pred = [&cs](const Rule& r) { return satisfies(r, cs); };
    const auto par = empirical_density(k, 2, 2, pred, 4000, 99, true);
    const auto ser = empirical_density(k, 2, 2, pred, 4000, 99, false);
    CHECK(par.hits == ser.hits);
    CHECK(par.kind == "monte-carlo");
    CHECK(par.ci->first <= par.value);
    CHECK(std::abs(par.value - 0.25) < 0.05);
    CHECK(empirical_density(k, 2, 2, [](const Rule&) { return true; }, 100, 1).value == 1.0);
    CHECK_THROWS_AS(empirical_density(k, 2, 2, pred, 0, 1), Error);
}

TEST_CASE("manifests replay") {
    Manifest m;
    m.params.kind = Construction::OMS;
    m.params.outer = 2;
    m.a0_path = "xor.rule";
    m.path = PathSpec::parse("fixed-n:40");
    m.from = 8;
    m.to = 20;
    m.seed = 12;
    const auto text = serialize_manifest(m);
    const auto back = parse_manifest(text);
    CHECK(serialize_manifest(back) == text);
    CHECK(back.params.outer == 2);
    CHECK_THROWS_AS(parse_manifest("construction ms\n"), Error);
    CHECK_THROWS_AS(parse_manifest("a0 x\npath fixed-k:2\ncolour blue\n"), Error);
}
