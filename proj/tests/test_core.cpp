#include <doctest.h>

#include <random>

#include "symca/io.hpp"
#include "symca/kernels.hpp"

using namespace symca;

namespace {

// Independent reference for one step: explicit window offsets, wrap-around.
Word step_oracle(const Word& table, std::uint64_t n, int k, const Word& c) {
    const std::int64_t p = static_cast<std::int64_t>(c.size());
    const int left = (k - 1) / 2;
    Word out(c.size());
    for (std::int64_t z = 0; z < p; ++z) {
        std::uint64_t idx = 0;
        for (int d = -left; d <= k / 2; ++d) idx = idx * n + c[((z + d) % p + p) % p];
        out[z] = table[idx];
    }
    return out;
}

Rule random_rule(std::mt19937_64& rng, std::uint64_t n, int k) {
    Word t(*checked_pow(n, k));
    for (auto& s : t) s = rng() % n;
    return Rule::dense(n, k, t);
}

}  // namespace

TEST_CASE("window offsets") {
    for (int k = 1; k <= 6; ++k) {
        const auto r = rules::identity(2, k);
        CHECK(r.left() + r.right() + 1 == k);
        CHECK(r.left() == (k - 1) / 2);
    }
    CHECK(rules::xor2().left() == 0);
    CHECK(rules::xor2().right() == 1);
}

TEST_CASE("apply_local") {
    const Word u{0, 1, 1};
    CHECK(apply_local(rules::xor2(), u) == Word{1, 0});
    CHECK(apply_local(rules::xor2(), Word{1}).empty());
    CHECK(apply_local(rules::identity(3, 1), Word{2, 1, 0, 2}) == Word{2, 1, 0, 2});
    CHECK_THROWS_AS(apply_local(rules::xor2(), Word{0, 2}), Error);
}

TEST_CASE("step examples") {
    CHECK(step(rules::xor2(), PConfig({0, 1})).word() == Word{1, 1});
    CHECK(step(rules::constant(3, 2, 0), PConfig({2, 1, 0})).word() == Word{0, 0, 0});
    CHECK(step(rules::identity(2, 1), PConfig({1, 0, 0})).word() == Word{1, 0, 0});
    CHECK_THROWS_AS(step(rules::xor2(), PConfig({0, 3})), Error);
}

TEST_CASE("evolve XOR from 10") {
    const auto t = evolve(rules::xor2(), PConfig({1, 0}), 2);
    REQUIRE(t.rows.size() == 3);
    CHECK(t.rows[0].word() == Word{1, 0});
    CHECK(t.rows[1].word() == Word{1, 1});
    CHECK(t.rows[2].word() == Word{0, 0});
    CHECK(evolve(rules::xor2(), PConfig({1, 0}), 0).rows.size() == 1);
}

TEST_CASE("step agrees with the oracle and commutes with rotation") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const std::uint64_t n = 2 + rng() % 3;
        const int k = 1 + static_cast<int>(rng() % 4);
        const auto r = random_rule(rng, n, k);
        Word c(1 + rng() % 9);
        for (auto& s : c) s = rng() % n;
        const PConfig pc(c);
        CHECK(step(r, pc).word() == step_oracle(r.table(), n, k, c));
        const auto d = static_cast<std::int64_t>(rng() % 11) - 5;
        CHECK(step(r, pc.rotate(d)) == step(r, pc).rotate(d));
        CHECK(kernels::step_serial(r, pc) == kernels::step_parallel(r, pc));
    }
}

TEST_CASE("evolve composes") {
    std::mt19937_64 rng(3);
    const auto r = random_rule(rng, 3, 3);
    const PConfig c({0, 1, 2, 2, 1});
    const auto a = evolve(r, c, 3);
    const auto b = evolve(r, a.rows.back(), 4);
    CHECK(b.rows.back() == evolve(r, c, 7).rows.back());
}

TEST_CASE("shift convention") {
    // sigma_z: c'(x) = c(x - z)
    const PConfig c({0, 1, 2, 3});
    const auto s = c.shifted(1);
    for (std::int64_t x = -4; x < 8; ++x) CHECK(s.at(x) == c.at(x - 1));
    CHECK(step(rules::shift_right(4), c) == s);
}

TEST_CASE("dense and intensional agree") {
    const auto f = [](std::span<const State> u) { return (u[0] + 2 * u[1] + u[2]) % 3; };
    const auto dense = Rule::tabulate(3, 3, f);
    const auto lazy = Rule::intensional(3, 3, f, "lin");
    CHECK(equivalent(dense, lazy));
    CHECK(lazy.densify().table() == dense.table());
    const auto wide = extend_window(dense, 5);
    CHECK(wide.k() == 5);
    const PConfig c({2, 0, 1, 1, 0, 2, 2});
    CHECK(step(wide, c) == step(dense, c));
}

TEST_CASE("rule file round trip") {
    const std::string text = serialize_rule(rules::xor2());
    CHECK(text.find("table 0 1 1 0") != std::string::npos);
    CHECK(serialize_rule(parse_rule(text)) == text);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 20; ++i) {
        const auto r = random_rule(rng, 2 + rng() % 3, 1 + static_cast<int>(rng() % 3));
        CHECK(parse_rule(serialize_rule(r)).table() == r.table());
    }
}

TEST_CASE("rule file errors") {
    try {
        parse_rule("n 2\nk 2\ntable 0 1 1\n");
        FAIL("expected ShapeError");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ShapeError);
    }
    try {
        parse_rule("n two\nk 2\n");
        FAIL("expected ParseError");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ParseError);
    }
    CHECK_THROWS_AS(parse_rule("n 2\nk 1\ntable 0 2\n"), Error);
}

TEST_CASE("trace files and rendering") {
    const auto t = evolve(rules::xor2(), PConfig({1, 0}), 2);
    const auto back = parse_trace(serialize_trace(t));
    REQUIRE(back.rows.size() == 3);
    CHECK(back.rows[1].word() == Word{1, 1});

    const std::string pgm = render_pgm(t);
    const std::string header = "P5\n2 3\n255\n";
    REQUIRE(pgm.size() == header.size() + 6);
    CHECK(pgm.substr(0, header.size()) == header);
    const std::string pixels = pgm.substr(header.size());
    CHECK(pixels == std::string("\xff\x00\xff\xff\x00\x00", 6));

    Trace one;
    one.n = 1;
    one.rows.push_back(PConfig({0, 0, 0}));
    const auto black = render_pgm(one);
    CHECK(black.substr(black.size() - 3) == std::string(3, '\0'));

    // gray level floor(255 s / (n - 1)) for n = 4
    Trace gray;
    gray.n = 4;
    gray.rows.push_back(PConfig({0, 1, 2, 3}));
    const auto g = render_pgm(gray);
    CHECK(g.substr(g.size() - 4) == std::string("\x00\x55\xaa\xff", 4));

    CHECK_THROWS_AS(parse_trace("n 2 period 2 T 1\n1 0\n"), Error);
}
