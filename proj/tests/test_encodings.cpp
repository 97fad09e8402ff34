#include <doctest.h>

#include <algorithm>
#include <random>

#include "symca/encodings.hpp"
#include "symca/family.hpp"

using namespace symca;

namespace {

Rule random_rule(std::mt19937_64& rng, std::uint64_t n, int k) {
    Word t(*checked_pow(n, k));
    for (auto& s : t) s = rng() % n;
    return Rule::dense(n, k, t);
}

PConfig random_config(std::mt19937_64& rng, std::uint64_t n, std::size_t max_period) {
    Word w(1 + rng() % max_period);
    for (auto& s : w) s = rng() % n;
    return PConfig(w);
}

bool contains(std::span<const State> window, State s) { return std::find(window.begin(), window.end(), s) != window.end(); }

}  // namespace

TEST_CASE("set encoding shape") {
    const auto enc = encode_set(rules::xor2());
    CHECK(enc.encoded.n() == 2 * 4 + 1);
    CHECK(enc.encoded.k() == 2);
    CHECK(enc.blank() == 8);
    CHECK(is_member(enc.encoded, FamilySpec::parse("set")));
}

TEST_CASE("set encoding legal configurations") {
    const auto enc = encode_set(rules::and2());
    const PConfig base({1, 0, 1});
    const auto legal = legal_config_set(enc, base, 2);
    CHECK(legal.period() == 12);
    for (std::int64_t z = 0; z < 12; ++z) CHECK(legal.at(z) == enc.state(base.at(z), (2 + z) % 4));
    const auto dec = decode_set(enc, legal);
    CHECK(same_configuration(dec.base, base));
    CHECK(dec.label_offset == 2);

    Word broken = legal.word();
    broken[3] = enc.blank();
    try {
        decode_set(enc, PConfig(broken));
        FAIL("expected NotLegal");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotLegal);
    }
}

TEST_CASE("set encoding step matches the source step") {
    // On a legal image the encoded rule applies the source rule and moves
    // labels by floor(k/2) - floor((k-1)/2).
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        const std::uint64_t n = 2 + rng() % 2;
        const int k = 1 + static_cast<int>(rng() % 3);
        const auto a = random_rule(rng, n, k);
        const auto enc = encode_set(a);
        if (enc.encoded.is_dense()) CHECK(is_member(enc.encoded, FamilySpec::parse("set")));
        auto c = random_config(rng, n, 5);
        std::uint64_t label = rng() % (k + 2);
        auto img = legal_config_set(enc, c, label);
        for (int t = 0; t < 6; ++t) {
            img = step(enc.encoded, img);
            c = step(a, c);
            label = (label + (k % 2 == 0 ? 1 : 0)) % (k + 2);
            CHECK(same_configuration(img, legal_config_set(enc, c, label)));
        }
    }
}

TEST_CASE("set encoding witness") {
    const auto enc = encode_set(rules::xor2());
    const auto w = set_witness(enc);
    CHECK(w.p1.m == 4);
    CHECK(dynamic_check(rules::xor2(), enc.encoded, w));
}

TEST_CASE("captive set encoding shape") {
    const auto enc = encode_kset(rules::xor2());
    CHECK(enc.period() == 3);
    CHECK(enc.encoded.n() == 12);
    CHECK(enc.encoded.k() == 6);
    CHECK_FALSE(enc.encoded.is_dense());
    CHECK_THROWS_AS(encode_kset(rules::identity(2, 1)), Error);
}

TEST_CASE("captive set encoding legal configurations decode") {
    std::mt19937_64 rng(2);
    const auto enc = encode_kset(rules::and2());
    for (int trial = 0; trial < 20; ++trial) {
        const auto c = random_config(rng, 2, 4);
        for (auto phase : {KSetPhase::Legal, KSetPhase::Intermediate}) {
            const auto img = legal_config_kset(enc, c, phase, rng() % enc.period());
            const auto dec = decode_kset(enc, img);
            CHECK(dec.phase == phase);
            bool found = false;
            for (std::size_t d = 0; d < c.period(); ++d) found |= same_configuration(dec.base, c.rotate(d));
            CHECK(found);
        }
    }
}

TEST_CASE("captive set transitions are disjoint and captive on generated windows") {
    std::mt19937_64 rng(12);
    for (int k = 2; k <= 3; ++k) {
        const auto a = random_rule(rng, 2, k);
        const auto enc = encode_kset(a);
        const int kk = enc.encoded.k();
        for (int trial = 0; trial < 5; ++trial) {
            auto img = legal_config_kset(enc, random_config(rng, 2, 3), KSetPhase::Legal);
            for (int t = 0; t < 4; ++t) {
                const auto p = static_cast<std::int64_t>(img.period());
                const int left = (kk - 1) / 2;
                for (std::int64_t z = 0; z < p; ++z) {
                    Word window(kk);
                    for (int d = 0; d < kk; ++d) window[d] = img.at(z - left + d);
                    CHECK(kset_matches(enc, window).size() == 1);
                    CHECK(contains(window, enc.encoded(window)));
                }
                img = step(enc.encoded, img);
            }
        }
    }
}

TEST_CASE("encoding simulation reports") {
    std::mt19937_64 rng(30);
    const auto set = verify_encoding_simulation(rules::xor2(), EncodingKind::Set, 5, 8, 1);
    CHECK(set.pass());
    CHECK(set.windows_checked > 0);
    const auto kset = verify_encoding_simulation(rules::xor2(), EncodingKind::KSet, 5, 6, 1);
    CHECK(kset.pass());
    for (int i = 0; i < 4; ++i) {
        const auto a = random_rule(rng, 2 + rng() % 2, 2 + static_cast<int>(rng() % 2));
        CHECK(verify_encoding_simulation(a, EncodingKind::Set, 3, 5, i).pass());
        CHECK(verify_encoding_simulation(a, EncodingKind::KSet, 2, 4, i).pass());
    }
    CHECK(parse_encoding_kind("kset") == EncodingKind::KSet);
    CHECK_THROWS_AS(parse_encoding_kind("codms2"), Error);
}
