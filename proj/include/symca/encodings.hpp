#pragma once

#include "symca/rescale.hpp"

namespace symca {

// Set encoding. States (a, label) with label in 0..k+1 are numbered
// label*n + a; the blank # is n(k+2). On a legal configuration the labels
// increase by one from cell to cell, and each step applies the source rule
// to the first components.
struct SetEncoding {
    Rule source;
    Rule encoded;

    std::uint64_t n() const { return source.n(); }
    int k() const { return source.k(); }
    int labels() const { return k() + 2; }
    State state(State a, std::uint64_t label) const { return label * n() + a; }
    State blank() const { return n() * labels(); }
    /// Label advance per step: floor(k/2) - floor((k-1)/2).
    std::uint64_t label_step() const { return k() % 2 == 0 ? 1 : 0; }
};

SetEncoding encode_set(const Rule& a);
/// Cell z holds (base(z), label0 + z mod k+2); period lcm(p, k+2).
PConfig legal_config_set(const SetEncoding& enc, const PConfig& base, std::uint64_t label0 = 0);

struct SetDecoded {
    PConfig base;
    std::uint64_t label_offset = 0;  // label of cell 0
};
/// Throws NotLegal on a blank cell or a broken label cycle.
SetDecoded decode_set(const SetEncoding& enc, const PConfig& c);
/// (k+2)-blocks of the source map to their legal images.
SimWitness set_witness(const SetEncoding& enc);

// Captive set encoding. Labels live in 0..P-1 with P = 2k-1. Each label owns
// a library word # 0 1 .. n-1 #'; the state at library position x with
// label l is numbered l*(n+2) + x, so a source state a sits at position a+1
// and numeric order is the fixed total order used by the fallback. A legal
// configuration alternates an isolated cell (a_j, l_j), l_j = l_0 + j, with
// the library of label l_j + k; an intermediate one uses label l_j + 1.
// Two encoded steps simulate one source step.
struct KSetEncoding {
    Rule source;
    Rule encoded;

    std::uint64_t n() const { return source.n(); }
    int k() const { return source.k(); }
    int period() const { return 2 * k() - 1; }
    int arity() const { return k() + (k() - 1) * static_cast<int>(n() + 2); }
    int block() const { return static_cast<int>(n()) + 3; }
    std::uint64_t states() const { return period() * (n() + 2); }
    State state(std::uint64_t label, std::uint64_t pos) const { return label * (n() + 2) + pos; }
    State isolated(State a, std::uint64_t label) const { return state(label, a + 1); }
};

/// Throws Unsupported for k < 2 and TooLarge when n + 2 > 64.
KSetEncoding encode_kset(const Rule& a);

enum class KSetPhase { Legal, Intermediate };
enum class KSetType { T1, T2, T3, T4, Fallback };
const char* to_string(KSetType type);

PConfig legal_config_kset(const KSetEncoding& enc, const PConfig& base, KSetPhase phase, std::uint64_t label0 = 0);

struct KSetDecoded {
    PConfig base;
    KSetPhase phase = KSetPhase::Legal;
    std::size_t offset = 0;      // cell index of the first isolated cell
    std::uint64_t label0 = 0;    // label of that cell
};
KSetDecoded decode_kset(const KSetEncoding& enc, const PConfig& c);

struct KSetMatch {
    KSetType type = KSetType::Fallback;
    State output = 0;
};
/// Every transition hypothesis the neighbourhood set satisfies. On legal and
/// intermediate configurations exactly one matches.
std::vector<KSetMatch> kset_matches(const KSetEncoding& enc, std::span<const State> window);
KSetMatch kset_classify(const KSetEncoding& enc, std::span<const State> window);

/// P-blocks of the source against P(n+3)-cell blocks of the encoding, with
/// 2P encoded steps per P source steps.
SimWitness kset_witness(const KSetEncoding& enc);

enum class EncodingKind { Set, KSet };
EncodingKind parse_encoding_kind(std::string_view text);

struct EncodingReport {
    int trials = 0;
    int passed = 0;
    std::vector<std::string> failures;
    bool family_ok = true;   // set invariance (and captivity for kset) on every window seen
    bool captive_ok = true;
    bool witness_ok = true;  // dynamic check of the block witness
    std::uint64_t windows_checked = 0;

    bool pass() const { return passed == trials && family_ok && captive_ok && witness_ok; }
};

/// Runs the encoded rule from legal images of random source configurations
/// for `steps` simulated steps and compares every step with the expected
/// image of the source trace.
EncodingReport verify_encoding_simulation(const Rule& a, EncodingKind which, int trials, int steps,
                                          std::uint64_t seed);

}  // namespace symca
