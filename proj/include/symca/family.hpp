#pragma once

#include <compare>
#include <functional>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "symca/rule.hpp"

namespace symca {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class Base { All, MS, Set, Tot, SS, K };

/// A symmetry family: a base symmetry, an optional fully-read centre of k'
/// neighbours (outer variants of MS/SET/TOT) and an optional captive
/// intersection (KMS, KSet, K+E).
struct FamilySpec {
    Base base = Base::All;
    std::optional<int> outer;
    bool captive = false;

    /// Textual forms: all, ms, set, tot, ss, k, kms, kset, ktot,
    /// oms:K', oset:K', otot:K', and "k+<family>" for captive intersections.
    static FamilySpec parse(std::string_view text);
    std::string to_string() const;

    bool is_captive() const { return base == Base::K || captive; }
    /// Throws InvalidSpec when the outer width does not fit k.
    void validate(int k) const;

    bool operator==(const FamilySpec&) const = default;
};

/// Canonical key of a neighbourhood tuple: two tuples share a key iff the
/// family forces equal outputs on them.
struct NKey {
    std::vector<std::uint64_t> parts;
    auto operator<=>(const NKey&) const = default;
};

struct NKeyHash {
    std::size_t operator()(const NKey& key) const noexcept;
};

NKey family_key(const FamilySpec& spec, std::span<const State> tuple);

/// Outputs a member may give on `key`'s class, ascending. For captive
/// families this is the intersection of the supports of every tuple in the
/// class (empty means the family is empty at this size).
Word allowed_outputs(const FamilySpec& spec, std::uint64_t n, int k, const NKey& key);

/// Key classes of a family at (n, k), materialised over all n^k tuples.
/// Classes are numbered in order of their minimal tuple.
struct KeyClasses {
    FamilySpec spec;
    std::uint64_t n = 1;
    int k = 1;
    std::vector<std::uint32_t> class_of;  // indexed by tuple index
    std::vector<NKey> keys;
    std::vector<Word> allowed;
    std::vector<std::uint64_t> min_tuple;

    static KeyClasses build(const FamilySpec& spec, std::uint64_t n, int k,
                            std::uint64_t cap = kDefaultDensifyCap);
    BigInt member_count() const;
};

bool is_member(const Rule& rule, const FamilySpec& spec, std::uint64_t cap = kDefaultDensifyCap);

BigInt count_family(const FamilySpec& spec, std::uint64_t n, int k);

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

/// Visits each member exactly once: lexicographic over per-class output
/// choices, classes ordered by minimal tuple.
void for_each_member(const FamilySpec& spec, std::uint64_t n, int k,
                     const std::function<void(const Rule&)>& visit,
                     std::uint64_t cap = kDefaultEnumerationCap);
std::vector<Rule> enumerate_family(const FamilySpec& spec, std::uint64_t n, int k,
                                   std::uint64_t cap = kDefaultEnumerationCap);

/// Uniform member, deterministic in the seed. Same values as lazy_sampler.
Rule sample_rule(const FamilySpec& spec, std::uint64_t n, int k, std::uint64_t seed);
/// Intensional uniform member whose entry for a key is a pseudorandom
/// function of (seed, key).
Rule lazy_sampler(const FamilySpec& spec, std::uint64_t n, int k, std::uint64_t seed);

/// Uniform pick from `allowed` keyed by (seed, key).
State draw_output(std::uint64_t seed, const NKey& key, std::span<const State> allowed);

struct LemmaCheck {
    bool holds = false;
    bool in_hypothesis = false;  // 1 <= k <= n-2
    std::uint64_t members = 0;
};
/// Every state-symmetric rule of size (n, k) is captive.
LemmaCheck verify_ss_subset_captive(std::uint64_t n, int k);

struct TotCaptiveCheck {
    bool empty = false;
    /// Two tuples with disjoint supports and equal sums, when one exists.
    std::optional<std::pair<Word, Word>> witness;
};
TotCaptiveCheck verify_tot_captive_empty(std::uint64_t n, int k);

}  // namespace symca
