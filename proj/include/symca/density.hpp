#pragma once

#include <set>

#include "symca/constraints.hpp"

namespace symca {

/// Whether restricting members to the key sets and to the remaining classes
/// is a bijection. Pairwise disjoint key sets are independent for every
/// key-class family; otherwise the family is enumerated (at most `cap`
/// members, else Inconclusive).
bool independence_check(const FamilySpec& family, std::uint64_t n, int k, const std::vector<std::set<NKey>>& key_sets,
                        std::uint64_t cap = 100'000);

/// 1 - prod(1 - alpha_i), accumulated as a sum of log1p(-alpha_i).
double bound_lower(std::span<const double> alphas);
double bound_lower(const std::vector<Rational>& alphas);
/// The same bound for `count` copies of one alpha.
double bound_lower_repeated(double alpha, double count);

/// x -> (n, k).
struct PathSpec {
    enum class Kind { FixedK, FixedN, List };
    Kind kind = Kind::FixedK;
    std::uint64_t fixed = 2;
    std::vector<std::pair<std::uint64_t, int>> list;

    /// "fixed-k:K" (x -> (x, K)), "fixed-n:N" (x -> (N, x)) or "list:NxK,NxK,..." (x indexes the list).
    static PathSpec parse(std::string_view text);
    std::string to_string() const;
    std::optional<std::pair<std::uint64_t, int>> at(std::int64_t x) const;
};

struct CurveRow {
    std::int64_t x = 0;
    std::uint64_t n = 0;
    int k = 0;
    std::size_t j_count = 0;
    std::optional<Rational> alpha;  // smallest per-subshift probability
    double bound = 0;
    std::string kind;  // lower-bound | out-of-hypothesis
};

/// Lower bounds along a path. Subshifts are taken in increasing j and kept
/// only when their key sets are disjoint from those already kept, so the
/// independence lemma applies to the kept ones.
std::vector<CurveRow> density_curve(const PathSpec& path, const ConstructionParams& params, const Rule& a0,
                                    std::int64_t x_from, std::int64_t x_to);
std::string curve_csv(const std::vector<CurveRow>& rows);

struct DensityEstimate {
    double value = 0;
    std::string kind;  // exact | lower-bound | monte-carlo
    std::optional<std::pair<double, double>> ci;
    std::uint64_t samples = 0;
    std::uint64_t hits = 0;
};

/// Wilson score interval at 95%.
std::pair<double, double> wilson_interval(std::uint64_t hits, std::uint64_t samples);

/// Monte Carlo fraction of uniform family members satisfying `predicate`.
/// Trial i samples with a seed derived from (seed, i), so the result does
/// not depend on the thread count.
DensityEstimate empirical_density(const FamilySpec& family, std::uint64_t n, int k,
                                  const std::function<bool(const Rule&)>& predicate, std::uint64_t samples,
                                  std::uint64_t seed, bool parallel = true);

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

/// A replayable curve experiment. Text form: one "key value" pair per line
/// with keys construction, outer, family, a0, path, from, to, seed.
struct Manifest {
    ConstructionParams params;
    std::string a0_path;
    PathSpec path;
    std::int64_t from = 0;
    std::int64_t to = 0;
    std::uint64_t seed = 0;
};
Manifest parse_manifest(const std::string& text);
std::string serialize_manifest(const Manifest& m);

}  // namespace symca
