#pragma once

#include <map>

#include "symca/config.hpp"
#include "symca/family.hpp"

namespace symca {

enum class Construction { MS, Tot, OMS, KMS, KSet, CaptiveFullshift };
Construction parse_construction(std::string_view text);
const char* to_string(Construction c);

struct ConstructionParams {
    Construction kind = Construction::MS;
    int outer = 1;                    // k' for OMS
    std::optional<FamilySpec> family; // captive-fullshift: E cap K (default K)

    FamilySpec family_spec() const;
};

/// Periodic layout of a simulating subshift: an isolated cell carrying an
/// encoded source state, followed by a marker word. Marker words may depend
/// on the block index modulo markers.size().
struct Layout {
    Word iso;                  // source state -> simulator state
    std::vector<Word> markers; // all of equal length

    std::size_t block() const { return 1 + markers.front().size(); }
    std::size_t phases() const { return markers.size(); }
    /// Block j holds iso[q(j)] and markers[j mod phases]; period lcm(p, phases) blocks.
    PConfig build(const PConfig& q) const;
};

struct ConstraintEntry {
    State output = 0;
    Word tuple;  // a neighbourhood realising the key
};

/// Required outputs of a family member so that it simulates A0 on one
/// subshift. The simulator shifts the layout `shift` cells right per step.
struct ConstraintSet {
    FamilySpec family;
    Construction construction = Construction::MS;
    std::uint64_t n0 = 0;
    int k0 = 0;
    std::uint64_t n = 0;
    int k = 0;
    int j = 0;
    std::map<NKey, ConstraintEntry> entries;
    Layout layout;
    int shift = 0;
};

/// Indices j of the subshifts a construction provides at (n, k); empty when
/// the size is outside the hypotheses.
std::vector<int> subshift_indices(const ConstructionParams& p, std::uint64_t n0, int k0, std::uint64_t n, int k);

/// Throws OutOfHypothesis naming the violated condition.
void check_hypotheses(const ConstructionParams& p, const Rule& a0, std::uint64_t n, int k, int j);

Layout construction_layout(const ConstructionParams& p, const Rule& a0, std::uint64_t n, int k, int j);

/// Enumerates every neighbourhood of the layout: windows starting on an
/// isolated cell must output the encoded A0 image, all others copy their
/// first cell. Conflicting requirements on one key raise ConstructionError;
/// outputs the family forbids raise InfeasibleConstraint.
ConstraintSet constraints_from_layout(const FamilySpec& family, const Rule& a0, std::uint64_t n, int k,
                                      const Layout& layout);

ConstraintSet build_constraints(const ConstructionParams& p, const Rule& a0, std::uint64_t n, int k, int j);

/// Explicit (tuple -> output) requirements for a family.
ConstraintSet constraints_from_tuples(const FamilySpec& family, std::uint64_t n, int k,
                                      const std::vector<std::pair<Word, State>>& requirements);

/// Probability that a uniform member of the family meets every entry.
Rational exact_alpha(const ConstraintSet& cs);

bool satisfies(const Rule& rule, const ConstraintSet& cs);

/// Uniform family member conditioned on the constraints (intensional).
Rule constrained_sample(const ConstraintSet& cs, std::uint64_t seed);

struct ConstructionCheck {
    bool ok = false;
    int failed_step = -1;
    std::string message;
};

/// Evolves a constrained sample from the layout of a random A0 configuration
/// and compares every step with the shifted layout of the A0 trace.
ConstructionCheck verify_constructed_simulation(const ConstraintSet& cs, const Rule& a0, int steps,
                                                std::uint64_t seed);

/// Changes the output of the first constrained window met in the initial
/// configuration for `seed` whose key admits another output.
ConstraintSet mutate_first_used(const ConstraintSet& cs, const Rule& a0, std::uint64_t seed);

std::string serialize_constraints(const ConstraintSet& cs);

}  // namespace symca
