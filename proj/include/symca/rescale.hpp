#pragma once

#include <set>
#include <string>

#include "symca/config.hpp"

namespace symca {

/// Parameters of the rescaling b_m o sigma_z o G^t o b_m^-1.
struct RescaleParams {
    int m = 1;
    int t = 1;
    std::int64_t z = 0;

    bool operator==(const RescaleParams&) const = default;
};

/// A block of m cells packs to the base-n number with the first cell most
/// significant.
State pack_block(std::span<const State> cells, std::uint64_t n);
Word unpack_block(State block, std::uint64_t n, int m);

/// b_m. The word is first repeated to a period divisible by m.
PConfig pack(const PConfig& c, std::uint64_t n, int m);
PConfig unpack(const PConfig& c, std::uint64_t n, int m);

/// The rescaled rule over n^m states. Its window is the smallest centred
/// window covering the dependence cone, with ignored border neighbours
/// trimmed when the rule is tabulated. Rules whose table would exceed `cap`
/// entries are returned intensional. Throws TooLarge when n^m overflows.
Rule rescale_rule(const Rule& rule, RescaleParams p, std::uint64_t cap = kDefaultDensifyCap);

/// phi[b] is the image of B-state b. Checks phi o delta_B = delta_A o phi on
/// every tuple after widening both rules to a common window.
bool verify_commutation(const Rule& b, const Rule& a, std::span<const State> phi,
                        std::uint64_t cap = kDefaultDensifyCap);

enum class SearchStatus { Found, None, Inconclusive };
const char* to_string(SearchStatus status);

struct SubResult {
    SearchStatus status = SearchStatus::None;
    Word phi;
    std::uint64_t nodes = 0;
};

inline constexpr std::uint64_t kDefaultNodeBudget = 1'000'000;

/// Backtracking over partial injections; every fully mapped tuple forces the
/// image of its output. Status Inconclusive when the budget runs out.
SubResult find_subautomaton(const Rule& b, const Rule& a, std::uint64_t node_budget = kDefaultNodeBudget);

struct SimWitness {
    RescaleParams p1;  // simulated rule B
    RescaleParams p2;  // simulator A
    Word phi;          // states of the rescaled B -> states of the rescaled A

    std::uint64_t cost() const;
};

struct SimBounds {
    int m1 = 1, m2 = 1, t1 = 1, t2 = 1;
    std::int64_t z1 = 0, z2 = 0;  // absolute bounds
    std::uint64_t node_budget = kDefaultNodeBudget;
    std::uint64_t seed = 0;       // dynamic re-check
};

struct SimResult {
    SearchStatus status = SearchStatus::None;
    std::optional<SimWitness> witness;
    std::uint64_t probes = 0;
};

/// Smallest witness by cost m1*m2*t1*t2*(1+|z1|+|z2|), ties broken
/// lexicographically on (m1,t1,z1,m2,t2,z2). Every returned witness has been
/// re-verified statically and dynamically.
SimResult search_simulation(const Rule& b, const Rule& a, const SimBounds& bounds);

/// Runs B and A side by side on random periodic B-configurations and compares
/// the decoded A-evolution with the B-evolution.
bool dynamic_check(const Rule& b, const Rule& a, const SimWitness& w, int configs = 10, int steps = 5,
                   std::uint64_t seed = 0);

/// Witness file: "params m1 t1 z1 m2 t2 z2" then one "map b a" line per state.
std::string serialize_witness(const SimWitness& w);
SimWitness parse_witness(const std::string& text);

/// Length-L words of A-configurations that encode some B-configuration.
std::set<Word> witness_support(const SimWitness& w, const Rule& b, const Rule& a, int length,
                               std::uint64_t cap = 10'000'000);

}  // namespace symca
