#pragma once

#include <functional>

#include "symca/config.hpp"

// Hot loops in two flavours: an OpenMP version used by the library and a
// plain serial reference kept for tests and benchmarks. Both must agree
// exactly.
namespace symca::kernels {

/// Rules must already share a window. phi maps B-states to A-states.
bool commutation_serial(const Rule& b, const Rule& a, std::span<const State> phi);
bool commutation_parallel(const Rule& b, const Rule& a, std::span<const State> phi);

PConfig step_serial(const Rule& rule, const PConfig& c);
PConfig step_parallel(const Rule& rule, const PConfig& c);

/// Number of trials i in [0, trials) for which hit(i) holds. `hit` must be
/// pure and thread safe.
using TrialFn = std::function<bool(std::uint64_t)>;
std::uint64_t count_hits_serial(std::uint64_t trials, const TrialFn& hit);
std::uint64_t count_hits_parallel(std::uint64_t trials, const TrialFn& hit);

/// Number of rules in `rules` accepted by `accept`.
using RuleFn = std::function<bool(const Rule&)>;
std::uint64_t count_accepted_serial(const std::vector<Rule>& rules, const RuleFn& accept);
std::uint64_t count_accepted_parallel(const std::vector<Rule>& rules, const RuleFn& accept);

int max_threads();

}  // namespace symca::kernels
