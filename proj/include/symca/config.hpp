#pragma once

#include <string>
#include <vector>

#include "symca/rule.hpp"

namespace symca {

/// A spatially periodic configuration: the bi-infinite repetition of `word`.
class PConfig {
public:
    explicit PConfig(Word word);

    std::size_t period() const { return word_.size(); }
    const Word& word() const { return word_; }

    /// Cell z of the bi-infinite configuration.
    State at(std::int64_t z) const { return word_[static_cast<std::size_t>(mod(z, static_cast<std::int64_t>(word_.size())))]; }

    /// result(z) = c(z + d): moves content d cells to the left.
    PConfig rotate(std::int64_t d) const;
    /// The shift CA sigma_z: result(x) = c(x - z).
    PConfig shifted(std::int64_t z) const { return rotate(-z); }
    /// Same configuration written with period `p` (a multiple of the current one).
    PConfig repeated_to(std::size_t p) const;

    bool operator==(const PConfig& other) const = default;

private:
    Word word_;
};

/// Same infinite configuration: words equal after expanding to a common period.
bool same_configuration(const PConfig& a, const PConfig& b);

void check_symbols(std::span<const State> word, std::uint64_t n);

/// One application of the global map, with wrap-around indexing.
PConfig step(const Rule& rule, const PConfig& c);

struct Trace {
    std::uint64_t n = 1;
    std::string rule_id;
    std::vector<PConfig> rows;

    std::size_t steps() const { return rows.empty() ? 0 : rows.size() - 1; }
};

/// rows[t] = G^t(c) for t = 0..steps.
Trace evolve(const Rule& rule, const PConfig& c, std::size_t steps);

}  // namespace symca
