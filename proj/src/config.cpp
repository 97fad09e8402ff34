#include "symca/config.hpp"

#include <numeric>

namespace symca {

PConfig::PConfig(Word word) : word_(std::move(word)) {
    if (word_.empty()) throw Error(ErrorKind::InvalidArg, "configuration period must be >= 1");
}

PConfig PConfig::rotate(std::int64_t d) const {
    const auto p = static_cast<std::int64_t>(word_.size());
    Word out(word_.size());
    for (std::int64_t z = 0; z < p; ++z) out[z] = word_[mod(z + d, p)];
    return PConfig(std::move(out));
}

PConfig PConfig::repeated_to(std::size_t p) const {
    if (p % word_.size() != 0) throw Error(ErrorKind::InvalidArg, "period must be a multiple of the current period");
    Word out;
    out.reserve(p);
    while (out.size() < p) out.insert(out.end(), word_.begin(), word_.end());
    return PConfig(std::move(out));
}

bool same_configuration(const PConfig& a, const PConfig& b) {
    const std::size_t p = std::lcm(a.period(), b.period());
    for (std::size_t z = 0; z < p; ++z)
        if (a.at(z) != b.at(z)) return false;
    return true;
}

void check_symbols(std::span<const State> word, std::uint64_t n) {
    for (State s : word)
        if (s >= n) throw Error(ErrorKind::InvalidState, "symbol " + std::to_string(s) + " >= n=" + std::to_string(n));
}

PConfig step(const Rule& rule, const PConfig& c) {
    check_symbols(c.word(), rule.n());
    const auto p = static_cast<std::int64_t>(c.period());
    const int k = rule.k();
    const int left = rule.left();
    Word out(c.period());
    Word window(k);
    for (std::int64_t z = 0; z < p; ++z) {
        for (int i = 0; i < k; ++i) window[i] = c.at(z - left + i);
        out[z] = rule(window);
    }
    return PConfig(std::move(out));
}

Trace evolve(const Rule& rule, const PConfig& c, std::size_t steps) {
    Trace trace;
    trace.n = rule.n();
    trace.rule_id = rule.id();
    trace.rows.reserve(steps + 1);
    trace.rows.push_back(c);
    check_symbols(c.word(), rule.n());
    for (std::size_t t = 0; t < steps; ++t) trace.rows.push_back(step(rule, trace.rows.back()));
    return trace;
}

}  // namespace symca
