#include "symca/kernels.hpp"

#include <atomic>

#include <omp.h>

namespace symca::kernels {

namespace {

bool commutes_at(const Rule& b, const Rule& a, std::span<const State> phi, std::uint64_t idx, Word& u, Word& v) {
    b.tuple_at(idx, u);
    for (std::size_t i = 0; i < u.size(); ++i) v[i] = phi[u[i]];
    return phi[b(u)] == a(v);
}

}  // namespace

bool commutation_serial(const Rule& b, const Rule& a, std::span<const State> phi) {
    const std::uint64_t count = *b.tuple_count();
    Word u(b.k()), v(b.k());
    for (std::uint64_t idx = 0; idx < count; ++idx)
        if (!commutes_at(b, a, phi, idx, u, v)) return false;
    return true;
}

bool commutation_parallel(const Rule& b, const Rule& a, std::span<const State> phi) {
    const auto count = static_cast<std::int64_t>(*b.tuple_count());
    std::atomic<bool> ok{true};
#pragma omp parallel
    {
        Word u(b.k()), v(b.k());
#pragma omp for schedule(static)
        for (std::int64_t idx = 0; idx < count; ++idx) {
            if (!ok.load(std::memory_order_relaxed)) continue;
            if (!commutes_at(b, a, phi, static_cast<std::uint64_t>(idx), u, v)) ok.store(false);
        }
    }
    return ok.load();
}

PConfig step_serial(const Rule& rule, const PConfig& c) { return step(rule, c); }

PConfig step_parallel(const Rule& rule, const PConfig& c) {
    check_symbols(c.word(), rule.n());
    const auto p = static_cast<std::int64_t>(c.period());
    const int k = rule.k();
    const int left = rule.left();
    Word out(c.period());
#pragma omp parallel
    {
        Word window(k);
#pragma omp for schedule(static)
        for (std::int64_t z = 0; z < p; ++z) {
            for (int i = 0; i < k; ++i) window[i] = c.at(z - left + i);
            out[z] = rule(window);
        }
    }
    return PConfig(std::move(out));
}

std::uint64_t count_hits_serial(std::uint64_t trials, const TrialFn& hit) {
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < trials; ++i) hits += hit(i) ? 1 : 0;
    return hits;
}

std::uint64_t count_hits_parallel(std::uint64_t trials, const TrialFn& hit) {
    std::uint64_t hits = 0;
    const auto n = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : hits)
    for (std::int64_t i = 0; i < n; ++i) hits += hit(static_cast<std::uint64_t>(i)) ? 1 : 0;
    return hits;
}

std::uint64_t count_accepted_serial(const std::vector<Rule>& rules, const RuleFn& accept) {
    std::uint64_t hits = 0;
    for (const auto& r : rules) hits += accept(r) ? 1 : 0;
    return hits;
}

std::uint64_t count_accepted_parallel(const std::vector<Rule>& rules, const RuleFn& accept) {
    std::uint64_t hits = 0;
    const auto n = static_cast<std::int64_t>(rules.size());
#pragma omp parallel for schedule(dynamic, 8) reduction(+ : hits)
    for (std::int64_t i = 0; i < n; ++i) hits += accept(rules[i]) ? 1 : 0;
    return hits;
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace symca::kernels
