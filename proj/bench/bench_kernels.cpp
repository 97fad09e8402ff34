// Serial reference kernels against their OpenMP versions.
// Usage: bench_kernels [repeats]

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <random>

#include "symca/density.hpp"
#include "symca/kernels.hpp"
#include "symca/rescale.hpp"

using namespace symca;

namespace {

template <class F>
double seconds(int repeats, F f) {
    const auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < repeats; ++i) f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() / repeats;
}

void row(const char* name, double serial, double parallel, bool agree) {
    std::cout << name << "," << serial << "," << parallel << "," << serial / parallel << "," << (agree ? "yes" : "NO")
              << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    const int repeats = argc > 1 ? std::atoi(argv[1]) : 5;
    std::mt19937_64 rng(1);
    std::cout << "threads " << kernels::max_threads() << '\n';
    std::cout << "kernel,serial_s,parallel_s,speedup,agree\n";

    // commutation of a rule with itself on a wide window
    {
        Word t(*checked_pow(4, 8));
        for (auto& s : t) s = rng() % 4;
        const auto r = Rule::dense(4, 8, t);
        const Word phi{0, 1, 2, 3};
        bool a = false, b = false;
        const double s = seconds(repeats, [&] { a = kernels::commutation_serial(r, r, phi); });
        const double p = seconds(repeats, [&] { b = kernels::commutation_parallel(r, r, phi); });
        row("commutation_n4_k8", s, p, a == b);
    }
    // one step on a long configuration
    {
        const auto r = rescale_rule(rules::xor2(), {2, 3, 1});
        Word w(1 << 20);
        for (auto& s : w) s = rng() % r.n();
        const PConfig c(w);
        PConfig x = c, y = c;
        const double s = seconds(repeats, [&] { x = kernels::step_serial(r, c); });
        const double p = seconds(repeats, [&] { y = kernels::step_parallel(r, c); });
        row("step_1M_cells", s, p, x == y);
    }
    // Monte Carlo trials with lazy sampling
    {
        const auto k = FamilySpec::parse("k");
        const auto cs = constraints_from_tuples(k, 3, 3, {{{0, 1, 2}, 1}, {{2, 2, 1}, 2}});
        const kernels::TrialFn hit = [&](std::uint64_t i) {
            return satisfies(lazy_sampler(k, 3, 3, trial_seed(7, i)), cs);
        };
        std::uint64_t a = 0, b = 0;
        const double s = seconds(repeats, [&] { a = kernels::count_hits_serial(200'000, hit); });
        const double p = seconds(repeats, [&] { b = kernels::count_hits_parallel(200'000, hit); });
        row("monte_carlo_200k", s, p, a == b);
    }
    // filtering an enumerated family
    {
        const auto rules = enumerate_family(FamilySpec::parse("all"), 2, 3);
        const kernels::RuleFn accept = [](const Rule& r) { return is_member(r, FamilySpec::parse("ss")); };
        std::uint64_t a = 0, b = 0;
        const double s = seconds(repeats, [&] { a = kernels::count_accepted_serial(rules, accept); });
        const double p = seconds(repeats, [&] { b = kernels::count_accepted_parallel(rules, accept); });
        row("filter_ss_2_3", s, p, a == b);
    }
    return 0;
}
