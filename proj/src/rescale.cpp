#include "symca/rescale.hpp"

#include <numeric>

#include "symca/kernels.hpp"

namespace symca {

namespace {

std::uint64_t block_states(std::uint64_t n, int m) {
    auto states = checked_pow(n, m);
    if (!states) throw Error(ErrorKind::TooLarge, "n^m does not fit in 64 bits");
    return *states;
}

// Window of the smallest centred neighbourhood containing block offsets
// [lo, hi] (both clamped to include 0).
int covering_k(std::int64_t lo, std::int64_t hi) {
    const std::int64_t need_left = std::max<std::int64_t>(0, -lo);
    const std::int64_t need_right = std::max<std::int64_t>(0, hi);
    int k = 1;
    while ((k - 1) / 2 < need_left || k / 2 < need_right) ++k;
    return k;
}

// Drops border neighbours the table ignores. Going from k to k-1 removes
// the right end when k is even and the left end when k is odd.
Rule trim_ignored(Rule rule) {
    while (rule.k() > 1) {
        const auto n = rule.n();
        const int k = rule.k();
        const auto& table = rule.table();
        const std::uint64_t smaller = table.size() / n;
        std::vector<State> reduced(smaller);
        bool ignored = true;
        if (k % 2 == 0) {
            for (std::uint64_t idx = 0; idx < table.size() && ignored; ++idx)
                ignored = table[idx] == table[idx - idx % n];
            if (!ignored) break;
            for (std::uint64_t j = 0; j < smaller; ++j) reduced[j] = table[j * n];
        } else {
            for (std::uint64_t idx = 0; idx < table.size() && ignored; ++idx)
                ignored = table[idx] == table[idx % smaller];
            if (!ignored) break;
            for (std::uint64_t j = 0; j < smaller; ++j) reduced[j] = table[j];
        }
        rule = Rule::dense(n, k - 1, std::move(reduced)).with_id(rule.id());
    }
    return rule;
}

}  // namespace

State pack_block(std::span<const State> cells, std::uint64_t n) {
    State v = 0;
    for (State s : cells) v = v * n + s;
    return v;
}

Word unpack_block(State block, std::uint64_t n, int m) {
    Word cells(m);
    for (int i = m - 1; i >= 0; --i) {
        cells[i] = block % n;
        block /= n;
    }
    return cells;
}

PConfig pack(const PConfig& c, std::uint64_t n, int m) {
    if (m < 1) throw Error(ErrorKind::InvalidArg, "m must be >= 1");
    block_states(n, m);
    const auto full = c.repeated_to(std::lcm(c.period(), static_cast<std::size_t>(m)));
    const auto& w = full.word();
    Word out(w.size() / m);
    for (std::size_t b = 0; b < out.size(); ++b)
        out[b] = pack_block(std::span<const State>(w).subspan(b * m, m), n);
    return PConfig(std::move(out));
}

PConfig unpack(const PConfig& c, std::uint64_t n, int m) {
    if (m < 1) throw Error(ErrorKind::InvalidArg, "m must be >= 1");
    Word out;
    out.reserve(c.period() * m);
    for (State b : c.word()) {
        auto cells = unpack_block(b, n, m);
        out.insert(out.end(), cells.begin(), cells.end());
    }
    return PConfig(std::move(out));
}

Rule rescale_rule(const Rule& rule, RescaleParams p, std::uint64_t cap) {
    if (p.m < 1 || p.t < 1) throw Error(ErrorKind::InvalidArg, "rescaling needs m >= 1 and t >= 1");
    const auto n = rule.n();
    const int m = p.m;
    const int t = p.t;
    const std::int64_t z = p.z;
    const std::uint64_t big_n = block_states(n, m);

    // Output block 0 reads cells [-z - t*left, m-1 - z + t*right].
    const std::int64_t lo = floor_div(-z - std::int64_t{t} * rule.left(), m);
    const std::int64_t hi = floor_div(m - 1 - z + std::int64_t{t} * rule.right(), m);
    const int k2 = covering_k(lo, hi);
    const int left2 = (k2 - 1) / 2;
    const std::int64_t first_cell = -std::int64_t{left2} * m;
    const std::int64_t offset = -z - first_cell - std::int64_t{t} * rule.left();

    Rule::Evaluator eval = [rule, n, m, t, offset](std::span<const State> blocks) -> State {
        Word cells;
        cells.reserve(blocks.size() * m);
        for (State b : blocks) {
            auto part = unpack_block(b, n, m);
            cells.insert(cells.end(), part.begin(), part.end());
        }
        for (int s = 0; s < t; ++s) cells = apply_local(rule, cells);
        return pack_block(std::span<const State>(cells).subspan(static_cast<std::size_t>(offset), m), n);
    };
    std::string id = rule.id() + "<" + std::to_string(m) + "," + std::to_string(t) + "," + std::to_string(z) + ">";
    auto entries = checked_pow(big_n, k2);
    if (entries && *entries <= cap) return trim_ignored(Rule::tabulate(big_n, k2, eval, cap).with_id(id));
    return Rule::intensional(big_n, k2, std::move(eval), id);
}

bool verify_commutation(const Rule& b, const Rule& a, std::span<const State> phi, std::uint64_t cap) {
    if (phi.size() != b.n()) throw Error(ErrorKind::InvalidArg, "state map must be total on B's states");
    std::vector<char> used(a.n(), 0);
    for (State s : phi) {
        if (s >= a.n()) throw Error(ErrorKind::InvalidArg, "state map image out of range");
        if (used[s]) throw Error(ErrorKind::InvalidArg, "state map is not injective");
        used[s] = 1;
    }
    const int k = std::max(b.k(), a.k());
    const Rule wb = extend_window(b, k);
    const Rule wa = extend_window(a, k);
    if (wb.k() != wa.k()) throw Error(ErrorKind::WindowMismatch, "windows differ after alignment");
    auto count = wb.tuple_count();
    if (!count || *count > cap) throw Error(ErrorKind::TooLarge, "too many tuples to check commutation");
    return kernels::commutation_parallel(wb, wa, phi);
}

}  // namespace symca
