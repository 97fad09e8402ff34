#include "symca/rule.hpp"

#include <sstream>

namespace symca {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidState: return "InvalidState";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::ShapeError: return "ShapeError";
        case ErrorKind::TooLarge: return "TooLarge";
        case ErrorKind::InvalidSpec: return "InvalidSpec";
        case ErrorKind::InvalidArg: return "InvalidArg";
        case ErrorKind::Unsupported: return "Unsupported";
        case ErrorKind::WindowMismatch: return "WindowMismatch";
        case ErrorKind::Inconclusive: return "Inconclusive";
        case ErrorKind::NotLegal: return "NotLegal";
        case ErrorKind::OutOfHypothesis: return "OutOfHypothesis";
        case ErrorKind::InfeasibleConstraint: return "InfeasibleConstraint";
        case ErrorKind::ConstructionError: return "ConstructionError";
    }
    return "Error";
}

namespace {

void check_size(std::uint64_t n, int k) {
    if (n < 1) throw Error(ErrorKind::InvalidArg, "state count must be >= 1");
    if (k < 1) throw Error(ErrorKind::InvalidArg, "neighbourhood size must be >= 1");
}

std::string table_id(std::uint64_t n, int k, const std::vector<State>& table) {
    std::ostringstream os;
    os << "dense:" << n << ":" << k << ":";
    // FNV-1a over the table keeps ids short for large rules.
    std::uint64_t h = 1469598103934665603ull;
    for (State s : table) {
        h ^= s;
        h *= 1099511628211ull;
    }
    os << std::hex << h;
    return os.str();
}

}  // namespace

Rule Rule::dense(std::uint64_t n, int k, std::vector<State> table) {
    check_size(n, k);
    auto count = checked_pow(n, k);
    if (!count || *count != table.size()) {
        std::ostringstream os;
        os << "table has " << table.size() << " entries, expected n^k for n=" << n << " k=" << k;
        throw Error(ErrorKind::ShapeError, os.str());
    }
    for (State s : table)
        if (s >= n) throw Error(ErrorKind::InvalidState, "table entry " + std::to_string(s) + " >= n");
    Rule r;
    r.n_ = n;
    r.k_ = k;
    r.id_ = table_id(n, k, table);
    r.table_ = std::make_shared<const std::vector<State>>(std::move(table));
    return r;
}

Rule Rule::intensional(std::uint64_t n, int k, Evaluator eval, std::string id) {
    check_size(n, k);
    Rule r;
    r.n_ = n;
    r.k_ = k;
    r.eval_ = std::make_shared<const Evaluator>(std::move(eval));
    r.id_ = std::move(id);
    return r;
}

Rule Rule::tabulate(std::uint64_t n, int k, const Evaluator& f, std::uint64_t cap) {
    check_size(n, k);
    auto count = checked_pow(n, k);
    if (!count || *count > cap)
        throw Error(ErrorKind::TooLarge, "n^k exceeds the densify cap");
    std::vector<State> table(*count);
    Word u(k);
    for (std::uint64_t idx = 0; idx < *count; ++idx) {
        std::uint64_t rest = idx;
        for (int i = k - 1; i >= 0; --i) {
            u[i] = rest % n;
            rest /= n;
        }
        table[idx] = f(u);
    }
    return dense(n, k, std::move(table));
}

State Rule::at_index(std::uint64_t idx) const {
    if (table_) return (*table_)[idx];
    Word u(k_);
    tuple_at(idx, u);
    return (*eval_)(u);
}

State Rule::eval_checked(std::span<const State> u) const {
    if (u.size() != static_cast<std::size_t>(k_))
        throw Error(ErrorKind::InvalidArg, "tuple length differs from k");
    for (State s : u)
        if (s >= n_) throw Error(ErrorKind::InvalidState, "symbol " + std::to_string(s) + " >= n");
    State out = (*this)(u);
    if (out >= n_) throw Error(ErrorKind::InvalidState, "rule produced out-of-range state");
    return out;
}

const std::vector<State>& Rule::table() const {
    if (!table_) throw Error(ErrorKind::Unsupported, "intensional rule has no table; densify first");
    return *table_;
}

Rule Rule::densify(std::uint64_t cap) const {
    if (table_) return *this;
    Rule r = tabulate(n_, k_, *eval_, cap);
    return r;
}

Rule Rule::with_id(std::string id) const {
    Rule r = *this;
    r.id_ = std::move(id);
    return r;
}

void Rule::tuple_at(std::uint64_t idx, std::span<State> out) const {
    for (int i = k_ - 1; i >= 0; --i) {
        out[i] = idx % n_;
        idx /= n_;
    }
}

bool equivalent(const Rule& a, const Rule& b, std::uint64_t cap) {
    if (a.n() != b.n() || a.k() != b.k()) return false;
    auto count = a.tuple_count();
    if (!count || *count > cap)
        throw Error(ErrorKind::TooLarge, "exhaustive comparison refused: n^k exceeds cap");
    Word u(a.k());
    for (std::uint64_t idx = 0; idx < *count; ++idx) {
        a.tuple_at(idx, u);
        if (a(u) != b(u)) return false;
    }
    return true;
}

Word apply_local(const Rule& rule, std::span<const State> u) {
    const auto k = static_cast<std::size_t>(rule.k());
    if (u.size() < k) return {};
    for (State s : u)
        if (s >= rule.n()) throw Error(ErrorKind::InvalidState, "symbol " + std::to_string(s) + " >= n");
    Word out(u.size() - k + 1);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = rule(u.subspan(i, k));
    return out;
}

Rule extend_window(const Rule& rule, int k) {
    if (k < rule.k()) throw Error(ErrorKind::InvalidArg, "cannot shrink a window by extension");
    if (k == rule.k()) return rule;
    // Offsets of the smaller window sit inside the larger one starting here.
    const int skip = (k - 1) / 2 - rule.left();
    const int inner = rule.k();
    Rule::Evaluator eval = [rule, skip, inner](std::span<const State> u) {
        return rule(u.subspan(skip, inner));
    };
    Rule wide = Rule::intensional(rule.n(), k, eval, rule.id() + "+w" + std::to_string(k));
    auto count = wide.tuple_count();
    if (count && *count <= kDefaultDensifyCap) return wide.densify().with_id(wide.id());
    return wide;
}

namespace rules {

Rule xor2() { return Rule::dense(2, 2, {0, 1, 1, 0}).with_id("xor"); }
Rule and2() { return Rule::dense(2, 2, {0, 0, 0, 1}).with_id("and"); }

Rule identity(std::uint64_t n, int k) {
    const int centre = (k - 1) / 2;
    return Rule::tabulate(n, k, [centre](std::span<const State> u) { return u[centre]; })
        .with_id("identity:" + std::to_string(n) + ":" + std::to_string(k));
}

Rule constant(std::uint64_t n, int k, State value) {
    return Rule::tabulate(n, k, [value](std::span<const State>) { return value; })
        .with_id("constant:" + std::to_string(value));
}

Rule shift_right(std::uint64_t n) {
    return Rule::tabulate(n, 3, [](std::span<const State> u) { return u[0]; }).with_id("shift1");
}

}  // namespace rules

}  // namespace symca
