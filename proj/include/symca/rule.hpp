#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>

#include "symca/types.hpp"

namespace symca {

inline constexpr std::uint64_t kDefaultDensifyCap = std::uint64_t{1} << 24;

/// Local transition function of a one-dimensional CA of size (n, k).
///
/// Cell z reads the window [z - left(), z + right()] with
/// left() = floor((k-1)/2) and right() = floor(k/2). A rule is either dense
/// (tabulated over all n^k tuples, leftmost neighbour most significant) or
/// intensional (an evaluator computed on demand). Rules are immutable and
/// cheap to copy; evaluators must be pure and reentrant.
class Rule {
public:
    using Evaluator = std::function<State(std::span<const State>)>;

    static Rule dense(std::uint64_t n, int k, std::vector<State> table);
    static Rule intensional(std::uint64_t n, int k, Evaluator eval, std::string id);
    /// Tabulates `f` over all n^k tuples.
    static Rule tabulate(std::uint64_t n, int k, const Evaluator& f,
                         std::uint64_t cap = kDefaultDensifyCap);

    std::uint64_t n() const { return n_; }
    int k() const { return k_; }
    int left() const { return (k_ - 1) / 2; }
    int right() const { return k_ / 2; }
    bool is_dense() const { return table_ != nullptr; }
    const std::string& id() const { return id_; }

    /// n^k, if it fits in 64 bits.
    std::optional<std::uint64_t> tuple_count() const { return checked_pow(n_, k_); }

    /// Unchecked evaluation; `u` must have length k with symbols < n.
    State operator()(std::span<const State> u) const {
        if (table_) return (*table_)[index_of(u)];
        return (*eval_)(u);
    }
    State at_index(std::uint64_t idx) const;

    /// Evaluation with range checks on the tuple and on the result.
    State eval_checked(std::span<const State> u) const;

    const std::vector<State>& table() const;
    Rule densify(std::uint64_t cap = kDefaultDensifyCap) const;
    Rule with_id(std::string id) const;

    std::uint64_t index_of(std::span<const State> u) const {
        std::uint64_t idx = 0;
        for (State s : u) idx = idx * n_ + s;
        return idx;
    }
    void tuple_at(std::uint64_t idx, std::span<State> out) const;

private:
    Rule() = default;

    std::uint64_t n_ = 1;
    int k_ = 1;
    std::shared_ptr<const std::vector<State>> table_;
    std::shared_ptr<const Evaluator> eval_;
    std::string id_;
};

/// Exhaustive comparison of two rules of the same size; refuses when n^k > cap.
bool equivalent(const Rule& a, const Rule& b, std::uint64_t cap = kDefaultDensifyCap);

/// The finite-word extension: maps a word of length p+k to one of length p+1,
/// and words shorter than k to the empty word.
Word apply_local(const Rule& rule, std::span<const State> u);

/// Same global map read through a wider window (extra neighbours ignored).
Rule extend_window(const Rule& rule, int k);

// A few named rules used throughout tests, examples and the CLI.
namespace rules {
Rule xor2();                        // n=2, k=2, table 0 1 1 0
Rule and2();                        // n=2, k=2, table 0 0 0 1
Rule identity(std::uint64_t n, int k = 1);
Rule constant(std::uint64_t n, int k, State value);
/// sigma_1: reads the left neighbour (k = 3).
Rule shift_right(std::uint64_t n);
}  // namespace rules

}  // namespace symca
