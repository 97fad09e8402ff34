#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace symca {

/// Cell state. States of an n-state automaton are 0..n-1.
using State = std::uint64_t;
using Word = std::vector<State>;

enum class ErrorKind {
    InvalidState,
    ParseError,
    ShapeError,
    TooLarge,
    InvalidSpec,
    InvalidArg,
    Unsupported,
    WindowMismatch,
    Inconclusive,
    NotLegal,
    OutOfHypothesis,
    InfeasibleConstraint,
    ConstructionError,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// base^exp when it fits in 64 bits.
inline std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t result = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (base != 0 && result > UINT64_MAX / base) return std::nullopt;
        result *= base;
    }
    return result;
}

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline std::int64_t mod(std::int64_t a, std::int64_t b) {
    std::int64_t r = a % b;
    return r < 0 ? r + b : r;
}

}  // namespace symca
