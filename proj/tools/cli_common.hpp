#pragma once

#include <functional>

#include <CLI11.hpp>

#include "symca/config.hpp"
#include "symca/rule.hpp"

namespace cli {

struct Globals {
    std::uint64_t seed = 0;
    std::string out;
    std::string format = "text";
    std::function<void()> action;  // set by the chosen subcommand, run after parsing

    bool csv() const { return format == "csv"; }
};

/// Registers `fn` as the action of `sub`.
inline void on_run(CLI::App* sub, Globals& g, std::function<void()> fn) {
    sub->callback([&g, fn = std::move(fn)] { g.action = fn; });
}

/// Raised by a command to end with exit code 1 after printing `what`.
struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Writes to --out when given, stdout otherwise.
void emit(const Globals& g, const std::string& text);

symca::Rule load_rule(const std::string& path);
/// "0,1,1,0" or "0110" (single-digit states).
symca::Word parse_word(const std::string& text);
std::string join(const symca::Word& w, char sep = ',');

void add_family_commands(CLI::App& app, Globals& g);
void add_sim_commands(CLI::App& app, Globals& g);
void add_density_commands(CLI::App& app, Globals& g);

}  // namespace cli
