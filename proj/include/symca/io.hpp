#pragma once

#include <string>

#include "symca/config.hpp"

namespace symca {

// Rule file:
//   n <states>
//   k <neighbourhood size>
//   table <n^k integers, lexicographic tuple order, leftmost neighbour most significant>
// Blank lines and '#' comments are ignored when parsing.
Rule parse_rule(const std::string& text);
/// Dense rules only; an intensional rule must be densified first.
std::string serialize_rule(const Rule& rule);

// Trace file:
//   n <states> period <p> T <steps>
//   followed by T+1 lines of p space-separated states.
Trace parse_trace(const std::string& text);
std::string serialize_trace(const Trace& trace);

/// Binary PGM (P5), one pixel per cell, gray = floor(255*s/(n-1)); n=1 renders black.
std::string render_pgm(const Trace& trace);
/// One character per cell: '.' for 0, then 1-9, a-z, A-Z; '?' beyond that.
std::string render_ascii(const Trace& trace);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace symca
