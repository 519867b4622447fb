#pragma once

#include <string>

#include "cdcpath/mip.hpp"

namespace cdcpath {

// CPLEX-style LP text: objective (quadratic part in bracket syntax), rows,
// explicit bounds, binary section. Deterministic, shortest round-trip numbers.
std::string write_lp(const MipModel& m);
void write_lp_file(const MipModel& m, const std::string& path);

// Subset parser covering what write_lp emits (tolerant of case and spacing).
// Variables appear in first-reference order; unlisted bounds default to [0,1]
// for binaries and [0, +inf) otherwise.
MipModel parse_lp(const std::string& text);
MipModel parse_lp_file(const std::string& path);

}  // namespace cdcpath
