#pragma once

// Trajectory files.
//   CSV:  header "n,alpha,re,im", one row per (clock, dof), exact decimal integers.
//   JSON: {"dim": D, "states": [[[re, im], ...], ...]} using the literal pair encoding.

#include <iosfwd>
#include <string>

#include "hca/automaton.hpp"
#include "hca/literal.hpp"

namespace hca {

void write_csv(std::ostream& os, const Trajectory& traj);
std::string to_csv(const Trajectory& traj);
/// Throws LiteralError on malformed input (missing rows, bad integers, gaps).
Trajectory trajectory_from_csv(std::istream& is);

json to_json(const Trajectory& traj);
Trajectory trajectory_from_json(const json& j);

}  // namespace hca
