#pragma once

#include <ostream>
#include <string>

#include "fraclog/solver.hpp"

namespace fraclog {

// "t,x" header, one row per grid node, 17 significant digits, '\n' endings.
void write_csv(std::ostream& out, const solver::Trajectory& traj);

// Throws IoError if the file cannot be opened or written.
void write_csv(const std::string& path, const solver::Trajectory& traj);

}  // namespace fraclog
