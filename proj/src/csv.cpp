#include "fraclog/csv.hpp"

#include <cstdio>
#include <fstream>

#include "fraclog/error.hpp"

namespace fraclog {

void write_csv(std::ostream& out, const solver::Trajectory& traj) {
  out << "t,x\n";
  char row[64];
  for (std::size_t j = 0; j < traj.values.size(); ++j) {
    const double t = traj.grid.time(static_cast<std::int64_t>(j));
    std::snprintf(row, sizeof row, "%.17g,%.17g\n", t, traj.values[j]);
    out << row;
  }
}

void write_csv(const std::string& path, const solver::Trajectory& traj) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  write_csv(file, traj);
  file.flush();
  if (!file) throw IoError("failed writing '" + path + "'");
}

}  // namespace fraclog
