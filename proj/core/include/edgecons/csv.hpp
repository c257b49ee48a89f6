#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "edgecons/simulate.hpp"

namespace edgecons {

/// Shortest decimal string that parses back to the same double.
std::string format_double(double value);

/// Column names in output order: t, x<agent>_<dim>..., v<agent>_<dim>...,
/// z_T_norm and, when present, envelope. Indices are 1-based.
std::vector<std::string> trajectory_header(const Trajectory& traj, bool with_envelope);

/// One row per sample. `envelope`, when given, must have one value per sample.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj,
                          const std::optional<std::vector<double>>& envelope = std::nullopt);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  /// Column position, or nullopt if the header lacks it.
  std::optional<std::size_t> column(const std::string& name) const;
};

/// Parses a numeric CSV with a header row. Malformed rows raise
/// Error(InvalidArgument) naming the 1-based line number.
CsvTable read_csv(std::istream& in, const std::string& source = "<csv>");
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace edgecons
