#include "edgecons/csv.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "edgecons/errors.hpp"

namespace edgecons {

std::string format_double(double value) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) throw Error(ErrorCode::Io, "cannot format value");
  return {buf.data(), ptr};
}

std::vector<std::string> trajectory_header(const Trajectory& traj, bool with_envelope) {
  std::vector<std::string> header{"t"};
  for (const char block : {'x', 'v'}) {
    for (std::size_t i = 1; i <= traj.num_agents; ++i) {
      for (std::size_t k = 1; k <= traj.state_dim; ++k) {
        header.push_back(std::string(1, block) + std::to_string(i) + "_" + std::to_string(k));
      }
    }
  }
  header.emplace_back("z_T_norm");
  if (with_envelope) header.emplace_back("envelope");
  return header;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj,
                          const std::optional<std::vector<double>>& envelope) {
  if (envelope && envelope->size() != traj.samples()) {
    throw Error(ErrorCode::DimensionMismatch, "envelope length differs from sample count");
  }
  const auto header = trajectory_header(traj, envelope.has_value());
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';

  for (std::size_t s = 0; s < traj.samples(); ++s) {
    const auto c = static_cast<Eigen::Index>(s);
    out << format_double(traj.times[s]);
    for (Eigen::Index r = 0; r < traj.positions.rows(); ++r) out << ',' << format_double(traj.positions(r, c));
    for (Eigen::Index r = 0; r < traj.velocities.rows(); ++r) out << ',' << format_double(traj.velocities(r, c));
    out << ',' << format_double(traj.tree_norm(c));
    if (envelope) out << ',' << format_double((*envelope)[s]);
    out << '\n';
  }
}

std::optional<std::size_t> CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  return std::nullopt;
}

CsvTable read_csv(std::istream& in, const std::string& source) {
  CsvTable table;
  std::string line;
  if (!std::getline(in, line) || line.empty()) {
    throw Error(ErrorCode::InvalidArgument, source + ": missing header row");
  }
  std::istringstream head(line);
  for (std::string name; std::getline(head, name, ',');) table.header.push_back(name);

  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (start <= line.size()) {
      const auto comma = line.find(',', start);
      const auto end = comma == std::string::npos ? line.size() : comma;
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(line.data() + start, line.data() + end, v);
      if (ec != std::errc() || ptr != line.data() + end) {
        throw Error(ErrorCode::InvalidArgument,
                    source + ": row " + std::to_string(line_no) + ": malformed number '" +
                        line.substr(start, end - start) + "'");
      }
      row.push_back(v);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (row.size() != table.header.size()) {
      throw Error(ErrorCode::InvalidArgument,
                  source + ": row " + std::to_string(line_no) + ": expected " +
                      std::to_string(table.header.size()) + " fields, got " +
                      std::to_string(row.size()));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
  return read_csv(in, path.string());
}

}  // namespace edgecons
