#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "edgecons/certificate.hpp"
#include "edgecons/config.hpp"
#include "edgecons/edge_decomposition.hpp"
#include "edgecons/simulate.hpp"

namespace edgecons {

enum class ExitCode : int {
  Success = 0,
  UsageOrIo = 1,
  Infeasible = 2,
  CheckFailed = 3,
};

/// InfeasibleGain/Margin/Delta map to Infeasible; everything else to UsageOrIo.
ExitCode exit_code_for(const Error& e);

/// Decomposition, certificate and (optionally) trajectory for a scenario.
struct ScenarioRun {
  EdgeDecomposition decomposition;
  StabilityCertificate certificate;
  std::optional<Trajectory> trajectory;
  /// Rigorous envelope per sample; present for feasible logarithmic runs.
  std::optional<std::vector<double>> envelope;
};

ScenarioRun prepare_scenario(const ScenarioConfig& cfg);
ScenarioRun run_scenario(const ScenarioConfig& cfg);

/// `key = value` certificate report. Returns the exit code it implies.
ExitCode write_certificate_report(std::ostream& out, const ScenarioConfig& cfg,
                                  const ScenarioRun& run);

ExitCode cmd_certify(const ScenarioConfig& cfg, std::ostream& out,
                     const std::optional<std::filesystem::path>& report_path = std::nullopt);

ExitCode cmd_simulate(const ScenarioConfig& cfg, const std::filesystem::path& csv_path,
                      std::ostream& log);

struct SweepRow {
  double delta_u = 0.0;
  std::optional<double> steady_error;
  double radius = 0.0;
  std::string failure;  ///< non-empty when the run raised
};

struct SweepResult {
  std::vector<SweepRow> rows;
  bool feasible = false;
  bool nondecreasing = false;
  bool within_radius = false;

  bool ok() const noexcept { return feasible && nondecreasing && within_radius; }
};

/// One uniform-quantizer run per δ_u with the config's seed and controls.
/// Runs are independent and execute concurrently.
SweepResult run_sweep(const ScenarioConfig& cfg, std::span<const double> deltas);

ExitCode cmd_sweep(const ScenarioConfig& cfg, std::span<const double> deltas, std::ostream& out);

/// Rebuilds the five-agent benchmark, compares L̂_e / L̂_O against the
/// published matrices, checks the certificate scalars and both quantizer
/// scenarios. Hermetic; CheckFailed if any check fails.
ExitCode cmd_reproduce_paper(std::ostream& out);

ExitCode cmd_plot(const std::filesystem::path& csv_path, const std::filesystem::path& svg_path,
                  std::ostream& log);

}  // namespace edgecons
