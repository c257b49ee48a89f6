// edgecons: certify, simulate, sweep and plot quantized edge-agreement
// scenarios.
//
//   edgecons certify --config scenario.toml [--out report.txt]
//   edgecons simulate --config scenario.toml --out run.csv [--seed N] [--dt X] [--horizon X]
//   edgecons sweep --config scenario.toml --deltas 0.01,0.1,1
//   edgecons reproduce-paper
//   edgecons plot run.csv --out run.svg

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "edgecons/commands.hpp"
#include "edgecons/config.hpp"
#include "edgecons/errors.hpp"

namespace {

using edgecons::ExitCode;

std::vector<double> parse_deltas(const std::string& text) {
  std::vector<double> out;
  std::istringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) {
      throw edgecons::Error(edgecons::ErrorCode::InvalidArgument, "malformed delta '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Edge-agreement certificates and simulations under quantized measurements"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string deltas;
  std::string csv_path;
  edgecons::ConfigOverrides overrides;

  auto add_overrides = [&](CLI::App* cmd) {
    cmd->add_option("--seed", overrides.seed, "Seed for seeded_uniform initial conditions");
    cmd->add_option("--dt", overrides.dt, "Integrator step in seconds");
    cmd->add_option("--horizon", overrides.horizon, "Simulation horizon in seconds");
  };

  auto* certify = app.add_subcommand("certify", "Compute the stability certificate");
  certify->add_option("--config", config_path, "Scenario file")->required();
  certify->add_option("--out", out_path, "Also write the report to this file");
  add_overrides(certify);

  auto* simulate = app.add_subcommand("simulate", "Simulate the closed loop and write a CSV");
  simulate->add_option("--config", config_path, "Scenario file")->required();
  simulate->add_option("--out", out_path, "CSV output path")->required();
  add_overrides(simulate);

  auto* sweep = app.add_subcommand("sweep", "Steady-state error over uniform quantizer intervals");
  sweep->add_option("--config", config_path, "Scenario file")->required();
  sweep->add_option("--deltas", deltas, "Comma-separated delta_u values")->required();
  add_overrides(sweep);

  auto* reproduce = app.add_subcommand("reproduce-paper", "Run the built-in five-agent benchmark");

  auto* plot = app.add_subcommand("plot", "Render a simulate CSV as SVG");
  plot->add_option("csv", csv_path, "CSV produced by simulate")->required();
  plot->add_option("--out", out_path, "SVG output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(ExitCode::UsageOrIo);
  }

  try {
    ExitCode code = ExitCode::Success;
    auto load = [&] {
      auto cfg = edgecons::load_config(config_path);
      edgecons::apply_overrides(cfg, overrides);
      return cfg;
    };
    if (*certify) {
      const auto cfg = load();
      std::optional<std::filesystem::path> report;
      if (!out_path.empty()) report = out_path;
      code = edgecons::cmd_certify(cfg, std::cout, report);
      if (code == ExitCode::Infeasible) std::cerr << "certificate infeasible\n";
    } else if (*simulate) {
      code = edgecons::cmd_simulate(load(), out_path, std::cerr);
    } else if (*sweep) {
      const auto values = parse_deltas(deltas);
      code = edgecons::cmd_sweep(load(), values, std::cout);
    } else if (*reproduce) {
      code = edgecons::cmd_reproduce_paper(std::cout);
    } else if (*plot) {
      code = edgecons::cmd_plot(csv_path, out_path, std::cerr);
    }
    return static_cast<int>(code);
  } catch (const edgecons::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(edgecons::exit_code_for(e));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::UsageOrIo);
  }
}
