#include "edgecons/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <ostream>
#include <sstream>

#include "edgecons/closed_loop.hpp"
#include "edgecons/csv.hpp"
#include "edgecons/benchmark_scenario.hpp"
#include "edgecons/svg_plot.hpp"

namespace edgecons {

ExitCode exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::InfeasibleGain:
    case ErrorCode::InfeasibleMargin:
    case ErrorCode::InfeasibleDelta:
      return ExitCode::Infeasible;
    default:
      return ExitCode::UsageOrIo;
  }
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string matrix_literal(const Matrix& m) {
  std::ostringstream s;
  s << "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    s << (i ? ", [" : "[");
    for (Eigen::Index j = 0; j < m.cols(); ++j) s << (j ? ", " : "") << format_double(m(i, j));
    s << "]";
  }
  s << "]";
  return s.str();
}

bool has_envelope(const ScenarioConfig& cfg, const StabilityCertificate& cert) {
  return cfg.quantizer.family() == QuantizerFamily::Logarithmic && cert.feasible &&
         cfg.quantizer.relative_bound() < cert.delta_l_max;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + path.string() + "'");
  return out;
}

}  // namespace

ScenarioRun prepare_scenario(const ScenarioConfig& cfg) {
  EdgeDecomposition d = decompose(cfg.graph);
  StabilityCertificate cert =
      build_certificate(d, GainParams(cfg.sigma), cfg.lipschitz, cfg.state_dim);
  return {std::move(d), std::move(cert), std::nullopt, std::nullopt};
}

ScenarioRun run_scenario(const ScenarioConfig& cfg) {
  ScenarioRun run = prepare_scenario(cfg);
  const ClosedLoop loop(run.decomposition, GainParams(cfg.sigma), cfg.quantizer, cfg.drift,
                        cfg.state_dim);
  run.trajectory = simulate(loop, make_initial_state(cfg), cfg.controls);
  if (has_envelope(cfg, run.certificate)) {
    const double delta_l = cfg.quantizer.relative_bound();
    const double z0 = run.trajectory->tree_norm(0);
    std::vector<double> env;
    env.reserve(run.trajectory->samples());
    for (double t : run.trajectory->times) env.push_back(envelope(run.certificate, delta_l, z0, t));
    run.envelope = std::move(env);
  }
  return run;
}

ExitCode write_certificate_report(std::ostream& out, const ScenarioConfig& cfg,
                                  const ScenarioRun& run) {
  const EdgeDecomposition& d = run.decomposition;
  const StabilityCertificate& c = run.certificate;
  auto kv = [&out](const std::string& key, const std::string& value) {
    out << key << " = " << value << '\n';
  };

  out << "# stability certificate for " << cfg.source << '\n';
  kv("graph.nodes", std::to_string(d.num_nodes));
  kv("graph.edges", std::to_string(d.num_edges()));
  kv("graph.root", std::to_string(d.root + 1));
  std::string tree;
  for (std::size_t k = 0; k < d.tree_size(); ++k) tree += (k ? " " : "") + std::to_string(d.perm[k] + 1);
  kv("graph.tree_edges", tree);
  kv("sigma", format_double(c.sigma));
  kv("xi1", format_double(c.lipschitz.position));
  kv("xi2", format_double(c.lipschitz.velocity));
  kv("state_dim", std::to_string(c.state_dim));
  kv("H", matrix_literal(c.lyapunov));
  kv("lambda_max_H", format_double(c.lambda_max_h));
  kv("sigma_min", format_double(c.sigma_min));
  kv("lambda_min_Q", format_double(c.lambda_min_q));
  kv("lambda_min_P", format_double(c.lambda_min_p));
  kv("lambda_max_P", format_double(c.lambda_max_p));
  kv("norm_P", format_double(c.norm_p));
  kv("norm_P_LT1", format_double(c.norm_p_injection));
  kv("norm_RT", format_double(c.norm_cut_transpose));
  kv("margin", format_double(c.margin));
  kv("delta_l_max", format_double(c.delta_l_max));
  kv("lyapunov_residual", format_double(c.lyapunov_residual));
  kv("q_block_residual", format_double(c.q_block_residual));
  kv("schur_residual", format_double(c.schur_residual));
  kv("drift_bound_caveat", c.drift_bound_caveat ? "true" : "false");
  kv("quantizer.family", std::string(to_string(cfg.quantizer.family())));
  if (cfg.quantizer.family() != QuantizerFamily::None) {
    kv("quantizer.delta_u", format_double(cfg.quantizer.interval()));
  }

  if (!c.feasible) {
    kv("status", std::string(to_string(*c.infeasibility)));
    return ExitCode::Infeasible;
  }

  if (cfg.quantizer.family() == QuantizerFamily::Uniform) {
    kv("radius", format_double(c.radius(cfg.quantizer.interval())));
  }
  if (cfg.quantizer.family() == QuantizerFamily::Logarithmic) {
    const double delta_l = cfg.quantizer.relative_bound();
    kv("delta_l", format_double(delta_l));
    kv("pi", format_double(c.decay_constant(delta_l)));
    if (!(delta_l < c.delta_l_max)) {
      kv("status", std::string(to_string(ErrorCode::InfeasibleDelta)));
      return ExitCode::Infeasible;
    }
    const double pi = c.decay_constant(delta_l);
    const double ratio = c.lambda_max_p / c.lambda_min_p;
    kv("envelope.rigorous.prefactor", format_double(std::sqrt(ratio)));
    kv("envelope.rigorous.rate", format_double(pi / (2.0 * c.lambda_max_p)));
    kv("envelope.printed.prefactor", format_double(ratio));
    kv("envelope.printed.rate", format_double(pi / c.lambda_max_p));

    const InitialState init = make_initial_state(cfg);
    const ClosedLoop loop(d, GainParams(cfg.sigma), cfg.quantizer, cfg.drift, cfg.state_dim);
    const double z0 = tree_state_norm(loop, init.positions, init.velocities);
    kv("z0_norm", format_double(z0));
    if (cfg.target_radius) {
      const double r = *cfg.target_radius;
      kv("convergence_time.radius", format_double(r));
      try {
        kv("convergence_time.rigorous", format_double(convergence_time(c, delta_l, z0, r)));
      } catch (const Error& e) {
        kv("convergence_time.rigorous", std::string(to_string(e.code())));
      }
      const double printed = -(c.lambda_max_p / pi) * std::log(r / (ratio * z0));
      kv("convergence_time.printed", format_double(printed));
    }
  }
  kv("status", "feasible");
  return ExitCode::Success;
}

ExitCode cmd_certify(const ScenarioConfig& cfg, std::ostream& out,
                     const std::optional<std::filesystem::path>& report_path) {
  const ScenarioRun run = prepare_scenario(cfg);
  const ExitCode code = write_certificate_report(out, cfg, run);
  if (report_path) {
    std::ofstream file = open_output(*report_path);
    write_certificate_report(file, cfg, run);
  }
  return code;
}

ExitCode cmd_simulate(const ScenarioConfig& cfg, const std::filesystem::path& csv_path,
                      std::ostream& log) {
  const ScenarioRun run = run_scenario(cfg);
  std::ofstream out = open_output(csv_path);
  write_trajectory_csv(out, *run.trajectory, run.envelope);
  if (!out) throw Error(ErrorCode::Io, "failed writing '" + csv_path.string() + "'");
  log << "wrote " << run.trajectory->samples() << " samples to " << csv_path.string() << '\n';
  log << "final |z_T| = " << fmt(run.trajectory->tree_norm(run.trajectory->tree_norm.size() - 1))
      << '\n';
  return ExitCode::Success;
}

SweepResult run_sweep(const ScenarioConfig& cfg, std::span<const double> deltas) {
  if (deltas.size() < 2) throw Error(ErrorCode::InvalidArgument, "sweep needs at least 2 deltas");
  if (cfg.quantizer.family() != QuantizerFamily::Uniform) {
    throw Error(ErrorCode::InvalidArgument, "sweep requires quantizer.family = uniform");
  }
  const ScenarioRun base = prepare_scenario(cfg);

  SweepResult result;
  result.feasible = base.certificate.feasible;
  std::vector<std::future<double>> jobs;
  for (double delta : deltas) {
    ScenarioConfig run_cfg = cfg;
    run_cfg.quantizer = QuantizerSpec::uniform(delta);
    jobs.push_back(std::async(std::launch::async, [run_cfg, &base] {
      const ClosedLoop loop(base.decomposition, GainParams(run_cfg.sigma), run_cfg.quantizer,
                            run_cfg.drift, run_cfg.state_dim);
      return steady_state_error(simulate(loop, make_initial_state(run_cfg), run_cfg.controls));
    }));
  }

  result.nondecreasing = true;
  result.within_radius = true;
  std::optional<double> previous;
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    SweepRow row;
    row.delta_u = deltas[i];
    row.radius = base.certificate.radius(deltas[i]);
    try {
      row.steady_error = jobs[i].get();
    } catch (const std::exception& e) {
      row.failure = e.what();
      result.nondecreasing = false;
      result.within_radius = false;
    }
    if (row.steady_error) {
      if (!(*row.steady_error <= row.radius)) result.within_radius = false;
      if (previous && *row.steady_error < *previous) result.nondecreasing = false;
      previous = row.steady_error;
    }
    result.rows.push_back(std::move(row));
  }
  return result;
}

ExitCode cmd_sweep(const ScenarioConfig& cfg, std::span<const double> deltas, std::ostream& out) {
  const SweepResult result = run_sweep(cfg, deltas);
  out << "delta_u,steady_error,radius,within_radius\n";
  for (const SweepRow& row : result.rows) {
    out << format_double(row.delta_u) << ',';
    if (row.steady_error) {
      out << format_double(*row.steady_error);
    } else {
      out << "FAILED(" << row.failure << ")";
    }
    out << ',' << (result.feasible ? format_double(row.radius) : "infeasible") << ','
        << (row.steady_error && *row.steady_error <= row.radius ? "yes" : "no") << '\n';
  }
  out << "# trend: " << (result.nondecreasing ? "nondecreasing" : "VIOLATED") << '\n';
  out << "# radius bound: " << (result.within_radius ? "holds" : "VIOLATED") << '\n';
  if (!result.feasible) {
    out << "# certificate: " << to_string(*prepare_scenario(cfg).certificate.infeasibility) << '\n';
    return ExitCode::Infeasible;
  }
  return result.ok() ? ExitCode::Success : ExitCode::CheckFailed;
}

ExitCode cmd_reproduce_paper(std::ostream& out) {
  bool all_ok = true;
  auto verdict = [&all_ok](bool ok) {
    all_ok = all_ok && ok;
    return ok ? "PASS" : "FAIL";
  };

  const ScenarioRun base = prepare_scenario(benchmark_scenario(QuantizerSpec::none()));
  const EdgeDecomposition& d = base.decomposition;
  const StabilityCertificate& c = base.certificate;

  auto report_matrix = [&](const std::string& name, const Matrix& computed, const Matrix& printed) {
    const MatrixComparison cmp = compare_matrices(computed, printed);
    out << "== " << name << " (entry computed published) ==\n";
    for (const auto& line : cmp.lines) out << line << '\n';
    out << name << ": " << cmp.matched << "/" << cmp.total << " entries within 0.005 "
        << verdict(cmp.all_match()) << '\n';
  };
  report_matrix("L_hat_e", d.essential_laplacian, published_essential_laplacian());
  report_matrix("L_hat_O", d.tree_in_product, published_tree_in_product());

  const bool dl_ok = std::abs(c.delta_l_max - kPublishedDeltaLMax) <= 0.05 * kPublishedDeltaLMax;
  out << "delta_l_max = " << fmt(c.delta_l_max) << " (published " << kPublishedDeltaLMax
      << ", tolerance 5%) " << verdict(dl_ok) << '\n';
  const double pi = c.decay_constant(kPublishedDeltaL);
  const bool pi_ok = std::abs(pi - kPublishedDecayConstant) <= 0.05 * kPublishedDecayConstant;
  out << "pi(0.01) = " << fmt(pi) << " (published " << kPublishedDecayConstant
      << ", tolerance 5%) " << verdict(pi_ok) << '\n';
  out << "certificate feasible " << verdict(c.feasible) << '\n';

  const ScenarioRun uniform = run_scenario(benchmark_scenario(QuantizerSpec::uniform(1.0)));
  const double steady = steady_state_error(*uniform.trajectory);
  const double radius = uniform.certificate.radius(1.0);
  out << "uniform delta_u = 1: steady-state |z_T| = " << fmt(steady) << ", certified radius = "
      << fmt(radius) << ' ' << verdict(steady <= radius) << '\n';

  const ScenarioRun log_run = run_scenario(benchmark_scenario(QuantizerSpec::logarithmic(0.01)));
  bool below = log_run.envelope.has_value();
  double worst_ratio = 0.0;
  if (below) {
    for (std::size_t s = 0; s < log_run.trajectory->samples(); ++s) {
      const double z = log_run.trajectory->tree_norm(static_cast<Eigen::Index>(s));
      const double env = (*log_run.envelope)[s];
      worst_ratio = std::max(worst_ratio, z / env);
      below = below && z <= env;
    }
  }
  const double final_norm = log_run.trajectory->tree_norm(log_run.trajectory->tree_norm.size() - 1);
  out << "logarithmic delta_u = 0.01: max |z_T|/envelope = " << fmt(worst_ratio) << ' '
      << verdict(below) << '\n';
  out << "logarithmic delta_u = 0.01: final |z_T| = " << fmt(final_norm) << " (<= 1e-3) "
      << verdict(final_norm <= 1e-3) << '\n';

  out << "overall " << (all_ok ? "PASS" : "FAIL") << '\n';
  return all_ok ? ExitCode::Success : ExitCode::CheckFailed;
}

ExitCode cmd_plot(const std::filesystem::path& csv_path, const std::filesystem::path& svg_path,
                  std::ostream& log) {
  const CsvTable table = read_csv(csv_path);
  const std::string svg = render_trajectory_svg(table);
  std::ofstream out = open_output(svg_path);
  out << svg;
  log << "wrote " << svg_path.string() << " (" << table.rows.size() << " samples)\n";
  return ExitCode::Success;
}

}  // namespace edgecons
