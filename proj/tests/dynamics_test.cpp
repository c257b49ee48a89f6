#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <unsupported/Eigen/KroneckerProduct>

#include "edgecons/closed_loop.hpp"
#include "edgecons/drift.hpp"
#include "edgecons/errors.hpp"
#include "edgecons/benchmark_scenario.hpp"
#include "edgecons/reduced_model.hpp"
#include "edgecons/simulate.hpp"
#include "oracles.hpp"

namespace ec = edgecons;

namespace {

ec::ClosedLoop bench_loop(const ec::QuantizerSpec& q, const ec::Drift& f, std::size_t n = 3) {
  return ec::ClosedLoop(ec::decompose(ec::benchmark_graph()), ec::GainParams(1.64), q, f, n);
}

// u = -σ²(E_⊙^w⊗I) Q((Eᵀ⊗I)x) - σ³(E_⊙^w⊗I) Q((Eᵀ⊗I)v), built from the
// input-order edge list with explicit Kronecker products.
ec::Vector kron_control(const ec::Digraph& g, double sigma, const ec::QuantizerSpec& q,
                        const ec::Vector& x, const ec::Vector& v, Eigen::Index n) {
  const auto nodes = static_cast<Eigen::Index>(g.num_nodes());
  const auto edges = static_cast<Eigen::Index>(g.num_edges());
  ec::Matrix e = ec::Matrix::Zero(nodes, edges), ew = ec::Matrix::Zero(nodes, edges);
  for (Eigen::Index k = 0; k < edges; ++k) {
    const auto& ed = g.edge(static_cast<std::size_t>(k));
    e(static_cast<Eigen::Index>(ed.tail), k) = 1.0;
    e(static_cast<Eigen::Index>(ed.head), k) = -1.0;
    ew(static_cast<Eigen::Index>(ed.head), k) = -ed.weight;
  }
  const ec::Matrix id = ec::Matrix::Identity(n, n);
  const ec::Matrix et = Eigen::kroneckerProduct(e.transpose(), id);
  const ec::Matrix ewk = Eigen::kroneckerProduct(ew, id);
  return -sigma * sigma * ewk * ec::quantize(ec::Vector(et * x), q) -
         sigma * sigma * sigma * ewk * ec::quantize(ec::Vector(et * v), q);
}

ec::ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const ec::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an edgecons::Error";
  return ec::ErrorCode::Io;
}

}  // namespace

TEST(ChuaDrift, Examples) {
  EXPECT_EQ(ec::chua_drift(Eigen::Vector3d::Zero()), Eigen::Vector3d::Zero());
  const Eigen::Vector3d f = ec::chua_drift(Eigen::Vector3d(1, 0, 0));
  EXPECT_NEAR(f(0), 0.01 / 3.0, 1e-15);
  EXPECT_NEAR(f(1), 0.001, 1e-15);
  EXPECT_EQ(f(2), 0.0);
  // Outer region: l(v1) = b v1 + (a - b) sign(v1).
  const ec::ChuaParams p;
  const Eigen::Vector3d g = ec::chua_drift(Eigen::Vector3d(3, 1, -2), p);
  const double l = p.b * 3 + (p.a - p.b);
  EXPECT_NEAR(g(0), p.zeta * (-3 + 1 - l), 1e-15);
  EXPECT_NEAR(g(1), p.tau * (3 - 1 - 2), 1e-15);
  EXPECT_NEAR(g(2), -p.chi * 1, 1e-15);
}

TEST(ChuaDrift, RejectsWrongDimension) {
  EXPECT_THROW(bench_loop(ec::QuantizerSpec::none(), ec::Drift::chua(), 2), ec::Error);
}

TEST(ControlInput, ConsensusExamples) {
  const auto d = ec::decompose(ec::benchmark_graph());
  ec::Vector x(15), v(15);
  for (int i = 0; i < 5; ++i) {
    x.segment(3 * i, 3) << 0.3, -1.2, 2.0;
    v.segment(3 * i, 3) << 1.0, 0.5, -0.25;
  }
  EXPECT_EQ(ec::control_input(d, ec::GainParams(1.64), ec::QuantizerSpec::none(), x, v, 3),
            ec::Vector::Zero(15));
  const ec::Vector u = ec::control_input(d, ec::GainParams(1.64), ec::QuantizerSpec::uniform(1.0), x, v, 3);
  EXPECT_GT(u.cwiseAbs().maxCoeff(), 0.1);
  EXPECT_EQ(code_of([&] { ec::control_input(d, ec::GainParams(1.64), ec::QuantizerSpec::none(),
                                            x.head(14), v.head(14), 3); }),
            ec::ErrorCode::DimensionMismatch);
}

TEST(ControlInput, MatchesKroneckerOracle) {
  std::mt19937_64 rng(41);
  std::normal_distribution<double> z(0.0, 2.0);
  for (int i = 0; i < 60; ++i) {
    const auto g = ec::testing::random_qsc_graph(rng);
    const auto d = ec::decompose(g);
    const Eigen::Index n = 1 + i % 3;
    const auto size = static_cast<Eigen::Index>(g.num_nodes()) * n;
    ec::Vector x(size), v(size);
    for (auto& c : x) c = z(rng);
    for (auto& c : v) c = z(rng);
    for (const auto& q : {ec::QuantizerSpec::none(), ec::QuantizerSpec::uniform(0.3),
                          ec::QuantizerSpec::logarithmic(0.05)}) {
      const ec::Vector got = ec::control_input(d, ec::GainParams(1.7), q, x, v, static_cast<std::size_t>(n));
      const ec::Vector want = kron_control(g, 1.7, q, x, v, n);
      EXPECT_LE((got - want).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(Simulate, ConsensusIsAnEquilibrium) {
  const auto loop = bench_loop(ec::QuantizerSpec::none(), ec::Drift::zero());
  ec::InitialState init{ec::Vector::Constant(15, 0.7), ec::Vector::Zero(15)};
  const auto traj = ec::simulate(loop, init, {5.0, 1e-2, 10});
  EXPECT_EQ(traj.samples(), 51u);
  for (std::size_t s = 0; s < traj.samples(); ++s) {
    EXPECT_EQ(traj.positions.col(static_cast<Eigen::Index>(s)), init.positions);
    EXPECT_EQ(traj.velocities.col(static_cast<Eigen::Index>(s)), init.velocities);
    EXPECT_EQ(traj.tree_norm(static_cast<Eigen::Index>(s)), 0.0);
  }
}

TEST(Simulate, SamplingGrid) {
  const auto loop = bench_loop(ec::QuantizerSpec::none(), ec::Drift::zero());
  const auto init = ec::seeded_uniform_init(5, 3, -1, 1, 3);
  const auto traj = ec::simulate(loop, init, {1.05, 0.01, 10});
  ASSERT_EQ(traj.steps.size(), traj.samples());
  EXPECT_EQ(traj.steps.front(), 0u);
  EXPECT_EQ(traj.steps.back(), 105u);
  EXPECT_EQ(traj.steps[traj.samples() - 2], 100u);
  EXPECT_NEAR(traj.times.back(), 1.05, 1e-12);
}

TEST(Simulate, BitwiseDeterministic) {
  const auto loop = bench_loop(ec::QuantizerSpec::uniform(0.5), ec::Drift::chua());
  const auto a = ec::simulate(loop, ec::seeded_uniform_init(5, 3, -2, 2, 9), {10.0, 1e-3, 50});
  const auto b = ec::simulate(loop, ec::seeded_uniform_init(5, 3, -2, 2, 9), {10.0, 1e-3, 50});
  EXPECT_EQ(a.positions, b.positions);
  EXPECT_EQ(a.velocities, b.velocities);
  EXPECT_EQ(a.tree_norm, b.tree_norm);
  EXPECT_NE(ec::seeded_uniform_init(5, 3, -2, 2, 9).positions, ec::seeded_uniform_init(5, 3, -2, 2, 10).positions);
}

TEST(Simulate, NonFiniteStateReportsTime) {
  const auto blowup = ec::Drift::custom([](ec::AgentVector, ec::AgentVector v, double, ec::AgentOutput out) {
    out = v.array().square() * 1e3;
  });
  const auto loop = bench_loop(ec::QuantizerSpec::none(), blowup);
  try {
    ec::simulate(loop, ec::seeded_uniform_init(5, 3, 1, 2, 1), {10.0, 1e-3, 100});
    FAIL() << "expected NonFiniteState";
  } catch (const ec::Error& e) {
    EXPECT_EQ(e.code(), ec::ErrorCode::NonFiniteState);
    EXPECT_NE(std::string(e.what()).find("t ="), std::string::npos) << e.what();
  }
}

TEST(Simulate, LinearIdentitiesAndTreeProjection) {
  for (const auto& q : {ec::QuantizerSpec::none(), ec::QuantizerSpec::uniform(0.4),
                        ec::QuantizerSpec::logarithmic(0.1)}) {
    const auto loop = bench_loop(q, ec::Drift::chua());
    const auto traj = ec::simulate(loop, ec::seeded_uniform_init(5, 3, -2, 2, 4), {20.0, 1e-3, 100});
    EXPECT_LE(ec::linear_identity_residual(loop.decomposition(), traj), 1e-12);
    EXPECT_LE(ec::tree_projection_residual(loop, traj), 1e-10);
  }
}

TEST(Simulate, UnquantizedZeroDriftDecays) {
  const auto loop = bench_loop(ec::QuantizerSpec::none(), ec::Drift::zero());
  const auto traj = ec::simulate(loop, ec::seeded_uniform_init(5, 3, -2, 2, 1), {200.0, 1e-3, 100});
  EXPECT_LE(traj.tree_norm(traj.tree_norm.size() - 1), 1e-8);
  // After the transient, the peak over consecutive 1 s windows strictly falls
  // until it reaches the roundoff floor.
  const Eigen::Index per_window = 10;
  double previous = INFINITY;
  int windows = 0;
  for (Eigen::Index w = 5; w * per_window + per_window <= traj.tree_norm.size(); ++w) {
    const double peak = traj.tree_norm.segment(w * per_window, per_window).maxCoeff();
    if (peak < 1e-9) break;
    EXPECT_LT(peak, previous) << "window " << w;
    previous = peak;
    ++windows;
  }
  EXPECT_GE(windows, 10);
}

TEST(Simulate, SteadyStateErrorUsesTail) {
  ec::Trajectory t;
  t.times = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  t.tree_norm = ec::Vector::LinSpaced(11, 10.0, 0.0);
  EXPECT_EQ(ec::steady_state_error(t, 0.1), 1.0);
  EXPECT_EQ(ec::steady_state_error(t, 0.5), 5.0);
}

TEST(ReducedModel, EquilibriumResidualIsZero) {
  const auto loop = bench_loop(ec::QuantizerSpec::none(), ec::Drift::zero());
  const auto traj = ec::simulate(loop, {ec::Vector::Constant(15, -0.4), ec::Vector::Zero(15)}, {1.0, 1e-2, 1});
  const std::vector<std::size_t> samples{1, 10, 50, 99};
  const auto check = ec::reduced_rhs_check(loop, traj, samples);
  EXPECT_LE(check.max_residual, 1e-10);
  EXPECT_EQ(check.evaluated.size(), 4u);
}

TEST(ReducedModel, RichardsonOrder) {
  auto run = [](double dt) {
    const auto loop = bench_loop(ec::QuantizerSpec::none(), ec::Drift::zero());
    const auto stride = static_cast<std::size_t>(std::lround(0.5 / dt));
    const auto traj = ec::simulate(loop, ec::seeded_uniform_init(5, 3, -2, 2, 1), {5.0, dt, 1});
    std::vector<std::size_t> samples;
    for (std::size_t s = stride; s + 1 < traj.samples(); s += stride) samples.push_back(s);
    return ec::reduced_rhs_check(loop, traj, samples).max_residual;
  };
  const double coarse = run(2e-3), fine = run(1e-3);
  EXPECT_GT(coarse, 0.0);
  EXPECT_GE(coarse / fine, 3.5);
  EXPECT_LE(coarse / fine, 4.5);
}

TEST(ReducedModel, MasksQuantizerSwitches) {
  const auto loop = bench_loop(ec::QuantizerSpec::uniform(0.5), ec::Drift::zero());
  const auto traj = ec::simulate(loop, ec::seeded_uniform_init(5, 3, -2, 2, 1), {2.0, 1e-3, 1});
  std::vector<std::size_t> all;
  for (std::size_t s = 1; s + 1 < traj.samples(); ++s) all.push_back(s);
  const auto check = ec::reduced_rhs_check(loop, traj, all);
  EXPECT_FALSE(check.masked.empty());
  EXPECT_FALSE(check.evaluated.empty());
  EXPECT_EQ(check.masked.size() + check.evaluated.size(), all.size());
  // Away from switches the quantized loop is affine, so the difference is O(dt²).
  EXPECT_LE(check.max_residual, 1e-4);
}

TEST(ReducedModel, InsufficientSamples) {
  const auto loop = bench_loop(ec::QuantizerSpec::none(), ec::Drift::zero());
  const auto traj = ec::simulate(loop, ec::seeded_uniform_init(5, 3, -2, 2, 1), {0.01, 1e-2, 1});
  const std::vector<std::size_t> s{1};
  EXPECT_EQ(code_of([&] { ec::reduced_rhs_check(loop, traj, s); }), ec::ErrorCode::InsufficientSamples);
  const auto longer = ec::simulate(loop, ec::seeded_uniform_init(5, 3, -2, 2, 1), {0.1, 1e-2, 1});
  const std::vector<std::size_t> edge{0};
  EXPECT_EQ(code_of([&] { ec::reduced_rhs_check(loop, longer, edge); }), ec::ErrorCode::InsufficientSamples);
}
