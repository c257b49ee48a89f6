#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "edgecons/certificate.hpp"
#include "edgecons/drift.hpp"
#include "edgecons/edge_decomposition.hpp"
#include "edgecons/errors.hpp"
#include "edgecons/lipschitz.hpp"
#include "edgecons/lyapunov.hpp"
#include "edgecons/benchmark_scenario.hpp"
#include "oracles.hpp"

namespace ec = edgecons;
using ec::testing::random_qsc_graph;

namespace {

const ec::LipschitzBounds kBenchLip{0.0, 4.3871e-3};

ec::StabilityCertificate bench_certificate(double sigma = 1.64, std::size_t n = 3) {
  return ec::build_certificate(ec::decompose(ec::benchmark_graph()), ec::GainParams(sigma), kBenchLip, n);
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

TEST(Lyapunov, ScalarCases) {
  EXPECT_DOUBLE_EQ(ec::solve_lyapunov(ec::Matrix::Constant(1, 1, 1.0))(0, 0), 0.5);
  for (double w : {0.09, 0.5, 3.0}) {
    EXPECT_NEAR(ec::solve_lyapunov(ec::Matrix::Constant(1, 1, w))(0, 0), 1.0 / (2 * w), 1e-15);
  }
}

TEST(Lyapunov, RejectsUnstableInput) {
  ec::Matrix a(2, 2);
  a << 1, 0, 0, -0.5;
  EXPECT_EQ(code_of([&] { ec::solve_lyapunov(a); }), ec::ErrorCode::NotPositiveStable);
  EXPECT_EQ(code_of([&] { ec::solve_lyapunov(ec::Matrix::Identity(2, 3)); }),
            ec::ErrorCode::DimensionMismatch);
}

TEST(Lyapunov, MatchesDiagonalizationOracle) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 100; ++i) {
    const auto d = ec::decompose(random_qsc_graph(rng));
    const ec::Matrix& a = d.essential_laplacian;
    const ec::Matrix h = ec::solve_lyapunov(a);
    EXPECT_LE(ec::lyapunov_residual(h, a), 1e-10);
    EXPECT_EQ(ec::max_abs(h - h.transpose()), 0.0);
    EXPECT_GT(Eigen::SelfAdjointEigenSolver<ec::Matrix>(h).eigenvalues().minCoeff(), 0.0);
    const ec::Matrix oracle = ec::testing::lyapunov_by_diagonalization(a);
    EXPECT_LE(ec::max_abs(h - oracle), 1e-7 * std::max(1.0, ec::max_abs(oracle)));
  }
}

TEST(Certificate, BenchmarkPublishedScalars) {
  const auto c = bench_certificate();
  EXPECT_TRUE(c.feasible);
  EXPECT_NEAR(c.delta_l_max, ec::kPublishedDeltaLMax, 0.05 * ec::kPublishedDeltaLMax);
  EXPECT_NEAR(c.decay_constant(0.01), ec::kPublishedDecayConstant, 0.05 * ec::kPublishedDecayConstant);
  EXPECT_NEAR(c.norm_cut_transpose, 2.0, 1e-12);
  EXPECT_TRUE(c.drift_bound_caveat == false);
}

TEST(Certificate, TwoNodeClosedForm) {
  const auto d = ec::decompose(ec::Digraph(2, {{0, 1, 1.0}}));
  const auto c = ec::build_certificate(d, ec::GainParams(2.0), {}, 1);
  ASSERT_TRUE(c.feasible);
  EXPECT_NEAR(c.lyapunov(0, 0), 0.5, 1e-15);
  // Q = [[4, 7.5], [7.5, 15]].
  EXPECT_NEAR(c.lambda_min_q, 9.5 - std::sqrt(79.25), 1e-12);
  EXPECT_NEAR(c.margin, c.lambda_min_q, 1e-15);
  EXPECT_NEAR(c.sigma_min, std::sqrt(1.25), 1e-14);
}

TEST(Certificate, AlgebraicIdentitiesOnRandomGraphs) {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> sigma(1.0, 4.0);
  for (int i = 0; i < 100; ++i) {
    const auto d = ec::decompose(random_qsc_graph(rng));
    const auto c = ec::build_certificate(d, ec::GainParams(sigma(rng)), {}, 2);
    EXPECT_LE(c.lyapunov_residual, 1e-10);
    EXPECT_LE(c.q_block_residual, 1e-10);
    EXPECT_LE(c.schur_residual, 1e-10);

    // Q against its closed form, rebuilt here.
    const ec::Matrix& h = c.lyapunov;
    const auto m = h.rows();
    const double s = c.sigma;
    const ec::Matrix id = ec::Matrix::Identity(m, m);
    ec::Matrix q(2 * m, 2 * m);
    q << s * s * id, s * s * s * id - s * h, s * s * s * id - s * h, s * s * s * s * id - 2 * h;
    EXPECT_LE(ec::max_abs(q - c.block_q), 1e-10);
    ec::Matrix p(2 * m, 2 * m);
    p << s * h, h, h, s * h;
    EXPECT_LE(ec::max_abs(p - c.block_p), 0.0);
  }
}

TEST(Certificate, PositiveDefinitenessThresholdBothSides) {
  std::mt19937_64 rng(33);
  for (int i = 0; i < 100; ++i) {
    const auto d = ec::decompose(random_qsc_graph(rng));
    const double threshold = ec::build_certificate(d, ec::GainParams(2.0), {}, 1).sigma_min;
    EXPECT_GT(threshold, 1.0);
    const auto above = ec::build_certificate(d, ec::GainParams(threshold * 1.01), {}, 1);
    const auto below = ec::build_certificate(d, ec::GainParams(threshold * 0.99), {}, 1);
    EXPECT_TRUE(above.q_positive_by_eigen);
    EXPECT_TRUE(above.q_positive_by_schur);
    EXPECT_TRUE(above.feasible);
    EXPECT_FALSE(below.q_positive_by_eigen);
    EXPECT_FALSE(below.q_positive_by_schur);
    EXPECT_FALSE(below.feasible);
    EXPECT_EQ(below.infeasibility, ec::ErrorCode::InfeasibleGain);
  }
}

TEST(Certificate, InfeasibleMarginWhenDriftDominates) {
  const auto d = ec::decompose(ec::benchmark_graph());
  const auto c = ec::build_certificate(d, ec::GainParams(1.64), {0.0, 1.0}, 3);
  EXPECT_FALSE(c.feasible);
  EXPECT_EQ(c.infeasibility, ec::ErrorCode::InfeasibleMargin);
  EXPECT_EQ(code_of([&] { c.require_feasible(); }), ec::ErrorCode::InfeasibleMargin);
  EXPECT_EQ(code_of([&] { ec::envelope(c, 0.0, 1.0, 0.0); }), ec::ErrorCode::InfeasibleMargin);
}

TEST(Certificate, CaveatFlagNeedsBothConstants) {
  const auto d = ec::decompose(ec::benchmark_graph());
  EXPECT_TRUE(ec::build_certificate(d, ec::GainParams(1.64), {1e-4, 1e-4}, 3).drift_bound_caveat);
  EXPECT_FALSE(ec::build_certificate(d, ec::GainParams(1.64), {1e-4, 0.0}, 3).drift_bound_caveat);
}

TEST(Certificate, RadiusIsLinearAndScalesWithDimension) {
  const auto c = bench_certificate();
  for (double delta : {0.01, 0.1, 1.0, 3.0}) EXPECT_EQ(c.radius(2 * delta), 2 * c.radius(delta));
  const double expected = 2 * std::sqrt(2.0 * 3 * 5) * c.norm_p_injection / c.margin;
  EXPECT_NEAR(c.radius(1.0), expected, 1e-12 * expected);
}

TEST(Certificate, DecayConstantVanishesAtDeltaMax) {
  const auto c = bench_certificate();
  EXPECT_LE(std::abs(c.decay_constant(c.delta_l_max)), 1e-15);
  EXPECT_EQ(c.decay_constant(0.0), c.margin);
}

TEST(Certificate, KroneckerInvariance) {
  const auto c1 = bench_certificate(1.64, 1);
  const auto c3 = bench_certificate(1.64, 3);
  const auto c7 = bench_certificate(1.64, 7);
  for (const auto* c : {&c3, &c7}) {
    EXPECT_DOUBLE_EQ(c->margin, c1.margin);
    EXPECT_DOUBLE_EQ(c->delta_l_max, c1.delta_l_max);
    EXPECT_DOUBLE_EQ(c->lambda_min_q, c1.lambda_min_q);
    EXPECT_DOUBLE_EQ(c->norm_p, c1.norm_p);
  }
  EXPECT_NEAR(c7.radius(1.0) / c1.radius(1.0), std::sqrt(7.0), 1e-12);
  // Norms and eigenvalues of M ⊗ I equal those of M.
  const ec::Matrix big_p = ec::kron_identity(c1.block_p, 3);
  EXPECT_NEAR(ec::spectral_norm(big_p), c1.norm_p, 1e-12);
  EXPECT_NEAR(ec::symmetric_eigenvalues(ec::kron_identity(c1.block_q, 3)).minCoeff(), c1.lambda_min_q, 1e-12);
}

TEST(Envelope, BoundaryValues) {
  const auto c = bench_certificate();
  const double ratio = std::sqrt(c.lambda_max_p / c.lambda_min_p);
  EXPECT_NEAR(ec::envelope(c, 0.01, 2.5, 0.0), ratio * 2.5, 1e-14);
  EXPECT_EQ(ec::envelope(c, 0.01, 0.0, 17.0), 0.0);
  EXPECT_NEAR(ec::printed_envelope(c, 0.01, 1.0, 0.0), c.lambda_max_p / c.lambda_min_p, 1e-12);
  const double t = 40.0;
  EXPECT_NEAR(ec::envelope(c, 0.01, 1.0, t),
              ratio * std::exp(-c.decay_constant(0.01) * t / (2 * c.lambda_max_p)), 1e-15);
  EXPECT_EQ(code_of([&] { ec::envelope(c, c.delta_l_max, 1.0, 0.0); }), ec::ErrorCode::InfeasibleDelta);
  EXPECT_EQ(code_of([&] { ec::envelope(c, -0.01, 1.0, 0.0); }), ec::ErrorCode::InfeasibleDelta);
}

TEST(ConvergenceTime, BisectionOracleAndLogIdentity) {
  const auto c = bench_certificate();
  const double z0 = 4.0, dl = 0.01;
  EXPECT_NEAR(ec::convergence_time(c, dl, z0, ec::envelope(c, dl, z0, 0.0)), 0.0, 1e-9);
  const double r = 0.01;
  const double t = ec::convergence_time(c, dl, z0, r);
  double lo = 0.0, hi = 1.0;
  while (ec::envelope(c, dl, z0, hi) > r) hi *= 2;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (ec::envelope(c, dl, z0, mid) > r ? lo : hi) = mid;
  }
  EXPECT_NEAR(t, hi, 1e-9 * hi);
  const double step = 2 * c.lambda_max_p / c.decay_constant(dl) * std::log(2.0);
  EXPECT_NEAR(ec::convergence_time(c, dl, z0, r / 2) - t, step, 1e-9 * step);
}

TEST(ConvergenceTime, Errors) {
  const auto c = bench_certificate();
  EXPECT_EQ(code_of([&] { ec::convergence_time(c, 0.01, 1.0, 1e6); }), ec::ErrorCode::RadiusTooLarge);
  EXPECT_EQ(code_of([&] { ec::convergence_time(c, 0.01, 1.0, 0.0); }), ec::ErrorCode::InvalidArgument);
}

TEST(GainParams, DerivedGains) {
  const ec::GainParams g(1.5);
  EXPECT_EQ(g.alpha(), 1.5 * 1.5);
  EXPECT_EQ(g.beta(), 1.5 * 1.5 * 1.5);
  EXPECT_THROW(ec::GainParams(0.0), ec::Error);
  EXPECT_THROW(ec::LipschitzBounds(-1.0, 0.0), ec::Error);
}

TEST(Lipschitz, ConstantDriftHasZeroConstants) {
  const auto f = ec::Drift::custom([](ec::AgentVector, ec::AgentVector, double, ec::AgentOutput out) {
    out.setConstant(2.0);
  });
  const auto est = ec::estimate_lipschitz(f, {}, 2000, 1);
  EXPECT_EQ(est.position, 0.0);
  EXPECT_EQ(est.velocity, 0.0);
}

TEST(Lipschitz, LinearVelocityMap) {
  const auto f = ec::Drift::custom([](ec::AgentVector, ec::AgentVector v, double, ec::AgentOutput out) {
    out = 0.5 * v;
  });
  const auto est = ec::estimate_lipschitz(f, {}, 2000, 1);
  EXPECT_EQ(est.position, 0.0);
  EXPECT_LE(est.velocity, 0.5 * (1 + 1e-12));
  EXPECT_GE(est.velocity, 0.5 * (1 - 1e-12));
}

TEST(Lipschitz, ChuaEstimateBracketedByJacobianBound) {
  const ec::ChuaParams p;
  const double exact = ec::testing::chua_jacobian_bound(p.zeta, p.tau, p.chi, p.a, p.b);
  const auto est = ec::estimate_lipschitz(ec::Drift::chua(p), {}, 20000, 5);
  EXPECT_EQ(est.position, 0.0);
  EXPECT_LE(est.velocity, exact * (1 + 1e-9));
  EXPECT_GE(est.velocity, 0.9 * exact);
  // The published velocity constant is below the sampled one.
  EXPECT_GT(est.velocity, 4.3871e-3);
  EXPECT_EQ(ec::estimate_lipschitz(ec::Drift::chua(p), {}, 500, 9).velocity,
            ec::estimate_lipschitz(ec::Drift::chua(p), {}, 500, 9).velocity);
}
