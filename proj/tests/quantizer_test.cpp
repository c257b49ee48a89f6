#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "edgecons/errors.hpp"
#include "edgecons/quantizer.hpp"

namespace ec = edgecons;

TEST(Quantizer, UniformExamples) {
  EXPECT_DOUBLE_EQ(ec::quantize_uniform(0.7, 1.0), 0.5);
  EXPECT_DOUBLE_EQ(ec::quantize_uniform(-0.2, 1.0), -0.5);
  EXPECT_DOUBLE_EQ(ec::quantize_uniform(0.0, 1.0), 0.5);
}

TEST(Quantizer, LogarithmicExamples) {
  EXPECT_EQ(ec::quantize_log(0.0, 0.3), 0.0);
  EXPECT_NEAR(ec::quantize_log(1.0, 0.01), std::exp(0.005), 1e-15);
  EXPECT_NEAR(ec::quantize_log(1.0, 0.01), 1.0050125, 1e-7);
}

TEST(Quantizer, VectorExamples) {
  ec::Vector v(2);
  v << 0.7, -0.2;
  const ec::Vector q = ec::quantize(v, ec::QuantizerSpec::uniform(1.0));
  EXPECT_DOUBLE_EQ(q(0), 0.5);
  EXPECT_DOUBLE_EQ(q(1), -0.5);
  EXPECT_EQ(ec::quantize(v, ec::QuantizerSpec::none()), v);
}

TEST(Quantizer, SpecValidation) {
  EXPECT_THROW(ec::QuantizerSpec::uniform(0.0), ec::Error);
  EXPECT_THROW(ec::QuantizerSpec::uniform(-1.0), ec::Error);
  EXPECT_THROW(ec::QuantizerSpec::uniform(INFINITY), ec::Error);
  EXPECT_THROW(ec::QuantizerSpec::logarithmic(0.0), ec::Error);
  EXPECT_THROW(ec::QuantizerSpec::logarithmic(0.91), ec::Error);
  EXPECT_NO_THROW(ec::QuantizerSpec::logarithmic(0.9));
  const auto q = ec::QuantizerSpec::logarithmic(0.5);
  EXPECT_DOUBLE_EQ(q.relative_bound(), 1.0 - std::exp(-0.5));
  EXPECT_EQ(ec::QuantizerSpec::uniform(0.5).relative_bound(), 0.0);
}

TEST(Quantizer, UniformBoundProperty) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> x(-50.0, 50.0);
  for (double delta : {0.01, 0.1, 1.0, 3.0, 7.5}) {
    for (int i = 0; i < 20000; ++i) {
      const double v = x(rng);
      ASSERT_LE(std::abs(ec::quantize_uniform(v, delta) - v), delta / 2 * (1 + 1e-12))
          << v << " " << delta;
    }
  }
}

TEST(Quantizer, LogarithmicBoundProperty) {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> expo(-12.0, 12.0);
  std::bernoulli_distribution sign(0.5);
  for (double delta : {1e-4, 0.01, 0.1, 0.5, 0.9}) {
    const double bound = 1.0 - std::exp(-delta);
    for (int i = 0; i < 20000; ++i) {
      const double v = (sign(rng) ? -1.0 : 1.0) * std::exp(expo(rng));
      ASSERT_LE(std::abs(ec::quantize_log(v, delta) - v), bound * std::abs(v) * (1 + 1e-12))
          << v << " " << delta;
    }
  }
}

TEST(Quantizer, LogarithmicBoundFailsAboveRestriction) {
  // Just above 1, the rounding-up branch overshoots by e^{δ/2} - 1.
  const double delta = 2.0;
  const double v = std::exp(1e-9);
  EXPECT_GT(std::abs(ec::quantize_log(v, delta) - v), (1.0 - std::exp(-delta)) * v);
}

TEST(Quantizer, LogarithmicOddSymmetryIsExact) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> expo(-20.0, 20.0);
  for (int i = 0; i < 20000; ++i) {
    const double v = std::exp(expo(rng));
    for (double delta : {0.01, 0.3, 0.9}) ASSERT_EQ(ec::quantize_log(-v, delta), -ec::quantize_log(v, delta));
  }
}

TEST(Quantizer, UniformIdempotentOnLattice) {
  for (double delta : {0.01, 0.1, 1.0, 3.0}) {
    for (int k = -200; k <= 200; ++k) {
      const double q = delta * (k + 0.5);
      ASSERT_EQ(ec::quantize_uniform(q, delta), q) << k << " " << delta;
    }
  }
}

TEST(Quantizer, VectorErrorBound) {
  std::mt19937_64 rng(24);
  std::normal_distribution<double> x(0.0, 5.0);
  for (int i = 0; i < 2000; ++i) {
    ec::Vector v(6);
    for (auto& c : v) c = x(rng);
    for (const auto& spec : {ec::QuantizerSpec::uniform(0.7), ec::QuantizerSpec::logarithmic(0.2),
                             ec::QuantizerSpec::none()}) {
      const double err = (ec::quantize(v, spec) - v).norm();
      ASSERT_LE(err, ec::error_bound(v, spec) * (1 + 1e-12) + 1e-300);
    }
  }
}
