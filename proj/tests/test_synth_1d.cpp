#include "siegel/synth_1d.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace siegel;

TEST(Synth1D, SingleSincInterpolates) {
  const auto f = SynthFunction1D::single(kPi);
  EXPECT_NEAR(std::abs(eval_1d(f, 0.0) - 1.0), 0.0, 1e-14);
  for (int k = -5; k <= 5; ++k)
    if (k != 0) EXPECT_NEAR(std::abs(eval_1d(f, static_cast<double>(k))), 0.0, 1e-14);
  EXPECT_NEAR(eval_1d(f, 0.5).real(), 2 / kPi, 1e-14);
}

TEST(Synth1D, RealCoefficientsGiveRealValues) {
  std::mt19937_64 rng(3);
  const auto f = random_synth_1d(2.0, 20, rng, 0.9, true);
  for (double x = -30; x <= 30; x += 0.37) EXPECT_NEAR(eval_1d(f, x).imag(), 0.0, 1e-12);
}

TEST(Synth1D, ExponentialTypeBound) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_synth_1d(kPi, 16, rng);
    double l1 = 0.0;
    for (const auto& c : f.coeffs) l1 += std::abs(c);
    for (double y = -5; y <= 5; y += 0.25)
      EXPECT_LE(std::abs(eval_1d(f, cplx(0.3, y))), l1 * std::exp(f.kappa * std::abs(y)) * (1 + 1e-12));
  }
}

TEST(Synth1D, NormExamples) {
  EXPECT_NEAR(norm_1d(SynthFunction1D::single(kPi), 2).value, 1.0, 1e-15);
  SynthFunction1D zero = SynthFunction1D::single(kPi, 0, 3);
  zero.coeffs.assign(zero.coeffs.size(), 0.0);
  EXPECT_EQ(norm_1d(zero, 2).value, 0.0);
  EXPECT_EQ(norm_1d(zero, 4).value, 0.0);
  // The single sinc is not integrable.
  EXPECT_FALSE(norm_1d(SynthFunction1D::single(kPi), 1).converged);
}

TEST(Synth1D, ParsevalMatchesQuadrature) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const double kappa = 0.5 + 4.5 * std::uniform_real_distribution<double>()(rng);
    const auto f = random_synth_1d(kappa, 32, rng);
    const double exact = norm_1d(f, 2).value;
    const double quad = norm_1d_quadrature(f, 2).value;
    EXPECT_NEAR(quad / exact, 1.0, 1e-6) << "trial " << trial;
  }
}

TEST(Synth1D, IntegrableProjection) {
  std::mt19937_64 rng(12);
  auto f = random_synth_1d(kPi, 24, rng);
  make_integrable(f);
  cplx s0(0);
  for (int k = -f.N; k <= f.N; ++k) s0 += ((k & 1) ? -1.0 : 1.0) * f.coeff(k);
  EXPECT_LT(std::abs(s0), 1e-13);
  const auto n1 = norm_1d(f, 1);
  EXPECT_TRUE(n1.converged);
  EXPECT_GT(n1.value, 0.0);
  EXPECT_TRUE(std::isfinite(n1.value));
}

TEST(Synth1D, SampleSumExamples) {
  const auto f = SynthFunction1D::single(kPi);
  std::vector<cplx> ints;
  for (int k = -40; k <= 40; ++k) ints.push_back(static_cast<double>(k));
  EXPECT_NEAR(sample_sum(f, ints, 2), 1.0, 1e-14);
  EXPECT_EQ(sample_sum(f, {}, 2), 0.0);
  // Shifted by 1/2: sum_n 1 / (pi^2 (n - 1/2)^2) = 1.
  SynthFunction1D g = f;
  g.shift = 0.5;
  EXPECT_NEAR(lattice_sample_sum(g, 1.0, 2).value, norm_1d(g, 2).value, 1e-6);
}

TEST(Synth1D, SampleSumAdditivity) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-20, 20);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto f = random_synth_1d(kPi, 4, rng);
    std::vector<cplx> a, b, ab;
    for (int i = 0; i < 5; ++i) a.push_back(u(rng)), ab.push_back(a.back());
    for (int i = 0; i < 3; ++i) b.push_back(u(rng)), ab.push_back(b.back());
    const double lhs = std::pow(sample_sum(f, ab, 2), 2);
    const double rhs = std::pow(sample_sum(f, a, 2), 2) + std::pow(sample_sum(f, b, 2), 2);
    EXPECT_NEAR(lhs, rhs, 1e-12 * std::max(1.0, lhs));
  }
}

TEST(Synth1D, WksIsometry) {
  for (double kappa : {kPi, 2.0}) {
    const auto rep = frame_ratio_1d(kappa, kappa, 2, 20, 7, 32);
    for (double r : rep.ratios) EXPECT_NEAR(r, std::sqrt(kappa / kPi), 1e-4);
  }
}

TEST(Synth1D, PlancherelPolyaP1) {
  const auto rep = frame_ratio_1d(kPi, 1.2 * kPi, 1, 20, 9, 32);
  EXPECT_TRUE(rep.converged);
  EXPECT_GT(rep.min_ratio, 0.0);
  EXPECT_TRUE(std::isfinite(rep.max_ratio));
  EXPECT_THROW(frame_ratio_1d(kPi, kPi, 1, 5, 1), InputError);
}
