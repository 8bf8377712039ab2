#include "siegel/siegel_core.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace siegel;

namespace {

GroupElement ge(cplx zeta, double x) {
  return {CVec::Constant(1, zeta), RVec::Constant(1, x)};
}
AmbientPoint ap(cplx zeta, cplx z) {
  return {CVec::Constant(1, zeta), CVec::Constant(1, z)};
}

// Two-step structure with m = 2, n = 2 used for the randomized checks.
SiegelStructure quadric() {
  CMat a1(2, 2), a2(2, 2);
  a1 << 1.0, cplx(0.0, 0.3), cplx(0.0, -0.3), 2.0;
  a2 << 0.5, 0.2, 0.2, -0.4;
  return SiegelStructure::make(2, 2, {a1, a2});
}

GroupElement random_group(std::mt19937_64& rng, int n, int m, double scale = 1.0) {
  std::normal_distribution<double> nd(0.0, scale);
  GroupElement g{CVec(n), RVec(m)};
  for (int i = 0; i < n; ++i) g.zeta[i] = cplx(nd(rng), nd(rng));
  for (int k = 0; k < m; ++k) g.x[k] = nd(rng);
  return g;
}

AmbientPoint random_ambient(std::mt19937_64& rng, int n, int m) {
  std::normal_distribution<double> nd(0.0, 1.0);
  AmbientPoint p{CVec(n), CVec(m)};
  for (int i = 0; i < n; ++i) p.zeta[i] = cplx(nd(rng), nd(rng));
  for (int k = 0; k < m; ++k) p.z[k] = cplx(nd(rng), nd(rng));
  return p;
}

}  // namespace

TEST(SiegelCore, ProductExamples) {
  const auto h = structures::heisenberg(1);
  const auto g = ge({0.3, -1.2}, 0.7);
  const auto id = multiply(h, g, identity(h));
  EXPECT_EQ(id.zeta[0], g.zeta[0]);
  EXPECT_EQ(id.x[0], g.x[0]);

  const auto p = multiply(h, ge(1.0, 0.0), ge({0.0, 1.0}, 0.0));
  EXPECT_NEAR(p.zeta[0].real(), 1.0, 1e-15);
  EXPECT_NEAR(p.zeta[0].imag(), 1.0, 1e-15);
  EXPECT_NEAR(p.x[0], -2.0, 1e-15);

  const auto inv = multiply(h, g, ge(-g.zeta[0], -g.x[0]));
  EXPECT_NEAR(std::abs(inv.zeta[0]), 0.0, 1e-15);
  EXPECT_NEAR(inv.x[0], 0.0, 1e-15);
}

TEST(SiegelCore, AmbientProductAndRho) {
  const auto h = structures::heisenberg(1);
  const auto a = ap(1.0, {0.0, 1.0});
  const auto b = ambient_multiply(h, a, ap(0.0, 1.0));
  EXPECT_NEAR(std::abs(b.zeta[0] - cplx(1.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(b.z[0] - cplx(1.0, 1.0)), 0.0, 1e-15);

  const auto e = ambient_multiply(h, a, ambient_identity(h));
  EXPECT_NEAR(std::abs(e.z[0] - a.z[0]), 0.0, 1e-15);

  EXPECT_NEAR(rho(h, ap(0.0, {0.0, 2.5}))[0], 2.5, 1e-15);
  EXPECT_NEAR(rho(h, ap(1.0, {2.0, 3.0}))[0], 2.0, 1e-15);
  EXPECT_NEAR(rho(h, lift(h, ge({0.4, 0.9}, -3.0)))[0], 0.0, 1e-15);
}

TEST(SiegelCore, DistanceExamples) {
  const auto h = structures::heisenberg(1);
  const auto g = ge({0.2, 0.1}, 0.5);
  EXPECT_EQ(dist_group(h, g, g), 0.0);
  EXPECT_NEAR(dist_group(h, identity(h), ge(1.0, 0.0)), 1.0, 1e-15);
  EXPECT_NEAR(dist_group(h, identity(h), dilate(4.0, ge(1.0, 0.0))), 2.0, 1e-14);

  const auto e1 = structures::euclidean(1);
  const AmbientPoint o{CVec(0), CVec::Constant(1, 0.0)};
  const AmbientPoint q{CVec(0), CVec::Constant(1, cplx(0.0, 5.0))};
  EXPECT_NEAR(dist_ambient(e1, o, q), 5.0, 1e-15);
  EXPECT_EQ(dist_ambient(h, ap(0.3, 0.1), ap(0.3, 0.1)), 0.0);
  EXPECT_NEAR(dist_ambient(h, ap(0.0, 0.0), ap(1.0, {0.0, 1.0})), 1.0, 1e-15);
}

TEST(SiegelCore, ConstructionChecks) {
  EXPECT_THROW(SiegelStructure::make(2, 1, {(CMat(2, 2) << 1, 0, 0, -1).finished()}),
               HypothesisError);
  CMat nonherm(1, 1);
  nonherm << cplx(1.0, 1.0);
  EXPECT_THROW(SiegelStructure::make(1, 1, {nonherm}), InputError);
  EXPECT_THROW(SiegelStructure::make(1, 1, {CMat::Identity(1, 1)}, RVec::Constant(1, -1.0)),
               HypothesisError);
  const auto s = SiegelStructure::make(1, 1, {CMat::Identity(1, 1)});
  EXPECT_GT(s.lambda_witness()[0], 0.0);
  EXPECT_EQ(s.gauge_kind(), GaugeKind::Koranyi);
  EXPECT_DOUBLE_EQ(s.theta(), 0.5);
  EXPECT_DOUBLE_EQ(structures::euclidean(2).theta(), 1.0);
}

TEST(SiegelCoreProperty, AssociativityAndInverse) {
  for (const auto& s : {structures::heisenberg(1), quadric(), structures::euclidean(2)}) {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 1000; ++t) {
      const auto a = random_group(rng, s.n(), s.m());
      const auto b = random_group(rng, s.n(), s.m());
      const auto c = random_group(rng, s.n(), s.m());
      const auto l = multiply(s, a, multiply(s, b, c));
      const auto r = multiply(s, multiply(s, a, b), c);
      ASSERT_LE(max_abs(l.zeta - r.zeta), 1e-12);
      ASSERT_LE(max_abs(l.x - r.x), 1e-12);
      const auto e = multiply(s, a, inverse(s, a));
      ASSERT_LE(max_abs(e.x), 1e-12);

      const auto p = random_ambient(rng, s.n(), s.m());
      const auto q = random_ambient(rng, s.n(), s.m());
      const auto w = random_ambient(rng, s.n(), s.m());
      const auto al = ambient_multiply(s, p, ambient_multiply(s, q, w));
      const auto ar = ambient_multiply(s, ambient_multiply(s, p, q), w);
      ASSERT_LE(max_abs(al.z - ar.z), 1e-12);
      const auto ae = ambient_multiply(s, ambient_inverse(s, p), p);
      ASSERT_LE(max_abs(ae.z), 1e-12);
    }
  }
}

TEST(SiegelCoreProperty, DistanceInvariances) {
  for (const auto& s : {structures::heisenberg(1), structures::heisenberg(2), quadric(),
                        structures::euclidean(1)}) {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> tdist(0.1, 10.0);
    for (int t = 0; t < 1000; ++t) {
      const auto g = random_group(rng, s.n(), s.m(), 2.0);
      const auto a = random_group(rng, s.n(), s.m());
      const auto b = random_group(rng, s.n(), s.m());
      const auto c = random_group(rng, s.n(), s.m());
      const double dab = dist_group(s, a, b);
      ASSERT_NEAR(dist_group(s, multiply(s, g, a), multiply(s, g, b)), dab, 1e-12 * (1 + dab));
      ASSERT_NEAR(dist_group(s, b, a), dab, 1e-12 * (1 + dab));
      const double tt = tdist(rng);
      ASSERT_NEAR(dist_group(s, dilate(tt, a), dilate(tt, b)), std::pow(tt, s.theta()) * dab,
                  1e-10 * std::pow(tt, s.theta()) * dab + 1e-14);
      ASSERT_LE(dist_group(s, a, c), dab + dist_group(s, b, c) + 1e-12);

      const auto p = random_ambient(rng, s.n(), s.m());
      const auto q = random_ambient(rng, s.n(), s.m());
      const auto w = random_ambient(rng, s.n(), s.m());
      const auto gp = random_ambient(rng, s.n(), s.m());
      const double dpq = dist_ambient(s, p, q);
      ASSERT_NEAR(dist_ambient(s, ambient_multiply(s, gp, p), ambient_multiply(s, gp, q)), dpq,
                  1e-12 * (1 + dpq));
      ASSERT_LE(dist_ambient(s, p, w), dpq + dist_ambient(s, q, w) + 1e-12);

      // rho is invariant under translation by points of the manifold.
      const auto m = lift(s, g);
      ASSERT_LE((rho(s, ambient_multiply(s, m, p)) - rho(s, p)).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}
