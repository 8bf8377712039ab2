#include "siegel/convex_geom.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace siegel;

namespace {

RVec v1(double a) { return RVec::Constant(1, a); }
RVec v2(double a, double b) { return (RVec(2) << a, b).finished(); }

SiegelStructure quadrant_structure() {
  // Pencil diag(l1, l2): Lambda_+ is the open first quadrant.
  CMat a1 = CMat::Zero(2, 2), a2 = CMat::Zero(2, 2);
  a1(0, 0) = 1.0;
  a2(1, 1) = 1.0;
  return SiegelStructure::make(2, 2, {a1, a2});
}

std::vector<RVec> random_cloud(std::mt19937_64& rng, int m, int count, double shift) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<RVec> pts;
  for (int i = 0; i < count; ++i) {
    RVec p(m);
    for (int k = 0; k < m; ++k) p[k] = u(rng) + shift;
    pts.push_back(p);
  }
  return pts;
}

}  // namespace

TEST(ConvexGeom, SupportFunctionExamples) {
  const auto zero = SpectralSet::point(v2(0, 0));
  EXPECT_EQ(support_function(zero, v2(3, -1)), 0.0);
  EXPECT_DOUBLE_EQ(support_function(SpectralSet::interval(0, 2), v1(-1)), 2.0);
  const SpectralSet seg({v2(1, 0), v2(0, 1)});
  EXPECT_DOUBLE_EQ(support_function(seg, v2(-1, -2)), 2.0);
}

TEST(ConvexGeom, PolarExamples) {
  const auto sym = polar(SpectralSet::interval(-1, 1));
  ASSERT_TRUE(sym.has_vrep());
  EXPECT_TRUE(sym.bounded());
  ASSERT_EQ(sym.vertices->size(), 2u);
  double lo = kInf, hi = -kInf;
  for (const auto& v : *sym.vertices) lo = std::min(lo, v[0]), hi = std::max(hi, v[0]);
  EXPECT_NEAR(lo, -1.0, 1e-12);
  EXPECT_NEAR(hi, 1.0, 1e-12);
  // Brute force over a lambda grid: lambda h >= -1 for every h in [-1, 1].
  for (int i = -500; i <= 500; ++i) {
    const double l = i / 100.0;
    bool in = true;
    for (int j = -100; j <= 100; ++j) in = in && l * (j / 100.0) >= -1.0 - 1e-12;
    EXPECT_EQ(sym.contains(v1(l)), in) << l;
  }

  const auto all = polar(SpectralSet::point(v2(0, 0)));
  EXPECT_TRUE(all.halfspaces.empty());
  EXPECT_TRUE(all.contains(v2(1e6, -1e6)));

  const auto half = polar(SpectralSet::interval(0, 1));
  EXPECT_FALSE(half.bounded());
  EXPECT_TRUE(half.contains(v1(-1.0)));
  EXPECT_TRUE(half.contains(v1(1e9)));
  EXPECT_FALSE(half.contains(v1(-1.001)));
  ASSERT_EQ(half.vertices->size(), 1u);
  EXPECT_NEAR((*half.vertices)[0][0], -1.0, 1e-12);
  ASSERT_EQ(half.rays->size(), 1u);
  EXPECT_GT((*half.rays)[0][0], 0.0);
}

TEST(ConvexGeom, FattenExamples) {
  const auto h = structures::heisenberg(1);
  const auto k = fatten(h, SpectralSet::interval(0, 2), 0.5);
  ASSERT_EQ(k.extreme_points().size(), 2u);
  EXPECT_NEAR(support_function(k, v1(1)), 0.0, 1e-15);
  EXPECT_NEAR(-support_function(k, v1(-1)), -2.5, 1e-15);

  const auto q = quadrant_structure();
  const auto arc = fatten(q, SpectralSet::point(v2(0, 0)), 1.0);
  int on_arc = 0;
  for (const auto& v : arc.extreme_points()) {
    EXPECT_GE(v.minCoeff(), -1e-9);
    EXPECT_LE(v.norm(), 1.0 + 1e-9);
    if (std::abs(v.norm() - 1.0) < 1e-9) ++on_arc;
  }
  EXPECT_GE(on_arc, 16);
  // Dense arc sampling: the inscribed polytope sits within the chord error.
  for (int i = 0; i <= 1000; ++i) {
    const double a = 0.5 * kPi * i / 1000;
    const RVec d = v2(std::cos(a), std::sin(a));
    const double reach = support_function(arc, -d);  // max <v, d>
    EXPECT_GT(reach, std::cos(0.5 * kPi / 31) - 1e-9);
  }
}

TEST(ConvexGeom, ConeMemberExamples) {
  const auto h = structures::heisenberg(1);
  EXPECT_TRUE(cone_member(h, v1(2)));
  EXPECT_FALSE(cone_member(h, v1(-1)));
  const auto e = structures::euclidean(1);
  EXPECT_TRUE(cone_member(e, v1(-7)));
  CMat ind = CMat::Zero(2, 2);
  ind(0, 0) = 1.0;
  ind(1, 1) = -1.0;
  EXPECT_THROW(SiegelStructure::make(2, 1, {ind}), HypothesisError);
}

TEST(ConvexGeom, PfaffianExamples) {
  const auto h = structures::heisenberg(1);
  const double tau = 1.3;
  const auto d = pfaffian_density_integral(h, SpectralSet::interval(0, tau), 4);
  EXPECT_NEAR(d.value, tau * tau / (2 * kPi * kPi), 1e-12);
  EXPECT_TRUE(d.within_closed_cone);

  const double kappa = 2.7;
  const auto e = pfaffian_density_integral(structures::euclidean(1),
                                           SpectralSet::interval(-kappa, kappa), 2);
  EXPECT_NEAR(e.value, kappa / kPi, 1e-12 * kappa / kPi);
  EXPECT_EQ(pfaffian_density_integral(h, SpectralSet::point(v1(0.5)), 4).value, 0.0);
  EXPECT_FALSE(pfaffian_density_integral(h, SpectralSet::interval(-1, 1), 4).within_closed_cone);

  // m = 2, n = 2, diag(l1, l2): ∫ l1 l2 over the triangle conv{0, e1, e2} = 1/24.
  const auto q = quadrant_structure();
  const SpectralSet tri({v2(0, 0), v2(1, 0), v2(0, 1)});
  const auto t = pfaffian_density_integral(q, tri, 4);
  EXPECT_NEAR(t.integral, 1.0 / 24.0, 1e-13);
}

TEST(ConvexGeom, HullVolumes) {
  std::vector<RVec> cube;
  for (int i = 0; i < 8; ++i) cube.push_back((RVec(3) << (i & 1), (i >> 1) & 1, (i >> 2) & 1).finished());
  cube.push_back(RVec::Constant(3, 0.5));
  const SpectralSet c(cube);
  EXPECT_EQ(c.extreme_points().size(), 8u);
  EXPECT_NEAR(c.volume(), 1.0, 1e-12);
  EXPECT_TRUE(c.contains(RVec::Constant(3, 0.25)));
  EXPECT_FALSE(c.contains(RVec::Constant(3, 1.25)));
}

TEST(ConvexGeomProperty, SupportFunction) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> ut(0.01, 100.0);
  for (int t = 0; t < 1000; ++t) {
    const int m = 1 + t % 3;
    auto cloud = random_cloud(rng, m, 6, 0.0);
    const SpectralSet k(cloud);
    cloud.push_back(RVec::Constant(m, 1.5));
    const SpectralSet bigger(cloud);
    RVec h(m), g(m);
    for (int i = 0; i < m; ++i) h[i] = nd(rng), g[i] = nd(rng);
    ASSERT_LE(support_function(k, h + g), support_function(k, h) + support_function(k, g) + 1e-10);
    const double s = ut(rng);
    ASSERT_NEAR(support_function(k, s * h), s * support_function(k, h),
                1e-12 * std::abs(s * support_function(k, h)) + 1e-300);
    ASSERT_LE(support_function(k, h), support_function(bigger, h));
  }
}

TEST(ConvexGeomProperty, Bipolar) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> sh(-1.5, 1.5);
  for (int t = 0; t < 1000; ++t) {
    const int m = 1 + t % 3;
    auto cloud = random_cloud(rng, m, 4 + t % 5, sh(rng));
    const SpectralSet a(cloud);
    cloud.push_back(RVec::Zero(m));
    const SpectralSet envelope(cloud);
    const Polyhedron bip = polar(polar(a));
    ASSERT_TRUE(bip.has_vrep());
    ASSERT_TRUE(bip.rays->empty());
    for (const auto& v : *bip.vertices) ASSERT_TRUE(envelope.contains(v, 1e-9)) << t;
    for (const auto& v : envelope.extreme_points()) ASSERT_TRUE(bip.contains(v, 1e-9)) << t;
  }
}

TEST(ConvexGeomProperty, FattenMonotone) {
  const auto q = quadrant_structure();
  const auto h = structures::heisenberg(1);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ue(0.01, 2.0);
  for (int t = 0; t < 1000; ++t) {
    const bool two = t % 2;
    const auto& s = two ? q : h;
    const auto cloud = random_cloud(rng, s.m(), 3, 1.0);
    const SpectralSet k(cloud);
    double e1 = ue(rng), e2 = ue(rng);
    if (e1 > e2) std::swap(e1, e2);
    const auto small = fatten(s, k, e1), large = fatten(s, k, e2);
    for (const auto& v : k.extreme_points()) ASSERT_TRUE(small.contains(v, 1e-9));
    for (const auto& v : small.extreme_points()) ASSERT_TRUE(large.contains(v, 1e-9)) << t;
  }
}
