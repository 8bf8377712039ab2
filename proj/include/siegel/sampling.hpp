#pragma once

// Explicit sampling families on Gaussian-integer grids of E crossed with
// x-grids of F, executable necessary conditions, Beurling densities and
// separated decompositions.

#include "siegel/convex_geom.hpp"
#include "siegel/measure.hpp"
#include "siegel/parallel.hpp"
#include "siegel/siegel_core.hpp"
#include "siegel/synth_1d.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace siegel {

struct HypothesisCertificate {
  bool holds = false;
  bool strict = true;          // strict inequality required
  double max_ratio = 0.0;      // max over unit zeta of lhs / rhs (exact eigenvalue test)
  CVec witness;                // zeta attaining max_ratio
  double sampled_max_ratio = 0.0;
  int sampled_directions = 0;
  double sampled_margin = 1e-6;
  bool sampled_holds = false;  // every sampled direction below 1 - margin (or <= 1 when not strict)
};

struct CoveringCertificate {
  double half_width = 0.0;  // t: the cube [-t, t]^m lies in r P°
  double step = 0.0;        // x spacing used, <= 2t
  double max_l1 = 0.0;      // max over vertices v of K of |v - lambda|_1
  bool cube_in_polar = false;
  int polar_vertices = 0;
};

struct SamplingFamily {
  std::vector<AmbientPoint> points;
  std::vector<std::vector<long>> x_index;  // x = index * step, per point
  std::string construction_tag;            // "cor:gaussian_integer" | "cor:fock_quadratic"
  CMat basis;                              // columns e_k
  std::vector<RVec> k_vertices;
  RVec lambda_center;
  double r = 0.0;
  double x_step = 0.0;
  RVec zeta_spacing;  // a_k, per axis
  RVec fock_weight;   // c_k in phi_k = c_k |w|^2
  Box window;         // group box (Re zeta, Im zeta, x)
  HypothesisCertificate hypothesis;
  CoveringCertificate covering;
  std::string restriction;  // scope note recorded in reports

  std::size_t size() const { return points.size(); }
};

namespace detail {

// Exact check of H_K(-Phi(zeta)) vs sum_k c_k |<e'_k, zeta>|^2. Writing
// zeta = B conj(u), both sides are hermitian forms in u; the worst ratio is the
// top eigenvalue of D^{-1/2} B^T A_v conj(B) D^{-1/2} over the vertices v.
inline HypothesisCertificate check_hypothesis(const SiegelStructure& s, const SpectralSet& k, const CMat& basis,
                                              const RVec& c, bool strict) {
  HypothesisCertificate cert;
  cert.strict = strict;
  const int n = s.n();
  if (n == 0) {
    cert.holds = cert.sampled_holds = true;
    cert.witness = CVec(0);
    return cert;
  }
  const RVec dinv = c.cwiseSqrt().cwiseInverse();
  cert.max_ratio = -kInf;
  for (const auto& v : k.extreme_points()) {
    const CMat av = s.pencil(v);
    CMat mv = basis.transpose() * av * basis.conjugate();
    mv = dinv.asDiagonal() * mv * dinv.asDiagonal();
    mv = 0.5 * (mv + mv.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<CMat> es(mv);
    const double top = es.eigenvalues()[n - 1];
    if (top > cert.max_ratio) {
      cert.max_ratio = top;
      const CVec u = dinv.asDiagonal() * es.eigenvectors().col(n - 1);
      cert.witness = (basis * u.conjugate()).normalized();
    }
  }
  cert.holds = strict ? cert.max_ratio < 1.0 : cert.max_ratio <= 1.0 + 1e-12;

  // Sphere sampling of the unit sphere of E, as an independent check.
  const CMat binv = basis.inverse();
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> nd;
  constexpr int kDirections = 4096;
  cert.sampled_directions = kDirections;
  cert.sampled_max_ratio = 0.0;
  for (int i = 0; i < kDirections; ++i) {
    CVec z(n);
    for (int j = 0; j < n; ++j) z[j] = cplx(nd(rng), nd(rng));
    z.normalize();
    const RVec phi = s.quad(z);
    double lhs = -kInf;
    for (const auto& v : k.extreme_points()) lhs = std::max(lhs, v.dot(phi));
    const CVec y = binv * z;
    double rhs = 0.0;
    for (int j = 0; j < n; ++j) rhs += c[j] * std::norm(y[j]);
    cert.sampled_max_ratio = std::max(cert.sampled_max_ratio, lhs / rhs);
  }
  cert.sampled_holds = strict ? cert.sampled_max_ratio < 1.0 - cert.sampled_margin
                              : cert.sampled_max_ratio <= 1.0 + cert.sampled_margin;
  return cert;
}

// Cube [-t, t]^m inside r P° with P = (K - lambda) ∪ (lambda - K):
// <mu, h> >= -t |h|_1 >= -r for h in P when t = r / max_v |v - lambda|_1.
inline CoveringCertificate covering_cube(const SpectralSet& k, const RVec& lambda, double r) {
  CoveringCertificate cert;
  const int m = k.dim();
  std::vector<RVec> pts;
  for (const auto& v : k.extreme_points()) {
    cert.max_l1 = std::max(cert.max_l1, (v - lambda).lpNorm<1>());
    pts.push_back(v - lambda);
    pts.push_back(lambda - v);
  }
  require(cert.max_l1 > 0, "construct_family: K - lambda is {0}; covering is undefined");
  cert.half_width = r / cert.max_l1;
  const Polyhedron pol = polar(SpectralSet(pts));
  cert.polar_vertices = pol.vertices ? static_cast<int>(pol.vertices->size()) : 0;
  cert.cube_in_polar = true;
  for (int corner = 0; corner < (1 << m); ++corner) {
    RVec q(m);
    for (int i = 0; i < m; ++i) q[i] = ((corner >> i) & 1) ? cert.half_width : -cert.half_width;
    if (!pol.contains(q / r, 1e-9)) cert.cube_in_polar = false;
  }
  return cert;
}

inline void require_interior(const SpectralSet& k) {
  require(k.has_hull(), "construct_family: K must have m <= 3");
  require(k.hull().affine_dim == k.dim(), "construct_family: K must have non-empty interior");
}

inline SamplingFamily assemble_family(const SiegelStructure& s, const SpectralSet& k, const CMat& basis,
                                      const RVec& spacing, const RVec& lambda, double r,
                                      std::optional<double> x_spacing, const Box& window) {
  const int n = s.n(), m = s.m();
  require(window.dim() == 2 * n + m, "construct_family: window must have 2n + m coordinates");
  require(lambda.size() == m && lambda.allFinite(), "construct_family: lambda_center must have m entries");
  SamplingFamily f;
  f.basis = basis;
  f.k_vertices = k.extreme_points();
  f.lambda_center = lambda;
  f.r = r;
  f.zeta_spacing = spacing;
  f.window = window;
  f.covering = covering_cube(k, lambda, r);
  if (!f.covering.cube_in_polar) throw HypothesisError("construct_family: covering certificate failed");
  const double max_step = 2 * f.covering.half_width;
  if (x_spacing) {
    require(*x_spacing > 0, "construct_family: x_spacing must be positive");
    require(*x_spacing <= max_step * (1 + 1e-12),
            "construct_family: x_spacing exceeds the covering step " + std::to_string(max_step));
  }
  f.x_step = x_spacing.value_or(max_step);
  f.covering.step = f.x_step;

  // zeta_j = sum_k a_k j_k e_k with j in Z[i]^n, inside the zeta part of the window.
  std::vector<CVec> zetas;
  if (n == 0) {
    zetas.push_back(CVec(0));
  } else {
    const CMat scaled = basis * spacing.asDiagonal();
    const CMat inv = scaled.inverse();
    double zr = 0.0;
    for (int i = 0; i < 2 * n; ++i) zr += std::pow(std::max(std::abs(window.lo[i]), std::abs(window.hi[i])), 2);
    Eigen::JacobiSVD<CMat> svd(inv);
    const long jmax = static_cast<long>(std::ceil(svd.singularValues()[0] * std::sqrt(zr))) + 1;
    const long side = 2 * jmax + 1;
    long total = 1;
    for (int i = 0; i < 2 * n; ++i) total *= side;
    CVec j(n);
    for (long idx = 0; idx < total; ++idx) {
      long rem = idx;
      for (int i = 0; i < n; ++i) {
        const long re = rem % side - jmax;
        rem /= side;
        const long im = rem % side - jmax;
        rem /= side;
        j[i] = cplx(static_cast<double>(re), static_cast<double>(im));
      }
      const CVec z = scaled * j;
      bool inside = true;
      for (int i = 0; i < n && inside; ++i)
        inside = z[i].real() >= window.lo[2 * i] - 1e-12 && z[i].real() <= window.hi[2 * i] + 1e-12 &&
                 z[i].imag() >= window.lo[2 * i + 1] - 1e-12 && z[i].imag() <= window.hi[2 * i + 1] + 1e-12;
      if (inside) zetas.push_back(z);
    }
  }
  std::vector<long> lo(m), hi(m);
  long count = 1;
  for (int i = 0; i < m; ++i) {
    lo[i] = static_cast<long>(std::ceil(window.lo[2 * n + i] / f.x_step - 1e-9));
    hi[i] = static_cast<long>(std::floor(window.hi[2 * n + i] / f.x_step + 1e-9));
    count *= std::max(0L, hi[i] - lo[i] + 1);
  }
  f.points.reserve(zetas.size() * static_cast<std::size_t>(count));
  for (const auto& z : zetas) {
    const RVec phi = s.quad(z);
    std::vector<long> l(lo);
    for (long c = 0; c < count; ++c) {
      long rem = c;
      CVec w(m);
      for (int i = m - 1; i >= 0; --i) {
        const long span = hi[i] - lo[i] + 1;
        l[i] = lo[i] + rem % span;
        rem /= span;
        w[i] = cplx(static_cast<double>(l[i]) * f.x_step, phi[i]);
      }
      f.points.push_back({z, w});
      f.x_index.push_back(l);
    }
  }
  return f;
}

}  // namespace detail

/// Gaussian-integer family zeta_j = sum_k j_k e_k, j in Z[i]^n, crossed with the
/// x-grid step * Z^m, under H_K(-Phi(zeta)) < (pi/2) sum_k |<e'_k, zeta>|^2.
/// basis holds the e_k as columns; r in (0, pi/2).
inline SamplingFamily construct_family(const SiegelStructure& s, const SpectralSet& k, const CMat& basis,
                                       const RVec& lambda_center, double r, std::optional<double> x_spacing,
                                       const Box& window) {
  const int n = s.n();
  require(k.dim() == s.m(), "construct_family: K dimension mismatch");
  require(r > 0 && r < kPi / 2, "construct_family: r must lie in (0, pi/2)");
  require(basis.rows() == n && basis.cols() == n, "construct_family: basis must be n x n");
  require(n == 0 || std::abs(basis.determinant()) > 1e-12, "construct_family: basis is singular");
  detail::require_interior(k);
  const HypothesisCertificate cert = detail::check_hypothesis(s, k, basis, RVec::Constant(n, kPi / 2), true);
  if (!cert.holds) {
    std::string w;
    for (int i = 0; i < n; ++i)
      w += (i ? ", " : "") + std::to_string(cert.witness[i].real()) + (cert.witness[i].imag() < 0 ? "" : "+") +
           std::to_string(cert.witness[i].imag()) + "i";
    throw HypothesisError("construct_family: H_K(-Phi(zeta)) < (pi/2) sum |<e'_k, zeta>|^2 fails at zeta = (" +
                          w + "), ratio " + std::to_string(cert.max_ratio));
  }
  SamplingFamily f = detail::assemble_family(s, k, basis, RVec::Ones(n), lambda_center, r, x_spacing, window);
  f.construction_tag = "cor:gaussian_integer";
  f.fock_weight = RVec::Constant(n, kPi / 2);
  f.hypothesis = cert;
  return f;
}

/// Quadratic-weight variant: phi_k(w) = c_k |w|^2 (Laplacian taken as
/// d dbar, so Delta phi_k = c_k), hypothesis H_K(-Phi(zeta)) <= sum_k c_k
/// |<e'_k, zeta>|^2, and per-axis lattices a_k Z[i] whose density 1/(a_k^2 c_k)
/// against Delta phi_k exceeds 2/pi.
inline SamplingFamily construct_family_fock(const SiegelStructure& s, const SpectralSet& k, const CMat& basis,
                                            const RVec& c, const RVec& spacing, const RVec& lambda_center,
                                            double r, std::optional<double> x_spacing, const Box& window) {
  const int n = s.n();
  require(k.dim() == s.m(), "construct_family_fock: K dimension mismatch");
  require(r > 0 && r < kPi / 2, "construct_family_fock: r must lie in (0, pi/2)");
  require(basis.rows() == n && basis.cols() == n, "construct_family_fock: basis must be n x n");
  require(n == 0 || std::abs(basis.determinant()) > 1e-12, "construct_family_fock: basis is singular");
  require(c.size() == n && spacing.size() == n, "construct_family_fock: need n weights and n spacings");
  for (int i = 0; i < n; ++i) {
    require(c[i] > 0 && spacing[i] > 0, "construct_family_fock: weights and spacings must be positive");
    if (!(spacing[i] * spacing[i] * c[i] < kPi / 2))
      throw HypothesisError("construct_family_fock: axis " + std::to_string(i) +
                            " lattice density 1/(a^2 c) does not exceed 2/pi");
  }
  detail::require_interior(k);
  const HypothesisCertificate cert = detail::check_hypothesis(s, k, basis, c, false);
  if (!cert.holds)
    throw HypothesisError("construct_family_fock: H_K(-Phi(zeta)) <= sum c_k |<e'_k, zeta>|^2 fails, ratio " +
                          std::to_string(cert.max_ratio));
  SamplingFamily f = detail::assemble_family(s, k, basis, spacing, lambda_center, r, x_spacing, window);
  f.construction_tag = "cor:fock_quadratic";
  f.fock_weight = c;
  f.hypothesis = cert;
  f.restriction = "quadratic weights phi_k = c_k |w|^2 only";
  return f;
}

/// Keeps the points whose x-indices are all divisible by factor; the results
/// for factors 1, 2, 4, ... are nested.
inline SamplingFamily thin_family(const SamplingFamily& f, long factor) {
  require(factor >= 1, "thin_family: factor must be >= 1");
  SamplingFamily g = f;
  g.points.clear();
  g.x_index.clear();
  for (std::size_t i = 0; i < f.points.size(); ++i) {
    bool keep = true;
    for (long l : f.x_index[i]) keep = keep && (l % factor == 0);
    if (keep) {
      g.points.push_back(f.points[i]);
      g.x_index.push_back(f.x_index[i]);
    }
  }
  g.x_step = f.x_step * static_cast<double>(factor);
  return g;
}

/// Left translation of every point by the ambient point g.
inline SamplingFamily translate_family(const SiegelStructure& s, const SamplingFamily& f, const AmbientPoint& g) {
  SamplingFamily out = f;
  for (auto& p : out.points) p = ambient_multiply(s, g, p);
  return out;
}

inline PointMeasure family_measure(const SamplingFamily& f) {
  PointMeasure mu;
  mu.atoms = f.points;
  mu.weights.assign(f.points.size(), 1.0);
  mu.rho_bound = 0.0;
  return mu;
}

// ------------------------------------------------------------ necessary check

struct NecessaryReport {
  double sup_m1 = 0.0;
  std::vector<double> radii;
  std::vector<double> inf_mr;  // inf over the h = 0 probes of M_R(mu)
  double best_r = 0.0;
  double best_c = 0.0;
  std::string verdict;  // passes_necessary | fails
  std::string theorem = "prop:necessary:M1_bounded_and_inf_MR_positive";
  Box window;
  double probe_step = 0.0;
  std::size_t probe_count = 0;
};

/// sup M_1(mu) and, for each R, the inf of M_R(mu) over the slice points
/// (zeta, x + i Phi(zeta)) with (zeta, x) on a grid of the group window.
inline NecessaryReport necessary_sampling_check(const SiegelStructure& s, const PointMeasure& mu,
                                                const std::vector<double>& r_schedule, const Box& window,
                                                double step) {
  mu.validate(s);
  require(mu.rho_bound.has_value(), "necessary_sampling_check: measure needs rho_bound");
  require(!r_schedule.empty(), "necessary_sampling_check: empty R schedule");
  for (double r : r_schedule) require(r > 0, "necessary_sampling_check: radii must be positive");
  require(window.dim() == 2 * s.n() + s.m(), "necessary_sampling_check: window must have 2n + m coordinates");
  NecessaryReport rep;
  rep.window = window;
  rep.probe_step = step;
  std::vector<AmbientPoint> probes;
  for_each_grid_point(window, step, [&](const RVec& c) { probes.push_back(lift(s, group_from_coords(s, c))); });
  rep.probe_count = probes.size();
  const BallCounter bc(s, mu);
  std::vector<double> m1(probes.size());
  parallel_for(probes.size(), [&](std::size_t i) { m1[i] = bc.ball(probes[i], 1.0); });
  for (double v : m1) rep.sup_m1 = std::max(rep.sup_m1, v);
  for (const auto& a : bc.atoms()) rep.sup_m1 = std::max(rep.sup_m1, bc.ball(a, 1.0));
  for (double r : r_schedule) {
    std::vector<double> vals(probes.size());
    parallel_for(probes.size(), [&](std::size_t i) { vals[i] = bc.ball(probes[i], r); });
    const double inf = vals.empty() ? 0.0 : *std::min_element(vals.begin(), vals.end());
    rep.radii.push_back(r);
    rep.inf_mr.push_back(inf);
    if (inf > rep.best_c) {
      rep.best_c = inf;
      rep.best_r = r;
    }
  }
  rep.verdict = (std::isfinite(rep.sup_m1) && rep.best_c > 0) ? "passes_necessary" : "fails";
  return rep;
}

// ---------------------------------------------------------- Beurling density

/// Lebesgue volume of the unit d_N-ball in the coordinates (Re zeta, Im zeta, x),
/// in closed form for each gauge.
inline double unit_ball_volume(const SiegelStructure& s) {
  const int n = s.n(), m = s.m();
  auto ball = [](int d) { return std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d + 1); };
  switch (s.gauge_kind()) {
    case GaugeKind::Abelian: return ball(m);
    case GaugeKind::Koranyi: {
      // ∫_{|zeta| <= 1} V_m (1 - |zeta|^4)^{m/2} = V_m |S^{2n-1}| (1/4) B(n/2, m/2 + 1).
      const double sphere = 2 * std::pow(kPi, n) / std::tgamma(n);
      const double beta = std::tgamma(0.5 * n) * std::tgamma(0.5 * m + 1) / std::tgamma(0.5 * n + 0.5 * m + 1);
      return ball(m) * sphere * 0.25 * beta;
    }
    case GaugeKind::ScaledMax: return ball(2 * n) * ball(m) / std::pow(s.gauge_scale(), 2 * m);
  }
  return kInf;
}

struct DensityReport {
  std::vector<double> radii;
  std::vector<double> density;  // inf over centers of count / (c R^Q)
  std::vector<double> mean_density;
  std::vector<std::size_t> worst_center;
  double ball_constant = 0.0;  // c
  double homogeneous_dimension = 0.0;
  std::size_t centers = 0;
  double bound = 0.0;           // Pfaffian lower bound
  double slope = 0.0;           // log-log trend of density in R
  bool satisfies_bound = false; // density at the largest R >= (1 - slack) bound
  double slack = 0.0;
  std::string theorem = "prop:beurling:density>=pfaffian_integral";
};

/// Ball counts of the projected points (zeta, Re z) about each center.
inline DensityReport beurling_density(const SiegelStructure& s, const std::vector<AmbientPoint>& points,
                                      const std::vector<double>& r_schedule, const std::vector<GroupElement>& centers,
                                      double bound = 0.0, double slack = 0.0) {
  require(!centers.empty(), "beurling_density: too few centers");
  require(!r_schedule.empty(), "beurling_density: empty R schedule");
  for (std::size_t i = 0; i < r_schedule.size(); ++i)
    require(r_schedule[i] > 0 && (i == 0 || r_schedule[i] > r_schedule[i - 1]),
            "beurling_density: R schedule must be positive and increasing");
  DensityReport rep;
  rep.ball_constant = unit_ball_volume(s);
  rep.homogeneous_dimension = s.homogeneous_dimension();
  rep.centers = centers.size();
  rep.bound = bound;
  rep.slack = slack;

  // Key coordinate Re zeta_1 (or x_1 when n = 0) is 1-Lipschitz for d_N.
  const int n = s.n();
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  auto key = [&](const CVec& z, const RVec& x) { return n > 0 ? z[0].real() : x[0]; };
  std::vector<CVec> pz(points.size());
  std::vector<RVec> px(points.size());
  std::vector<double> keys(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    pz[i] = points[i].zeta;
    px[i] = points[i].z.real();
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return key(pz[a], px[a]) < key(pz[b], px[b]);
  });
  {
    std::vector<CVec> tz(points.size());
    std::vector<RVec> tx(points.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      tz[i] = pz[order[i]];
      tx[i] = px[order[i]];
      keys[i] = key(tz[i], tx[i]);
    }
    pz.swap(tz);
    px.swap(tx);
  }

  const double rmax = r_schedule.back();
  std::vector<std::vector<double>> counts(centers.size(), std::vector<double>(r_schedule.size(), 0.0));
  parallel_for(centers.size(), [&](std::size_t c) {
    const auto& g = centers[c];
    s.check(g);
    const double k0 = key(g.zeta, g.x);
    auto lo = std::lower_bound(keys.begin(), keys.end(), k0 - rmax - 1e-12);
    auto hi = std::upper_bound(keys.begin(), keys.end(), k0 + rmax + 1e-12);
    for (auto it = lo; it != hi; ++it) {
      const auto i = static_cast<std::size_t>(it - keys.begin());
      if (n > 0 && std::abs(pz[i][0].imag() - g.zeta[0].imag()) > rmax) continue;
      const double d = dist_group(s, g.zeta, g.x, pz[i], px[i]);
      for (std::size_t r = 0; r < r_schedule.size(); ++r)
        if (d <= r_schedule[r]) counts[c][r] += 1.0;
    }
  }, 1);
  for (std::size_t r = 0; r < r_schedule.size(); ++r) {
    const double vol = rep.ball_constant * std::pow(r_schedule[r], rep.homogeneous_dimension);
    double worst = kInf, sum = 0.0;
    std::size_t arg = 0;
    for (std::size_t c = 0; c < centers.size(); ++c) {
      const double d = counts[c][r] / vol;
      sum += d;
      if (d < worst) worst = d, arg = c;
    }
    rep.radii.push_back(r_schedule[r]);
    rep.density.push_back(worst);
    rep.mean_density.push_back(sum / static_cast<double>(centers.size()));
    rep.worst_center.push_back(arg);
  }
  rep.slope = loglog_slope(rep.radii, rep.density);
  rep.satisfies_bound = rep.density.back() >= (1.0 - slack) * bound;
  return rep;
}

/// Uniformly random group elements in a group box, fixed seed.
inline std::vector<GroupElement> random_centers(const SiegelStructure& s, const Box& box, std::size_t count,
                                                std::uint64_t seed) {
  require(box.dim() == 2 * s.n() + s.m(), "random_centers: box must have 2n + m coordinates");
  std::mt19937_64 rng(seed);
  std::vector<GroupElement> out;
  RVec c(box.dim());
  for (std::size_t i = 0; i < count; ++i) {
    for (Eigen::Index j = 0; j < box.dim(); ++j)
      c[j] = std::uniform_real_distribution<double>(box.lo[j], box.hi[j])(rng);
    out.push_back(group_from_coords(s, c));
  }
  return out;
}

// --------------------------------------------------- separated decomposition

/// Greedy colouring of the conflict graph (pairs at Euclidean distance < gap),
/// in input order; every class is gap-separated.
inline std::vector<std::vector<std::size_t>> separated_decomposition(const std::vector<RVec>& points, double gap) {
  require(gap > 0, "separated_decomposition: gap must be positive");
  constexpr std::size_t kMaxMultiplicity = 64;
  const std::size_t np = points.size();
  for (const auto& p : points) require(p.size() >= 1 && p.allFinite(), "separated_decomposition: bad point");
  std::vector<std::size_t> order(np);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return points[a][0] < points[b][0]; });
  std::vector<std::size_t> rank(np);
  for (std::size_t i = 0; i < np; ++i) rank[order[i]] = i;

  std::vector<int> colour(np, -1);
  int ncolours = 0;
  for (std::size_t i = 0; i < np; ++i) {
    std::vector<std::size_t> nbrs;
    const std::size_t ri = rank[i];
    for (std::size_t j = ri; j-- > 0 && points[i][0] - points[order[j]][0] < gap;)
      if ((points[order[j]] - points[i]).norm() < gap) nbrs.push_back(order[j]);
    for (std::size_t j = ri + 1; j < np && points[order[j]][0] - points[i][0] < gap; ++j)
      if ((points[order[j]] - points[i]).norm() < gap) nbrs.push_back(order[j]);
    if (nbrs.size() > kMaxMultiplicity)
      throw InputError("separated_decomposition: more than 64 points within gap of point " + std::to_string(i));
    std::vector<bool> used(static_cast<std::size_t>(ncolours) + 1, false);
    for (auto j : nbrs)
      if (colour[j] >= 0) used[static_cast<std::size_t>(colour[j])] = true;
    int c = 0;
    while (used[static_cast<std::size_t>(c)]) ++c;
    colour[i] = c;
    ncolours = std::max(ncolours, c + 1);
  }
  std::vector<std::vector<std::size_t>> classes(static_cast<std::size_t>(ncolours));
  for (std::size_t i = 0; i < np; ++i) classes[static_cast<std::size_t>(colour[i])].push_back(i);
  return classes;
}

// ------------------------------------------------------------- p <-> inf

struct TransferReport {
  double min_ratio_k = kInf, max_ratio_k = 0.0;
  double min_ratio_k_eps = kInf, max_ratio_k_eps = 0.0;
  std::vector<double> ratios_k, ratios_k_eps;
  double min_weight = 0.0;
  double eps = 0.0;
  RVec k_interval, k_eps_interval;  // [lo, hi]
  std::size_t ensemble = 0;
  std::string theorem = "prop:transfer:p_sampling<->inf_sampling";
};

/// n = 0, m = 1. For each ensemble member (coefficients only; the bandwidth and
/// spectral centre are taken from K, then from K_eps) the ratio of the sup of
/// |f| over the atoms to the sup over a dense grid of the real line.
inline TransferReport transfer_pinfty_check(const SiegelStructure& s, const PointMeasure& mu, const SpectralSet& k,
                                            double eps, const std::vector<SynthFunction1D>& ensemble) {
  require(s.n() == 0 && s.m() == 1, "transfer_pinfty_check: only n = 0, m = 1 is supported");
  require(!ensemble.empty(), "transfer_pinfty_check: ensemble is empty");
  require(eps > 0, "transfer_pinfty_check: eps must be positive");
  mu.validate(s);
  TransferReport rep;
  rep.eps = eps;
  rep.ensemble = ensemble.size();
  rep.min_weight = mu.weights.empty() ? 0.0 : *std::min_element(mu.weights.begin(), mu.weights.end());
  const SpectralSet ke = fatten(s, k, eps);
  auto bounds = [](const SpectralSet& set) {
    double lo = kInf, hi = -kInf;
    for (const auto& v : set.vertices()) lo = std::min(lo, v[0]), hi = std::max(hi, v[0]);
    return (RVec(2) << lo, hi).finished();
  };
  rep.k_interval = bounds(k);
  rep.k_eps_interval = bounds(ke);
  std::vector<cplx> atoms;
  for (const auto& a : mu.atoms) atoms.push_back(a.z[0]);

  auto run = [&](const RVec& iv, std::vector<double>& out, double& lo, double& hi) {
    const double kappa = 0.5 * (iv[1] - iv[0]);
    require(kappa > 0, "transfer_pinfty_check: K must be a non-degenerate interval");
    for (auto f : ensemble) {
      f.kappa = kappa;
      f.center = 0.5 * (iv[0] + iv[1]);
      const double reach = (f.N + 40.0) * kPi / kappa;
      double grid_sup = 0.0;
      for (double x = f.shift - reach; x <= f.shift + reach; x += kPi / (32 * kappa))
        grid_sup = std::max(grid_sup, std::abs(eval_1d(f, x)));
      const double atom_sup = sample_sum(f, atoms, kInf);
      const double ratio = grid_sup > 0 ? atom_sup / grid_sup : 0.0;
      out.push_back(ratio);
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
  };
  run(rep.k_interval, rep.ratios_k, rep.min_ratio_k, rep.max_ratio_k);
  run(rep.k_eps_interval, rep.ratios_k_eps, rep.min_ratio_k_eps, rep.max_ratio_k_eps);
  return rep;
}

}  // namespace siegel
