#pragma once

// Point measures on E x F_C, the maximal functions M_R and M_{K,R}, mixed
// norms on product grids and the Carleson checkers.

#include "siegel/convex_geom.hpp"
#include "siegel/lattice.hpp"
#include "siegel/parallel.hpp"
#include "siegel/siegel_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace siegel {

struct PointMeasure {
  std::vector<AmbientPoint> atoms;
  std::vector<double> weights;
  std::optional<double> rho_bound;  // rho(supp) inside the closed ball of this radius
  // "atoms" for genuine point masses, "slice_quadrature" when the atoms are
  // quadrature nodes standing in for a slice density.
  std::string discretization = "atoms";

  std::size_t size() const { return atoms.size(); }
  double total_mass() const { return std::accumulate(weights.begin(), weights.end(), 0.0); }

  void validate(const SiegelStructure& s) const {
    require(atoms.size() == weights.size(), "measure: atoms and weights differ in length");
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      s.check(atoms[i]);
      require(all_finite(atoms[i].zeta) && all_finite(atoms[i].z), "measure: atoms must be finite");
      require(weights[i] > 0 && std::isfinite(weights[i]), "measure: weights must be positive");
    }
    if (rho_bound) {
      require(*rho_bound >= 0, "measure: rho_bound must be non-negative");
      for (const auto& a : atoms)
        require(rho(s, a).norm() <= *rho_bound + 1e-12, "measure: an atom violates rho_bound");
    }
  }

  void add(const AmbientPoint& p, double w) {
    atoms.push_back(p);
    weights.push_back(w);
  }
};

/// Left translation of every atom by g.
inline PointMeasure translate(const SiegelStructure& s, const PointMeasure& mu, const AmbientPoint& g) {
  PointMeasure out = mu;
  for (auto& a : out.atoms) a = ambient_multiply(s, g, a);
  if (out.rho_bound) out.rho_bound = *out.rho_bound + rho(s, g).norm();
  return out;
}

/// s' = max(1, s)' : infinity for s <= 1, s / (s - 1) otherwise.
inline double conjugate_exponent(double s) {
  if (s <= 1.0) return kInf;
  if (std::isinf(s)) return 1.0;
  return s / (s - 1.0);
}

struct MixedNormSpec {
  double p = 2.0;
  double q = 2.0;

  MixedNormSpec() = default;
  MixedNormSpec(double p_, double q_) : p(p_), q(q_) {
    require(p > 0 && q > 0, "mixed norm: exponents must lie in (0, inf]");
  }
  double p_prime() const { return conjugate_exponent(p); }
  /// (p/q)'
  double ratio_prime() const { return conjugate_exponent(std::isinf(q) ? 0.0 : p / q); }
};

/// Weighted ball sums with a one-coordinate band prune. The key coordinate
/// is 1-Lipschitz for d (a zeta coordinate, an x coordinate when n = 0, or a
/// rho coordinate), chosen with the widest spread over the atoms.
class BallCounter {
 public:
  BallCounter(const SiegelStructure& s, const PointMeasure& mu, const SpectralSet* k = nullptr)
      : s_(&s) {
    const std::size_t na = mu.size();
    rho_.resize(na);
    std::vector<RVec> coords(na);
    for (std::size_t i = 0; i < na; ++i) {
      coords[i] = ambient_coords(s, mu.atoms[i]);
      rho_[i] = coords[i].tail(s.m());
    }
    std::vector<int> lip;
    for (int i = 0; i < 2 * s.n(); ++i) lip.push_back(i);
    if (s.n() == 0)
      for (int kx = 0; kx < s.m(); ++kx) lip.push_back(kx);
    for (int kh = 0; kh < s.m(); ++kh) lip.push_back(2 * s.n() + s.m() + kh);
    key_ = lip[0];
    double best = -1;
    for (int c : lip) {
      double lo = kInf, hi = -kInf;
      for (const auto& v : coords) lo = std::min(lo, v[c]), hi = std::max(hi, v[c]);
      if (na && hi - lo > best) best = hi - lo, key_ = c;
    }
    std::vector<std::size_t> order(na);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return coords[a][key_] < coords[b][key_]; });
    for (auto i : order) {
      atoms_.push_back(mu.atoms[i]);
      keys_.push_back(coords[i][key_]);
      double w = mu.weights[i];
      if (k) w *= std::exp(support_function(*k, rho_[i]));
      weights_.push_back(w);
      rho_sorted_.push_back(rho_[i]);
    }
  }

  /// Sum of weights of atoms in the closed ball B(at, r).
  double ball(const AmbientPoint& at, double r) const {
    const double key = ambient_key(at);
    const RVec h = rho(*s_, at);
    auto lo = std::lower_bound(keys_.begin(), keys_.end(), key - r - 1e-12);
    auto hi = std::upper_bound(keys_.begin(), keys_.end(), key + r + 1e-12);
    double acc = 0.0;
    for (auto it = lo; it != hi; ++it) {
      const auto i = static_cast<std::size_t>(it - keys_.begin());
      if ((rho_sorted_[i] - h).cwiseAbs().maxCoeff() > r) continue;
      if (dist_ambient(*s_, at, atoms_[i]) <= r) acc += weights_[i];
    }
    return acc;
  }

  const std::vector<AmbientPoint>& atoms() const { return atoms_; }

 private:
  double ambient_key(const AmbientPoint& p) const {
    const int n2 = 2 * s_->n();
    if (key_ < n2) return key_ % 2 == 0 ? p.zeta[key_ / 2].real() : p.zeta[key_ / 2].imag();
    if (key_ < n2 + s_->m()) return p.z[key_ - n2].real();
    return rho(*s_, p)[key_ - n2 - s_->m()];
  }

  const SiegelStructure* s_;
  int key_ = 0;
  std::vector<AmbientPoint> atoms_;
  std::vector<double> keys_;
  std::vector<double> weights_;
  std::vector<RVec> rho_;
  std::vector<RVec> rho_sorted_;
};

/// M_R(mu)(at), or M_{K,R}(mu)(at) = M_R(e^{H_K o rho} mu)(at) when K is given.
inline double maximal_function(const SiegelStructure& s, const PointMeasure& mu, const SpectralSet* k,
                               double r, const AmbientPoint& at) {
  require(r > 0, "maximal function: R must be positive");
  double acc = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i)
    if (dist_ambient(s, at, mu.atoms[i]) <= r)
      acc += mu.weights[i] * (k ? std::exp(support_function(*k, rho(s, mu.atoms[i]))) : 1.0);
  return acc;
}

// ---------------------------------------------------------------- grids

/// Cell-centred product grid: group cells (2n + m coordinates) times h
/// cells (m coordinates). Degenerate axes contribute one node of unit width.
struct ProductGrid {
  std::vector<RVec> group_nodes;
  double group_cell = 1.0;
  std::vector<RVec> h_nodes;
  double h_cell = 1.0;
  Box window;

  std::size_t size() const { return group_nodes.size() * h_nodes.size(); }
};

namespace detail {

inline void cell_centres(const Box& b, double step, std::vector<RVec>& nodes, double& cell) {
  const Eigen::Index d = b.dim();
  std::vector<long> counts(static_cast<std::size_t>(d));
  RVec widths(d);
  cell = 1.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    const double len = b.hi[i] - b.lo[i];
    counts[i] = len > 0 ? std::max(1L, static_cast<long>(std::ceil(len / step - 1e-9))) : 1;
    widths[i] = len > 0 ? len / static_cast<double>(counts[i]) : 0.0;
    cell *= len > 0 ? widths[i] : 1.0;
  }
  nodes.clear();
  if (d == 0) {
    nodes.emplace_back(0);
    return;
  }
  std::vector<long> idx(static_cast<std::size_t>(d), 0);
  while (true) {
    RVec p(d);
    for (Eigen::Index i = 0; i < d; ++i) p[i] = b.lo[i] + (static_cast<double>(idx[i]) + 0.5) * widths[i];
    nodes.push_back(p);
    Eigen::Index k = d - 1;
    while (k >= 0 && ++idx[k] == counts[k]) idx[k--] = 0;
    if (k < 0) break;
  }
}

}  // namespace detail

/// window has 2n + 2m coordinates (group part, then h).
inline ProductGrid make_grid(const SiegelStructure& s, const Box& window, double step) {
  const int gd = 2 * s.n() + s.m();
  require(window.dim() == gd + s.m(), "grid: window must have 2n + 2m coordinates");
  require(step > 0, "grid: step must be positive");
  ProductGrid g;
  g.window = window;
  detail::cell_centres(Box(window.lo.head(gd), window.hi.head(gd)), step, g.group_nodes, g.group_cell);
  detail::cell_centres(Box(window.lo.tail(s.m()), window.hi.tail(s.m())), step, g.h_nodes, g.h_cell);
  return g;
}

/// Values f(group node i, h node j).
struct GridFunction {
  ProductGrid grid;
  RMat values;
};

template <class Fn>
GridFunction sample_grid(const SiegelStructure& s, const ProductGrid& grid, Fn&& fn) {
  GridFunction f{grid, RMat(grid.group_nodes.size(), grid.h_nodes.size())};
  const std::size_t ng = grid.group_nodes.size();
  parallel_for(grid.size(), [&](std::size_t idx) {
    const std::size_t i = idx % ng, j = idx / ng;
    const GroupElement g = group_from_coords(s, grid.group_nodes[i]);
    f.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = fn(lift(s, g, grid.h_nodes[j]));
  });
  return f;
}

namespace detail {

inline double lp_sum(const double* v, std::size_t n, std::ptrdiff_t stride, double p, double cell) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(v[i * stride]));
    return m;
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::pow(std::abs(v[i * stride]), p);
  return std::pow(acc * cell, 1.0 / p);
}

}  // namespace detail

/// || h -> || f_h ||_{L^p(N)} ||_{L^q(F)} by cell sums (exact for step
/// functions on the grid cells).
inline double mixed_norm(const GridFunction& f, double p, double q) {
  require(p > 0 && q > 0, "mixed norm: exponents must lie in (0, inf]");
  const auto ng = static_cast<std::size_t>(f.values.rows());
  const auto nh = static_cast<std::size_t>(f.values.cols());
  std::vector<double> inner(nh);
  for (std::size_t j = 0; j < nh; ++j)
    inner[j] = detail::lp_sum(f.values.data() + j * ng, ng, 1, p, f.grid.group_cell);
  return detail::lp_sum(inner.data(), nh, 1, q, f.grid.h_cell);
}

inline double mixed_norm(const GridFunction& f, const MixedNormSpec& spec) {
  return mixed_norm(f, spec.p, spec.q);
}

/// Grid of M_{K,R}(mu) (K may be null).
inline GridFunction maximal_grid(const SiegelStructure& s, const PointMeasure& mu, const SpectralSet* k,
                                 double r, const ProductGrid& grid) {
  const BallCounter bc(s, mu, k);
  return sample_grid(s, grid, [&](const AmbientPoint& p) { return bc.ball(p, r); });
}

// ---------------------------------------------------------------- reports

struct NormEquivalenceReport {
  double continuum = 0.0;  // || M_{K,R'}(mu) ||_{L^{p,q}} on the grid
  double lattice = 0.0;    // || M_{K,R delta}(mu)(lattice) ||_{l^{p,q}}
  double ratio = 0.0;      // lattice / continuum (0 when both vanish)
  double r_prime = 0.0;
};

inline NormEquivalenceReport lattice_norm_equivalence(const SiegelStructure& s, const PointMeasure& mu,
                                                      const SpectralSet* k, const MixedNormSpec& spec,
                                                      const LatticeFamily& lat, const ProductGrid& grid,
                                                      std::optional<double> r_prime = std::nullopt) {
  require(lat.restricted, "norm equivalence: lattice must be restricted");
  require(grid.size() > 0, "norm equivalence: degenerate grid");
  NormEquivalenceReport r;
  r.r_prime = r_prime.value_or(lat.bigR * lat.delta);
  r.continuum = mixed_norm(maximal_grid(s, mu, k, r.r_prime, grid), spec);
  const BallCounter bc(s, mu, k);
  std::vector<double> per_level;
  for (const auto& h : lat.slice_levels) {
    std::vector<double> vals;
    for (const auto& p : lat.points)
      if ((rho(s, p) - h).norm() <= 1e-9) vals.push_back(bc.ball(p, lat.bigR * lat.delta));
    per_level.push_back(detail::lp_sum(vals.data(), vals.size(), 1, spec.p, 1.0));
  }
  r.lattice = detail::lp_sum(per_level.data(), per_level.size(), 1, spec.q, 1.0);
  r.ratio = r.continuum > 0 ? r.lattice / r.continuum : (r.lattice > 0 ? kInf : 0.0);
  return r;
}

/// Probe window (2n + 2m coordinates) and grid step.
struct ProbeSpec {
  Box window;
  double step = 0.5;
  int dyadic_levels = 3;  // windows scaled by 2^{-i}, i < dyadic_levels, for growth trends
};

/// Least-squares slope of log(values) against log(scales); zero when values
/// vanish.
inline double loglog_slope(const std::vector<double>& scales, const std::vector<double>& values) {
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < scales.size(); ++i)
    if (values[i] > 0 && std::isfinite(values[i])) {
      xs.push_back(std::log(scales[i]));
      ys.push_back(std::log(values[i]));
    }
  if (xs.size() < 2) return 0.0;
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxx > 0 ? sxy / sxx : 0.0;
}

inline constexpr double kStableSlope = 0.1;   // below: the statistic has settled
inline constexpr double kGrowingSlope = 0.5;  // above: extrapolates to infinity

struct Trend {
  std::vector<double> scales;  // window scale factors (1 = full window)
  std::vector<double> values;
  double slope = 0.0;
  bool stable() const { return slope < kStableSlope; }
  bool growing() const { return slope >= kGrowingSlope; }
};

struct CarlesonReport {
  double sup_m1 = 0.0;
  double characterization_norm = kInf;  // || M_1 ||_{L^{(p/q)'}}
  double sufficiency_norm = kInf;       // || M_{qK,1} ||_{L^{(p/q)',1}} (inner over N, outer L^1 over h)
  double necessity_bound = 0.0;         // sup e^{-q H_K(-rho)} M_R(mu)
  bool vanishing_at_infinity = false;
  Trend characterization_trend, sufficiency_trend, necessity_trend;
  std::string verdict;  // carleson | not_carleson | inconclusive
  std::string theorem;
  Box window;
  double exponent = 0.0;  // (p/q)'
};

/// Carleson criteria on a probe window with dyadic growth trends.
inline CarlesonReport carleson_check(const SiegelStructure& s, const PointMeasure& mu, const SpectralSet& k,
                                     const MixedNormSpec& spec, const ProbeSpec& probe,
                                     double necessity_radius = 1.0) {
  mu.validate(s);
  require(k.dim() == s.m(), "carleson_check: K dimension mismatch");
  require(!std::isinf(spec.q), "carleson_check: q must be finite");
  require(probe.dyadic_levels >= 1, "carleson_check: need at least one window");
  CarlesonReport r;
  r.window = probe.window;
  r.exponent = spec.ratio_prime();
  const SpectralSet qk = k.scaled(spec.q);
  const BallCounter m1(s, mu), mq(s, mu, &qk), mr(s, mu);

  for (int lvl = probe.dyadic_levels - 1; lvl >= 0; --lvl) {
    const double scale = std::ldexp(1.0, -lvl);
    const ProductGrid grid = make_grid(s, probe.window.scaled(scale), probe.step);
    const auto g1 = sample_grid(s, grid, [&](const AmbientPoint& p) { return m1.ball(p, 1.0); });
    const auto gq = sample_grid(s, grid, [&](const AmbientPoint& p) { return mq.ball(p, 1.0); });
    const auto gn = sample_grid(s, grid, [&](const AmbientPoint& p) {
      return std::exp(-spec.q * support_function(k, -rho(s, p))) * mr.ball(p, necessity_radius);
    });
    const double cn = mixed_norm(g1, r.exponent, r.exponent);
    const double sn = mixed_norm(gq, r.exponent, 1.0);
    const double nb = g1.values.size() ? gn.values.maxCoeff() : 0.0;
    r.characterization_trend.scales.push_back(scale);
    r.characterization_trend.values.push_back(cn);
    r.sufficiency_trend.scales.push_back(scale);
    r.sufficiency_trend.values.push_back(sn);
    r.necessity_trend.scales.push_back(scale);
    r.necessity_trend.values.push_back(nb);
    if (lvl == 0) {
      r.characterization_norm = cn;
      r.sufficiency_norm = sn;
      r.necessity_bound = nb;
      r.sup_m1 = g1.values.size() ? g1.values.maxCoeff() : 0.0;
      // Vanishing flag: the necessity function on the outer half-shell of the
      // window is negligible against its global sup.
      double shell = 0.0;
      const Box inner = probe.window.scaled(0.5);
      for (std::size_t j = 0; j < grid.h_nodes.size(); ++j)
        for (std::size_t i = 0; i < grid.group_nodes.size(); ++i) {
          RVec c(grid.window.dim());
          c << grid.group_nodes[i], grid.h_nodes[j];
          if (!inner.contains(c))
            shell = std::max(shell, gn.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
        }
      r.vanishing_at_infinity = shell <= 1e-9 * std::max(1.0, nb);
    }
  }
  // Atoms are where M_1 peaks for point masses.
  for (const auto& a : m1.atoms()) r.sup_m1 = std::max(r.sup_m1, m1.ball(a, 1.0));
  for (Trend* t : {&r.characterization_trend, &r.sufficiency_trend, &r.necessity_trend})
    t->slope = loglog_slope(t->scales, t->values);

  if (mu.rho_bound) {
    r.theorem = spec.p <= spec.q ? "cor:p_le_q:M1_in_Linf" : "thm:rho_bounded:M1_in_L(p/q)'";
    if (std::isfinite(r.characterization_norm) && r.characterization_trend.stable())
      r.verdict = "carleson";
    else if (r.characterization_trend.growing())
      r.verdict = "not_carleson";
    else
      r.verdict = "inconclusive";
    return r;
  }
  if (std::isfinite(r.sufficiency_norm) && r.sufficiency_trend.stable()) {
    r.verdict = "carleson";
    r.theorem = "prop:sufficiency:MqK1_in_L((p/q)',1)";
  } else if (r.necessity_trend.growing()) {
    r.verdict = "not_carleson";
    r.theorem = "prop:necessity:exp(-qH_K(-rho))M_R_bounded";
  } else {
    r.verdict = "inconclusive";
    r.theorem = "none:no_simple_criterion_without_rho_bound";
  }
  return r;
}

struct Carleson1DReport {
  std::vector<double> radii;
  std::vector<double> ratios;  // sup_x M_{qK,R}(mu)(x) / R^{q/p}
  double slope = 0.0;
  double sup_ratio = 0.0;
  std::string verdict;
  std::string theorem = "prop:1d:MqKR<=CR^(q/p)";
  double x_half_width = 0.0;
};

/// n = 0, m = 1, p <= q: sup over real x in [-W, W] of M_{qK,R}(mu)(x) / R^{q/p}
/// for R = 1, 2, 4, ..., r_max.
inline Carleson1DReport carleson_check_1d(const SiegelStructure& s, const PointMeasure& mu,
                                          const SpectralSet& k, const MixedNormSpec& spec, double r_max,
                                          double x_half_width, double x_step = 0.25) {
  require(s.n() == 0 && s.m() == 1, "carleson_check_1d: needs n = 0, m = 1");
  require(spec.p <= spec.q && !std::isinf(spec.q), "carleson_check_1d: needs p <= q < inf");
  require(r_max >= 1, "carleson_check_1d: Rmax must be >= 1");
  mu.validate(s);
  Carleson1DReport r;
  r.x_half_width = x_half_width;
  const SpectralSet qk = k.scaled(spec.q);
  const BallCounter bc(s, mu, &qk);
  for (double rr = 1.0; rr <= r_max * (1 + 1e-12); rr *= 2) {
    double best = 0.0;
    for (double x = -x_half_width; x <= x_half_width + 1e-12; x += x_step)
      best = std::max(best, bc.ball({CVec(0), CVec::Constant(1, x)}, rr));
    for (const auto& a : bc.atoms()) {
      const AmbientPoint foot{CVec(0), CVec::Constant(1, a.z[0].real())};
      if (std::abs(a.z[0].real()) <= x_half_width) best = std::max(best, bc.ball(foot, rr));
    }
    r.radii.push_back(rr);
    r.ratios.push_back(best / std::pow(rr, spec.q / spec.p));
  }
  r.slope = loglog_slope(r.radii, r.ratios);
  r.sup_ratio = *std::max_element(r.ratios.begin(), r.ratios.end());
  r.verdict = r.slope < kStableSlope ? "carleson" : (r.slope >= kGrowingSlope ? "not_carleson" : "inconclusive");
  return r;
}

struct SparseReport {
  std::vector<double> eps;
  std::vector<double> r_prime;   // smallest radius outside which M_R <= eps on the probes
  std::vector<bool> verified;    // r_prime strictly inside the probe window
  double inner_radius = 0.0;     // radius of the largest probed ball about (0, 0)
  bool sparse = false;
  Box window;
};

/// M_R(mu) <= eps outside B((0,0), R'_eps), checked on the probe grid.
inline SparseReport sparse_check(const SiegelStructure& s, const PointMeasure& mu, double r,
                                 const std::vector<double>& eps_schedule, const ProbeSpec& probe) {
  require(r > 0, "sparse_check: R must be positive");
  require(!eps_schedule.empty(), "sparse_check: empty eps schedule");
  SparseReport rep;
  rep.window = probe.window;
  const BallCounter bc(s, mu);
  const ProductGrid grid = make_grid(s, probe.window, probe.step);
  const AmbientPoint origin = ambient_identity(s);
  const auto vals = sample_grid(s, grid, [&](const AmbientPoint& p) { return bc.ball(p, r); });
  const auto dist = sample_grid(s, grid, [&](const AmbientPoint& p) { return dist_ambient(s, origin, p); });
  // Probes in the outermost layer of cells bound the verified radius.
  rep.inner_radius = kInf;
  const Eigen::Index d = probe.window.dim();
  for (std::size_t j = 0; j < grid.h_nodes.size(); ++j)
    for (std::size_t i = 0; i < grid.group_nodes.size(); ++i) {
      RVec c(d);
      c << grid.group_nodes[i], grid.h_nodes[j];
      bool edge = false;
      for (Eigen::Index a = 0; a < d; ++a)
        if (probe.window.hi[a] > probe.window.lo[a] &&
            (c[a] - probe.window.lo[a] <= probe.step || probe.window.hi[a] - c[a] <= probe.step))
          edge = true;
      if (edge)
        rep.inner_radius = std::min(rep.inner_radius, dist.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
    }
  rep.sparse = true;
  for (double e : eps_schedule) {
    double rp = 0.0;
    for (Eigen::Index i = 0; i < vals.values.size(); ++i)
      if (vals.values.data()[i] > e) rp = std::max(rp, dist.values.data()[i]);
    rep.eps.push_back(e);
    rep.r_prime.push_back(rp);
    const bool ok = rp < rep.inner_radius;
    rep.verified.push_back(ok);
    rep.sparse = rep.sparse && ok;
  }
  return rep;
}

}  // namespace siegel
