#pragma once

// (delta, R)-lattices on N and restricted lattices on E x F_C: greedy
// construction and probe-window verification.

#include "siegel/parallel.hpp"
#include "siegel/siegel_core.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <random>
#include <vector>

namespace siegel {

struct LatticeFamily {
  std::vector<AmbientPoint> points;  // plain lattices live on rho = 0
  double delta = 1.0;
  double bigR = 2.0;
  bool restricted = false;
  std::vector<RVec> slice_levels;  // restricted only
  Box window;                      // group box, or ambient box when restricted
};

/// Distance used for the family: d_N on (zeta, Re z) for plain lattices,
/// the ambient d for restricted ones.
inline double family_distance(const SiegelStructure& s, bool restricted, const AmbientPoint& a,
                              const AmbientPoint& b) {
  return restricted ? dist_ambient(s, a, b) : dist_projected(s, a, b);
}

namespace detail {

// Greedy 2 delta-separated selection over a lexicographic grid of the group
// box (step delta/2), followed by a completion scan of a finer grid. Maximality
// on a grid does not give continuum covering at 2 delta; the completion scan
// closes the gaps at every node of the finer grid.
inline std::vector<GroupElement> greedy_slice(const SiegelStructure& s, const Box& box, double delta,
                                              double completion_step) {
  std::vector<GroupElement> kept;
  auto scan = [&](double step) {
    for_each_grid_point(box, step, [&](const RVec& c) {
      const GroupElement g = group_from_coords(s, c);
      for (auto it = kept.rbegin(); it != kept.rend(); ++it)
        if (dist_group(s, it->zeta, it->x, g.zeta, g.x) < 2 * delta) return;
      kept.push_back(g);
    });
  };
  scan(0.5 * delta);
  if (completion_step > 0) scan(completion_step);
  return kept;
}

}  // namespace detail

/// Greedy maximal 2 delta-separated set over a base grid of step delta/2,
/// scanned lexicographically, then completed on a grid of step
/// completion_step (default delta/10, 0 disables); bigR = 2.
inline LatticeFamily build_lattice(const SiegelStructure& s, const Box& window, double delta,
                                   std::optional<double> completion_step = std::nullopt) {
  require(delta > 0 && std::isfinite(delta), "build_lattice: delta must be positive");
  require(window.dim() == 2 * s.n() + s.m(), "build_lattice: window must have 2n + m coordinates");
  LatticeFamily f;
  f.delta = delta;
  f.window = window;
  for (const auto& g : detail::greedy_slice(s, window, delta, completion_step.value_or(0.1 * delta))) f.points.push_back(lift(s, g));
  return f;
}

/// Greedy lattices on each slice rho = h_k, merged. The window has 2n + 2m
/// coordinates; its h part only matters for verification.
inline LatticeFamily build_restricted_lattice(const SiegelStructure& s, const Box& window, double delta,
                                              const std::vector<RVec>& levels,
                                              std::optional<double> completion_step = std::nullopt) {
  require(delta > 0 && std::isfinite(delta), "build_restricted_lattice: delta must be positive");
  require(window.dim() == 2 * s.n() + 2 * s.m(),
          "build_restricted_lattice: window must have 2n + 2m coordinates");
  require(!levels.empty(), "build_restricted_lattice: need at least one level");
  for (const auto& h : levels) require(h.size() == s.m() && h.allFinite(), "build_restricted_lattice: bad level");
  for (std::size_t i = 0; i < levels.size(); ++i)
    for (std::size_t j = i + 1; j < levels.size(); ++j)
      require((levels[i] - levels[j]).norm() >= 2 * delta - 1e-12,
              "build_restricted_lattice: levels must be 2 delta-separated");
  const int gd = 2 * s.n() + s.m();
  const Box slice(window.lo.head(gd), window.hi.head(gd));
  const auto base = detail::greedy_slice(s, slice, delta, completion_step.value_or(0.1 * delta));
  LatticeFamily f;
  f.delta = delta;
  f.window = window;
  f.restricted = true;
  f.slice_levels = levels;
  for (const auto& h : levels)
    for (const auto& g : base) f.points.push_back(lift(s, g, h));
  return f;
}

struct LatticeReport {
  bool separation_ok = false;
  bool covering_ok = false;
  double worst_gap = kInf;  // max over probes of the distance to the family
  double min_pairwise_distance = kInf;
  Box window;  // probe window actually used
  double probe_step = 0.0;
  std::size_t probe_count = 0;
  RVec worst_probe;  // coordinates of the probe attaining worst_gap
};

/// Separation (pairwise distance >= 2 delta) exactly, covering (every probe
/// within bigR * delta) on a uniform probe grid of the window shrunk by
/// `margin`.
inline LatticeReport verify_lattice(const SiegelStructure& s, const LatticeFamily& f, double probe_step,
                                    double margin = 0.0) {
  require(probe_step > 0 && probe_step < f.delta, "verify_lattice: need 0 < probe_step < delta");
  LatticeReport r;
  r.window = f.window.shrunk(margin);
  r.probe_step = probe_step;
  const auto& pts = f.points;
  const std::size_t np = pts.size();

  std::vector<double> row_min(np, kInf);
  parallel_for(np, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < np; ++j)
      row_min[i] = std::min(row_min[i], family_distance(s, f.restricted, pts[i], pts[j]));
  }, 8);
  for (double v : row_min) r.min_pairwise_distance = std::min(r.min_pairwise_distance, v);
  r.separation_ok = np > 0 && r.min_pairwise_distance >= 2 * f.delta - 1e-12;

  std::vector<RVec> probes;
  for_each_grid_point(r.window, probe_step, [&](const RVec& c) { probes.push_back(c); });
  r.probe_count = probes.size();
  std::vector<double> gap(probes.size(), kInf);
  parallel_for(probes.size(), [&](std::size_t i) {
    const AmbientPoint q =
        f.restricted ? ambient_from_coords(s, probes[i]) : lift(s, group_from_coords(s, probes[i]));
    double best = kInf;
    for (const auto& p : pts) best = std::min(best, family_distance(s, f.restricted, q, p));
    gap[i] = best;
  });
  r.worst_gap = 0.0;
  for (std::size_t i = 0; i < gap.size(); ++i)
    if (gap[i] >= r.worst_gap) {
      if (gap[i] > r.worst_gap || r.worst_probe.size() == 0) r.worst_probe = probes[i];
      r.worst_gap = gap[i];
    }
  r.covering_ok = np > 0 && r.worst_gap <= f.bigR * f.delta + 1e-12;
  return r;
}

struct MidpointReport {
  bool holds = false;
  double worst_ratio = 0.0;  // max over samples of min_{g'} max(|g'|, d(g', g)) / |g|
  RVec worst_point;          // group coordinates of the worst sample (unit gauge)
  std::size_t samples = 0;
};

namespace detail {

// Plain Nelder-Mead; enough for the low-dimensional midpoint search.
template <class F>
double nelder_mead(F&& f, RVec x0, double scale, int iters = 4000) {
  const int d = static_cast<int>(x0.size());
  std::vector<RVec> pts(static_cast<std::size_t>(d + 1), x0);
  std::vector<double> val(static_cast<std::size_t>(d + 1));
  for (int i = 0; i < d; ++i) pts[static_cast<std::size_t>(i + 1)][i] += scale;
  for (std::size_t i = 0; i < pts.size(); ++i) val[i] = f(pts[i]);
  std::vector<std::size_t> order(pts.size());
  for (int it = 0; it < iters; ++it) {
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return val[a] < val[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[order.size() - 2];
    if (val[worst] - val[best] < 1e-13) break;
    RVec c = RVec::Zero(d);
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (i != worst) c += pts[i];
    c /= d;
    const RVec xr = c + (c - pts[worst]);
    const double fr = f(xr);
    if (fr < val[best]) {
      const RVec xe = c + 2 * (c - pts[worst]);
      const double fe = f(xe);
      if (fe < fr) pts[worst] = xe, val[worst] = fe;
      else pts[worst] = xr, val[worst] = fr;
    } else if (fr < val[second]) {
      pts[worst] = xr, val[worst] = fr;
    } else {
      const RVec xc = c + 0.5 * (pts[worst] - c);
      const double fc = f(xc);
      if (fc < val[worst]) {
        pts[worst] = xc, val[worst] = fc;
      } else {
        for (std::size_t i = 0; i < pts.size(); ++i)
          if (i != best) pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]), val[i] = f(pts[i]);
      }
    }
  }
  return *std::min_element(val.begin(), val.end());
}

}  // namespace detail

/// Approximate-midpoint property of d_N: every g with |g| < 1 admits g' with
/// |g'| < 1/2 and d(g', g) < 1/2. By homogeneity this is checked on random
/// points of the unit sphere, minimizing max(|g'|, d(g', g)) over g'.
inline MidpointReport midpoint_property(const SiegelStructure& s, std::size_t samples, std::uint64_t seed) {
  const int dim = 2 * s.n() + s.m();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  MidpointReport r;
  r.samples = samples;
  for (std::size_t t = 0; t < samples; ++t) {
    RVec c(dim);
    for (int i = 0; i < dim; ++i) c[i] = nd(rng);
    GroupElement g = group_from_coords(s, c);
    g = dilate(std::pow(gauge(s, g), -1.0 / s.theta()), g);
    auto obj = [&](const RVec& x) {
      const GroupElement h = group_from_coords(s, x);
      return std::max(gauge(s, h), dist_group(s, h, g));
    };
    const RVec gc = coords(g);
    double best = detail::nelder_mead(obj, 0.5 * gc, 0.1);
    for (double f : {0.5, std::pow(0.5, 1.0 / s.theta())})
      best = std::min(best, detail::nelder_mead(obj, coords(dilate(f, g)), 0.1));
    if (best > r.worst_ratio) r.worst_ratio = best, r.worst_point = gc;
  }
  r.holds = r.worst_ratio <= 0.5 + 1e-6;
  return r;
}

/// Dilation t (zeta -> t^{1/2} zeta, z -> t z) of a family; delta scales by
/// t^theta and the window by the coordinate scalings.
inline LatticeFamily dilate(const SiegelStructure& s, const LatticeFamily& f, double t) {
  require(t > 0, "dilate: t must be positive");
  LatticeFamily g = f;
  g.delta = std::pow(t, s.theta()) * f.delta;
  for (auto& p : g.points) p = dilate(t, p);
  RVec scale = RVec::Constant(f.window.dim(), t);
  scale.head(2 * s.n()).setConstant(std::sqrt(t));
  g.window = Box(f.window.lo.cwiseProduct(scale), f.window.hi.cwiseProduct(scale));
  for (auto& h : g.slice_levels) h *= t;
  return g;
}

}  // namespace siegel
