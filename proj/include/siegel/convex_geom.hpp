#pragma once

// Compact spectral sets K in F' (as polytopes), support functions, polars,
// K_eps fattening, Lambda_+ membership and the Pfaffian density integral.

#include "siegel/convex_hull.hpp"
#include "siegel/quadrature.hpp"
#include "siegel/siegel_core.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>
#include <vector>

namespace siegel {

/// Convex compact set given by a vertex list (V-representation). The raw
/// vertex list is kept; for m <= 3 the hull is computed once at construction.
class SpectralSet {
 public:
  explicit SpectralSet(std::vector<RVec> vertices) {
    require(!vertices.empty(), "spectral set: vertex list must be non-empty");
    const auto m = vertices[0].size();
    require(m >= 1, "spectral set: vertices must have positive dimension");
    for (const auto& v : vertices)
      require(v.size() == m && v.allFinite(), "spectral set: vertices must be finite and conform");
    vertices_ = detail::dedup(vertices, 1e-12);
    if (m <= 3) hull_ = std::make_shared<ConvexHull>(convex_hull(vertices_));
  }

  static SpectralSet interval(double a, double b) {
    require(a <= b, "spectral set: interval needs a <= b");
    return SpectralSet({RVec::Constant(1, a), RVec::Constant(1, b)});
  }
  static SpectralSet point(const RVec& p) { return SpectralSet({p}); }

  int dim() const { return static_cast<int>(vertices_[0].size()); }
  const std::vector<RVec>& vertices() const { return vertices_; }

  bool has_hull() const { return static_cast<bool>(hull_); }
  const ConvexHull& hull() const {
    require(has_hull(), "spectral set: hull only available for m <= 3");
    return *hull_;
  }

  /// Extreme points (m <= 3) or the raw vertex list.
  const std::vector<RVec>& extreme_points() const {
    return hull_ ? hull_->vertices : vertices_;
  }

  bool contains(const RVec& p, double tol = 1e-9) const { return hull().contains(p, tol); }
  double volume() const { return hull().volume(); }

  SpectralSet scaled(double t) const {
    std::vector<RVec> v;
    for (const auto& p : vertices_) v.push_back(t * p);
    return SpectralSet(std::move(v));
  }
  SpectralSet translated(const RVec& d) const {
    std::vector<RVec> v;
    for (const auto& p : vertices_) v.push_back(p + d);
    return SpectralSet(std::move(v));
  }

 private:
  std::vector<RVec> vertices_;
  std::shared_ptr<const ConvexHull> hull_;
};

/// H_K(h) = sup over lambda in -K of <lambda, h> = max_v <-v, h>.
inline double support_function(const SpectralSet& k, const RVec& h) {
  require(h.size() == k.dim(), "support function: dimension mismatch");
  double best = -kInf;
  for (const auto& v : k.vertices()) best = std::max(best, -v.dot(h));
  return best;
}

/// Possibly unbounded polyhedron {x : <normal_i, x> >= offset_i}. The
/// H-representation is primary; vertices/rays are filled in for m <= 3.
struct Polyhedron {
  int dim = 0;
  std::vector<Halfspace> halfspaces;
  std::optional<std::vector<RVec>> vertices;
  std::optional<std::vector<RVec>> rays;
  bool empty = false;

  bool contains(const RVec& x, double tol = 1e-9) const {
    if (empty) return false;
    for (const auto& h : halfspaces)
      if (!h.satisfied(x, tol * std::max(1.0, h.normal.norm()))) return false;
    return true;
  }
  bool has_vrep() const { return vertices.has_value() && rays.has_value(); }
  bool bounded() const {
    require(has_vrep(), "polyhedron: boundedness needs the V-representation");
    return rays->empty();
  }
};

namespace detail {

inline RMat null_space(const RMat& a, double tol = 1e-10) {
  const Eigen::Index m = a.cols();
  if (a.rows() == 0) return RMat::Identity(m, m);
  Eigen::JacobiSVD<RMat> svd(a, Eigen::ComputeFullV);
  const auto sv = svd.singularValues();
  const double top = sv.size() ? std::max(sv[0], 1.0) : 1.0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] > tol * top) ++rank;
  return svd.matrixV().rightCols(m - rank);
}

inline void push_unique(std::vector<RVec>& out, const RVec& v, double tol) {
  for (const auto& w : out)
    if ((w - v).cwiseAbs().maxCoeff() <= tol) return;
  out.push_back(v);
}

// Calls fn(indices) for every k-subset of {0..n-1}.
template <class Fn>
void for_each_subset(int n, int k, Fn&& fn) {
  if (k < 0 || k > n) return;
  std::vector<int> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

/// Fills in vertices and rays (lineality directions appear as +/- rays) by
/// enumerating active sets; m <= 3.
inline Polyhedron with_vrep(Polyhedron p) {
  require(p.dim >= 1 && p.dim <= 3, "polyhedron: vertex enumeration supports m <= 3");
  const int m = p.dim;
  std::vector<Halfspace> hs;
  for (const auto& h : p.halfspaces) {
    if (h.normal.norm() <= 1e-14) {
      if (h.offset > 1e-12) p.empty = true;
      continue;
    }
    hs.push_back(h);
  }
  p.vertices = std::vector<RVec>{};
  p.rays = std::vector<RVec>{};
  if (p.empty) return p;

  const int k = static_cast<int>(hs.size());
  RMat normals(k, m);
  for (int i = 0; i < k; ++i) normals.row(i) = hs[i].normal.transpose();
  const RMat lineality = detail::null_space(normals);
  const int dl = static_cast<int>(lineality.cols());
  const int r = m - dl;

  double scale = 1.0;
  for (const auto& h : hs) scale = std::max(scale, std::abs(h.offset) / h.normal.norm());
  const double tol = 1e-9 * scale;

  auto feasible = [&](const RVec& x) {
    for (const auto& h : hs)
      if (!h.satisfied(x, 1e-9 * std::max(1.0, std::abs(h.offset)) * h.normal.norm())) return false;
    return true;
  };

  if (r == 0) {
    p.vertices->push_back(RVec::Zero(m));
  } else {
    detail::for_each_subset(k, r, [&](const std::vector<int>& idx) {
      RMat a(m, m);
      RVec b(m);
      for (int i = 0; i < r; ++i) {
        a.row(i) = hs[idx[i]].normal.transpose();
        b[i] = hs[idx[i]].offset;
      }
      for (int j = 0; j < dl; ++j) {
        a.row(r + j) = lineality.col(j).transpose();
        b[r + j] = 0.0;
      }
      Eigen::FullPivLU<RMat> lu(a);
      if (!lu.isInvertible()) return;
      const RVec x = lu.solve(b);
      if (x.allFinite() && feasible(x)) detail::push_unique(*p.vertices, x, tol);
    });
    // Extreme rays of the pointed recession cone in the complement of the
    // lineality space.
    detail::for_each_subset(k, r - 1, [&](const std::vector<int>& idx) {
      RMat a(r - 1 + dl, m);
      for (int i = 0; i < r - 1; ++i) a.row(i) = hs[idx[i]].normal.transpose();
      for (int j = 0; j < dl; ++j) a.row(r - 1 + j) = lineality.col(j).transpose();
      const RMat ns = detail::null_space(a);
      if (ns.cols() != 1) return;
      for (double sgn : {1.0, -1.0}) {
        const RVec d = sgn * ns.col(0).normalized();
        bool ok = true;
        for (const auto& h : hs)
          if (h.normal.dot(d) < -1e-10 * h.normal.norm()) ok = false;
        if (ok) detail::push_unique(*p.rays, d, 1e-9);
      }
    });
    if (p.vertices->empty()) p.empty = true;
  }
  for (int j = 0; j < dl; ++j) {
    p.rays->push_back(lineality.col(j));
    p.rays->push_back(-lineality.col(j));
  }
  return p;
}

/// A° = {lambda : <lambda, h> >= -1 for every h in A}.
inline Polyhedron polar(const SpectralSet& a) {
  Polyhedron p;
  p.dim = a.dim();
  for (const auto& v : a.extreme_points())
    if (v.norm() > 1e-14) p.halfspaces.push_back({v, -1.0});
  if (p.dim <= 3) p = with_vrep(std::move(p));
  return p;
}

inline Polyhedron polar(const Polyhedron& a) {
  Polyhedron src = a;
  if (!src.has_vrep()) {
    require(src.dim <= 3, "polar: unbounded input without ray decomposition");
    src = with_vrep(std::move(src));
  }
  Polyhedron p;
  p.dim = a.dim;
  if (!src.empty) {
    for (const auto& v : *src.vertices)
      if (v.norm() > 1e-14) p.halfspaces.push_back({v, -1.0});
    for (const auto& r : *src.rays) p.halfspaces.push_back({r, 0.0});
  }
  if (p.dim <= 3) p = with_vrep(std::move(p));
  return p;
}

/// Lambda_+ membership (smallest pencil eigenvalue > 1e-12; always true for n = 0).
inline bool cone_member(const SiegelStructure& s, const RVec& lambda) {
  require(lambda.size() == s.m(), "cone_member: dimension mismatch");
  return s.in_cone(lambda);
}

/// Inscribed polytope of the closed ball of radius eps intersected with the
/// closure of Lambda_+: the origin plus 16*m boundary points (two for m = 1).
inline std::vector<RVec> ball_cone_polytope(const SiegelStructure& s, double eps) {
  require(eps > 0, "fatten: eps must be positive");
  const int m = s.m();
  require(m <= 3, "fatten: supports m <= 3");
  std::vector<RVec> pts{RVec::Zero(m)};
  auto in = [&](const RVec& d) { return s.in_closed_cone(d); };
  if (m == 1) {
    for (double sg : {1.0, -1.0})
      if (in(RVec::Constant(1, sg))) pts.push_back(RVec::Constant(1, sg * eps));
    return pts;
  }
  if (m == 2) {
    auto dir = [](double a) { return (RVec(2) << std::cos(a), std::sin(a)).finished(); };
    constexpr int kScan = 4096;
    std::vector<bool> mask(kScan);
    int count = 0;
    for (int i = 0; i < kScan; ++i) count += (mask[i] = in(dir(2 * kPi * i / kScan)));
    const int npts = 16 * m;
    if (count == kScan) {
      for (int i = 0; i < npts; ++i) pts.push_back(eps * dir(2 * kPi * i / npts));
      return pts;
    }
    require(count > 0, "fatten: closed cone has empty intersection with the unit circle");
    // Arc [start, end] of the closed cone, refined by bisection.
    int first_in = 0;
    while (!(mask[first_in] && !mask[(first_in + kScan - 1) % kScan])) ++first_in;
    int last_in = first_in;
    while (mask[(last_in + 1) % kScan]) last_in = (last_in + 1) % kScan;
    auto refine = [&](double inside, double outside) {
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (inside + outside);
        (in(dir(mid)) ? inside : outside) = mid;
      }
      return inside;
    };
    const double step = 2 * kPi / kScan;
    const double a0 = refine(first_in * step, (first_in - 1) * step);
    double a1 = refine(last_in * step, (last_in + 1) * step);
    if (a1 < a0) a1 += 2 * kPi;
    for (int i = 0; i < npts; ++i) pts.push_back(eps * dir(a0 + (a1 - a0) * i / (npts - 1)));
    return pts;
  }
  // m = 3: farthest-point selection among dense Fibonacci directions in the cone.
  constexpr int kScan = 20000;
  std::vector<RVec> cand;
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < kScan; ++i) {
    const double y = 1.0 - 2.0 * (i + 0.5) / kScan;
    const double r = std::sqrt(1.0 - y * y);
    RVec d(3);
    d << r * std::cos(golden * i), y, r * std::sin(golden * i);
    if (in(d)) cand.push_back(d);
  }
  require(!cand.empty(), "fatten: closed cone has empty intersection with the unit sphere");
  const RVec w = s.lambda_witness().normalized();
  std::vector<double> dist(cand.size(), kInf);
  std::size_t next = 0;
  for (std::size_t i = 0; i < cand.size(); ++i)
    if ((cand[i] - w).norm() < (cand[next] - w).norm()) next = i;
  for (int k = 0; k < 16 * m && k < static_cast<int>(cand.size()); ++k) {
    pts.push_back(eps * cand[next]);
    for (std::size_t i = 0; i < cand.size(); ++i) dist[i] = std::min(dist[i], (cand[i] - cand[next]).norm());
    next = static_cast<std::size_t>(std::max_element(dist.begin(), dist.end()) - dist.begin());
  }
  return pts;
}

inline SpectralSet minkowski_sum(const SpectralSet& a, const std::vector<RVec>& b) {
  std::vector<RVec> sum;
  for (const auto& u : a.vertices())
    for (const auto& v : b) sum.push_back(u + v);
  if (a.dim() <= 3) sum = convex_hull(sum).vertices;
  return SpectralSet(std::move(sum));
}

/// K_eps = K + (closed ball(0, eps) ∩ closure of Lambda_+), with the ball
/// piece replaced by its inscribed polytope.
inline SpectralSet fatten(const SiegelStructure& s, const SpectralSet& k, double eps) {
  require(k.dim() == s.m(), "fatten: dimension mismatch");
  return minkowski_sum(k, ball_cone_polytope(s, eps));
}

struct PfaffianDensity {
  double value = 0.0;         // 2^{n-m}/pi^{n+m} ∫_K |det <lambda, Phi>| dlambda
  double integral = 0.0;      // ∫_K |det| alone
  bool within_closed_cone = true;
};

/// Collapsed Gauss-Legendre quadrature (quad_points per axis) over a
/// triangulation of K.
inline PfaffianDensity pfaffian_density_integral(const SiegelStructure& s, const SpectralSet& k,
                                                 int quad_points) {
  require(quad_points >= 2, "pfaffian integral: need at least 2 points per axis");
  require(k.dim() == s.m(), "pfaffian integral: dimension mismatch");
  PfaffianDensity out;
  for (const auto& v : k.extreme_points())
    if (!s.in_closed_cone(v, 1e-9)) out.within_closed_cone = false;

  const ConvexHull& hull = k.hull();
  const int m = s.m();
  auto integrand = [&](const RVec& lambda) {
    if (s.n() == 0) return 1.0;
    return std::abs(s.pencil(lambda).determinant().real());
  };
  double total = 0.0;
  if (hull.affine_dim == m) {
    const quad::Rule g = quad::gauss_legendre(quad_points, 0.0, 1.0);
    for (const auto& simplex : hull.simplices) {
      RMat edges(m, m);
      for (int i = 0; i < m; ++i) edges.col(i) = simplex[i + 1] - simplex[0];
      const double jac = std::abs(edges.determinant());
      std::vector<int> idx(static_cast<std::size_t>(m), 0);
      while (true) {
        // Collapsed coordinates x1 = u1, x2 = (1-u1)u2, x3 = (1-u1)(1-u2)u3,
        // Jacobian prod_i (1-u_i)^{m-1-i}.
        double rest = 1.0, wt = 1.0;
        RVec x(m);
        for (int i = 0; i < m; ++i) {
          const double ui = g.nodes[idx[i]];
          x[i] = rest * ui;
          wt *= g.weights[idx[i]] * std::pow(1.0 - ui, m - 1 - i);
          rest *= (1.0 - ui);
        }
        total += wt * jac * integrand(simplex[0] + edges * x);
        int d = m - 1;
        while (d >= 0 && ++idx[d] == quad_points) idx[d--] = 0;
        if (d < 0) break;
      }
    }
  }
  out.integral = total;
  out.value = std::pow(2.0, s.n() - m) / std::pow(kPi, s.n() + m) * total;
  return out;
}

}  // namespace siegel
