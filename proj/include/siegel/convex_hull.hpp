#pragma once

// Convex hulls of finite point sets in R^d, d <= 3, with lower-dimensional
// inputs handled through their affine hull.

#include "siegel/types.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

namespace siegel {

/// <normal, x> >= offset.
struct Halfspace {
  RVec normal;
  double offset = 0.0;

  bool satisfied(const RVec& x, double tol) const { return normal.dot(x) >= offset - tol; }
};

struct ConvexHull {
  int ambient_dim = 0;
  int affine_dim = -1;  // -1 for an empty input
  std::vector<RVec> vertices;
  std::vector<Halfspace> halfspaces;  // includes equality pairs when affine_dim < ambient_dim
  std::vector<std::vector<RVec>> simplices;  // full-dimensional triangulation (empty otherwise)

  bool contains(const RVec& p, double tol = 1e-9) const {
    if (affine_dim < 0) return false;
    for (const auto& h : halfspaces)
      if (!h.satisfied(p, tol * std::max(1.0, h.normal.norm()))) return false;
    return true;
  }

  double volume() const;
};

namespace detail {

inline double scale_of(const std::vector<RVec>& pts) {
  double s = 1.0;
  for (const auto& p : pts) s = std::max(s, p.cwiseAbs().maxCoeff());
  return s;
}

inline double simplex_volume(const std::vector<RVec>& simplex) {
  const int d = static_cast<int>(simplex.size()) - 1;
  if (d <= 0) return 0.0;
  RMat m(d, d);
  for (int i = 0; i < d; ++i) m.col(i) = simplex[i + 1] - simplex[0];
  double f = 1.0;
  for (int i = 2; i <= d; ++i) f *= i;
  return std::abs(m.determinant()) / f;
}

inline std::vector<RVec> dedup(const std::vector<RVec>& pts, double tol) {
  std::vector<RVec> out;
  for (const auto& p : pts) {
    bool dup = false;
    for (const auto& q : out)
      if ((p - q).cwiseAbs().maxCoeff() <= tol) {
        dup = true;
        break;
      }
    if (!dup) out.push_back(p);
  }
  return out;
}

inline ConvexHull hull_1d(const std::vector<RVec>& pts) {
  double lo = pts[0][0], hi = pts[0][0];
  for (const auto& p : pts) {
    lo = std::min(lo, p[0]);
    hi = std::max(hi, p[0]);
  }
  ConvexHull h;
  h.ambient_dim = 1;
  h.affine_dim = 1;
  h.vertices = {RVec::Constant(1, lo), RVec::Constant(1, hi)};
  h.halfspaces = {{RVec::Constant(1, 1.0), lo}, {RVec::Constant(1, -1.0), -hi}};
  h.simplices = {h.vertices};
  return h;
}

inline double cross2(const RVec& o, const RVec& a, const RVec& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

inline ConvexHull hull_2d(std::vector<RVec> pts, double eps) {
  std::sort(pts.begin(), pts.end(), [](const RVec& a, const RVec& b) {
    return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
  });
  std::vector<RVec> chain;
  auto build = [&](auto begin, auto end) {
    const std::size_t base = chain.size();
    for (auto it = begin; it != end; ++it) {
      while (chain.size() >= base + 2 &&
             cross2(chain[chain.size() - 2], chain.back(), *it) <= eps)
        chain.pop_back();
      chain.push_back(*it);
    }
    chain.pop_back();
  };
  build(pts.begin(), pts.end());
  build(pts.rbegin(), pts.rend());

  ConvexHull h;
  h.ambient_dim = 2;
  h.affine_dim = 2;
  h.vertices = chain;  // counter-clockwise
  const std::size_t k = chain.size();
  for (std::size_t i = 0; i < k; ++i) {
    const RVec& a = chain[i];
    const RVec& b = chain[(i + 1) % k];
    RVec nrm(2);
    nrm << -(b[1] - a[1]), b[0] - a[0];
    nrm.normalize();
    h.halfspaces.push_back({nrm, nrm.dot(a)});
  }
  for (std::size_t i = 1; i + 1 < k; ++i) h.simplices.push_back({chain[0], chain[i], chain[i + 1]});
  return h;
}

struct Face3 {
  std::array<int, 3> v;
  Eigen::Vector3d n;
  double off;
  bool alive;
};

inline Face3 make_face(const std::vector<Eigen::Vector3d>& p, int a, int b, int c) {
  Face3 f{{a, b, c}, (p[b] - p[a]).cross(p[c] - p[a]), 0.0, true};
  f.n.normalize();
  f.off = f.n.dot(p[a]);
  return f;
}

inline ConvexHull hull_3d(const std::vector<RVec>& in, double eps) {
  std::vector<Eigen::Vector3d> p;
  p.reserve(in.size());
  for (const auto& q : in) p.emplace_back(q[0], q[1], q[2]);
  const int np = static_cast<int>(p.size());

  // Initial tetrahedron from extreme points.
  int i0 = 0;
  for (int i = 1; i < np; ++i)
    if (p[i].x() < p[i0].x()) i0 = i;
  int i1 = i0;
  for (int i = 0; i < np; ++i)
    if ((p[i] - p[i0]).norm() > (p[i1] - p[i0]).norm()) i1 = i;
  int i2 = i0;
  double best = -1;
  const Eigen::Vector3d u = (p[i1] - p[i0]).normalized();
  for (int i = 0; i < np; ++i) {
    const double d = (p[i] - p[i0]).cross(u).norm();
    if (d > best) best = d, i2 = i;
  }
  const Eigen::Vector3d pn = (p[i1] - p[i0]).cross(p[i2] - p[i0]).normalized();
  int i3 = i0;
  best = -1;
  for (int i = 0; i < np; ++i) {
    const double d = std::abs(pn.dot(p[i] - p[i0]));
    if (d > best) best = d, i3 = i;
  }
  require(best > eps, "hull_3d: degenerate input");

  std::vector<Face3> faces;
  const Eigen::Vector3d centroid = 0.25 * (p[i0] + p[i1] + p[i2] + p[i3]);
  auto add_oriented = [&](int a, int b, int c) {
    Face3 f = make_face(p, a, b, c);
    if (f.n.dot(centroid) - f.off > 0) f = make_face(p, a, c, b);
    faces.push_back(f);
  };
  add_oriented(i0, i1, i2);
  add_oriented(i0, i1, i3);
  add_oriented(i0, i2, i3);
  add_oriented(i1, i2, i3);

  for (int q = 0; q < np; ++q) {
    if (q == i0 || q == i1 || q == i2 || q == i3) continue;
    std::set<std::pair<int, int>> edges;
    std::vector<std::size_t> visible;
    for (std::size_t f = 0; f < faces.size(); ++f) {
      if (!faces[f].alive) continue;
      if (faces[f].n.dot(p[q]) - faces[f].off > eps) visible.push_back(f);
    }
    if (visible.empty()) continue;
    for (auto f : visible) {
      const auto& v = faces[f].v;
      for (int e = 0; e < 3; ++e) edges.insert({v[e], v[(e + 1) % 3]});
      faces[f].alive = false;
    }
    for (const auto& [a, b] : edges)
      if (!edges.count({b, a})) faces.push_back(make_face(p, a, b, q));
  }

  ConvexHull h;
  h.ambient_dim = 3;
  h.affine_dim = 3;
  std::map<int, std::vector<Eigen::Vector3d>> incident;
  Eigen::Vector3d interior = Eigen::Vector3d::Zero();
  int used = 0;
  for (const auto& f : faces) {
    if (!f.alive) continue;
    bool dup = false;
    for (const auto& hs : h.halfspaces)
      if ((hs.normal + RVec(f.n)).norm() < 1e-9 && std::abs(hs.offset + f.off) < 1e-9 * std::max(1.0, std::abs(f.off)))
        dup = true;
    if (!dup) h.halfspaces.push_back({-RVec(f.n), -f.off});
    for (int a : f.v) incident[a].push_back(f.n);
  }
  for (const auto& [idx, normals] : incident) {
    interior += p[idx];
    ++used;
  }
  interior /= used;
  for (const auto& [idx, normals] : incident) {
    Eigen::MatrixXd nm(normals.size(), 3);
    for (std::size_t i = 0; i < normals.size(); ++i) nm.row(i) = normals[i].transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(nm);
    const auto sv = svd.singularValues();
    if (sv.size() >= 3 && sv[2] > 1e-7 * sv[0]) h.vertices.push_back(RVec(p[idx]));
  }
  for (const auto& f : faces) {
    if (!f.alive) continue;
    h.simplices.push_back({RVec(interior), RVec(p[f.v[0]]), RVec(p[f.v[1]]), RVec(p[f.v[2]])});
  }
  return h;
}

inline ConvexHull hull_full(const std::vector<RVec>& pts, int d, double eps) {
  switch (d) {
    case 1: return hull_1d(pts);
    case 2: return hull_2d(pts, eps);
    case 3: return hull_3d(pts, eps);
    default: throw InputError("convex hull: dimension must be <= 3");
  }
}

}  // namespace detail

inline double ConvexHull::volume() const {
  if (affine_dim < ambient_dim) return 0.0;
  double v = 0.0;
  for (const auto& s : simplices) v += detail::simplex_volume(s);
  return v;
}

/// Convex hull of a finite set in R^d, d <= 3.
inline ConvexHull convex_hull(const std::vector<RVec>& input) {
  ConvexHull out;
  if (input.empty()) return out;
  const int m = static_cast<int>(input[0].size());
  require(m >= 1 && m <= 3, "convex hull: dimension must be 1, 2 or 3");
  for (const auto& p : input) require(p.size() == m && p.allFinite(), "convex hull: bad point");

  const double scale = detail::scale_of(input);
  const std::vector<RVec> pts = detail::dedup(input, 1e-12 * scale);
  const RVec p0 = pts[0];
  RMat diffs(m, static_cast<Eigen::Index>(pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i) diffs.col(static_cast<Eigen::Index>(i)) = pts[i] - p0;
  Eigen::JacobiSVD<RMat> svd(diffs, Eigen::ComputeFullU);
  const auto sv = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] > 1e-10 * scale) ++rank;

  out.ambient_dim = m;
  out.affine_dim = rank;
  const RMat u = svd.matrixU();
  const RMat basis = u.leftCols(rank);
  const RMat normal_basis = u.rightCols(m - rank);

  if (rank == m) {
    ConvexHull h = detail::hull_full(pts, m, 1e-12 * scale);
    return h;
  }
  // Lower-dimensional: hull in affine coordinates, then lift.
  if (rank == 0) {
    out.vertices = {p0};
  } else {
    std::vector<RVec> local;
    for (const auto& p : pts) local.push_back(basis.transpose() * (p - p0));
    ConvexHull h = detail::hull_full(local, rank, 1e-12 * scale);
    for (const auto& v : h.vertices) out.vertices.push_back(p0 + basis * v);
    for (const auto& hs : h.halfspaces) {
      RVec nrm = basis * hs.normal;
      out.halfspaces.push_back({nrm, hs.offset + nrm.dot(p0)});
    }
  }
  for (Eigen::Index j = 0; j < normal_basis.cols(); ++j) {
    RVec w = normal_basis.col(j);
    out.halfspaces.push_back({w, w.dot(p0)});
    out.halfspaces.push_back({-w, -w.dot(p0)});
  }
  return out;
}

}  // namespace siegel
