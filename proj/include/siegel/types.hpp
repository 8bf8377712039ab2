#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace siegel {

using cplx = std::complex<double>;
using RVec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Invalid input (shapes, ranges, violated preconditions).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A mathematical hypothesis required by a construction does not hold.
class HypothesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw InputError(msg);
}

inline bool all_finite(const RVec& v) { return v.allFinite(); }
inline bool all_finite(const CVec& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag())) return false;
  return true;
}

// Max-norm that is zero on empty vectors.
template <class V>
double max_abs(const V& v) {
  return v.size() == 0 ? 0.0 : static_cast<double>(v.cwiseAbs().maxCoeff());
}

/// Axis-aligned box in real coordinates. For group windows the coordinate
/// order is (Re zeta, Im zeta, x); ambient windows append rho = h.
struct Box {
  RVec lo;
  RVec hi;

  Box() = default;
  Box(RVec lo_, RVec hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
    require(lo.size() == hi.size(), "box: lo/hi dimension mismatch");
    for (Eigen::Index i = 0; i < lo.size(); ++i)
      require(lo[i] <= hi[i] && std::isfinite(lo[i]) && std::isfinite(hi[i]),
              "box: need finite lo <= hi in every coordinate");
  }

  static Box cube(Eigen::Index dim, double half_width) {
    return Box(RVec::Constant(dim, -half_width), RVec::Constant(dim, half_width));
  }

  Eigen::Index dim() const { return lo.size(); }
  RVec center() const { return 0.5 * (lo + hi); }

  bool contains(const RVec& p, double tol = 0.0) const {
    for (Eigen::Index i = 0; i < lo.size(); ++i)
      if (p[i] < lo[i] - tol || p[i] > hi[i] + tol) return false;
    return true;
  }

  // Shrinks by `margin` per side; collapses to the center where too thin.
  Box shrunk(double margin) const {
    Box b = *this;
    for (Eigen::Index i = 0; i < lo.size(); ++i) {
      if (hi[i] - lo[i] >= 2 * margin) {
        b.lo[i] += margin;
        b.hi[i] -= margin;
      } else {
        b.lo[i] = b.hi[i] = 0.5 * (lo[i] + hi[i]);
      }
    }
    return b;
  }

  // Scales about the center.
  Box scaled(double t) const {
    RVec c = center();
    RVec half = 0.5 * (hi - lo) * t;
    return Box(c - half, c + half);
  }
};

/// Uniform grid of a box with the given step; calls fn(point) in
/// lexicographic order (last coordinate fastest). Degenerate axes yield one
/// node.
template <class Fn>
void for_each_grid_point(const Box& box, double step, Fn&& fn) {
  require(step > 0, "grid step must be positive");
  const Eigen::Index d = box.dim();
  std::vector<long> counts(static_cast<std::size_t>(d));
  for (Eigen::Index i = 0; i < d; ++i)
    counts[i] = static_cast<long>(std::floor((box.hi[i] - box.lo[i]) / step + 1e-9)) + 1;
  std::vector<long> idx(static_cast<std::size_t>(d), 0);
  RVec p(d);
  if (d == 0) {
    fn(p);
    return;
  }
  while (true) {
    for (Eigen::Index i = 0; i < d; ++i) p[i] = box.lo[i] + step * static_cast<double>(idx[i]);
    fn(p);
    Eigen::Index k = d - 1;
    while (k >= 0) {
      if (++idx[k] < counts[k]) break;
      idx[k] = 0;
      --k;
    }
    if (k < 0) break;
  }
}

inline std::size_t grid_point_count(const Box& box, double step) {
  std::size_t c = 1;
  for (Eigen::Index i = 0; i < box.dim(); ++i)
    c *= static_cast<std::size_t>(std::floor((box.hi[i] - box.lo[i]) / step + 1e-9)) + 1;
  return c;
}

}  // namespace siegel
