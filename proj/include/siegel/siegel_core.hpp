#pragma once

// Siegel CR manifold data (E, F, Phi), the group N = E x F, the ambient group
// E x F_C, the defining function rho and the homogeneous distances.
//
// Conventions: E = C^n, F = R^m with Euclidean scalar products. Component k of
// the hermitian map is Phi_k(a, b) = sum_{ij} a_i A_k(i,j) conj(b_j), i.e.
// linear in the first argument. With w = conj(a), Phi_k(a, a) = w^* A_k w, so
// positivity of <lambda, Phi(a)> is positive definiteness of sum lambda_k A_k.

#include "siegel/types.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <utility>
#include <vector>

namespace siegel {

struct GroupElement {
  CVec zeta;
  RVec x;
};

struct AmbientPoint {
  CVec zeta;
  CVec z;
};

enum class GaugeKind {
  Abelian,    // n = 0: |x|
  Koranyi,    // (|zeta|^4 + |x|^2)^{1/4}
  ScaledMax,  // max(|zeta|, c |x|^{1/2}), c = gauge_scale
};

inline const char* to_string(GaugeKind g) {
  switch (g) {
    case GaugeKind::Abelian: return "abelian";
    case GaugeKind::Koranyi: return "koranyi";
    case GaugeKind::ScaledMax: return "scaled_max";
  }
  return "?";
}

class SiegelStructure {
 public:
  /// Validates hermitian coefficients and non-emptiness of the cone Lambda_+.
  /// Without a witness, searches a 64^(m-1)-point grid on the unit sphere of
  /// F' (m <= 3).
  static SiegelStructure make(int n, int m, std::vector<CMat> phi,
                              std::optional<RVec> witness = std::nullopt) {
    require(n >= 0, "structure: n must be non-negative");
    require(m >= 1, "structure: m must be positive");
    require(static_cast<int>(phi.size()) == m, "structure: phi must hold m matrices");
    for (const auto& a : phi) {
      require(a.rows() == n && a.cols() == n, "structure: each phi matrix must be n x n");
      require(n == 0 || (a - a.adjoint()).cwiseAbs().maxCoeff() <= 1e-12,
              "structure: phi matrices must be hermitian");
    }
    SiegelStructure s;
    s.n_ = n;
    s.m_ = m;
    s.phi_ = std::move(phi);
    for (auto& a : s.phi_) a = 0.5 * (a + a.adjoint()).eval();
    s.theta_ = n > 0 ? 0.5 : 1.0;

    if (witness) {
      require(witness->size() == m, "structure: lambda_witness must have m entries");
      if (!s.in_cone(*witness))
        throw HypothesisError("structure: lambda_witness is not in Lambda_+");
      s.witness_ = *witness;
    } else {
      auto found = s.search_cone();
      if (!found) throw HypothesisError("structure: Lambda_+ is empty (no positive direction found)");
      s.witness_ = *found;
    }
    s.choose_gauge();
    return s;
  }

  int n() const { return n_; }
  int m() const { return m_; }
  double theta() const { return theta_; }
  const std::vector<CMat>& phi() const { return phi_; }
  const RVec& lambda_witness() const { return witness_; }
  GaugeKind gauge_kind() const { return gauge_; }
  double gauge_scale() const { return gauge_scale_; }

  /// Homogeneous dimension: Lebesgue volume of a d_N-ball of radius R scales
  /// as R^Q.
  double homogeneous_dimension() const { return (n_ + m_) / theta_; }

  /// Phi(a, b) in C^m.
  CVec form(const CVec& a, const CVec& b) const {
    CVec out(m_);
    const CVec bc = b.conjugate();
    for (int k = 0; k < m_; ++k) out[k] = n_ == 0 ? cplx(0) : (a.transpose() * phi_[k] * bc).value();
    return out;
  }

  /// Phi(a, a), real.
  RVec quad(const CVec& a) const { return form(a, a).real(); }

  /// Im Phi_k(a, b) and Phi_k(a, a) without temporaries.
  double form_imag(int k, const CVec& a, const CVec& b) const {
    double acc = 0.0;
    const CMat& mk = phi_[k];
    for (int j = 0; j < n_; ++j) {
      cplx col(0.0);
      for (int i = 0; i < n_; ++i) col += a[i] * mk(i, j);
      acc += (col * std::conj(b[j])).imag();
    }
    return acc;
  }
  double quad(int k, const CVec& a) const {
    double acc = 0.0;
    const CMat& mk = phi_[k];
    for (int j = 0; j < n_; ++j) {
      cplx col(0.0);
      for (int i = 0; i < n_; ++i) col += a[i] * mk(i, j);
      acc += (col * std::conj(a[j])).real();
    }
    return acc;
  }

  /// sum_k lambda_k A_k.
  CMat pencil(const RVec& lambda) const {
    CMat p = CMat::Zero(n_, n_);
    for (int k = 0; k < m_; ++k) p += lambda[k] * phi_[k];
    return p;
  }

  double min_pencil_eigenvalue(const RVec& lambda) const {
    if (n_ == 0) return kInf;
    Eigen::SelfAdjointEigenSolver<CMat> es(pencil(lambda), Eigen::EigenvaluesOnly);
    return es.eigenvalues()[0];
  }

  /// Lambda_+ membership: sum lambda_k A_k positive definite.
  bool in_cone(const RVec& lambda, double tol = 1e-12) const {
    return n_ == 0 || min_pencil_eigenvalue(lambda) > tol;
  }

  /// Closure of Lambda_+: positive semi-definite pencil.
  bool in_closed_cone(const RVec& lambda, double tol = 1e-12) const {
    return n_ == 0 || min_pencil_eigenvalue(lambda) >= -tol * std::max(1.0, lambda.norm());
  }

  /// Upper bound on sup |Phi(a, b)| over unit a, b.
  double form_norm_bound() const {
    double s = 0.0;
    for (const auto& a : phi_) {
      if (n_ == 0) continue;
      Eigen::JacobiSVD<CMat> svd(a);
      s += svd.singularValues()[0] * svd.singularValues()[0];
    }
    return std::sqrt(s);
  }

  void check(const GroupElement& g) const {
    require(g.zeta.size() == n_ && g.x.size() == m_, "group element does not conform to (n, m)");
  }
  void check(const AmbientPoint& p) const {
    require(p.zeta.size() == n_ && p.z.size() == m_, "ambient point does not conform to (n, m)");
  }

 private:
  SiegelStructure() = default;

  std::optional<RVec> search_cone() const {
    if (n_ == 0) return RVec::Unit(m_, 0);
    require(m_ <= 3, "structure: cone search supports m <= 3; supply lambda_witness");
    constexpr int kRes = 64;
    std::optional<RVec> best;
    double best_eig = 0.0;
    auto consider = [&](const RVec& l) {
      double e = min_pencil_eigenvalue(l);
      if (e > 1e-12 && (!best || e > best_eig)) {
        best = l;
        best_eig = e;
      }
    };
    if (m_ == 1) {
      consider(RVec::Constant(1, 1.0));
      consider(RVec::Constant(1, -1.0));
    } else if (m_ == 2) {
      for (int i = 0; i < kRes; ++i) {
        double a = 2 * kPi * i / kRes;
        consider((RVec(2) << std::cos(a), std::sin(a)).finished());
      }
    } else {
      for (int i = 0; i < kRes; ++i)
        for (int j = 0; j < kRes; ++j) {
          double th = kPi * (i + 0.5) / kRes, ph = 2 * kPi * j / kRes;
          consider((RVec(3) << std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph),
                    std::cos(th))
                       .finished());
        }
    }
    return best;
  }

  void choose_gauge();

  int n_ = 0;
  int m_ = 1;
  double theta_ = 1.0;
  std::vector<CMat> phi_;
  RVec witness_;
  GaugeKind gauge_ = GaugeKind::Abelian;
  double gauge_scale_ = 1.0;
};

// ---------------------------------------------------------------- group law

inline GroupElement identity(const SiegelStructure& s) {
  return {CVec::Zero(s.n()), RVec::Zero(s.m())};
}

inline GroupElement multiply(const SiegelStructure& s, const GroupElement& a,
                             const GroupElement& b) {
  s.check(a);
  s.check(b);
  return {a.zeta + b.zeta, a.x + b.x + 2.0 * s.form(a.zeta, b.zeta).imag()};
}

inline GroupElement inverse(const SiegelStructure& s, const GroupElement& a) {
  s.check(a);
  return {-a.zeta, -a.x};
}

inline GroupElement dilate(double t, const GroupElement& a) {
  return {std::sqrt(t) * a.zeta, t * a.x};
}

inline AmbientPoint ambient_identity(const SiegelStructure& s) {
  return {CVec::Zero(s.n()), CVec::Zero(s.m())};
}

inline AmbientPoint ambient_multiply(const SiegelStructure& s, const AmbientPoint& a,
                                     const AmbientPoint& b) {
  s.check(a);
  s.check(b);
  const cplx two_i(0.0, 2.0);
  return {a.zeta + b.zeta, a.z + b.z + two_i * s.form(b.zeta, a.zeta)};
}

inline AmbientPoint ambient_inverse(const SiegelStructure& s, const AmbientPoint& a) {
  s.check(a);
  const cplx two_i(0.0, 2.0);
  return {-a.zeta, -a.z + two_i * s.quad(a.zeta).cast<cplx>()};
}

inline AmbientPoint dilate(double t, const AmbientPoint& a) {
  return {std::sqrt(t) * a.zeta, t * a.z};
}

/// rho(zeta, z) = Im z - Phi(zeta).
inline RVec rho(const SiegelStructure& s, const AmbientPoint& p) {
  s.check(p);
  return p.z.imag() - s.quad(p.zeta);
}

/// (zeta, x) -> (zeta, x + i Phi(zeta) + i h), the point of N on the slice
/// rho = h.
inline AmbientPoint lift(const SiegelStructure& s, const GroupElement& g,
                         const RVec& h) {
  s.check(g);
  CVec z(s.m());
  const RVec q = s.quad(g.zeta);
  for (int k = 0; k < s.m(); ++k) z[k] = cplx(g.x[k], q[k] + h[k]);
  return {g.zeta, z};
}

inline AmbientPoint lift(const SiegelStructure& s, const GroupElement& g) {
  return lift(s, g, RVec::Zero(s.m()));
}

/// (zeta, z) -> (zeta, Re z).
inline GroupElement project(const AmbientPoint& p) { return {p.zeta, p.z.real()}; }

// ---------------------------------------------------------------- distances

inline double gauge_from_squares(const SiegelStructure& s, double zeta2, double x2) {
  switch (s.gauge_kind()) {
    case GaugeKind::Abelian: return std::sqrt(x2);
    case GaugeKind::Koranyi: return std::pow(zeta2 * zeta2 + x2, 0.25);
    case GaugeKind::ScaledMax:
      return std::max(std::sqrt(zeta2), s.gauge_scale() * std::pow(x2, 0.25));
  }
  return 0.0;
}

inline double gauge(const SiegelStructure& s, const GroupElement& g) {
  return gauge_from_squares(s, g.zeta.squaredNorm(), g.x.squaredNorm());
}

/// d_N(a, b) = gauge(a^{-1} b). Allocation-free; this is the inner loop of
/// every lattice and measure computation.
inline double dist_group(const SiegelStructure& s, const CVec& za, const RVec& xa, const CVec& zb,
                         const RVec& xb) {
  double z2 = 0.0, x2 = 0.0;
  for (int i = 0; i < s.n(); ++i) z2 += std::norm(zb[i] - za[i]);
  for (int k = 0; k < s.m(); ++k) {
    const double dx = xb[k] - xa[k] - 2.0 * s.form_imag(k, za, zb);
    x2 += dx * dx;
  }
  return gauge_from_squares(s, z2, x2);
}

inline double dist_group(const SiegelStructure& s, const GroupElement& a,
                         const GroupElement& b) {
  s.check(a);
  s.check(b);
  return dist_group(s, a.zeta, a.x, b.zeta, b.x);
}

/// d_N between the projections (zeta, Re z).
inline double dist_projected(const SiegelStructure& s, const AmbientPoint& a,
                             const AmbientPoint& b) {
  double z2 = 0.0, x2 = 0.0;
  for (int i = 0; i < s.n(); ++i) z2 += std::norm(b.zeta[i] - a.zeta[i]);
  for (int k = 0; k < s.m(); ++k) {
    const double dx = b.z[k].real() - a.z[k].real() - 2.0 * s.form_imag(k, a.zeta, b.zeta);
    x2 += dx * dx;
  }
  return gauge_from_squares(s, z2, x2);
}

/// d = max(d_N on (zeta, Re z), |rho difference|).
inline double dist_ambient(const SiegelStructure& s, const AmbientPoint& a,
                           const AmbientPoint& b) {
  s.check(a);
  s.check(b);
  double z2 = 0.0, x2 = 0.0, r2 = 0.0;
  for (int i = 0; i < s.n(); ++i) z2 += std::norm(b.zeta[i] - a.zeta[i]);
  for (int k = 0; k < s.m(); ++k) {
    const double dx = b.z[k].real() - a.z[k].real() - 2.0 * s.form_imag(k, a.zeta, b.zeta);
    x2 += dx * dx;
    const double dr = (b.z[k].imag() - s.quad(k, b.zeta)) - (a.z[k].imag() - s.quad(k, a.zeta));
    r2 += dr * dr;
  }
  return std::max(gauge_from_squares(s, z2, x2), std::sqrt(r2));
}

inline void SiegelStructure::choose_gauge() {
  if (n_ == 0) {
    gauge_ = GaugeKind::Abelian;
    gauge_scale_ = 1.0;
    return;
  }
  gauge_ = GaugeKind::Koranyi;
  gauge_scale_ = 1.0;
  // Randomized triangle-inequality probe for the Koranyi gauge.
  std::mt19937_64 rng(0x5eed5eedULL);
  std::normal_distribution<double> nd(0.0, 1.0);
  std::uniform_real_distribution<double> sc(-2.0, 2.0);
  auto rand_elem = [&]() {
    GroupElement g{CVec(n_), RVec(m_)};
    const double t = std::pow(10.0, sc(rng));
    for (int i = 0; i < n_; ++i) g.zeta[i] = std::sqrt(t) * cplx(nd(rng), nd(rng));
    for (int k = 0; k < m_; ++k) g.x[k] = t * nd(rng);
    return g;
  };
  bool ok = true;
  for (int trial = 0; trial < 4096 && ok; ++trial) {
    GroupElement a = rand_elem(), b = rand_elem(), c = rand_elem();
    const double ab = dist_group(*this, a, b), bc = dist_group(*this, b, c),
                 ac = dist_group(*this, a, c);
    if (ac > ab + bc + 1e-12 * (1.0 + ab + bc)) ok = false;
  }
  if (!ok) {
    // max(|zeta|, c|x|^{1/2}) is a quasi-norm satisfying the triangle inequality
    // whenever c^2 sup|Phi(a,b)| <= 1 on unit vectors.
    gauge_ = GaugeKind::ScaledMax;
    const double nb = form_norm_bound();
    gauge_scale_ = nb > 0 ? 1.0 / std::sqrt(nb) : 1.0;
  }
}

// ---------------------------------------------------------------- coordinates

/// Real coordinates (Re zeta_1, Im zeta_1, ..., Re zeta_n, Im zeta_n, x).
inline RVec coords(const GroupElement& g) {
  const auto n = g.zeta.size();
  RVec c(2 * n + g.x.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    c[2 * i] = g.zeta[i].real();
    c[2 * i + 1] = g.zeta[i].imag();
  }
  c.tail(g.x.size()) = g.x;
  return c;
}

inline GroupElement group_from_coords(const SiegelStructure& s, const RVec& c) {
  require(c.size() >= 2 * s.n() + s.m(), "coordinates: too few entries");
  GroupElement g{CVec(s.n()), c.segment(2 * s.n(), s.m())};
  for (int i = 0; i < s.n(); ++i) g.zeta[i] = cplx(c[2 * i], c[2 * i + 1]);
  return g;
}

/// Group coordinates of (zeta, Re z) followed by h = rho.
inline RVec ambient_coords(const SiegelStructure& s, const AmbientPoint& p) {
  const RVec g = coords(project(p));
  RVec c(g.size() + s.m());
  c << g, rho(s, p);
  return c;
}

inline AmbientPoint ambient_from_coords(const SiegelStructure& s, const RVec& c) {
  require(c.size() == 2 * s.n() + 2 * s.m(), "ambient coordinates: need 2n + 2m entries");
  return lift(s, group_from_coords(s, c), c.tail(s.m()));
}

/// Convenience constructors for common structures.
namespace structures {

/// n = 0: the abelian case N = F = R^m.
inline SiegelStructure euclidean(int m) {
  return SiegelStructure::make(0, m, std::vector<CMat>(m, CMat(0, 0)));
}

/// Heisenberg group H_n: m = 1, Phi(a, b) = sum a_i conj(b_i).
inline SiegelStructure heisenberg(int n = 1) {
  return SiegelStructure::make(n, 1, {CMat::Identity(n, n)}, RVec::Constant(1, 1.0));
}

}  // namespace structures

}  // namespace siegel
