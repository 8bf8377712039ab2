#pragma once

// Bernstein-space elements on the Heisenberg group (n = m = 1, Phi = |zeta|^2):
// f(zeta, z) = ∫ e^{i lambda z} sum_k c_k(lambda) zeta^k dlambda over [tau0, tau1],
// with the exact L^2 norm of f_0 from Plancherel in x and orthogonality of
// monomials in the weighted Fock spaces.
//
// Two representations: a smooth profile c_k(lambda) = (1 - u^2)^8 P_k(u),
// u the affine image of lambda in [-1, 1], evaluated exactly; or explicit nodes
// with weights and per-node coefficients, evaluated as the quadrature sum.

#include "siegel/quadrature.hpp"
#include "siegel/sampling.hpp"
#include "siegel/siegel_core.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <vector>

namespace siegel {

struct SynthFunctionHeis {
  double tau0 = 0.5, tau1 = 1.0;
  int degree = 0;  // Fock degree D
  // Profile form: row k holds the monomial coefficients of P_k(u).
  std::optional<CMat> profile;
  // Node form (used when profile is empty): lambda nodes, weights and
  // coefficients c_k(lambda_i) in row i.
  std::vector<double> nodes, weights;
  CMat node_coeffs;

  double center() const { return 0.5 * (tau0 + tau1); }
  double half_width() const { return 0.5 * (tau1 - tau0); }
};

inline constexpr int kBumpPower = 8;

namespace detail {

// Monomial coefficients of (1 - u^2)^8 P(u).
inline CVec bump_times(const CVec& p) {
  std::vector<double> bump(2 * kBumpPower + 1, 0.0);
  double binom = 1.0;
  for (int j = 0; j <= kBumpPower; ++j) {
    bump[static_cast<std::size_t>(2 * j)] = ((j & 1) ? -1.0 : 1.0) * binom;
    binom = binom * (kBumpPower - j) / (j + 1);
  }
  CVec q = CVec::Zero(p.size() + 2 * kBumpPower);
  for (Eigen::Index i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < bump.size(); ++j) q[i + static_cast<Eigen::Index>(j)] += p[i] * bump[j];
  return q;
}

inline cplx poly_eval(const CVec& q, double u) {
  cplx acc(0);
  for (Eigen::Index i = q.size(); i-- > 0;) acc = acc * u + q[i];
  return acc;
}

inline CVec poly_derivative(const CVec& q) {
  if (q.size() <= 1) return CVec::Zero(1);
  CVec d(q.size() - 1);
  for (Eigen::Index i = 1; i < q.size(); ++i) d[i - 1] = static_cast<double>(i) * q[i];
  return d;
}

// Fixed Gauss-Legendre rule on [-1, 1] for the profile integrals.
inline const quad::Rule& profile_rule() {
  static const quad::Rule r = quad::gauss_legendre(64);
  return r;
}

// Profile polynomials q_k = (1 - u^2)^8 P_k and their derivative tables.
struct ProfileTables {
  std::vector<CVec> q;                        // q_k
  std::vector<std::vector<cplx>> d_plus, d_minus;  // q_k^{(j)}(+1), q_k^{(j)}(-1)
  std::vector<std::vector<cplx>> at_nodes;    // q_k at the GL nodes
};

inline ProfileTables make_tables(const CMat& profile) {
  ProfileTables t;
  const auto& rule = profile_rule();
  for (Eigen::Index k = 0; k < profile.rows(); ++k) {
    CVec q = bump_times(profile.row(k).transpose());
    std::vector<cplx> dp, dm, nodes;
    CVec d = q;
    for (Eigen::Index j = 0; j < q.size(); ++j) {
      dp.push_back(poly_eval(d, 1.0));
      dm.push_back(poly_eval(d, -1.0));
      d = poly_derivative(d);
    }
    for (double u : rule.nodes) nodes.push_back(poly_eval(q, u));
    t.q.push_back(q);
    t.d_plus.push_back(dp);
    t.d_minus.push_back(dm);
    t.at_nodes.push_back(nodes);
  }
  return t;
}

// J_k(omega) = ∫_{-1}^{1} e^{i omega u} q_k(u) du for every k.
inline void profile_integrals(const ProfileTables& t, cplx omega, std::vector<cplx>& out) {
  const std::size_t nk = t.q.size();
  out.assign(nk, cplx(0));
  if (std::abs(omega) <= 24.0) {
    const auto& rule = profile_rule();
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const cplx e = rule.weights[i] * std::exp(cplx(0, 1) * omega * rule.nodes[i]);
      for (std::size_t k = 0; k < nk; ++k) out[k] += e * t.at_nodes[k][i];
    }
    return;
  }
  // Repeated integration by parts; the bump kills the first 8 boundary terms.
  const cplx io = cplx(0, 1) * omega;
  const cplx ep = std::exp(io), em = std::exp(-io);
  for (std::size_t k = 0; k < nk; ++k) {
    cplx acc(0), pw = 1.0 / io;
    for (std::size_t j = 0; j < t.d_plus[k].size(); ++j) {
      const double sg = (j & 1) ? -1.0 : 1.0;
      if (j >= static_cast<std::size_t>(kBumpPower)) acc += sg * pw * (ep * t.d_plus[k][j] - em * t.d_minus[k][j]);
      pw /= io;
    }
    out[k] = acc;
  }
}

}  // namespace detail

/// Coefficient c_k(lambda).
inline cplx heis_coeff(const SynthFunctionHeis& f, int k, double lambda) {
  if (f.profile) {
    if (lambda <= f.tau0 || lambda >= f.tau1) return 0.0;
    const double u = (lambda - f.center()) / f.half_width();
    return detail::poly_eval(detail::bump_times(f.profile->row(k).transpose()), u);
  }
  for (std::size_t i = 0; i < f.nodes.size(); ++i)
    if (f.nodes[i] == lambda) return f.node_coeffs(static_cast<Eigen::Index>(i), k);
  return 0.0;
}

/// Evaluator with cached profile tables; eval(zeta, z) = f(zeta, z).
class HeisEvaluator {
 public:
  explicit HeisEvaluator(const SynthFunctionHeis& f) : f_(&f) {
    require(f.tau0 > 0 && f.tau1 > f.tau0, "synth_heis: need 0 < tau0 < tau1");
    if (f.profile) {
      require(f.profile->rows() == f.degree + 1, "synth_heis: profile must have D + 1 rows");
      tables_ = detail::make_tables(*f.profile);
    } else {
      require(f.nodes.size() == f.weights.size(), "synth_heis: nodes and weights differ in length");
      require(f.node_coeffs.rows() == static_cast<Eigen::Index>(f.nodes.size()) &&
                  f.node_coeffs.cols() == f.degree + 1,
              "synth_heis: node coefficients must be nodes x (D + 1)");
    }
  }

  /// I_k(z) = ∫ e^{i lambda z} c_k(lambda) dlambda, k = 0..D.
  void transforms(cplx z, std::vector<cplx>& out) const {
    const auto& f = *f_;
    if (f.profile) {
      detail::profile_integrals(tables_, f.half_width() * z, out);
      const cplx pre = f.half_width() * std::exp(cplx(0, 1) * f.center() * z);
      for (auto& v : out) v *= pre;
      return;
    }
    out.assign(static_cast<std::size_t>(f.degree + 1), cplx(0));
    for (std::size_t i = 0; i < f.nodes.size(); ++i) {
      const cplx e = f.weights[i] * std::exp(cplx(0, 1) * f.nodes[i] * z);
      for (int k = 0; k <= f.degree; ++k) out[static_cast<std::size_t>(k)] += e * f.node_coeffs(static_cast<Eigen::Index>(i), k);
    }
  }

  cplx operator()(cplx zeta, cplx z) const {
    thread_local std::vector<cplx> buf;
    transforms(z, buf);
    cplx acc(0), pw(1);
    for (const auto& v : buf) {
      acc += v * pw;
      pw *= zeta;
    }
    return acc;
  }

 private:
  const SynthFunctionHeis* f_;
  detail::ProfileTables tables_;
};

inline cplx eval_heis(const SynthFunctionHeis& f, cplx zeta, cplx z) { return HeisEvaluator(f)(zeta, z); }

/// ∫_C |zeta|^{2k} e^{-2 lambda |zeta|^2} dA = pi k! / (2 lambda)^{k+1}.
inline double fock_factor(int k, double lambda) {
  require(lambda > 0, "fock_factor: lambda must be positive");
  return kPi * std::tgamma(k + 1.0) / std::pow(2 * lambda, k + 1);
}

/// ||f_0||_{L^2(N)}: 2 pi ∫ sum_k |c_k|^2 pi k! / (2 lambda)^{k+1} dlambda, with
/// 32-node Gauss-Legendre in lambda for the profile form and the node rule
/// otherwise.
inline double norm_heis(const SynthFunctionHeis& f, double p = 2.0) {
  require(p == 2.0, "norm_heis: only p = 2 has a closed form");
  require(f.tau0 > 0, "norm_heis: tau0 must be positive (the Fock weight diverges at 0)");
  double acc = 0.0;
  if (f.profile) {
    const quad::Rule r = quad::gauss_legendre(32, f.tau0, f.tau1);
    for (std::size_t i = 0; i < r.nodes.size(); ++i)
      for (int k = 0; k <= f.degree; ++k)
        acc += r.weights[i] * std::norm(heis_coeff(f, k, r.nodes[i])) * fock_factor(k, r.nodes[i]);
  } else {
    for (std::size_t i = 0; i < f.nodes.size(); ++i)
      for (int k = 0; k <= f.degree; ++k)
        acc += f.weights[i] * std::norm(f.node_coeffs(static_cast<Eigen::Index>(i), k)) * fock_factor(k, f.nodes[i]);
  }
  return std::sqrt(2 * kPi * acc);
}

/// Random profile-form element: P_k has degree profile_degree with complex
/// Gaussian coefficients scaled by decay^k.
inline SynthFunctionHeis random_synth_heis(int degree, int profile_degree, double tau0, double tau1,
                                           std::mt19937_64& rng, double decay = 0.9) {
  require(degree >= 0 && degree <= 8, "random_synth_heis: Fock degree must lie in [0, 8]");
  require(profile_degree >= 0, "random_synth_heis: profile degree must be non-negative");
  require(tau0 >= 0.1 && tau1 > tau0, "random_synth_heis: need 0.1 <= tau0 < tau1");
  SynthFunctionHeis f;
  f.tau0 = tau0;
  f.tau1 = tau1;
  f.degree = degree;
  CMat a(degree + 1, profile_degree + 1);
  std::normal_distribution<double> nd;
  for (int k = 0; k <= degree; ++k)
    for (int j = 0; j <= profile_degree; ++j) {
      const double re = nd(rng), im = nd(rng);
      a(k, j) = std::pow(decay, k) * cplx(re, im) / std::sqrt(2.0);
    }
  f.profile = a;
  return f;
}

/// Brute-force ||f_0||_{L^2}: polar Gauss-Legendre in |zeta|, equispaced angles
/// and composite Gauss-Legendre in x, all applied to f(zeta, x + i |zeta|^2).
inline double norm_heis_bruteforce(const SynthFunctionHeis& f, double x_half = 150.0, double r_max = 7.0) {
  const HeisEvaluator ev(f);
  const quad::Rule rr = quad::gauss_legendre(48, 0.0, r_max);
  const quad::Rule gx = quad::gauss_legendre(8);
  const int angles = 2 * f.degree + 4;
  const double cell = 2.0;
  std::vector<double> per_r(rr.nodes.size(), 0.0);
  parallel_for(rr.nodes.size(), [&](std::size_t ir) {
    const double r = rr.nodes[ir];
    std::vector<cplx> tr;
    double acc = 0.0;
    for (double a = -x_half; a < x_half - 1e-9; a += cell)
      for (std::size_t ix = 0; ix < gx.nodes.size(); ++ix) {
        const double x = a + 0.5 * cell * (gx.nodes[ix] + 1.0);
        ev.transforms(cplx(x, r * r), tr);
        double ang = 0.0;
        for (int t = 0; t < angles; ++t) {
          const cplx zeta = std::polar(r, 2 * kPi * t / angles);
          cplx v(0), pw(1);
          for (const auto& c : tr) v += c * pw, pw *= zeta;
          ang += std::norm(v);
        }
        acc += 0.5 * cell * gx.weights[ix] * ang * 2 * kPi / angles;
      }
    per_r[ir] = acc * r;
  }, 1);
  double total = 0.0;
  for (std::size_t i = 0; i < per_r.size(); ++i) total += rr.weights[i] * per_r[i];
  return std::sqrt(total);
}

struct FrameRatioHeisReport {
  std::vector<double> ratios;
  double min_ratio = kInf, max_ratio = 0.0;
  double truncation_estimate = 0.0;  // max share of the sample sum from the outer half of the window
  std::size_t family_points = 0;
  double x_step = 0.0;
  long thinning = 1;
};

namespace detail {

// |f(p)|^2 for every ensemble member (rows) and family point (cols).
inline RMat heis_sample_table(const std::vector<SynthFunctionHeis>& ensemble, const SamplingFamily& fam) {
  RMat tab(static_cast<Eigen::Index>(ensemble.size()), static_cast<Eigen::Index>(fam.points.size()));
  parallel_for(ensemble.size(), [&](std::size_t e) {
    const HeisEvaluator ev(ensemble[e]);
    for (std::size_t i = 0; i < fam.points.size(); ++i)
      tab(static_cast<Eigen::Index>(e), static_cast<Eigen::Index>(i)) =
          std::norm(ev(fam.points[i].zeta[0], fam.points[i].z[0]));
  }, 1);
  return tab;
}

inline FrameRatioHeisReport heis_ratios(const RMat& tab, const std::vector<double>& norms, const SamplingFamily& fam,
                                        long factor) {
  FrameRatioHeisReport rep;
  rep.thinning = factor;
  rep.x_step = fam.x_step * static_cast<double>(factor);
  const Box inner = fam.window.scaled(0.5);
  std::vector<bool> keep(fam.points.size()), outer(fam.points.size());
  for (std::size_t i = 0; i < fam.points.size(); ++i) {
    bool k = true;
    for (long l : fam.x_index[i]) k = k && (l % factor == 0);
    keep[i] = k;
    RVec c(3);
    c << fam.points[i].zeta[0].real(), fam.points[i].zeta[0].imag(), fam.points[i].z[0].real();
    outer[i] = !inner.contains(c);
    if (k) ++rep.family_points;
  }
  for (Eigen::Index e = 0; e < tab.rows(); ++e) {
    double sum = 0.0, shell = 0.0;
    for (std::size_t i = 0; i < keep.size(); ++i)
      if (keep[i]) {
        const double v = tab(e, static_cast<Eigen::Index>(i));
        sum += v;
        if (outer[i]) shell += v;
      }
    const double ratio = std::sqrt(sum) / norms[static_cast<std::size_t>(e)];
    rep.ratios.push_back(ratio);
    rep.min_ratio = std::min(rep.min_ratio, ratio);
    rep.max_ratio = std::max(rep.max_ratio, ratio);
    if (sum > 0) rep.truncation_estimate = std::max(rep.truncation_estimate, shell / sum);
  }
  return rep;
}

}  // namespace detail

/// (sum over the family of |f|^2)^{1/2} / ||f|| for each member, on the
/// Heisenberg group with Phi = |zeta|^2. Fails when more than max_truncation of
/// some member's sample sum sits in the outer half of the window.
inline FrameRatioHeisReport frame_ratio_heis(const SiegelStructure& s, const std::vector<SynthFunctionHeis>& ensemble,
                                             const SamplingFamily& fam, double max_truncation = 1e-2) {
  require(s.n() == 1 && s.m() == 1, "frame_ratio_heis: needs n = m = 1");
  require(!ensemble.empty(), "frame_ratio_heis: ensemble is empty");
  require(!fam.points.empty(), "frame_ratio_heis: family is empty");
  std::vector<double> norms;
  for (const auto& f : ensemble) {
    norms.push_back(norm_heis(f));
    require(norms.back() > 0, "frame_ratio_heis: zero function in ensemble");
  }
  const RMat tab = detail::heis_sample_table(ensemble, fam);
  FrameRatioHeisReport rep = detail::heis_ratios(tab, norms, fam, 1);
  if (rep.truncation_estimate > max_truncation)
    throw InputError("frame_ratio_heis: window too small for the ensemble (outer share " +
                     std::to_string(rep.truncation_estimate) + ")");
  return rep;
}

/// Frame ratios for the family thinned in x by each factor (nested subsets).
inline std::vector<FrameRatioHeisReport> degradation_heis(const SiegelStructure& s,
                                                          const std::vector<SynthFunctionHeis>& ensemble,
                                                          const SamplingFamily& fam, const std::vector<long>& factors) {
  require(s.n() == 1 && s.m() == 1, "degradation_heis: needs n = m = 1");
  require(!ensemble.empty() && !fam.points.empty(), "degradation_heis: empty ensemble or family");
  std::vector<double> norms;
  for (const auto& f : ensemble) norms.push_back(norm_heis(f));
  const RMat tab = detail::heis_sample_table(ensemble, fam);
  std::vector<FrameRatioHeisReport> out;
  for (long fct : factors) {
    require(fct >= 1, "degradation_heis: factors must be >= 1");
    out.push_back(detail::heis_ratios(tab, norms, fam, fct));
  }
  return out;
}

}  // namespace siegel
