#pragma once

// Bandlimited functions on the line: shifted-sinc expansions
// f(w) = e^{i c w} sum_k c_k sinc(kappa (w - s) / pi - k), exact L^2 norms by
// Parseval, quadrature L^p norms with analytic tails, and lattice sample sums.

#include "siegel/quadrature.hpp"
#include "siegel/types.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace siegel {

struct SynthFunction1D {
  double kappa = kPi;
  int N = 0;
  std::vector<cplx> coeffs;  // index k + N, k in [-N, N]
  double shift = 0.0;        // s
  double center = 0.0;       // spectral centre c: spectrum in [c - kappa, c + kappa]

  cplx coeff(int k) const { return coeffs[static_cast<std::size_t>(k + N)]; }

  static SynthFunction1D single(double kappa, int k0 = 0, int n = 0) {
    SynthFunction1D f;
    f.kappa = kappa;
    f.N = std::max(n, std::abs(k0));
    f.coeffs.assign(static_cast<std::size_t>(2 * f.N + 1), cplx(0));
    f.coeffs[static_cast<std::size_t>(k0 + f.N)] = 1.0;
    return f;
  }
};

namespace detail {

inline double sign_pow(int k) { return (k & 1) ? -1.0 : 1.0; }

// g(t) = sum_k c_k (-1)^k / (t - k), so that the sinc sum is sin(pi t) g(t) / pi
// away from the nodes.
inline cplx g_sum(const SynthFunction1D& f, cplx t) {
  cplx acc(0);
  for (int k = -f.N; k <= f.N; ++k) acc += f.coeff(k) * sign_pow(k) / (t - static_cast<double>(k));
  return acc;
}

// sum_k c_k sinc(t - k).
inline cplx sinc_sum(const SynthFunction1D& f, cplx t) {
  const double tr = std::round(t.real());
  const cplx d0 = t - tr;
  const bool near = std::abs(d0) < 1e-6 && std::abs(tr) <= f.N;
  const cplx s = std::sin(kPi * t);
  cplx acc(0);
  for (int k = -f.N; k <= f.N; ++k) {
    const cplx d = t - static_cast<double>(k);
    if (near && k == static_cast<int>(tr)) {
      const cplx x = kPi * d;
      acc += f.coeff(k) * (1.0 - x * x / 6.0 + x * x * x * x / 120.0);
    } else {
      acc += f.coeff(k) * sign_pow(k) * s / (kPi * d);
    }
  }
  return acc;
}

// Mean of |sin(pi t)|^p over a period.
inline double sin_power_mean(double p) {
  return std::tgamma(0.5 * (p + 1)) / (std::sqrt(kPi) * std::tgamma(0.5 * p + 1));
}

// ∫_T^inf |g(t)/pi|^p dt (sign = +1) or over (-inf, -T] (sign = -1), via
// t = T / v^2, which keeps the integrand bounded for p >= 1.
inline double tail_integral(const SynthFunction1D& f, double p, double big_t, double sign) {
  const quad::Rule r = quad::gauss_legendre(64, 0.0, 1.0);
  double acc = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    const double v = r.nodes[i];
    const double t = big_t / (v * v);
    const double jac = 2.0 * big_t / (v * v * v);
    acc += r.weights[i] * jac * std::pow(std::abs(g_sum(f, sign * t)) / kPi, p);
  }
  return acc;
}

}  // namespace detail

/// f(w).
inline cplx eval_1d(const SynthFunction1D& f, cplx w) {
  const cplx t = f.kappa * (w - f.shift) / kPi;
  return std::exp(cplx(0, f.center) * w) * detail::sinc_sum(f, t);
}

/// Random coefficients: complex Gaussian scaled by decay^|k|, drawn in the
/// order k = 0, 1, -1, 2, -2, ... so that raising N only appends terms.
inline SynthFunction1D random_synth_1d(double kappa, int n, std::mt19937_64& rng, double decay = 0.9,
                                       bool real = false) {
  SynthFunction1D f;
  f.kappa = kappa;
  f.N = n;
  f.coeffs.assign(static_cast<std::size_t>(2 * n + 1), cplx(0));
  std::normal_distribution<double> nd(0.0, 1.0);
  auto draw = [&](int k) {
    const double a = nd(rng), b = nd(rng);
    f.coeffs[static_cast<std::size_t>(k + n)] =
        std::pow(decay, std::abs(k)) * (real ? cplx(a, 0) : cplx(a, b) / std::sqrt(2.0));
  };
  draw(0);
  for (int k = 1; k <= n; ++k) {
    draw(k);
    draw(-k);
  }
  return f;
}

/// Projects onto sum_k (-1)^k c_k = 0 with weights decay^{2|k|}; afterwards
/// f decays like |x|^{-2} and lies in every L^p, p > 1/2.
inline void make_integrable(SynthFunction1D& f, double decay = 0.9) {
  cplx s0(0);
  double wsum = 0.0;
  for (int k = -f.N; k <= f.N; ++k) {
    s0 += detail::sign_pow(k) * f.coeff(k);
    wsum += std::pow(decay, 2 * std::abs(k));
  }
  for (int k = -f.N; k <= f.N; ++k)
    f.coeffs[static_cast<std::size_t>(k + f.N)] -= detail::sign_pow(k) * std::pow(decay, 2 * std::abs(k)) * s0 / wsum;
}

struct NormResult {
  double value = 0.0;
  bool converged = true;  // false when the L^p tail diverges
  double tail = 0.0;      // tail contribution to the p-th power
};

/// ||f_0||_{L^p(R)} by composite Gauss-Legendre with 16 nodes per unit of
/// t = kappa x / pi on |t| <= N + 50, plus an analytic tail in which |sin|^p
/// is replaced by its mean. The tail starts at an integer t, where the
/// periodic error term vanishes.
inline NormResult norm_1d_quadrature(const SynthFunction1D& f, double p) {
  require(p > 0 && !std::isinf(p), "norm_1d_quadrature: p must be finite and positive");
  NormResult r;
  double c2 = 0.0;
  cplx s0(0);
  for (int k = -f.N; k <= f.N; ++k) {
    c2 += std::norm(f.coeff(k));
    s0 += detail::sign_pow(k) * f.coeff(k);
  }
  if (c2 == 0.0) return r;
  if (p <= 1.0 && std::abs(s0) > 1e-12 * std::sqrt(c2)) {
    r.converged = false;
    r.value = kInf;
    return r;
  }
  const int big_t = f.N + 50;
  const quad::Rule g = quad::gauss_legendre(16);
  double acc = 0.0;
  for (int cell = -big_t; cell < big_t; ++cell)
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      const double t = cell + 0.5 + 0.5 * g.nodes[i];
      acc += 0.5 * g.weights[i] * std::pow(std::abs(detail::sinc_sum(f, t)), p);
    }
  const double ap = detail::sin_power_mean(p);
  r.tail = ap * (detail::tail_integral(f, p, big_t, 1.0) + detail::tail_integral(f, p, big_t, -1.0));
  r.value = std::pow(kPi / f.kappa * (acc + r.tail), 1.0 / p);
  return r;
}

/// ||f_0||_{L^p(R)}: Parseval for p = 2, dense sampling for p = inf,
/// quadrature otherwise.
inline NormResult norm_1d(const SynthFunction1D& f, double p) {
  require(p > 0, "norm_1d: p must be positive");
  NormResult r;
  double c2 = 0.0;
  for (const auto& c : f.coeffs) c2 += std::norm(c);
  if (c2 == 0.0) return r;
  if (p == 2.0) {
    r.value = std::sqrt(kPi / f.kappa * c2);
    return r;
  }
  if (std::isinf(p)) {
    const double big_t = f.N + 50.0;
    double m = 0.0;
    for (double t = -big_t; t <= big_t; t += 1.0 / 64) m = std::max(m, std::abs(detail::sinc_sum(f, t)));
    r.value = m;
    return r;
  }
  return norm_1d_quadrature(f, p);
}

/// (sum_i w_i |f(x_i)|^p)^{1/p} over a finite point list (unit weights when
/// weights is empty); p = inf gives the max.
inline double sample_sum(const SynthFunction1D& f, const std::vector<cplx>& points, double p,
                         const std::vector<double>& weights = {}) {
  require(weights.empty() || weights.size() == points.size(), "sample_sum: weights do not match points");
  double acc = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double v = std::abs(eval_1d(f, points[i]));
    const double w = weights.empty() ? 1.0 : weights[i];
    acc = std::isinf(p) ? std::max(acc, v) : acc + w * std::pow(v, p);
  }
  return std::isinf(p) ? acc : std::pow(acc, 1.0 / p);
}

/// (sum_{n in Z} |f(n spacing + offset)|^p)^{1/p}: explicit for |t_n| <= N + 200,
/// plus a tail using the empirical mean of |sin(pi t_n)|^p along the samples.
inline NormResult lattice_sample_sum(const SynthFunction1D& f, double spacing, double p, double offset = 0.0) {
  require(spacing > 0 && p > 0 && !std::isinf(p), "lattice_sample_sum: need spacing > 0 and finite p > 0");
  NormResult r;
  const double dt = f.kappa * spacing / kPi;  // t step between samples
  const double t0 = f.kappa * (offset - f.shift) / kPi;
  const double big_t = f.N + 200.0;
  const long n_lo = static_cast<long>(std::ceil((-big_t - t0) / dt));
  const long n_hi = static_cast<long>(std::floor((big_t - t0) / dt));
  double acc = 0.0;
  for (long n = n_lo; n <= n_hi; ++n) acc += std::pow(std::abs(detail::sinc_sum(f, t0 + dt * n)), p);
  // Tails: sum_n |sin(pi t_n)|^p |g(t_n)/pi|^p ~ A_p / dt * ∫ |g/pi|^p dt.
  auto tail = [&](long start, long dir) {
    double mean = 0.0;
    constexpr int kSamples = 4096;
    for (int i = 0; i < kSamples; ++i) mean += std::pow(std::abs(std::sin(kPi * (t0 + dt * (start + dir * i)))), p);
    mean /= kSamples;
    const double edge = std::abs(t0 + dt * (start - dir * 0.5));
    return mean / dt * detail::tail_integral(f, p, edge, static_cast<double>(dir));
  };
  r.tail = tail(n_hi + 1, 1) + tail(n_lo - 1, -1);
  cplx s0(0);
  for (int k = -f.N; k <= f.N; ++k) s0 += detail::sign_pow(k) * f.coeff(k);
  double c2 = 0.0;
  for (const auto& c : f.coeffs) c2 += std::norm(c);
  if (p <= 1.0 && std::abs(s0) > 1e-12 * std::sqrt(c2)) {
    // The samples of |f| decay like 1/|n| unless they sit on the zeros of sin.
    double mean = 0.0;
    for (int i = 0; i < 4096; ++i) mean += std::abs(std::sin(kPi * (t0 + dt * (n_hi + 1 + i))));
    if (mean > 1e-9) {
      r.converged = false;
      r.value = kInf;
      return r;
    }
  }
  r.value = std::pow(acc + r.tail, 1.0 / p);
  return r;
}

struct FrameRatio1DReport {
  double kappa = 0.0, kappa_prime = 0.0, p = 0.0;
  int N = 0;
  std::uint64_t seed = 0;
  std::vector<double> ratios;
  double min_ratio = kInf, max_ratio = 0.0;
  double expected = 0.0;  // sqrt(kappa/pi) for p = 2, kappa' = kappa; else 0
  bool converged = true;
};

/// Ratios (sum_n |f(n pi / kappa')|^p)^{1/p} / ||f||_p over a seeded ensemble.
/// For p <= 1 the members are projected so that f_0 is in L^p.
inline FrameRatio1DReport frame_ratio_1d(double kappa, double kappa_prime, double p, int ensemble_size,
                                         std::uint64_t seed, int n = 64) {
  require(kappa > 0 && kappa_prime > 0, "frame_ratio_1d: bandwidths must be positive");
  require(ensemble_size > 0, "frame_ratio_1d: ensemble must be non-empty");
  require(p > 0 && !std::isinf(p), "frame_ratio_1d: p must be finite and positive");
  const bool open_range = p > 1.0;
  require(open_range || kappa_prime > kappa, "frame_ratio_1d: p outside (1, inf) needs kappa' > kappa");
  FrameRatio1DReport rep;
  rep.kappa = kappa;
  rep.kappa_prime = kappa_prime;
  rep.p = p;
  rep.N = n;
  rep.seed = seed;
  if (p == 2.0 && kappa_prime == kappa) rep.expected = std::sqrt(kappa / kPi);
  std::mt19937_64 rng(seed);
  for (int i = 0; i < ensemble_size; ++i) {
    SynthFunction1D f = random_synth_1d(kappa, n, rng);
    if (p <= 1.0) make_integrable(f);
    const NormResult nf = norm_1d(f, p);
    const NormResult sf = lattice_sample_sum(f, kPi / kappa_prime, p);
    rep.converged = rep.converged && nf.converged && sf.converged;
    const double ratio = sf.value / nf.value;
    rep.ratios.push_back(ratio);
    rep.min_ratio = std::min(rep.min_ratio, ratio);
    rep.max_ratio = std::max(rep.max_ratio, ratio);
  }
  return rep;
}

}  // namespace siegel
