#pragma once

#include "siegel/types.hpp"

#include <cmath>
#include <vector>

namespace siegel::quad {

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule with `n` nodes on [-1, 1] (Newton iteration on P_n).
inline Rule gauss_legendre(int n) {
  require(n >= 1, "gauss_legendre: need at least one node");
  Rule r;
  r.nodes.assign(n, 0.0);
  r.weights.assign(n, 0.0);
  if (n == 1) {
    r.weights[0] = 2.0;
    return r;
  }
  // P_n(x) and P_n'(x) by the three-term recurrence.
  auto legendre = [n](double x, double& dp) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    return p1;
  };
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double dx = legendre(x, dp) / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    legendre(x, dp);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;
  return r;
}

/// Rule mapped to [a, b].
inline Rule gauss_legendre(int n, double a, double b) {
  Rule r = gauss_legendre(n);
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    r.nodes[i] = c + h * r.nodes[i];
    r.weights[i] *= h;
  }
  return r;
}

/// Composite Gauss-Legendre integral of fn over [a, b] with `panels` panels.
template <class Fn>
double composite(Fn&& fn, double a, double b, int panels, int nodes_per_panel) {
  const Rule base = gauss_legendre(nodes_per_panel);
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double c = a + (p + 0.5) * h;
    for (int i = 0; i < nodes_per_panel; ++i)
      sum += base.weights[i] * 0.5 * h * fn(c + 0.5 * h * base.nodes[i]);
  }
  return sum;
}

}  // namespace siegel::quad
