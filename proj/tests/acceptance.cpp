// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include "siegel/siegel.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace siegel;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double max_deviation(const std::vector<double>& v, double target) {
  double d = 0.0;
  for (double x : v) d = std::max(d, std::abs(x - target));
  return d;
}

Box heis_window(double zh, double xh) {
  return Box((RVec(3) << -zh, -zh, -xh).finished(), (RVec(3) << zh, zh, xh).finished());
}

AmbientPoint line_point(double x, double h = 0.0) { return {CVec(0), CVec::Constant(1, cplx(x, h))}; }

Outcome ac1() {
  std::ostringstream os;
  bool ok = true;
  for (double kappa : {kPi, 2.0, 5.0}) {
    const auto r = frame_ratio_1d(kappa, kappa, 2, 100, 101, 64);
    const double dev = max_deviation(r.ratios, std::sqrt(kappa / kPi));
    ok = ok && r.ratios.size() == 100 && dev <= 1e-4;
    os << "kappa=" << kappa << " max|ratio-sqrt(kappa/pi)|=" << dev << "; ";
  }
  return {ok, os.str()};
}

Outcome ac2() {
  std::ostringstream os;
  bool ok = true;
  for (double p : {1.0, 2.0, 4.0}) {
    const auto a = frame_ratio_1d(kPi, 1.2 * kPi, p, 200, 202, 64);
    const auto b = frame_ratio_1d(kPi, 1.2 * kPi, p, 200, 202, 128);
    const double dmin = std::abs(b.min_ratio / a.min_ratio - 1), dmax = std::abs(b.max_ratio / a.max_ratio - 1);
    ok = ok && a.converged && b.converged && a.min_ratio > 0 && std::isfinite(a.max_ratio) && dmin < 0.05 &&
         dmax < 0.05;
    os << "p=" << p << " [" << a.min_ratio << ", " << a.max_ratio << "] doubling change " << std::max(dmin, dmax)
       << "; ";
  }
  return {ok, os.str()};
}

Outcome ac3() {
  std::ostringstream os;
  const auto e = structures::euclidean(1);
  bool ok = true;
  const double kappa = kPi;
  for (double kk : {kPi, 2.0, 5.0}) {
    const double v = pfaffian_density_integral(e, SpectralSet::interval(-kk, kk), 8).value;
    ok = ok && std::abs(v / (kk / kPi) - 1) <= 1e-10;
  }
  const double bound = pfaffian_density_integral(e, SpectralSet::interval(-kappa, kappa), 8).value;
  os << "pfaffian(K=[-pi,pi])=" << bound << "; ";
  std::vector<GroupElement> centers;
  for (int i = -10; i <= 10; ++i) centers.push_back({CVec(0), RVec::Constant(1, 3.7 * i)});
  for (double f : {0.8, 1.0, 1.2}) {
    const double kp = f * kappa, step = kPi / kp;
    std::vector<AmbientPoint> pts;
    for (long k = -static_cast<long>(400 / step); k * step <= 400; ++k) pts.push_back(line_point(k * step));
    const auto r = beurling_density(e, pts, {25, 50, 100, 200}, centers, bound, 0.02);
    const double d = r.density.back();
    const bool want = kp >= kappa;
    ok = ok && std::abs(d / (kp / kPi) - 1) <= 0.02 && r.satisfies_bound == want;
    os << "kappa'=" << f << "pi D(200)=" << d << " bound_met=" << r.satisfies_bound << "; ";
  }
  return {ok, os.str()};
}

Outcome ac4() {
  const auto h = structures::heisenberg(1);
  const auto k = SpectralSet::interval(0, 1);
  const auto fam = construct_family(h, k, CMat::Identity(1, 1), RVec::Constant(1, 0.5), 1.0, {}, heis_window(22, 510));
  const double bound = pfaffian_density_integral(h, k, 8).value;
  const auto centers = random_centers(h, heis_window(2, 2), 100, 404);
  const auto r = beurling_density(h, fam.points, {20}, centers, bound, 0.1);
  std::ostringstream os;
  const double target = 1.0 / (2 * kPi * kPi);
  const bool ok = fam.hypothesis.holds && std::abs(bound / target - 1) < 1e-10 && centers.size() >= 100 &&
                  r.density[0] >= 0.9 * bound;
  os << "hypothesis max_ratio=" << fam.hypothesis.max_ratio << " points=" << fam.size() << " D(20)=" << r.density[0]
     << " bound=" << bound;
  return {ok, os.str()};
}

Outcome ac5() {
  const auto h = structures::heisenberg(1);
  const auto fam = construct_family(h, SpectralSet::interval(0, 1), CMat::Identity(1, 1), RVec::Constant(1, 0.5),
                                    1.0, {}, heis_window(7, 160));
  std::mt19937_64 rng(505);
  std::vector<SynthFunctionHeis> ens;
  for (int i = 0; i < 50; ++i) ens.push_back(random_synth_heis(i % 5, 1, 0.5, 1.0, rng));
  const auto deg = degradation_heis(h, ens, fam, {1, 2, 4, 8});
  bool ok = deg[0].min_ratio > 0 && std::isfinite(deg[0].max_ratio);
  std::ostringstream os;
  os << "min ratios by thinning:";
  for (std::size_t i = 0; i < deg.size(); ++i) {
    os << " " << deg[i].thinning << ":" << deg[i].min_ratio;
    if (i > 0) ok = ok && deg[i].min_ratio < deg[i - 1].min_ratio;
  }
  return {ok, os.str()};
}

// Empirical embedding constants against the checker's characterization
// statistic for random rho-bounded atom measures on the line.
Outcome ac6() {
  const auto e = structures::euclidean(1);
  const auto k = SpectralSet::interval(-kPi, kPi);
  std::mt19937_64 rng(606);
  std::vector<SynthFunction1D> ens;
  for (int i = 0; i < 24; ++i) ens.push_back(random_synth_1d(kPi, 24, rng));
  std::vector<PointMeasure> measures;
  std::uniform_real_distribution<double> u(0, 1);
  for (int j = 0; j < 20; ++j) {
    PointMeasure mu;
    mu.rho_bound = 2.0;
    const int count = 5 + static_cast<int>(75 * u(rng));
    const double spread = 2 + 18 * u(rng), scale = std::exp(std::log(0.1) + std::log(100.0) * u(rng));
    for (int a = 0; a < count; ++a)
      mu.add(line_point(spread * (2 * u(rng) - 1), 4 * u(rng) - 2), scale * (0.1 + 0.9 * u(rng)));
    measures.push_back(mu);
  }
  ProbeSpec probe;
  probe.window = Box((RVec(2) << -25, -3).finished(), (RVec(2) << 25, 3).finished());
  probe.step = 0.5;
  probe.dyadic_levels = 1;
  std::ostringstream os;
  bool ok = true;
  for (auto [p, q] : {std::pair{2.0, 2.0}, std::pair{4.0, 2.0}}) {
    std::vector<double> norms;
    for (const auto& f : ens) norms.push_back(norm_1d(f, p).value);
    std::vector<double> emp, stat;
    for (const auto& mu : measures) {
      double best = 0.0;
      for (std::size_t i = 0; i < ens.size(); ++i) {
        double acc = 0.0;
        for (std::size_t a = 0; a < mu.size(); ++a)
          acc += mu.weights[a] * std::pow(std::abs(eval_1d(ens[i], mu.atoms[a].z[0])), q);
        best = std::max(best, std::pow(acc, 1 / q) / norms[i]);
      }
      emp.push_back(best);
      stat.push_back(carleson_check(e, mu, k, MixedNormSpec(p, q), probe).characterization_norm);
      ok = ok && (!std::isfinite(stat.back()) || std::isfinite(best));
    }
    const double rho = stats::spearman(emp, stat);
    ok = ok && rho > 0.7;
    os << "(p,q)=(" << p << "," << q << ") spearman=" << rho << "; ";
  }
  return {ok, os.str()};
}

GroupElement random_group(std::mt19937_64& rng, int n, int m) {
  std::normal_distribution<double> nd;
  GroupElement g{CVec(n), RVec(m)};
  for (int i = 0; i < n; ++i) g.zeta[i] = cplx(nd(rng), nd(rng));
  for (int i = 0; i < m; ++i) g.x[i] = nd(rng);
  return g;
}

std::vector<RVec> random_cloud(std::mt19937_64& rng, int m, int count, double shift) {
  std::normal_distribution<double> nd;
  std::vector<RVec> out;
  for (int i = 0; i < count; ++i) {
    RVec v(m);
    for (int j = 0; j < m; ++j) v[j] = nd(rng) + shift;
    out.push_back(v);
  }
  return out;
}

Outcome ac7() {
  constexpr int kCases = 1000;
  std::vector<std::pair<std::string, std::function<bool()>>> suites;
  CMat a1(2, 2), a2(2, 2);
  a1 << 1.0, cplx(0.0, 0.3), cplx(0.0, -0.3), 2.0;
  a2 << 0.5, 0.2, 0.2, -0.4;
  const auto quadric = SiegelStructure::make(2, 2, {a1, a2});
  const auto heis = structures::heisenberg(1);

  suites.emplace_back("associativity", [&] {
    std::mt19937_64 rng(71);
    for (int t = 0; t < kCases; ++t) {
      const auto a = random_group(rng, 2, 2), b = random_group(rng, 2, 2), c = random_group(rng, 2, 2);
      const auto l = multiply(quadric, a, multiply(quadric, b, c)), r = multiply(quadric, multiply(quadric, a, b), c);
      if (max_abs(l.zeta - r.zeta) > 1e-12 || max_abs(l.x - r.x) > 1e-12) return false;
    }
    return true;
  });
  suites.emplace_back("left-invariance/homogeneity/triangle", [&] {
    std::mt19937_64 rng(72);
    std::uniform_real_distribution<double> ut(0.1, 10.0);
    for (int t = 0; t < kCases; ++t) {
      const auto g = random_group(rng, 2, 2), a = random_group(rng, 2, 2), b = random_group(rng, 2, 2),
                 c = random_group(rng, 2, 2);
      const double d = dist_group(quadric, a, b), s = ut(rng);
      if (std::abs(dist_group(quadric, multiply(quadric, g, a), multiply(quadric, g, b)) - d) > 1e-12 * (1 + d))
        return false;
      const double ds = dist_group(quadric, dilate(s, a), dilate(s, b)), want = std::pow(s, quadric.theta()) * d;
      if (std::abs(ds - want) > 1e-10 * want + 1e-14) return false;
      if (dist_group(quadric, a, c) > d + dist_group(quadric, b, c) + 1e-12) return false;
    }
    return true;
  });
  suites.emplace_back("H_K subadditive/homogeneous", [&] {
    std::mt19937_64 rng(73);
    std::normal_distribution<double> nd;
    std::uniform_real_distribution<double> ut(0.01, 100.0);
    for (int t = 0; t < kCases; ++t) {
      const int m = 1 + t % 3;
      const SpectralSet k(random_cloud(rng, m, 6, 0.0));
      RVec h(m), g(m);
      for (int i = 0; i < m; ++i) h[i] = nd(rng), g[i] = nd(rng);
      if (support_function(k, h + g) > support_function(k, h) + support_function(k, g) + 1e-10) return false;
      const double s = ut(rng), hk = support_function(k, h);
      if (std::abs(support_function(k, s * h) - s * hk) > 1e-12 * std::abs(s * hk) + 1e-300) return false;
    }
    return true;
  });
  suites.emplace_back("bipolar", [&] {
    std::mt19937_64 rng(74);
    std::uniform_real_distribution<double> sh(-1.5, 1.5);
    for (int t = 0; t < kCases; ++t) {
      const int m = 1 + t % 3;
      auto cloud = random_cloud(rng, m, 4 + t % 5, sh(rng));
      const SpectralSet a(cloud);
      cloud.push_back(RVec::Zero(m));
      const SpectralSet env(cloud);
      const Polyhedron bip = polar(polar(a));
      if (!bip.has_vrep() || !bip.rays->empty()) return false;
      for (const auto& v : *bip.vertices)
        if (!env.contains(v, 1e-9)) return false;
      for (const auto& v : env.extreme_points())
        if (!bip.contains(v, 1e-9)) return false;
    }
    return true;
  });
  suites.emplace_back("lattice separation/covering", [&] {
    const double delta = 0.5;
    const Box w = Box::cube(3, 2.0);
    const auto f = build_lattice(heis, w, delta);
    const auto rep = verify_lattice(heis, f, 0.25);
    if (!rep.separation_ok || !rep.covering_ok) return false;
    std::mt19937_64 rng(75);
    std::uniform_real_distribution<double> u(-2, 2);
    std::uniform_int_distribution<std::size_t> pick(0, f.points.size() - 1);
    for (int t = 0; t < kCases; ++t) {
      const auto g = group_from_coords(heis, (RVec(3) << u(rng), u(rng), u(rng)).finished());
      double best = kInf;
      for (const auto& p : f.points) best = std::min(best, dist_group(heis, project(p), g));
      if (best > f.bigR * delta + 1e-12) return false;
      const auto i = pick(rng), j = pick(rng);
      if (i != j && dist_group(heis, project(f.points[i]), project(f.points[j])) < 2 * delta - 1e-12) return false;
    }
    return true;
  });
  suites.emplace_back("M_R monotone/covariant", [&] {
    std::mt19937_64 rng(76);
    std::uniform_real_distribution<double> u(-2, 2), ur(0.1, 2.0), uw(0.1, 1.0);
    auto pt = [&](double rho) {
      const GroupElement g{CVec::Constant(1, cplx(u(rng), u(rng))), RVec::Constant(1, u(rng))};
      return lift(heis, g, RVec::Constant(1, rho));
    };
    PointMeasure mu;
    for (int i = 0; i < 60; ++i) mu.add(pt(0.75 * (u(rng) + 2)), uw(rng));
    for (int t = 0; t < kCases; ++t) {
      const auto p = pt(u(rng));
      double r1 = ur(rng), r2 = ur(rng);
      if (r1 > r2) std::swap(r1, r2);
      if (maximal_function(heis, mu, nullptr, r1, p) > maximal_function(heis, mu, nullptr, r2, p)) return false;
      const auto g = pt(u(rng));
      const double r = ur(rng);
      const double a = maximal_function(heis, translate(heis, mu, g), nullptr, r, ambient_multiply(heis, g, p));
      const double b = maximal_function(heis, mu, nullptr, r, p);
      if (std::abs(a - b) > 1e-12) {
        bool boundary = false;
        for (const auto& at : mu.atoms) boundary |= std::abs(dist_ambient(heis, p, at) - r) < 1e-9;
        if (!boundary) return false;
      }
    }
    return true;
  });
  suites.emplace_back("Parseval vs quadrature", [&] {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> uk(0.5, 5.0);
    for (int t = 0; t < kCases; ++t) {
      const auto f = random_synth_1d(uk(rng), 8, rng);
      if (std::abs(norm_1d_quadrature(f, 2).value / norm_1d(f, 2).value - 1) > 1e-6) return false;
    }
    return true;
  });
  suites.emplace_back("sample_sum additivity", [&] {
    std::mt19937_64 rng(78);
    std::uniform_real_distribution<double> u(-20, 20);
    for (int t = 0; t < kCases; ++t) {
      const auto f = random_synth_1d(kPi, 4, rng);
      std::vector<cplx> a, b, ab;
      for (int i = 0; i < 5; ++i) a.push_back(u(rng)), ab.push_back(a.back());
      for (int i = 0; i < 3; ++i) b.push_back(u(rng)), ab.push_back(b.back());
      const double lhs = std::pow(sample_sum(f, ab, 2), 2);
      const double rhs = std::pow(sample_sum(f, a, 2), 2) + std::pow(sample_sum(f, b, 2), 2);
      if (std::abs(lhs - rhs) > 1e-12 * std::max(1.0, lhs)) return false;
    }
    return true;
  });

  bool ok = true;
  std::ostringstream os;
  for (const auto& [name, run] : suites) {
    const bool r = run();
    ok = ok && r;
    os << name << "=" << (r ? "ok" : "FAILED") << "; ";
  }
  return {ok, os.str()};
}

Outcome ac8() {
  std::mt19937_64 rng(808);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const auto f = random_synth_heis(i % 5, 0, 0.5, 1.0, rng);
    worst = std::max(worst, std::abs(norm_heis_bruteforce(f) / norm_heis(f) - 1));
  }
  std::ostringstream os;
  os << "max relative error over 20 functions=" << worst;
  return {worst <= 1e-3, os.str()};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
    double budget_s;
  };
  const Criterion all[] = {{"AC1 WKS constant", ac1, 10},
                           {"AC2 Plancherel-Polya frame bounds", ac2, 60},
                           {"AC3 Nyquist density bound", ac3, 5},
                           {"AC4 Heisenberg density bound", ac4, 120},
                           {"AC5 Heisenberg frame ratios", ac5, 300},
                           {"AC6 Carleson characterization consistency", ac6, 600},
                           {"AC7 invariant suites", ac7, 120},
                           {"AC8 norm oracle cross-validation", ac8, 60}};
  int failed = 0;
  for (const auto& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = o.pass && secs <= c.budget_s;
    failed += !pass;
    std::printf("%s %s: %s [%.2fs / %.0fs]\n", pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), secs, c.budget_s);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
