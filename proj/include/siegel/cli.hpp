#pragma once

// Config-driven task runner behind the siegel-sampler executable. Each task
// reads config["params"], writes report.json (plus CSV series) into the output
// directory and returns 0 (completed), 2 (negative verdict) or 1 (error).

#include "siegel/json_io.hpp"
#include "siegel/report.hpp"
#include "siegel/sampling.hpp"
#include "siegel/synth_1d.hpp"
#include "siegel/synth_heis.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#ifndef SIEGEL_VERSION
#define SIEGEL_VERSION "0.0.0"
#endif

namespace siegel::cli {

using io::Json;
namespace fs = std::filesystem;

inline const std::vector<std::string>& tasks() {
  static const std::vector<std::string> t = {"analyze-measure", "build-lattice", "construct-sampling-family",
                                             "density-bound",   "verify-1d",     "verify-heisenberg",
                                             "carleson-check"};
  return t;
}

// Verdicts that map to exit code 2.
inline bool negative(const std::string& v) {
  static const std::set<std::string> bad = {"fails", "not_carleson", "hypothesis_fails", "bound_not_met",
                                            "lattice_invalid"};
  return bad.count(v) > 0;
}

struct Context {
  std::string task;
  Json config;
  Json params;
  std::uint64_t seed = 0;
  fs::path out;
  Json report;
  std::vector<io::Series> series;

  void verdict(const std::string& v, const std::string& theorem, const Json& window) {
    report["verdicts"].push_back({{"verdict", v}, {"theorem", theorem}, {"window", window}});
  }
};

namespace detail {

inline Json trend_json(const Trend& t) {
  return {{"scales", t.scales}, {"values", t.values}, {"slope", t.slope}};
}

inline MixedNormSpec spec_from(const Json& p) {
  auto exponent = [&](const char* key) {
    const Json& v = io::field(p, key, "params.");
    if (v.is_string() && v.get<std::string>() == "inf") return kInf;
    if (!v.is_number()) throw InputError(std::string("config: field 'params.") + key + "' must be a number or \"inf\"");
    return v.get<double>();
  };
  return MixedNormSpec(exponent("p"), exponent("q"));
}

inline ProbeSpec probe_from(const SiegelStructure& s, const Json& p) {
  const Json& pj = io::field(p, "probe", "params.");
  ProbeSpec probe;
  probe.window = io::box_from(io::field(pj, "window", "params.probe."), 2 * s.n() + 2 * s.m(), "params.probe.window");
  probe.step = io::get_double(pj, "step", "params.probe.", 0.5);
  probe.dyadic_levels = static_cast<int>(io::get_int(pj, "dyadic_levels", "params.probe.", 3));
  return probe;
}

inline std::vector<double> doubles(const Json& p, const std::string& key, const std::string& path) {
  const RVec v = io::rvec_from(io::field(p, key, path), path + key);
  return std::vector<double>(v.data(), v.data() + v.size());
}

inline Json carleson_json(const CarlesonReport& r) {
  return {{"sup_M1", r.sup_m1},
          {"characterization_norm", r.characterization_norm},
          {"sufficiency_norm", r.sufficiency_norm},
          {"necessity_bound", r.necessity_bound},
          {"vanishing_at_infinity", r.vanishing_at_infinity},
          {"exponent_(p/q)'", r.exponent},
          {"characterization_trend", trend_json(r.characterization_trend)},
          {"sufficiency_trend", trend_json(r.sufficiency_trend)},
          {"necessity_trend", trend_json(r.necessity_trend)}};
}

inline Json necessary_json(const NecessaryReport& r) {
  return {{"sup_M1", r.sup_m1}, {"radii", r.radii},     {"inf_MR", r.inf_mr},
          {"best_R", r.best_r}, {"best_C", r.best_c},   {"probe_step", r.probe_step},
          {"probe_count", r.probe_count}};
}

inline void run_necessary(Context& c, const SiegelStructure& s, const PointMeasure& mu, const Json& block,
                          const std::string& path) {
  const auto radii = doubles(block, "R", path);
  const Box w = io::box_from(io::field(block, "window", path), 2 * s.n() + s.m(), path + "window");
  const auto r = necessary_sampling_check(s, mu, radii, w, io::get_double(block, "step", path, 0.25));
  c.report["statistics"]["necessary"] = necessary_json(r);
  c.verdict(r.verdict, r.theorem, io::to_json(w));
  io::Series ser{"inf_MR_vs_R.csv", {"R", "inf_MR"}, {}, {}};
  for (std::size_t i = 0; i < r.radii.size(); ++i) ser.rows.push_back({r.radii[i], r.inf_mr[i]});
  c.series.push_back(ser);
}

// The sampling-family block shared by construct-sampling-family, density-bound
// and verify-heisenberg.
inline SamplingFamily family_from_params(const SiegelStructure& s, const Json& p, const std::string& path,
                                         Json& certificates) {
  const int n = s.n();
  const SpectralSet k = io::spectral_set_from(io::field(p, "K", path), s.m(), path + "K");
  const CMat basis = p.contains("basis") ? io::cmat_from(p.at("basis"), path + "basis", n, n) : CMat(CMat::Identity(n, n));
  const RVec lambda = io::rvec_from(io::field(p, "lambda_center", path), path + "lambda_center", s.m());
  const double r = io::get_double(p, "r", path);
  std::optional<double> xs;
  if (p.contains("x_spacing")) xs = io::get_double(p, "x_spacing", path);
  const Box w = io::box_from(io::field(p, "window", path), 2 * n + s.m(), path + "window");
  try {
    if (p.contains("fock")) {
      const Json& fj = p.at("fock");
      const RVec c = io::rvec_from(io::field(fj, "c", path + "fock."), path + "fock.c", n);
      const RVec a = io::rvec_from(io::field(fj, "spacing", path + "fock."), path + "fock.spacing", n);
      return construct_family_fock(s, k, basis, c, a, lambda, r, xs, w);
    }
    return construct_family(s, k, basis, lambda, r, xs, w);
  } catch (const HypothesisError& e) {
    // Record the failing certificate before propagating.
    if (k.has_hull() && k.hull().affine_dim == k.dim() && n > 0 && std::abs(basis.determinant()) > 1e-12) {
      const RVec c = p.contains("fock") ? io::rvec_from(p.at("fock").at("c"), path + "fock.c", n)
                                        : RVec(RVec::Constant(n, kPi / 2));
      certificates["hypothesis"] = io::to_json(siegel::detail::check_hypothesis(s, k, basis, c, !p.contains("fock")));
    }
    throw;
  }
}

inline Json family_summary(const SamplingFamily& f) {
  return {{"construction_tag", f.construction_tag}, {"points", f.size()}, {"x_step", f.x_step},
          {"r", f.r}, {"restriction", f.restriction}};
}

// ------------------------------------------------------------------- tasks

inline void analyze_measure(Context& c, const SiegelStructure& s) {
  const Json& p = c.params;
  const PointMeasure mu = io::measure_from(s, io::field(p, "measure", "params."));
  const SpectralSet k = io::spectral_set_from(io::field(p, "K", "params."), s.m(), "params.K");
  const ProbeSpec probe = probe_from(s, p);
  const auto cr = carleson_check(s, mu, k, spec_from(p), probe, io::get_double(p, "necessity_radius", "params.", 1.0));
  c.report["statistics"]["measure"] = {{"atoms", mu.size()}, {"total_mass", mu.total_mass()},
                                        {"discretization", mu.discretization}};
  c.report["statistics"]["carleson"] = carleson_json(cr);
  c.verdict(cr.verdict, cr.theorem, io::to_json(probe.window));
  if (p.contains("sparse")) {
    const Json& sj = p.at("sparse");
    const auto sr = sparse_check(s, mu, io::get_double(sj, "R", "params.sparse.", 1.0),
                                 doubles(sj, "eps", "params.sparse."), probe);
    c.report["statistics"]["sparse"] = {{"eps", sr.eps}, {"R_prime", sr.r_prime}, {"verified", sr.verified},
                                        {"inner_radius", sr.inner_radius}, {"sparse", sr.sparse}};
    c.verdict(sr.sparse ? "sparse" : "not_verified_sparse", "def:sparse:M_R_vanishes_at_infinity",
              io::to_json(probe.window));
  }
  if (p.contains("necessary") && mu.rho_bound) run_necessary(c, s, mu, p.at("necessary"), "params.necessary.");
  io::Series tr{"carleson_trends.csv", {"window_scale", "characterization", "sufficiency", "necessity"}, {}, {}};
  for (std::size_t i = 0; i < cr.characterization_trend.scales.size(); ++i)
    tr.rows.push_back({cr.characterization_trend.scales[i], cr.characterization_trend.values[i],
                       cr.sufficiency_trend.values[i], cr.necessity_trend.values[i]});
  c.series.push_back(tr);
}

inline void build_lattice_task(Context& c, const SiegelStructure& s) {
  const Json& p = c.params;
  const double delta = io::get_double(p, "delta", "params.");
  std::optional<double> completion;
  if (p.contains("completion_step")) completion = io::get_double(p, "completion_step", "params.");
  LatticeFamily f;
  if (p.contains("levels")) {
    std::vector<RVec> levels;
    for (const auto& h : p.at("levels")) levels.push_back(io::rvec_from(h, "params.levels", s.m()));
    const Box w = io::box_from(io::field(p, "window", "params."), 2 * s.n() + 2 * s.m(), "params.window");
    f = build_restricted_lattice(s, w, delta, levels, completion);
  } else {
    const Box w = io::box_from(io::field(p, "window", "params."), 2 * s.n() + s.m(), "params.window");
    f = build_lattice(s, w, delta, completion);
  }
  const auto r = verify_lattice(s, f, io::get_double(p, "probe_step", "params.", 0.5 * delta),
                                io::get_double(p, "margin", "params.", 0.0));
  c.report["statistics"]["lattice"] = {{"points", f.points.size()},
                                       {"delta", f.delta},
                                       {"R", f.bigR},
                                       {"restricted", f.restricted},
                                       {"min_pairwise_distance", r.min_pairwise_distance},
                                       {"worst_gap", r.worst_gap},
                                       {"worst_probe", io::to_json(r.worst_probe)},
                                       {"probe_count", r.probe_count},
                                       {"probe_step", r.probe_step}};
  // The strong-sampling corollary for lattices assumes this of d_N; it is reported, not assumed.
  const auto mid = midpoint_property(s, 64, c.seed);
  c.report["statistics"]["midpoint_property"] = {{"holds", mid.holds}, {"worst_ratio", mid.worst_ratio},
                                                 {"samples", mid.samples}};
  c.report["certificates"]["separation_ok"] = r.separation_ok;
  c.report["certificates"]["covering_ok"] = r.covering_ok;
  c.verdict(r.separation_ok && r.covering_ok ? "valid_lattice" : "lattice_invalid", "def:lattice:delta_R",
            io::to_json(r.window));
  std::ofstream(c.out / "lattice.json") << io::dump17(io::to_json(f));
  c.report["files"].push_back("lattice.json");
}

inline void construct_family_task(Context& c, const SiegelStructure& s) {
  Json certs = Json::object();
  try {
    const SamplingFamily f = family_from_params(s, c.params, "params.", certs);
    c.report["statistics"]["family"] = family_summary(f);
    c.report["certificates"]["hypothesis"] = io::to_json(f.hypothesis);
    c.report["certificates"]["covering"] = io::to_json(f.covering);
    c.verdict("constructed", f.construction_tag, io::to_json(f.window));
    std::ofstream(c.out / "family.json") << io::dump17(io::to_json(f));
    c.report["files"].push_back("family.json");
  } catch (const HypothesisError& e) {
    c.report["certificates"] = certs;
    c.report["statistics"]["error"] = e.what();
    c.verdict("hypothesis_fails", "cor:gaussian_integer:hypothesis", Json());
  }
}

inline void density_bound_task(Context& c, const SiegelStructure& s) {
  const Json& p = c.params;
  std::vector<AmbientPoint> pts;
  Json certs = Json::object();
  if (p.contains("family")) {
    const SamplingFamily f = family_from_params(s, p.at("family"), "params.family.", certs);
    pts = f.points;
    c.report["statistics"]["family"] = family_summary(f);
    c.report["certificates"]["hypothesis"] = io::to_json(f.hypothesis);
  } else {
    pts = io::measure_from(s, io::field(p, "measure", "params.")).atoms;
  }
  const SpectralSet k = io::spectral_set_from(io::field(p, "K", "params."), s.m(), "params.K");
  const auto pf = pfaffian_density_integral(s, k, static_cast<int>(io::get_int(p, "quad_points", "params.", 8)));
  std::vector<GroupElement> centers;
  const Json& cj = io::field(p, "centers", "params.");
  if (cj.contains("points")) {
    for (const auto& e : cj.at("points"))
      centers.push_back(group_from_coords(s, io::rvec_from(e, "params.centers.points", 2 * s.n() + s.m())));
  } else {
    const Box cb = io::box_from(io::field(cj, "box", "params.centers."), 2 * s.n() + s.m(), "params.centers.box");
    centers = random_centers(s, cb, static_cast<std::size_t>(io::get_int(cj, "count", "params.centers.")), c.seed);
  }
  const auto r = beurling_density(s, pts, doubles(p, "R", "params."), centers, pf.value,
                                  io::get_double(p, "slack", "params.", 0.0));
  c.report["statistics"]["density"] = {{"R", r.radii},
                                       {"density", r.density},
                                       {"mean_density", r.mean_density},
                                       {"ball_constant", r.ball_constant},
                                       {"homogeneous_dimension", r.homogeneous_dimension},
                                       {"centers", r.centers},
                                       {"slope", r.slope},
                                       {"points", pts.size()}};
  c.report["statistics"]["pfaffian"] = {{"bound", pf.value}, {"integral", pf.integral},
                                        {"K_within_closed_cone", pf.within_closed_cone}};
  c.report["certificates"]["slack"] = r.slack;
  c.verdict(r.satisfies_bound ? "bound_met" : "bound_not_met", r.theorem, Json());
  io::Series ser{"density_vs_R.csv", {"R", "inf_density", "mean_density", "bound"}, {}, {}};
  for (std::size_t i = 0; i < r.radii.size(); ++i)
    ser.rows.push_back({r.radii[i], r.density[i], r.mean_density[i], r.bound});
  c.series.push_back(ser);
}

inline void verify_1d_task(Context& c) {
  const Json& p = c.params;
  const double kappa = io::get_double(p, "kappa", "params.");
  const double kp = io::get_double(p, "kappa_prime", "params.", kappa);
  const double pe = io::get_double(p, "p", "params.", 2.0);
  const int ens = static_cast<int>(io::get_int(p, "ensemble", "params.", 100));
  const int n = static_cast<int>(io::get_int(p, "N", "params.", 64));
  const auto r = frame_ratio_1d(kappa, kp, pe, ens, c.seed, n);
  Json st = {{"min_ratio", r.min_ratio}, {"max_ratio", r.max_ratio}, {"converged", r.converged},
             {"ratios", r.ratios}, {"N", r.N}};
  bool ok = r.converged && r.min_ratio > 0 && std::isfinite(r.max_ratio);
  if (r.expected > 0) {
    double dev = 0.0;
    for (double v : r.ratios) dev = std::max(dev, std::abs(v - r.expected));
    st["expected"] = r.expected;
    st["max_deviation"] = dev;
    ok = ok && dev <= 1e-4;
  }
  if (p.value("doubling", false)) {
    const auto r2 = frame_ratio_1d(kappa, kp, pe, ens, c.seed, 2 * n);
    st["doubled"] = {{"N", r2.N}, {"min_ratio", r2.min_ratio}, {"max_ratio", r2.max_ratio},
                     {"min_change", std::abs(r2.min_ratio / r.min_ratio - 1)},
                     {"max_change", std::abs(r2.max_ratio / r.max_ratio - 1)}};
  }
  c.report["statistics"]["frame_ratio_1d"] = st;
  c.verdict(ok ? (r.expected > 0 ? "wks_isometry_verified" : "frame_bounds_positive") : "fails",
            r.expected > 0 ? "intro:wks:C=sqrt(kappa/pi)" : "intro:plancherel_polya:frame_bounds", Json());
  io::Series ser{"frame_ratios.csv", {"member", "ratio"}, {}, {}};
  for (std::size_t i = 0; i < r.ratios.size(); ++i) ser.rows.push_back({static_cast<double>(i), r.ratios[i]});
  ser.summary = {{"min", {r.min_ratio}}, {"max", {r.max_ratio}}};
  c.series.push_back(ser);
}

inline void verify_heisenberg_task(Context& c, const SiegelStructure& s) {
  const Json& p = c.params;
  require(s.n() == 1 && s.m() == 1, "verify-heisenberg: needs the Heisenberg structure n = m = 1");
  Json certs = Json::object();
  const SamplingFamily f = family_from_params(s, io::field(p, "family", "params."), "params.family.", certs);
  const Json& ej = io::field(p, "ensemble", "params.");
  const int size = static_cast<int>(io::get_int(ej, "size", "params.ensemble.", 50));
  const int deg = static_cast<int>(io::get_int(ej, "degree", "params.ensemble.", 4));
  const int pdeg = static_cast<int>(io::get_int(ej, "profile_degree", "params.ensemble.", 1));
  const double t0 = io::get_double(ej, "tau0", "params.ensemble.", 0.5);
  const double t1 = io::get_double(ej, "tau1", "params.ensemble.", 1.0);
  std::mt19937_64 rng(c.seed);
  std::vector<SynthFunctionHeis> ens;
  for (int i = 0; i < size; ++i) ens.push_back(random_synth_heis(i % (deg + 1), pdeg, t0, t1, rng));
  const auto rep = frame_ratio_heis(s, ens, f, io::get_double(p, "max_truncation", "params.", 1e-2));
  std::vector<long> factors = {1, 2, 4, 8};
  if (p.contains("thinning")) factors = p.at("thinning").get<std::vector<long>>();
  const auto deg_reps = degradation_heis(s, ens, f, factors);
  bool monotone = true;
  for (std::size_t i = 1; i < deg_reps.size(); ++i) monotone = monotone && deg_reps[i].min_ratio < deg_reps[i - 1].min_ratio;
  Json st = {{"min_ratio", rep.min_ratio}, {"max_ratio", rep.max_ratio}, {"ratios", rep.ratios},
             {"truncation_estimate", rep.truncation_estimate}, {"family", family_summary(f)},
             {"degradation_monotone", monotone}};
  Json dj = Json::array();
  io::Series ds{"degradation.csv", {"thinning", "x_step", "points", "min_ratio", "max_ratio"}, {}, {}};
  for (const auto& d : deg_reps) {
    dj.push_back({{"thinning", d.thinning}, {"x_step", d.x_step}, {"points", d.family_points},
                  {"min_ratio", d.min_ratio}, {"max_ratio", d.max_ratio}});
    ds.rows.push_back({static_cast<double>(d.thinning), d.x_step, static_cast<double>(d.family_points), d.min_ratio,
                       d.max_ratio});
  }
  st["degradation"] = dj;
  const int oracle = static_cast<int>(io::get_int(p, "oracle_count", "params.", 0));
  if (oracle > 0) {
    double worst = 0.0;
    for (int i = 0; i < std::min(oracle, size); ++i)
      worst = std::max(worst, std::abs(norm_heis_bruteforce(ens[static_cast<std::size_t>(i)]) /
                                           norm_heis(ens[static_cast<std::size_t>(i)]) - 1));
    st["oracle_max_rel_error"] = worst;
  }
  c.report["statistics"]["frame_ratio_heis"] = st;
  c.report["certificates"]["hypothesis"] = io::to_json(f.hypothesis);
  c.report["certificates"]["covering"] = io::to_json(f.covering);
  c.verdict(rep.min_ratio > 0 && std::isfinite(rep.max_ratio) ? "frame_ratios_positive" : "fails",
            f.construction_tag + ":strongly_sampling", io::to_json(f.window));
  io::Series ser{"frame_ratios_heis.csv", {"member", "ratio"}, {}, {}};
  for (std::size_t i = 0; i < rep.ratios.size(); ++i) ser.rows.push_back({static_cast<double>(i), rep.ratios[i]});
  ser.summary = {{"min", {rep.min_ratio}}, {"max", {rep.max_ratio}}};
  c.series.push_back(ser);
  c.series.push_back(ds);
}

inline void carleson_task(Context& c, const SiegelStructure& s) {
  const Json& p = c.params;
  const PointMeasure mu = io::measure_from(s, io::field(p, "measure", "params."));
  const std::string mode = p.value("mode", std::string("carleson"));
  if (mode == "sampling") {
    run_necessary(c, s, mu, io::field(p, "necessary", "params."), "params.necessary.");
    return;
  }
  const SpectralSet k = io::spectral_set_from(io::field(p, "K", "params."), s.m(), "params.K");
  if (mode == "1d") {
    const auto r = carleson_check_1d(s, mu, k, spec_from(p), io::get_double(p, "R_max", "params.", 16.0),
                                     io::get_double(p, "x_half_width", "params.", 20.0),
                                     io::get_double(p, "x_step", "params.", 0.25));
    c.report["statistics"]["carleson_1d"] = {{"R", r.radii}, {"ratio", r.ratios}, {"slope", r.slope},
                                             {"sup_ratio", r.sup_ratio}};
    c.verdict(r.verdict, r.theorem, {{"x_half_width", r.x_half_width}});
    io::Series ser{"MqKR_ratio_vs_R.csv", {"R", "sup_ratio"}, {}, {}};
    for (std::size_t i = 0; i < r.radii.size(); ++i) ser.rows.push_back({r.radii[i], r.ratios[i]});
    c.series.push_back(ser);
    return;
  }
  require(mode == "carleson", "config: field 'params.mode' must be 'carleson', '1d' or 'sampling'");
  const ProbeSpec probe = probe_from(s, p);
  const auto cr = carleson_check(s, mu, k, spec_from(p), probe, io::get_double(p, "necessity_radius", "params.", 1.0));
  c.report["statistics"]["carleson"] = carleson_json(cr);
  c.verdict(cr.verdict, cr.theorem, io::to_json(probe.window));
  io::Series tr{"carleson_trends.csv", {"window_scale", "characterization", "sufficiency", "necessity"}, {}, {}};
  for (std::size_t i = 0; i < cr.characterization_trend.scales.size(); ++i)
    tr.rows.push_back({cr.characterization_trend.scales[i], cr.characterization_trend.values[i],
                       cr.sufficiency_trend.values[i], cr.necessity_trend.values[i]});
  c.series.push_back(tr);
}

inline std::string timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

}  // namespace detail

/// Runs one task. Errors are reported on `err` and give exit code 1.
inline int run(const std::string& task, const Json& config, const fs::path& out,
               std::optional<std::uint64_t> seed_override = std::nullopt, std::ostream& err = std::cerr) {
  Context c;
  c.task = task;
  c.out = out;
  try {
    if (std::find(tasks().begin(), tasks().end(), task) == tasks().end())
      throw InputError("unknown task '" + task + "'");
    if (!config.is_object()) throw InputError("config: top level must be an object");
    if (config.contains("task") && config.at("task") != task)
      throw InputError("config: field 'task' is '" + config.at("task").get<std::string>() + "', not '" + task + "'");
    c.config = config;
    c.seed = seed_override ? *seed_override
                           : static_cast<std::uint64_t>(io::get_int(config, "seed", "", 0));
    c.config["seed"] = c.seed;
    c.config["task"] = task;
    c.params = config.value("params", Json::object());
    fs::create_directories(out);
    c.report = {{"task", task}, {"inputs", c.config}, {"statistics", Json::object()},
                {"certificates", Json::object()}, {"verdicts", Json::array()}, {"files", Json::array()}};
    const bool needs_structure = task != "verify-1d";
    std::optional<SiegelStructure> s;
    if (needs_structure) {
      s = io::structure_from(io::field(config, "structure", ""));
      c.report["structure"] = io::to_json(*s);
    }
    if (task == "analyze-measure") detail::analyze_measure(c, *s);
    else if (task == "build-lattice") detail::build_lattice_task(c, *s);
    else if (task == "construct-sampling-family") detail::construct_family_task(c, *s);
    else if (task == "density-bound") detail::density_bound_task(c, *s);
    else if (task == "verify-1d") detail::verify_1d_task(c);
    else if (task == "verify-heisenberg") detail::verify_heisenberg_task(c, *s);
    else detail::carleson_task(c, *s);

    for (const auto& f : io::emit_plot_data(c.series, out)) c.report["files"].push_back(f);
    c.report["provenance"] = {{"version", SIEGEL_VERSION}, {"seed", c.seed}, {"timestamp", detail::timestamp()}};
    std::ofstream(out / "report.json") << io::dump17(c.report);
    for (const auto& v : c.report["verdicts"])
      if (negative(v.at("verdict").get<std::string>())) return 2;
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

/// Reads the config file and runs the task.
inline int run_file(const std::string& task, const fs::path& config_path, const fs::path& out,
                    std::optional<std::uint64_t> seed_override = std::nullopt, std::ostream& err = std::cerr) {
  std::ifstream in(config_path);
  if (!in) {
    err << "error: cannot read config " << config_path << "\n";
    return 1;
  }
  Json config;
  try {
    config = Json::parse(in);
  } catch (const std::exception& e) {
    err << "error: config is not valid JSON: " << e.what() << "\n";
    return 1;
  }
  return run(task, config, out, seed_override, err);
}

}  // namespace siegel::cli
