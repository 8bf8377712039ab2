#pragma once

// JSON encodings of structures, spectral sets, measures, boxes and sampling
// families. Complex numbers are [re, im] pairs (a bare number is read as real).
// Parse errors name the offending field path.

#include "siegel/convex_geom.hpp"
#include "siegel/lattice.hpp"
#include "siegel/measure.hpp"
#include "siegel/sampling.hpp"
#include "siegel/siegel_core.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace siegel::io {

using Json = nlohmann::json;

inline const Json& field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) throw InputError("config: missing field '" + path + key + "'");
  return j.at(key);
}

inline double get_double(const Json& j, const std::string& key, const std::string& path) {
  const Json& v = field(j, key, path);
  if (!v.is_number()) throw InputError("config: field '" + path + key + "' must be a number");
  return v.get<double>();
}

inline double get_double(const Json& j, const std::string& key, const std::string& path, double fallback) {
  return j.contains(key) ? get_double(j, key, path) : fallback;
}

inline long get_int(const Json& j, const std::string& key, const std::string& path) {
  const Json& v = field(j, key, path);
  if (!v.is_number_integer()) throw InputError("config: field '" + path + key + "' must be an integer");
  return v.get<long>();
}

inline long get_int(const Json& j, const std::string& key, const std::string& path, long fallback) {
  return j.contains(key) ? get_int(j, key, path) : fallback;
}

// ------------------------------------------------------------------ numbers

inline Json to_json(cplx z) { return Json::array({z.real(), z.imag()}); }

inline cplx cplx_from(const Json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw InputError("config: field '" + path + "' must be a number or [re, im]");
}

inline Json to_json(const RVec& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

inline Json to_json(const CVec& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(to_json(v[i]));
  return a;
}

inline Json to_json(const CMat& m) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    a.push_back(row);
  }
  return a;
}

inline RVec rvec_from(const Json& j, const std::string& path, Eigen::Index expect = -1) {
  if (j.is_number() && (expect < 0 || expect == 1)) return RVec::Constant(1, j.get<double>());
  if (!j.is_array()) throw InputError("config: field '" + path + "' must be an array of numbers");
  RVec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw InputError("config: field '" + path + "' must contain numbers");
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  if (expect >= 0 && v.size() != expect)
    throw InputError("config: field '" + path + "' must have " + std::to_string(expect) + " entries");
  return v;
}

inline CVec cvec_from(const Json& j, const std::string& path, Eigen::Index expect = -1) {
  if (!j.is_array()) throw InputError("config: field '" + path + "' must be an array");
  CVec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = cplx_from(j[i], path);
  if (expect >= 0 && v.size() != expect)
    throw InputError("config: field '" + path + "' must have " + std::to_string(expect) + " entries");
  return v;
}

inline CMat cmat_from(const Json& j, const std::string& path, Eigen::Index rows, Eigen::Index cols) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows)
    throw InputError("config: field '" + path + "' must be a " + std::to_string(rows) + " x " +
                     std::to_string(cols) + " matrix");
  CMat m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) m.row(i) = cvec_from(j[static_cast<std::size_t>(i)], path, cols).transpose();
  return m;
}

// ---------------------------------------------------------------- structure

/// {"preset": "heisenberg", "n": 1} | {"preset": "euclidean", "m": 2} |
/// {"n": .., "m": .., "phi": [m matrices n x n], "lambda_witness": [..]}
inline SiegelStructure structure_from(const Json& j) {
  const std::string p = "structure.";
  if (!j.is_object()) throw InputError("config: field 'structure' must be an object");
  if (j.contains("preset")) {
    const std::string preset = j.at("preset").get<std::string>();
    if (preset == "heisenberg") return structures::heisenberg(static_cast<int>(get_int(j, "n", p, 1)));
    if (preset == "euclidean") return structures::euclidean(static_cast<int>(get_int(j, "m", p)));
    throw InputError("config: field 'structure.preset' must be 'heisenberg' or 'euclidean'");
  }
  const int n = static_cast<int>(get_int(j, "n", p));
  const int m = static_cast<int>(get_int(j, "m", p));
  require(n >= 0 && m >= 1, "config: structure needs n >= 0 and m >= 1");
  std::vector<CMat> phi;
  if (n == 0) {
    phi.assign(static_cast<std::size_t>(m), CMat(0, 0));
  } else {
    const Json& pj = field(j, "phi", p);
    if (!pj.is_array() || static_cast<int>(pj.size()) != m)
      throw InputError("config: field 'structure.phi' must hold m matrices");
    for (std::size_t k = 0; k < pj.size(); ++k) phi.push_back(cmat_from(pj[k], p + "phi", n, n));
  }
  std::optional<RVec> w;
  if (j.contains("lambda_witness")) w = rvec_from(j.at("lambda_witness"), p + "lambda_witness", m);
  return SiegelStructure::make(n, m, std::move(phi), w);
}

inline Json to_json(const SiegelStructure& s) {
  Json phi = Json::array();
  for (const auto& a : s.phi()) phi.push_back(to_json(a));
  return {{"n", s.n()}, {"m", s.m()}, {"phi", phi}, {"lambda_witness", to_json(s.lambda_witness())},
          {"gauge", to_string(s.gauge_kind())}, {"gauge_scale", s.gauge_scale()},
          {"homogeneous_dimension", s.homogeneous_dimension()}};
}

// ------------------------------------------------------------- sets, boxes

/// {"interval": [a, b]} | {"vertices": [[..], ..]}
inline SpectralSet spectral_set_from(const Json& j, int m, const std::string& path) {
  if (j.is_object() && j.contains("interval")) {
    const RVec iv = rvec_from(j.at("interval"), path + ".interval", 2);
    require(m == 1, "config: '" + path + ".interval' needs m = 1");
    return SpectralSet::interval(iv[0], iv[1]);
  }
  const Json& vs = field(j, "vertices", path + ".");
  if (!vs.is_array() || vs.empty()) throw InputError("config: field '" + path + ".vertices' must be non-empty");
  std::vector<RVec> v;
  for (const auto& e : vs) v.push_back(rvec_from(e, path + ".vertices", m));
  return SpectralSet(v);
}

inline Json to_json(const SpectralSet& k) {
  Json vs = Json::array();
  for (const auto& v : k.vertices()) vs.push_back(to_json(v));
  return {{"vertices", vs}};
}

/// {"lo": [..], "hi": [..]} | {"half_width": [..]}
inline Box box_from(const Json& j, Eigen::Index dim, const std::string& path) {
  if (j.is_object() && j.contains("half_width")) {
    const RVec h = rvec_from(j.at("half_width"), path + ".half_width", dim);
    return Box(-h, h);
  }
  return Box(rvec_from(field(j, "lo", path + "."), path + ".lo", dim),
             rvec_from(field(j, "hi", path + "."), path + ".hi", dim));
}

inline Json to_json(const Box& b) { return {{"lo", to_json(b.lo)}, {"hi", to_json(b.hi)}}; }

// ------------------------------------------------------------------ measures

inline Json to_json(const AmbientPoint& p) { return {{"zeta", to_json(p.zeta)}, {"z", to_json(p.z)}}; }

inline AmbientPoint point_from(const SiegelStructure& s, const Json& j, const std::string& path) {
  AmbientPoint p;
  p.zeta = s.n() == 0 && !j.contains("zeta") ? CVec(0) : cvec_from(field(j, "zeta", path + "."), path + ".zeta", s.n());
  p.z = cvec_from(field(j, "z", path + "."), path + ".z", s.m());
  return p;
}

/// {"atoms": [{"zeta", "z", "w"}], "rho_bound"} and, for n = 0, m = 1,
/// {"generate": {"kind": "line_grid", "spacing", "from", "to", "h", "weight"}}.
inline PointMeasure measure_from(const SiegelStructure& s, const Json& j) {
  const std::string p = "measure.";
  PointMeasure mu;
  if (j.contains("generate")) {
    const Json& g = j.at("generate");
    const std::string kind = field(g, "kind", p + "generate.").get<std::string>();
    require(kind == "line_grid", "config: 'measure.generate.kind' must be 'line_grid'");
    require(s.n() == 0 && s.m() == 1, "config: line_grid measures need n = 0, m = 1");
    const double step = get_double(g, "spacing", p + "generate.");
    const double from = get_double(g, "from", p + "generate."), to = get_double(g, "to", p + "generate.");
    const double h = get_double(g, "h", p + "generate.", 0.0), w = get_double(g, "weight", p + "generate.", 1.0);
    require(step > 0 && from <= to, "config: line_grid needs spacing > 0 and from <= to");
    for (long k = static_cast<long>(std::ceil(from / step - 1e-9)); k * step <= to + 1e-9; ++k)
      mu.add({CVec(0), CVec::Constant(1, cplx(static_cast<double>(k) * step, h))}, w);
  }
  if (j.contains("atoms")) {
    const Json& a = j.at("atoms");
    if (!a.is_array()) throw InputError("config: field 'measure.atoms' must be an array");
    for (std::size_t i = 0; i < a.size(); ++i)
      mu.add(point_from(s, a[i], p + "atoms[" + std::to_string(i) + "]"), get_double(a[i], "w", p + "atoms[].", 1.0));
  }
  if (j.contains("rho_bound")) mu.rho_bound = get_double(j, "rho_bound", p);
  if (j.contains("discretization")) mu.discretization = j.at("discretization").get<std::string>();
  mu.validate(s);
  return mu;
}

inline Json to_json(const PointMeasure& mu) {
  Json atoms = Json::array();
  for (std::size_t i = 0; i < mu.size(); ++i) {
    Json a = to_json(mu.atoms[i]);
    a["w"] = mu.weights[i];
    atoms.push_back(a);
  }
  Json j = {{"atoms", atoms}, {"discretization", mu.discretization}};
  if (mu.rho_bound) j["rho_bound"] = *mu.rho_bound;
  return j;
}

// ------------------------------------------------------------------ families

inline Json to_json(const HypothesisCertificate& c) {
  return {{"holds", c.holds}, {"strict", c.strict}, {"max_ratio", c.max_ratio}, {"witness", to_json(c.witness)},
          {"sampled_max_ratio", c.sampled_max_ratio}, {"sampled_directions", c.sampled_directions},
          {"sampled_margin", c.sampled_margin}, {"sampled_holds", c.sampled_holds}};
}

inline Json to_json(const CoveringCertificate& c) {
  return {{"half_width", c.half_width}, {"step", c.step}, {"max_l1", c.max_l1},
          {"cube_in_polar", c.cube_in_polar}, {"polar_vertices", c.polar_vertices}};
}

inline Json to_json(const SamplingFamily& f) {
  Json pts = Json::array(), idx = Json::array(), kv = Json::array();
  for (const auto& p : f.points) pts.push_back(to_json(p));
  for (const auto& l : f.x_index) idx.push_back(l);
  for (const auto& v : f.k_vertices) kv.push_back(to_json(v));
  Json j = {{"construction_tag", f.construction_tag},
            {"basis", to_json(f.basis)},
            {"k_vertices", kv},
            {"lambda_center", to_json(f.lambda_center)},
            {"r", f.r},
            {"x_step", f.x_step},
            {"zeta_spacing", to_json(f.zeta_spacing)},
            {"fock_weight", to_json(f.fock_weight)},
            {"window", to_json(f.window)},
            {"hypothesis", to_json(f.hypothesis)},
            {"covering", to_json(f.covering)},
            {"points", pts},
            {"x_index", idx}};
  if (!f.restriction.empty()) j["restriction"] = f.restriction;
  return j;
}

inline SamplingFamily family_from(const SiegelStructure& s, const Json& j) {
  const std::string p = "family.";
  SamplingFamily f;
  const int n = s.n(), m = s.m();
  f.construction_tag = field(j, "construction_tag", p).get<std::string>();
  f.basis = cmat_from(field(j, "basis", p), p + "basis", n, n);
  for (const auto& v : field(j, "k_vertices", p)) f.k_vertices.push_back(rvec_from(v, p + "k_vertices", m));
  f.lambda_center = rvec_from(field(j, "lambda_center", p), p + "lambda_center", m);
  f.r = get_double(j, "r", p);
  f.x_step = get_double(j, "x_step", p);
  f.zeta_spacing = rvec_from(field(j, "zeta_spacing", p), p + "zeta_spacing", n);
  f.fock_weight = rvec_from(field(j, "fock_weight", p), p + "fock_weight", n);
  f.window = box_from(field(j, "window", p), 2 * n + m, p + "window");
  const Json& pts = field(j, "points", p);
  const Json& idx = field(j, "x_index", p);
  require(pts.size() == idx.size(), "config: 'family.points' and 'family.x_index' differ in length");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    f.points.push_back(point_from(s, pts[i], p + "points"));
    f.x_index.push_back(idx[i].get<std::vector<long>>());
  }
  if (j.contains("hypothesis")) {
    const Json& h = j.at("hypothesis");
    f.hypothesis.holds = h.value("holds", false);
    f.hypothesis.strict = h.value("strict", true);
    f.hypothesis.max_ratio = h.value("max_ratio", 0.0);
    f.hypothesis.witness = cvec_from(h.value("witness", Json::array()), p + "hypothesis.witness");
    f.hypothesis.sampled_max_ratio = h.value("sampled_max_ratio", 0.0);
    f.hypothesis.sampled_directions = h.value("sampled_directions", 0);
    f.hypothesis.sampled_margin = h.value("sampled_margin", 1e-6);
    f.hypothesis.sampled_holds = h.value("sampled_holds", false);
  }
  if (j.contains("covering")) {
    const Json& c = j.at("covering");
    f.covering.half_width = c.value("half_width", 0.0);
    f.covering.step = c.value("step", 0.0);
    f.covering.max_l1 = c.value("max_l1", 0.0);
    f.covering.cube_in_polar = c.value("cube_in_polar", false);
    f.covering.polar_vertices = c.value("polar_vertices", 0);
  }
  f.restriction = j.value("restriction", std::string());
  return f;
}

inline Json to_json(const LatticeFamily& f) {
  Json pts = Json::array(), lv = Json::array();
  for (const auto& p : f.points) pts.push_back(to_json(p));
  for (const auto& h : f.slice_levels) lv.push_back(to_json(h));
  return {{"delta", f.delta}, {"R", f.bigR}, {"restricted", f.restricted}, {"slice_levels", lv},
          {"window", to_json(f.window)}, {"points", pts}};
}

}  // namespace siegel::io
