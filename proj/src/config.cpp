#include "gwp/config.hpp"

#include <fstream>
#include <set>

namespace gwp {

namespace {

using nlohmann::json;

void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& allowed) {
  if (!obj.is_object()) throw Error(ErrorCode::config, where + " must be a JSON object");
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key()))
      throw Error(ErrorCode::config, "unknown key \"" + it.key() + "\" in " + where);
}

double get_number(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) throw Error(ErrorCode::config, where + " is missing \"" + key + "\"");
  if (!obj[key].is_number()) throw Error(ErrorCode::config, where + "." + key + " must be a number");
  return obj[key].get<double>();
}

double get_number_or(const json& obj, const std::string& key, double fallback,
                     const std::string& where) {
  return obj.contains(key) ? get_number(obj, key, where) : fallback;
}

int get_int_or(const json& obj, const std::string& key, int fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number_integer())
    throw Error(ErrorCode::config, where + "." + key + " must be an integer");
  return obj[key].get<int>();
}

Vec parse_vector(const json& v, const std::string& where) {
  if (!v.is_array() || v.empty())
    throw Error(ErrorCode::config, where + " must be a non-empty array");
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) throw Error(ErrorCode::config, where + " entries must be numbers");
    out(i) = v[i].get<double>();
  }
  return out;
}

Mat parse_matrix(const json& v, const std::string& where) {
  if (!v.is_array() || v.empty())
    throw Error(ErrorCode::config, where + " must be a non-empty array of rows");
  const std::size_t rows = v.size();
  Mat out;
  for (std::size_t i = 0; i < rows; ++i) {
    const Vec row = parse_vector(v[i], where + " row");
    if (i == 0) out = Mat(rows, row.size());
    if (row.size() != out.cols()) throw Error(ErrorCode::config, where + " rows differ in length");
    out.row(i) = row;
  }
  return out;
}

json matrix_json(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_json(const Vec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

}  // namespace

RunConfig parse_run_config(const nlohmann::json& doc) {
  require_keys(doc, "config",
               {"dim", "hbar", "mass", "dt", "t_end", "stride", "dynamics", "integrator",
                "quad_order", "potential", "initial", "sweep"});

  RunConfig cfg;
  cfg.sim.dim = get_int_or(doc, "dim", 0, "config");
  if (cfg.sim.dim <= 0) throw Error(ErrorCode::config, "config.dim must be a positive integer");
  cfg.sim.hbar = get_number(doc, "hbar", "config");
  cfg.sim.mass = get_number_or(doc, "mass", 1.0, "config");
  cfg.sim.dt = get_number(doc, "dt", "config");
  cfg.sim.t_end = get_number(doc, "t_end", "config");
  cfg.sim.stride = get_int_or(doc, "stride", 1, "config");
  cfg.sim.quad_order = get_int_or(doc, "quad_order", 20, "config");

  const std::string dynamics = doc.value("dynamics", std::string("asymptotic"));
  if (dynamics == "asymptotic")
    cfg.sim.dynamics = DynamicsVariant::asymptotic;
  else if (dynamics == "exact")
    cfg.sim.dynamics = DynamicsVariant::exact;
  else
    throw Error(ErrorCode::config, "config.dynamics must be \"asymptotic\" or \"exact\"");

  const std::string integrator = doc.value("integrator", std::string("variational_splitting"));
  if (integrator == "variational_splitting")
    cfg.sim.integrator = IntegratorKind::variational_splitting;
  else if (integrator == "rk4")
    cfg.sim.integrator = IntegratorKind::rk4;
  else
    throw Error(ErrorCode::config,
                "config.integrator must be \"variational_splitting\" or \"rk4\"");

  if (!doc.contains("potential"))
    throw Error(ErrorCode::config, "config is missing \"potential\"");
  cfg.potential = doc["potential"];
  make_potential(cfg.potential, cfg.sim.dim);  // validates the spec

  if (!doc.contains("initial")) throw Error(ErrorCode::config, "config is missing \"initial\"");
  const json& init = doc["initial"];
  require_keys(init, "config.initial", {"q", "p", "A", "B"});
  for (const char* key : {"q", "p", "A", "B"})
    if (!init.contains(key))
      throw Error(ErrorCode::config, std::string("config.initial is missing \"") + key + "\"");
  cfg.q0 = parse_vector(init["q"], "config.initial.q");
  cfg.p0 = parse_vector(init["p"], "config.initial.p");
  cfg.A0 = parse_matrix(init["A"], "config.initial.A");
  cfg.B0 = parse_matrix(init["B"], "config.initial.B");
  if (cfg.q0.size() != cfg.sim.dim || cfg.p0.size() != cfg.sim.dim ||
      cfg.A0.rows() != cfg.sim.dim || cfg.A0.cols() != cfg.sim.dim ||
      cfg.B0.rows() != cfg.sim.dim || cfg.B0.cols() != cfg.sim.dim)
    throw Error(ErrorCode::config, "config.initial dimensions do not match config.dim");

  if (doc.contains("sweep")) {
    const json& sweep = doc["sweep"];
    require_keys(sweep, "config.sweep", {"hbar", "dt"});
    if (sweep.contains("hbar")) {
      const Vec vals = parse_vector(sweep["hbar"], "config.sweep.hbar");
      cfg.sweep_hbar.assign(vals.data(), vals.data() + vals.size());
    }
    if (sweep.contains("dt")) {
      const Vec vals = parse_vector(sweep["dt"], "config.sweep.dt");
      cfg.sweep_dt.assign(vals.data(), vals.data() + vals.size());
    }
  }

  try {
    cfg.sim.validate();
    initial_state(cfg);  // width matrices must be admissible
  } catch (const Error& e) {
    throw Error(ErrorCode::config, e.what());
  }
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::config, "cannot open config file " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::config, "config parse error in " + path + ": " + e.what());
  }
  return parse_run_config(doc);
}

std::shared_ptr<const PotentialModel> make_potential(const nlohmann::json& spec, int dim) {
  using nlohmann::json;
  if (!spec.is_object() || !spec.contains("type") || !spec["type"].is_string())
    throw Error(ErrorCode::config, "potential spec must be an object with a \"type\" string");
  const std::string type = spec["type"].get<std::string>();

  if (type == "harmonic") {
    require_keys(spec, "potential", {"type", "k"});
    Mat k;
    if (!spec.contains("k")) {
      k = Mat::Identity(dim, dim);
    } else if (spec["k"].is_number()) {
      k = spec["k"].get<double>() * Mat::Identity(dim, dim);
    } else if (spec["k"].is_array() && !spec["k"].empty() && spec["k"][0].is_number()) {
      const Vec diag = parse_vector(spec["k"], "potential.k");
      if (diag.size() != dim)
        throw Error(ErrorCode::config, "potential.k diagonal length must equal dim");
      k = diag.asDiagonal();
    } else {
      k = parse_matrix(spec["k"], "potential.k");
      if (k.rows() != dim) throw Error(ErrorCode::config, "potential.k size must equal dim");
    }
    try {
      return std::make_shared<HarmonicPotential>(std::move(k));
    } catch (const Error& e) {
      throw Error(ErrorCode::config, std::string("invalid harmonic stiffness: ") + e.what());
    }
  }
  if (type == "quartic_radial") {
    require_keys(spec, "potential", {"type"});
    return std::make_shared<QuarticRadialPotential>();
  }
  if (type == "polynomial") {
    require_keys(spec, "potential", {"type", "terms"});
    if (!spec.contains("terms") || !spec["terms"].is_array() || spec["terms"].empty())
      throw Error(ErrorCode::config, "potential.terms must be a non-empty array");
    std::vector<Monomial> terms;
    for (const json& t : spec["terms"]) {
      require_keys(t, "potential.terms entry", {"coeff", "exponents"});
      Monomial m;
      m.coeff = get_number(t, "coeff", "potential term");
      if (!t.contains("exponents") || !t["exponents"].is_array())
        throw Error(ErrorCode::config, "potential term is missing \"exponents\"");
      for (const json& e : t["exponents"]) {
        if (!e.is_number_integer())
          throw Error(ErrorCode::config, "potential term exponents must be integers");
        m.exponents.push_back(e.get<int>());
      }
      if (static_cast<int>(m.exponents.size()) != dim)
        throw Error(ErrorCode::config, "potential term exponent count must equal dim");
      terms.push_back(std::move(m));
    }
    try {
      return std::make_shared<PolynomialPotential>(dim, std::move(terms));
    } catch (const Error& e) {
      throw Error(ErrorCode::config, e.what());
    }
  }
  throw Error(ErrorCode::config, "unknown potential type \"" + type + "\"");
}

ReducedState initial_state(const RunConfig& cfg) {
  try {
    return ReducedState(cfg.q0, cfg.p0, SiegelPoint(cfg.A0, cfg.B0, cfg.sim.tol));
  } catch (const Error& e) {
    throw Error(ErrorCode::config, std::string("invalid initial state: ") + e.what());
  }
}

nlohmann::json resolved_config(const RunConfig& cfg) {
  nlohmann::json out;
  out["dim"] = cfg.sim.dim;
  out["hbar"] = cfg.sim.hbar;
  out["mass"] = cfg.sim.mass;
  out["dt"] = cfg.sim.dt;
  out["t_end"] = cfg.sim.t_end;
  out["stride"] = cfg.sim.stride;
  out["quad_order"] = cfg.sim.quad_order;
  out["dynamics"] = cfg.sim.dynamics == DynamicsVariant::asymptotic ? "asymptotic" : "exact";
  out["integrator"] = cfg.sim.integrator == IntegratorKind::variational_splitting
                          ? "variational_splitting"
                          : "rk4";
  out["potential"] = cfg.potential;
  out["initial"] = {{"q", vector_json(cfg.q0)},
                    {"p", vector_json(cfg.p0)},
                    {"A", matrix_json(cfg.A0)},
                    {"B", matrix_json(cfg.B0)}};
  if (cfg.has_sweep()) {
    nlohmann::json sweep;
    if (!cfg.sweep_hbar.empty()) sweep["hbar"] = cfg.sweep_hbar;
    if (!cfg.sweep_dt.empty()) sweep["dt"] = cfg.sweep_dt;
    out["sweep"] = std::move(sweep);
  }
  return out;
}

}  // namespace gwp
