#include "nlslab/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "nlslab/errors.hpp"

namespace nlslab {

using nlohmann::json;

std::vector<double> ExperimentConfig::default_lambdas() {
  std::vector<double> out;
  for (int k = 0; k < 16; ++k) out.push_back(0.05 * std::pow(10.0, k / 15.0));
  return out;
}

namespace {

// Collects every problem instead of stopping at the first.
class Reader {
 public:
  std::vector<std::string> errors;

  // Returns the named object (or an empty one) after rejecting unknown keys.
  const json& section(const json& doc, const std::string& name, const std::set<std::string>& keys) {
    static const json empty = json::object();
    if (!doc.contains(name)) return empty;
    const json& s = doc.at(name);
    if (!s.is_object()) {
      errors.push_back(name + " must be an object");
      return empty;
    }
    for (const auto& [k, v] : s.items()) {
      if (!keys.count(k)) errors.push_back("unknown key " + name + "." + k);
    }
    return s;
  }

  void number(const json& s, const std::string& path, const char* key, double& out) {
    if (!s.contains(key)) return;
    const json& v = s.at(key);
    if (!v.is_number()) {
      errors.push_back(path + "." + key + " must be a number");
      return;
    }
    out = v.get<double>();
  }

  template <class I>
  void integer(const json& s, const std::string& path, const char* key, I& out) {
    if (!s.contains(key)) return;
    const json& v = s.at(key);
    if (v.is_number_integer()) {
      out = v.get<I>();
    } else if (v.is_number_float() && std::floor(v.get<double>()) == v.get<double>()) {
      // Sweeps write every axis value as a double.
      out = static_cast<I>(v.get<double>());
    } else {
      errors.push_back(path + "." + key + " must be an integer");
    }
  }

  void boolean(const json& s, const std::string& path, const char* key, bool& out) {
    if (!s.contains(key)) return;
    if (!s.at(key).is_boolean()) {
      errors.push_back(path + "." + key + " must be a boolean");
      return;
    }
    out = s.at(key).get<bool>();
  }

  void text(const json& s, const std::string& path, const char* key, std::string& out) {
    if (!s.contains(key)) return;
    if (!s.at(key).is_string()) {
      errors.push_back(path + "." + key + " must be a string");
      return;
    }
    out = s.at(key).get<std::string>();
  }

  void numbers(const json& s, const std::string& path, const char* key, std::vector<double>& out) {
    if (!s.contains(key)) return;
    const json& v = s.at(key);
    bool ok = v.is_array();
    if (ok) {
      for (const auto& x : v) ok = ok && x.is_number();
    }
    if (!ok) {
      errors.push_back(path + "." + key + " must be an array of numbers");
      return;
    }
    out = v.get<std::vector<double>>();
  }
};

const std::set<std::string> kGridKeys{"n1", "n2", "n3", "L1", "L2", "L3"};
const std::set<std::string> kParamKeys{"mu1", "mu2", "beta", "p1", "p2", "r1", "r2", "a1", "a2"};
const std::set<std::string> kSolverKeys{"method",       "tau0",     "armijo", "tol_energy", "tol_residual",
                                        "max_iter",     "starts",   "precondition", "window"};
const std::set<std::string> kDynamicsKeys{"dt", "T", "linear_tol", "record_every", "scheme"};
const std::set<std::string> kExperimentKeys{"init", "delta", "theta", "lambdas", "splits", "eps", "samples"};
const std::set<std::string> kTopKeys{"grid", "params", "solver", "dynamics", "experiment", "seed", "outdir"};

template <class F>
void collect(std::vector<std::string>& errors, F&& f) {
  try {
    f();
  } catch (const ValidationError& e) {
    errors.insert(errors.end(), e.violations().begin(), e.violations().end());
  }
}

}  // namespace

RunConfig parse_config(const json& doc) {
  Reader rd;
  RunConfig c;
  if (!doc.is_object()) throw ValidationError({"config must be a JSON object"});
  for (const auto& [k, v] : doc.items()) {
    if (!kTopKeys.count(k)) rd.errors.push_back("unknown key " + k);
  }

  const json& g = rd.section(doc, "grid", kGridKeys);
  std::array<int, 3> n = c.grid.cells();
  std::array<double, 3> L = c.grid.half_widths();
  rd.integer(g, "grid", "n1", n[0]);
  rd.integer(g, "grid", "n2", n[1]);
  rd.integer(g, "grid", "n3", n[2]);
  rd.number(g, "grid", "L1", L[0]);
  rd.number(g, "grid", "L2", L[1]);
  rd.number(g, "grid", "L3", L[2]);
  const bool planar = n[2] == 1;
  for (int a = 0; a < 3; ++a) {
    if (a == 2 && planar) continue;
    const std::string tag = std::to_string(a + 1);
    if (n[a] < GridSpec::kMinCells) {
      rd.errors.push_back("grid.n" + tag + " must be >= " + std::to_string(GridSpec::kMinCells) +
                          (a == 2 ? " (or 1 for a planar grid)" : ""));
    }
    if (!(L[a] > 0.0)) rd.errors.push_back("grid.L" + tag + " must be > 0");
  }

  const json& p = rd.section(doc, "params", kParamKeys);
  ModelParams& m = c.params;
  rd.number(p, "params", "mu1", m.mu1);
  rd.number(p, "params", "mu2", m.mu2);
  rd.number(p, "params", "beta", m.beta);
  rd.number(p, "params", "p1", m.p1);
  rd.number(p, "params", "p2", m.p2);
  rd.number(p, "params", "r1", m.r1);
  rd.number(p, "params", "r2", m.r2);
  rd.number(p, "params", "a1", m.a1);
  rd.number(p, "params", "a2", m.a2);

  const json& s = rd.section(doc, "solver", kSolverKeys);
  SolverOptions& so = c.solver;
  std::string method = so.method == SolverOptions::Method::Gradient ? "gradient" : "cg";
  rd.text(s, "solver", "method", method);
  if (method == "cg") {
    so.method = SolverOptions::Method::ConjugateGradient;
  } else if (method == "gradient") {
    so.method = SolverOptions::Method::Gradient;
  } else {
    rd.errors.push_back("solver.method must be \"cg\" or \"gradient\"");
  }
  rd.number(s, "solver", "tau0", so.tau0);
  rd.number(s, "solver", "armijo", so.armijo);
  rd.number(s, "solver", "tol_energy", so.tol_energy);
  rd.number(s, "solver", "tol_residual", so.tol_residual);
  rd.integer(s, "solver", "max_iter", so.max_iter);
  rd.integer(s, "solver", "starts", so.starts);
  rd.boolean(s, "solver", "precondition", so.precondition);
  rd.integer(s, "solver", "window", so.window);

  const json& d = rd.section(doc, "dynamics", kDynamicsKeys);
  PropagatorConfig& dy = c.dynamics;
  rd.number(d, "dynamics", "dt", dy.dt);
  rd.number(d, "dynamics", "T", dy.T);
  rd.number(d, "dynamics", "linear_tol", dy.linear_tol);
  rd.integer(d, "dynamics", "record_every", dy.record_every);
  std::string scheme = dy.scheme == Scheme::Yoshida4 ? "yoshida4" : "strang";
  rd.text(d, "dynamics", "scheme", scheme);
  if (scheme == "strang") {
    dy.scheme = Scheme::Strang;
  } else if (scheme == "yoshida4") {
    dy.scheme = Scheme::Yoshida4;
  } else {
    rd.errors.push_back("dynamics.scheme must be \"strang\" or \"yoshida4\"");
  }

  const json& e = rd.section(doc, "experiment", kExperimentKeys);
  ExperimentConfig& ex = c.experiment;
  rd.text(e, "experiment", "init", ex.init);
  if (ex.init != "minimizer" && ex.init != "ground") {
    rd.errors.push_back("experiment.init must be \"minimizer\" or \"ground\"");
  }
  rd.number(e, "experiment", "delta", ex.delta);
  rd.number(e, "experiment", "theta", ex.theta);
  rd.numbers(e, "experiment", "lambdas", ex.lambdas);
  rd.numbers(e, "experiment", "eps", ex.eps);
  rd.integer(e, "experiment", "samples", ex.samples);
  if (e.contains("splits")) {
    const json& sp = e.at("splits");
    std::vector<Split> splits;
    bool ok = sp.is_array();
    if (ok) {
      for (const auto& x : sp) {
        if (!x.is_array() || x.size() != 2 || !x[0].is_number() || !x[1].is_number()) {
          ok = false;
          break;
        }
        splits.push_back({x[0].get<double>(), x[1].get<double>()});
      }
    }
    if (ok) {
      ex.splits = std::move(splits);
    } else {
      rd.errors.emplace_back("experiment.splits must be an array of [b1, b2] pairs");
    }
  }
  if (!(ex.delta >= 0.0)) rd.errors.emplace_back("experiment.delta must be >= 0");
  if (ex.samples < 1) rd.errors.emplace_back("experiment.samples must be >= 1");

  rd.integer(doc, "config", "seed", c.seed);
  if (doc.contains("seed") && doc.at("seed").is_number_integer() && doc.at("seed").get<long long>() < 0) {
    rd.errors.emplace_back("seed must be >= 0");
  }
  std::string outdir = c.outdir.string();
  rd.text(doc, "config", "outdir", outdir);
  c.outdir = outdir;
  so.seed = c.seed;

  // Model bounds. beta = 0 is the decoupled system, which every command
  // accepts; the other bounds are enforced as stated.
  for (auto& v : violations(m)) {
    if (v.rfind("beta", 0) == 0 && m.beta == 0.0) continue;
    rd.errors.push_back(std::move(v));
  }
  collect(rd.errors, [&] { so.validate(); });
  collect(rd.errors, [&] { dy.validate(); });

  if (!rd.errors.empty()) throw ValidationError(std::move(rd.errors));
  c.grid = planar ? GridSpec::plane({n[0], n[1]}, {L[0], L[1]}) : GridSpec(n, L);
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError({"cannot read config " + path.string()});
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ValidationError({"config " + path.string() + " is not valid JSON: " + e.what()});
  }
  return parse_config(doc);
}

json to_json(const RunConfig& c) {
  const GridSpec& g = c.grid;
  const ModelParams& m = c.params;
  const SolverOptions& s = c.solver;
  const PropagatorConfig& d = c.dynamics;
  const ExperimentConfig& e = c.experiment;
  json splits = json::array();
  for (const Split& sp : e.splits) splits.push_back({sp.b1, sp.b2});
  json grid{{"n1", g.n(0)}, {"n2", g.n(1)}, {"n3", g.n(2)}, {"L1", g.half_width(0)}, {"L2", g.half_width(1)}};
  grid["L3"] = g.planar() ? 1.0 : g.half_width(2);
  return {
      {"grid", grid},
      {"params",
       {{"mu1", m.mu1},
        {"mu2", m.mu2},
        {"beta", m.beta},
        {"p1", m.p1},
        {"p2", m.p2},
        {"r1", m.r1},
        {"r2", m.r2},
        {"a1", m.a1},
        {"a2", m.a2}}},
      {"solver",
       {{"method", s.method == SolverOptions::Method::Gradient ? "gradient" : "cg"},
        {"tau0", s.tau0},
        {"armijo", s.armijo},
        {"tol_energy", s.tol_energy},
        {"tol_residual", s.tol_residual},
        {"max_iter", s.max_iter},
        {"starts", s.starts},
        {"precondition", s.precondition},
        {"window", s.window}}},
      {"dynamics",
       {{"dt", d.dt},
        {"T", d.T},
        {"linear_tol", d.linear_tol},
        {"record_every", d.record_every},
        {"scheme", d.scheme == Scheme::Yoshida4 ? "yoshida4" : "strang"}}},
      {"experiment",
       {{"init", e.init},
        {"delta", e.delta},
        {"theta", e.theta},
        {"lambdas", e.lambdas},
        {"splits", splits},
        {"eps", e.eps},
        {"samples", e.samples}}},
      {"seed", c.seed},
      {"outdir", c.outdir.string()},
  };
}

RunConfig with_axis(const RunConfig& config, const std::string& axis, double value) {
  json doc = to_json(config);
  std::string section, key;
  if (const auto dot = axis.find('.'); dot != std::string::npos) {
    section = axis.substr(0, dot);
    key = axis.substr(dot + 1);
    if (!doc.contains(section) || !doc[section].is_object() || !doc[section].contains(key)) {
      throw ValidationError({"unknown sweep axis " + axis});
    }
  } else if (axis == "seed") {
    key = axis;
  } else {
    std::vector<std::string> hits;
    for (const auto& [name, sec] : doc.items()) {
      if (sec.is_object() && sec.contains(axis)) hits.push_back(name);
    }
    if (hits.empty()) throw ValidationError({"unknown sweep axis " + axis});
    if (hits.size() > 1) throw ValidationError({"ambiguous sweep axis " + axis});
    section = hits.front();
    key = axis;
  }
  json& slot = section.empty() ? doc[key] : doc[section][key];
  if (!slot.is_number()) throw ValidationError({"sweep axis " + axis + " is not numeric"});
  slot = value;
  return parse_config(doc);
}

}  // namespace nlslab
