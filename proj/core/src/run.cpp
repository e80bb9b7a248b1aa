#include "nlslab/run.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <exception>
#include <fstream>
#include <limits>
#include <map>
#include <thread>

#include "nlslab/dynamics.hpp"
#include "nlslab/errors.hpp"
#include "nlslab/field_io.hpp"
#include "nlslab/probes.hpp"
#include "nlslab/selftest.hpp"
#include "nlslab/spectral.hpp"
#include "nlslab/variational.hpp"

namespace nlslab {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::map<std::string, Command> kCommands{
    {"minimize", Command::Minimize},        {"minimize-single", Command::MinimizeSingle},
    {"spectrum", Command::Spectrum},        {"rearrange-check", Command::RearrangeCheck},
    {"evolve", Command::Evolve},            {"stability", Command::Stability},
    {"probe", Command::Probe},              {"selftest", Command::Selftest},
};

const std::map<std::string, ProbeKind> kProbes{
    {"subadd", ProbeKind::Subadd},          {"theta", ProbeKind::Theta},
    {"scaling", ProbeKind::Scaling},        {"split-bound", ProbeKind::SplitBound},
    {"continuity", ProbeKind::Continuity},
};

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json grid_json(const GridSpec& g) {
  return {{"n1", g.n(0)},          {"n2", g.n(1)},          {"n3", g.n(2)},
          {"L1", g.half_width(0)}, {"L2", g.half_width(1)}, {"L3", g.planar() ? 1.0 : g.half_width(2)}};
}

json energy_json(const EnergyBreakdown& e) {
  return {{"kinetic", e.kinetic}, {"potential", e.potential}, {"self1", e.self1},
          {"self2", e.self2},     {"cross", e.cross},         {"total", e.total}};
}

// Collects emitted files; hashes are taken once everything is written.
class Artifacts {
 public:
  explicit Artifacts(fs::path dir) : dir_(std::move(dir)) {}

  const fs::path& dir() const { return dir_; }

  std::ofstream open(const std::string& name) {
    std::ofstream out(dir_ / name, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + (dir_ / name).string());
    names_.push_back(name);
    return out;
  }

  template <class F>
  void dump(const std::string& base, const F& field) {
    const FieldFiles f = write_field(field, dir_ / base);
    names_.push_back(f.header.filename().string());
    names_.push_back(f.data.filename().string());
  }

  std::vector<FileEntry> entries() const {
    std::vector<FileEntry> out;
    for (const auto& n : names_) out.push_back({n, sha256_file(dir_ / n), fs::file_size(dir_ / n)});
    return out;
  }

 private:
  fs::path dir_;
  std::vector<std::string> names_;
};

void write_trace(Artifacts& art, const std::vector<TraceEntry>& trace) {
  std::ofstream out = art.open("energy_trace.csv");
  out << "iter,energy,residual,tau\n";
  for (const auto& t : trace) out << t.iter << ',' << g17(t.energy) << ',' << g17(t.residual) << ',' << g17(t.tau) << '\n';
  if (!out) throw std::runtime_error("write failed: energy_trace.csv");
}

void write_trajectory(Artifacts& art, const Trajectory& tr) {
  std::ofstream out = art.open("trajectory.csv");
  out << "t,mass1,mass2,energy,distance\n";
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    out << g17(tr.times[k]) << ',' << g17(tr.mass1[k]) << ',' << g17(tr.mass2[k]) << ',' << g17(tr.energy[k]) << ',';
    if (k < tr.distance.size()) out << g17(tr.distance[k]);
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed: trajectory.csv");
}

json minimization_json(const MinimizationResult& r) {
  return {{"energy", energy_json(r.energy)},
          {"lambda1", r.multipliers.lambda1},
          {"lambda2", r.multipliers.lambda2},
          {"residual1", r.residual1},
          {"residual2", r.residual2},
          {"iterations", r.iterations},
          {"converged", r.converged},
          {"max_mass_error", r.max_mass_error},
          {"start_energies", r.start_energies},
          {"best_start", r.best_start}};
}

MinimizationResult converged_minimizer(const RunConfig& c) {
  const MinimizationResult r = minimize_pair(c.params, c.grid, c.solver);
  if (!r.converged) {
    throw NumericalError("minimisation did not converge (residual " + g17(std::max(r.residual1, r.residual2)) +
                         ")");
  }
  return r;
}

json trajectory_summary(const Trajectory& tr, double a1, double a2) {
  double mass_drift = 0.0, energy_drift = 0.0;
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    mass_drift = std::max({mass_drift, std::abs(tr.mass1[k] - a1) / a1, std::abs(tr.mass2[k] - a2) / a2});
    energy_drift = std::max(energy_drift, std::abs(tr.energy[k] - tr.energy.front()));
  }
  return {{"steps", tr.steps},
          {"records", tr.times.size()},
          {"max_relative_mass_drift", mass_drift},
          {"max_energy_drift", energy_drift},
          {"boundary_clean_init", tr.boundary_clean_init}};
}

void run_probe(const RunConfig& c, ProbeKind kind, RunRecord& rec) {
  const ModelParams& m = c.params;
  const ExperimentConfig& ex = c.experiment;
  json& res = rec.results;
  switch (kind) {
    case ProbeKind::Subadd: {
      const SubaddReport r = subadd_probe(m, ex.splits, c.grid, c.solver);
      json splits = json::array();
      double worst = std::numeric_limits<double>::infinity();
      for (const auto& s : r.splits) {
        splits.push_back({{"b1", s.split.b1}, {"b2", s.split.b2}, {"m_b", s.m_b}, {"m_rest", s.m_c},
                          {"sum", s.sum}, {"gap", s.gap}});
        worst = std::min(worst, s.gap);
      }
      res = {{"m", r.m_full}, {"splits", splits}, {"weak_holds_1e-6", r.weak_holds(1e-6)}};
      rec.headline = worst;
      break;
    }
    case ProbeKind::Theta: {
      const ThetaCheck t = theta_scaling_check(m.mu1, m.p1, m.a1, ex.theta, c.grid, c.solver);
      res = {{"theta", t.theta}, {"m_theta_a", t.lhs}, {"theta_m_a", t.rhs}, {"gap", t.gap()}};
      rec.headline = t.gap();
      break;
    }
    case ProbeKind::Scaling: {
      const ScalingCurve sc = scaling_probe(m.mu1, m.p1, m.a1, ex.lambdas, c.grid);
      const auto structural = sc.structural();
      const TwoPowerFit fit = fit_two_powers(sc.lambdas, structural);
      const auto excess = sc.excess();
      const double dip = *std::min_element(excess.begin(), excess.end());
      res = {{"lambdas", sc.lambdas},
             {"energies", sc.energies},
             {"lambda0", sc.lambda0},
             {"Lambda0", sc.Lambda0},
             {"excess", excess},
             {"min_excess", dip},
             {"fit", {{"c1", fit.c1}, {"e1", fit.e1}, {"c2", fit.c2}, {"e2", fit.e2}, {"rms", fit.rms}}}};
      rec.headline = dip;
      break;
    }
    case ProbeKind::SplitBound: {
      const SplitBoundReport r = split_bound_check(m, c.grid, c.solver);
      res = {{"m", r.m},         {"Lambda0", r.Lambda0}, {"bound1", r.bound1},
             {"bound2", r.bound2}, {"gap1", r.gap1()},   {"gap2", r.gap2()}};
      rec.headline = std::min(r.gap1(), r.gap2());
      break;
    }
    case ProbeKind::Continuity: {
      const ContinuityProbe r = continuity_probe(m, ex.eps, c.grid, c.solver);
      res = {{"m", r.base}, {"eps", r.eps}, {"values", r.values}, {"K", r.K}};
      rec.headline = r.K;
      break;
    }
  }
  res["probe"] = probe_name(kind);
}

void dispatch(const RunConfig& c, Command cmd, std::optional<ProbeKind> probe, RunRecord& rec, Artifacts& art) {
  const ModelParams& m = c.params;
  switch (cmd) {
    case Command::Minimize: {
      const MinimizationResult r = minimize_pair(m, c.grid, c.solver);
      rec.results = minimization_json(r);
      rec.headline = r.total();
      write_trace(art, r.trace);
      art.dump("u1", r.state.first);
      art.dump("u2", r.state.second);
      break;
    }
    case Command::MinimizeSingle: {
      const MinimizationResult r = minimize_single(m.mu1, m.p1, m.a1, c.grid, c.solver);
      rec.results = minimization_json(r);
      rec.headline = r.total();
      write_trace(art, r.trace);
      art.dump("u", r.state.first);
      break;
    }
    case Command::Spectrum: {
      if (c.grid.planar()) throw ValidationError({"spectrum needs a 3D grid"});
      const Spectrum s = spectrum(c.grid);
      rec.results = {{"lambda0", s.lambda0}, {"Lambda0", s.Lambda0}, {"gap", s.gap}, {"grid", grid_json(c.grid)}};
      rec.headline = s.Lambda0;
      break;
    }
    case Command::RearrangeCheck: {
      const SuiteReport r = rearrange_suite(c.grid, c.experiment.samples, c.seed);
      rec.results = to_json(r);
      rec.passed = r.passed();
      rec.headline = static_cast<double>(
          std::count_if(r.checks.begin(), r.checks.end(), [](const CheckResult& x) { return !x.passed; }));
      break;
    }
    case Command::Evolve: {
      ComplexPair init{ComplexField(c.grid), ComplexField(c.grid)};
      if (c.experiment.init == "ground") {
        if (c.grid.planar()) throw ValidationError({"evolve from the ground state needs a 3D grid"});
        const GroundState g = ground_3d(c.grid);
        init = ComplexPair{to_complex(std::sqrt(m.a1) * g.field), to_complex(std::sqrt(m.a2) * g.field)};
      } else {
        const MinimizationResult r = converged_minimizer(c);
        init = ComplexPair{to_complex(r.state.first), to_complex(r.state.second)};
      }
      const Trajectory tr = evolve(init, m, c.dynamics);
      rec.results = trajectory_summary(tr, mass(init.first), mass(init.second));
      rec.results["init"] = c.experiment.init;
      rec.headline = rec.results["max_energy_drift"].get<double>();
      write_trajectory(art, tr);
      art.dump("phi1_final", tr.final_state->first);
      art.dump("phi2_final", tr.final_state->second);
      break;
    }
    case Command::Stability: {
      const MinimizationResult r = converged_minimizer(c);
      const Trajectory tr = stability_experiment(r, c.experiment.delta, m, c.dynamics, c.seed);
      const double sup = *std::max_element(tr.distance.begin(), tr.distance.end());
      rec.results = trajectory_summary(tr, m.a1, m.a2);
      rec.results["delta"] = c.experiment.delta;
      rec.results["sup_distance"] = sup;
      rec.results["initial_distance"] = tr.distance.front();
      rec.headline = sup;
      write_trajectory(art, tr);
      break;
    }
    case Command::Probe: {
      if (!probe) throw ValidationError({"probe needs a kind: subadd, theta, scaling, split-bound, continuity"});
      run_probe(c, *probe, rec);
      break;
    }
    case Command::Selftest: {
      json suites = json::array();
      for (const SuiteReport& s : selftest(c.seed)) {
        suites.push_back(to_json(s));
        rec.passed = rec.passed && s.passed();
      }
      rec.results = {{"suites", suites}, {"passed", rec.passed}};
      rec.headline = rec.passed ? 1.0 : 0.0;
      break;
    }
  }
}

void append_manifest(const fs::path& dir, const RunRecord& rec) {
  const fs::path path = dir / "manifest.json";
  json doc = {{"runs", json::array()}};
  if (fs::exists(path)) {
    std::ifstream in(path);
    try {
      in >> doc;
    } catch (const json::parse_error& e) {
      throw std::runtime_error("existing manifest " + path.string() + " is not valid JSON: " + e.what());
    }
    if (!doc.contains("runs") || !doc["runs"].is_array()) {
      throw std::runtime_error("existing manifest " + path.string() + " has no runs array");
    }
  }
  doc["runs"].push_back(to_json(rec));
  const fs::path tmp = dir / "manifest.json.tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << doc.dump(2) << '\n';
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

}  // namespace

Command parse_command(const std::string& name) {
  if (auto it = kCommands.find(name); it != kCommands.end()) return it->second;
  throw ValidationError({"unknown command " + name});
}

ProbeKind parse_probe(const std::string& name) {
  if (auto it = kProbes.find(name); it != kProbes.end()) return it->second;
  throw ValidationError({"unknown probe " + name});
}

std::string command_name(Command c) {
  for (const auto& [k, v] : kCommands) {
    if (v == c) return k;
  }
  return "?";
}

std::string probe_name(ProbeKind p) {
  for (const auto& [k, v] : kProbes) {
    if (v == p) return k;
  }
  return "?";
}

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
    EVP_MD_CTX_free(ctx);
    throw std::runtime_error("sha256 init failed");
  }
  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    EVP_DigestUpdate(ctx, buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, md, &len);
  EVP_MD_CTX_free(ctx);
  std::string hex;
  char two[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(two, sizeof two, "%02x", md[i]);
    hex += two;
  }
  return hex;
}

json to_json(const RunRecord& r) {
  json files = json::array();
  for (const auto& f : r.files) files.push_back({{"name", f.name}, {"sha256", f.sha256}, {"bytes", f.bytes}});
  return {{"command", r.command}, {"config", to_json(r.config)}, {"started", r.started}, {"finished", r.finished},
          {"passed", r.passed},   {"results", r.results},        {"files", files}};
}

RunRecord run(const RunConfig& config, Command command, std::optional<ProbeKind> probe) {
  RunRecord rec;
  rec.command = command_name(command);
  if (command == Command::Probe && probe) rec.command += " " + probe_name(*probe);
  rec.config = config;
  rec.started = utc_now();
  fs::create_directories(config.outdir);
  Artifacts art(config.outdir);
  dispatch(config, command, probe, rec, art);
  rec.files = art.entries();
  rec.finished = utc_now();
  append_manifest(config.outdir, rec);
  return rec;
}

int default_workers() {
  if (const char* env = std::getenv("NLSLAB_WORKERS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n >= 1) return static_cast<int>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<RunRecord> sweep(const RunConfig& base, const std::string& axis, std::span<const double> values,
                             Command command, std::optional<ProbeKind> probe, int workers) {
  std::vector<RunConfig> configs;
  for (double v : values) {
    RunConfig c = with_axis(base, axis, v);
    char name[64];
    std::snprintf(name, sizeof name, "%s=%.10g", axis.c_str(), v);
    c.outdir = base.outdir / name;
    configs.push_back(std::move(c));
  }
  std::vector<RunRecord> records(configs.size());
  if (configs.empty()) return records;

  std::vector<std::exception_ptr> errors(configs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < configs.size(); k = next++) {
      try {
        records[k] = run(configs[k], command, probe);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const int n = std::clamp(workers > 0 ? workers : default_workers(), 1, static_cast<int>(configs.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  fs::create_directories(base.outdir);
  std::ofstream out(base.outdir / "summary.csv", std::ios::trunc);
  out << "value,headline,passed\n";
  for (std::size_t k = 0; k < values.size(); ++k) {
    out << g17(values[k]) << ',' << g17(records[k].headline) << ',' << (records[k].passed ? 1 : 0) << '\n';
  }
  if (!out) throw std::runtime_error("cannot write summary.csv");
  return records;
}

}  // namespace nlslab
