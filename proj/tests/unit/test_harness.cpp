#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nlslab/config.hpp"
#include "nlslab/run.hpp"
#include "nlslab/selftest.hpp"

using namespace nlslab;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "nlslab_harness" / name;
  fs::remove_all(dir);
  return dir;
}

RunConfig small_config(const fs::path& outdir) {
  RunConfig c = parse_config(json::parse(R"({
    "grid": {"n1": 10, "n2": 10, "n3": 16, "L1": 5, "L2": 5, "L3": 6},
    "solver": {"starts": 1},
    "seed": 3
  })"));
  c.outdir = outdir;
  return c;
}

std::vector<std::string> errors_of(const json& doc) {
  try {
    parse_config(doc);
  } catch (const ValidationError& e) {
    return e.violations();
  }
  return {};
}

bool any_contains(const std::vector<std::string>& v, const std::string& s) {
  return std::any_of(v.begin(), v.end(), [&](const std::string& x) { return x.find(s) != std::string::npos; });
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Config, DefaultsFromEmptyDocument) {
  const RunConfig c = parse_config(json::object());
  EXPECT_EQ(c.grid, GridSpec::standard());
  EXPECT_EQ(c.params, ModelParams::reference());
  EXPECT_EQ(c.experiment.lambdas.size(), 16u);
  EXPECT_NEAR(c.experiment.lambdas.front(), 0.05, 1e-15);
  EXPECT_NEAR(c.experiment.lambdas.back(), 0.5, 1e-15);
}

TEST(Config, ReportsEveryProblem) {
  const auto errs = errors_of(json::parse(R"({
    "grid": {"n1": 2, "L3": -1},
    "params": {"p1": 4, "r1": 1.7, "r2": 1.7},
    "solver": {"method": "newton", "tau0": "big"},
    "dynamics": {"scheme": "rk4"},
    "colour": "blue"
  })"));
  EXPECT_TRUE(any_contains(errs, "colour"));
  EXPECT_TRUE(any_contains(errs, "n1"));
  EXPECT_TRUE(any_contains(errs, "L3"));
  EXPECT_TRUE(any_contains(errs, "p1 out of (2,10/3)"));
  EXPECT_TRUE(any_contains(errs, "r1+r2"));
  EXPECT_TRUE(any_contains(errs, "method"));
  EXPECT_TRUE(any_contains(errs, "tau0"));
  EXPECT_TRUE(any_contains(errs, "scheme"));
  EXPECT_GE(errs.size(), 8u);
}

TEST(Config, AcceptsZeroCouplingAndPlanarGrid) {
  const RunConfig c = parse_config(json::parse(R"({"params": {"beta": 0}, "grid": {"n3": 1}})"));
  EXPECT_EQ(c.params.beta, 0.0);
  EXPECT_TRUE(c.grid.planar());
  EXPECT_FALSE(errors_of(json::parse(R"({"params": {"beta": -1}})")).empty());
}

TEST(Config, RoundTripsThroughJson) {
  RunConfig c = small_config("out");
  c.params.beta = 0.7;
  c.solver.method = SolverOptions::Method::Gradient;
  c.dynamics.scheme = Scheme::Yoshida4;
  c.experiment.splits = {{0.3, 0.2}};
  c.experiment.lambdas = {0.1, 0.2};
  const json doc = to_json(c);
  const RunConfig d = parse_config(doc);
  EXPECT_EQ(to_json(d), doc);
  EXPECT_EQ(d.grid, c.grid);
  EXPECT_EQ(d.params, c.params);
  EXPECT_EQ(d.dynamics.scheme, Scheme::Yoshida4);
  EXPECT_EQ(d.solver.seed, 3u);
}

TEST(Config, LoadReportsMissingAndMalformedFiles) {
  EXPECT_THROW(load_config("/nonexistent/config.json"), ValidationError);
  const fs::path dir = fresh_dir("bad_json");
  fs::create_directories(dir);
  std::ofstream(dir / "c.json") << "{\"grid\": ";
  EXPECT_THROW(load_config(dir / "c.json"), ValidationError);
}

TEST(WithAxis, QualifiedBareAndSeed) {
  const RunConfig c = small_config("out");
  EXPECT_EQ(with_axis(c, "params.beta", 0.25).params.beta, 0.25);
  EXPECT_EQ(with_axis(c, "beta", 0.5).params.beta, 0.5);
  EXPECT_EQ(with_axis(c, "L3", 8.0).grid.half_width(2), 8.0);
  EXPECT_EQ(with_axis(c, "n3", 32.0).grid.n(2), 32);
  EXPECT_EQ(with_axis(c, "dt", 0.01).dynamics.dt, 0.01);
  EXPECT_EQ(with_axis(c, "seed", 7.0).seed, 7u);
  EXPECT_THROW(with_axis(c, "nonsense", 1.0), ValidationError);
  EXPECT_THROW(with_axis(c, "p1", 5.0), ValidationError);  // result invalid
}

TEST(Names, CommandsAndProbesRoundTrip) {
  for (Command c : {Command::Minimize, Command::MinimizeSingle, Command::Spectrum, Command::RearrangeCheck,
                    Command::Evolve, Command::Stability, Command::Probe, Command::Selftest}) {
    EXPECT_EQ(parse_command(command_name(c)), c);
  }
  for (ProbeKind p : {ProbeKind::Subadd, ProbeKind::Theta, ProbeKind::Scaling, ProbeKind::SplitBound,
                      ProbeKind::Continuity}) {
    EXPECT_EQ(parse_probe(probe_name(p)), p);
  }
  EXPECT_EQ(probe_name(ProbeKind::SplitBound), "split-bound");
  EXPECT_THROW(parse_command("launch"), ValidationError);
}

TEST(Sha256, KnownVector) {
  const fs::path dir = fresh_dir("sha");
  fs::create_directories(dir);
  std::ofstream(dir / "abc", std::ios::binary) << "abc";
  EXPECT_EQ(sha256_file(dir / "abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  std::ofstream(dir / "empty", std::ios::binary).flush();
  EXPECT_EQ(sha256_file(dir / "empty"), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_THROW(sha256_file(dir / "missing"), std::runtime_error);
}

TEST(Run, MinimizeIsBitReproducibleAndManifested) {
  const fs::path a = fresh_dir("run_a"), b = fresh_dir("run_b");
  const RunRecord ra = run(small_config(a), Command::Minimize);
  const RunRecord rb = run(small_config(b), Command::Minimize);
  ASSERT_FALSE(ra.files.empty());
  ASSERT_EQ(ra.files.size(), rb.files.size());
  for (std::size_t k = 0; k < ra.files.size(); ++k) {
    EXPECT_EQ(ra.files[k].name, rb.files[k].name);
    EXPECT_EQ(ra.files[k].sha256, rb.files[k].sha256) << ra.files[k].name;
    EXPECT_EQ(ra.files[k].sha256, sha256_file(a / ra.files[k].name));
    EXPECT_EQ(ra.files[k].bytes, fs::file_size(a / ra.files[k].name));
  }
  EXPECT_EQ(slurp(a / "energy_trace.csv"), slurp(b / "energy_trace.csv"));
  EXPECT_EQ(ra.headline, rb.headline);

  // A second run appends to the manifest.
  run(small_config(a), Command::Minimize);
  std::ifstream in(a / "manifest.json");
  const json manifest = json::parse(in);
  ASSERT_EQ(manifest.at("runs").size(), 2u);
  const json& first = manifest.at("runs")[0];
  EXPECT_EQ(first.at("command"), "minimize");
  EXPECT_EQ(parse_config(first.at("config")).grid, small_config(a).grid);
  EXPECT_EQ(first.at("files").size(), ra.files.size());
}

TEST(Run, ProbeNeedsKindAndInvalidInputIsRejected) {
  const fs::path dir = fresh_dir("probe");
  EXPECT_THROW(run(small_config(dir), Command::Probe), ValidationError);
  RunConfig planar = small_config(dir);
  planar.grid = GridSpec::plane({12, 12}, {6.0, 6.0});
  EXPECT_THROW(run(planar, Command::Spectrum), ValidationError);
}

TEST(Sweep, EmptyValuesDoNothing) {
  const fs::path dir = fresh_dir("sweep_empty");
  const auto records = sweep(small_config(dir), "beta", {}, Command::Minimize);
  EXPECT_TRUE(records.empty());
  EXPECT_FALSE(fs::exists(dir / "summary.csv"));
}

TEST(Sweep, OneRunPerValueWithSummary) {
  const fs::path dir = fresh_dir("sweep");
  const double values[] = {0.5, 1.0};
  const auto records = sweep(small_config(dir), "beta", values, Command::Minimize, std::nullopt, 2);
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[0].config.params.beta, 0.5);
  EXPECT_TRUE(fs::exists(dir / "beta=0.5" / "manifest.json"));
  EXPECT_TRUE(fs::exists(dir / "beta=1" / "energy_trace.csv"));
  // Stronger coupling, lower minimum.
  EXPECT_LT(records[1].headline, records[0].headline);
  const std::string summary = slurp(dir / "summary.csv");
  EXPECT_EQ(summary.substr(0, summary.find('\n')), "value,headline,passed");
  EXPECT_EQ(std::count(summary.begin(), summary.end(), '\n'), 3);
  EXPECT_THROW(sweep(small_config(dir), "beta", std::vector<double>{-1.0}, Command::Minimize), ValidationError);
}

TEST(Selftest, ReportAggregation) {
  SuiteReport r;
  r.suite = "demo";
  r.add("a", true, 1.0, 2.0);
  r.add("a", true, 1.5, 2.0);
  EXPECT_TRUE(r.passed());
  r.add("b", false, 3.0, 2.0);
  EXPECT_FALSE(r.passed());
  const json j = to_json(r);
  EXPECT_EQ(j.at("suite"), "demo");
}
