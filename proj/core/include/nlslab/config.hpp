#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "nlslab/descent.hpp"
#include "nlslab/dynamics.hpp"
#include "nlslab/energy.hpp"
#include "nlslab/grid.hpp"
#include "nlslab/probes.hpp"

namespace nlslab {

/// Inputs of the probe, stability and check commands that do not belong to
/// the model or the solvers.
struct ExperimentConfig {
  /// Initial state for `evolve`: "minimizer" or "ground" (the box ground
  /// state scaled to the target masses).
  std::string init = "minimizer";
  double delta = 1e-2;
  double theta = 2.0;
  /// 16 log-spaced values on [0.05, 0.5] by default.
  std::vector<double> lambdas = default_lambdas();
  std::vector<Split> splits{{0.5, 0.5}, {0.5, 0.0}, {0.0, 0.5}, {1.0, 0.0}, {0.25, 0.75}};
  std::vector<double> eps{1e-2, 1e-3};
  /// Random field pairs drawn by `rearrange-check`.
  int samples = 20;

  static std::vector<double> default_lambdas();
};

/// One run: what to solve, how, and where to write it.
///
/// JSON layout (every section and key optional, unknown keys rejected):
///   {"grid": {"n1","n2","n3","L1","L2","L3"}, "params": {"mu1",...,"a2"},
///    "solver": {"method": "cg"|"gradient", "tau0", "armijo", "tol_energy",
///               "tol_residual", "max_iter", "starts", "precondition", "window"},
///    "dynamics": {"dt","T","linear_tol","record_every","scheme": "strang"|"yoshida4"},
///    "experiment": {"init","delta","theta","lambdas","splits": [[b1,b2],...],"eps","samples"},
///    "seed": 0, "outdir": "runs"}
/// n3 = 1 selects a planar grid.
struct RunConfig {
  GridSpec grid = GridSpec::standard();
  ModelParams params;
  SolverOptions solver;
  PropagatorConfig dynamics;
  ExperimentConfig experiment;
  std::uint64_t seed = 0;
  std::filesystem::path outdir = "runs";
};

/// Throws ValidationError naming every problem: unknown keys, wrong types,
/// bad grid sizes, and every violated model bound (beta = 0 is accepted).
RunConfig parse_config(const nlohmann::json& doc);
/// Reads and parses a JSON file; I/O and syntax errors become ValidationError.
RunConfig load_config(const std::filesystem::path& path);
/// Round-trips through parse_config.
nlohmann::json to_json(const RunConfig& config);

/// Sets one numeric field. `axis` is either "section.key" or a bare key that
/// occurs in exactly one section ("beta", "dt", "L3", "seed"). Throws
/// ValidationError for an unknown or ambiguous axis or if the result is
/// invalid.
RunConfig with_axis(const RunConfig& config, const std::string& axis, double value);

}  // namespace nlslab
