#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "nlslab/config.hpp"

namespace nlslab {

enum class Command { Minimize, MinimizeSingle, Spectrum, RearrangeCheck, Evolve, Stability, Probe, Selftest };
enum class ProbeKind { Subadd, Theta, Scaling, SplitBound, Continuity };

/// CLI spellings: "minimize", "minimize-single", ..., and for probes
/// "subadd", "theta", "scaling", "split-bound", "continuity".
/// Throw ValidationError on an unknown name.
Command parse_command(const std::string& name);
ProbeKind parse_probe(const std::string& name);
std::string command_name(Command c);
std::string probe_name(ProbeKind p);

struct FileEntry {
  std::string name;  // relative to the run directory
  std::string sha256;
  std::uintmax_t bytes = 0;
};

/// One invocation. `results` is command specific; `passed` is false only
/// for self-checking commands (selftest, rearrange-check) that found a
/// failure.
struct RunRecord {
  std::string command;
  RunConfig config;
  std::string started;
  std::string finished;
  nlohmann::json results;
  std::vector<FileEntry> files;
  bool passed = true;
  /// The number reported for this run in sweep summaries.
  double headline = 0.0;
};

nlohmann::json to_json(const RunRecord& record);

/// Hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

/// Dispatches, writes the command's files into config.outdir and appends the
/// record to config.outdir/manifest.json (earlier runs are kept). Numeric
/// outputs depend only on (config, command, probe): reruns are bit-identical.
/// Throws ValidationError for invalid input, NumericalError when a solver
/// fails, std::runtime_error on I/O failure.
RunRecord run(const RunConfig& config, Command command, std::optional<ProbeKind> probe = std::nullopt);

/// One run per value of `axis` (see with_axis), each in
/// outdir/<axis>=<value>, executed by up to `workers` threads (0: take
/// NLSLAB_WORKERS, else the hardware concurrency). Writes
/// outdir/summary.csv with columns value, headline, passed. Every axis value
/// is validated before any run starts; a failing run is rethrown after all
/// workers finish.
std::vector<RunRecord> sweep(const RunConfig& base, const std::string& axis, std::span<const double> values,
                             Command command, std::optional<ProbeKind> probe = std::nullopt, int workers = 0);

/// Worker count from NLSLAB_WORKERS (>= 1), else hardware concurrency.
int default_workers();

}  // namespace nlslab
