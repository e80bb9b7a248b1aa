// nlslab <command> --config <path> [--outdir <path>] [--seed <n>]
//
// Exit codes: 0 success, 1 I/O error or a failed self-check, 2 invalid
// input, 3 numerical failure.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "nlslab/config.hpp"
#include "nlslab/errors.hpp"
#include "nlslab/run.hpp"

namespace {

constexpr int kValidation = 2;
constexpr int kNumerical = 3;

struct Common {
  std::string config;
  std::string outdir;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, Common& c, bool config_required) {
  auto* opt = cmd->add_option("--config", c.config, "run configuration (JSON)");
  if (config_required) opt->required();
  cmd->add_option("--outdir", c.outdir, "output directory (overrides the config)");
  cmd->add_option("--seed", c.seed, "seed (overrides the config)");
}

nlslab::RunConfig resolve(const Common& c) {
  nlslab::RunConfig cfg = c.config.empty() ? nlslab::parse_config(nlohmann::json::object())
                                           : nlslab::load_config(c.config);
  if (!c.outdir.empty()) cfg.outdir = c.outdir;
  if (c.seed) {
    cfg.seed = *c.seed;
    cfg.solver.seed = *c.seed;
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for the partially confined two-component NLS energy"};
  app.require_subcommand(1);

  Common common;
  std::string probe_kind;
  std::string axis, sweep_command, sweep_probe;
  std::vector<double> values;
  int workers = 0;

  const std::vector<std::pair<std::string, std::string>> plain{
      {"minimize", "minimise J on the mass constraint"},
      {"minimize-single", "minimise the single-component functional (mu1, p1, a1)"},
      {"spectrum", "ground energies of the linear operator"},
      {"rearrange-check", "rearrangement identities on seeded random fields"},
      {"evolve", "time evolution from the minimiser or the ground state"},
      {"stability", "perturb the minimiser and record the orbit distance"},
      {"selftest", "run every property suite"},
  };
  for (const auto& [name, help] : plain) add_common(app.add_subcommand(name, help), common, name != "selftest");

  CLI::App* probe = app.add_subcommand("probe", "subadditivity, scaling and bound probes");
  probe->add_option("kind", probe_kind, "subadd | theta | scaling | split-bound | continuity")->required();
  add_common(probe, common, true);

  CLI::App* sw = app.add_subcommand("sweep", "run one command over values of a numeric config field");
  add_common(sw, common, true);
  sw->add_option("--axis", axis, "config field, e.g. beta or dynamics.dt")->required();
  sw->add_option("--values", values, "comma-separated values")->delimiter(',');
  sw->add_option("--command", sweep_command, "command to run per value")->required();
  sw->add_option("--probe", sweep_probe, "probe kind when --command probe");
  sw->add_option("--workers", workers, "concurrent runs (default: NLSLAB_WORKERS or core count)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kValidation;
  }

  try {
    const nlslab::RunConfig cfg = resolve(common);
    CLI::App* chosen = app.get_subcommands().front();
    const std::string name = chosen->get_name();

    if (name == "sweep") {
      const nlslab::Command cmd = nlslab::parse_command(sweep_command);
      std::optional<nlslab::ProbeKind> pk;
      if (!sweep_probe.empty()) pk = nlslab::parse_probe(sweep_probe);
      const auto records = nlslab::sweep(cfg, axis, values, cmd, pk, workers);
      nlohmann::json out = nlohmann::json::array();
      bool ok = true;
      for (std::size_t k = 0; k < records.size(); ++k) {
        out.push_back({{"value", values[k]}, {"headline", records[k].headline}, {"passed", records[k].passed}});
        ok = ok && records[k].passed;
      }
      std::cout << out.dump(2) << '\n';
      return ok ? 0 : 1;
    }

    const nlslab::Command cmd = nlslab::parse_command(name);
    std::optional<nlslab::ProbeKind> pk;
    if (cmd == nlslab::Command::Probe) pk = nlslab::parse_probe(probe_kind);
    const nlslab::RunRecord rec = nlslab::run(cfg, cmd, pk);
    std::cout << rec.results.dump(2) << '\n';
    return rec.passed ? 0 : 1;
  } catch (const nlslab::ValidationError& e) {
    std::cerr << "invalid input:\n";
    for (const auto& v : e.violations()) std::cerr << "  " << v << '\n';
    return kValidation;
  } catch (const nlslab::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kValidation;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
