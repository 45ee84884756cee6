#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "pmlwave/error.hpp"
#include "pmlwave/experiments.hpp"
#include "pmlwave/run_config.hpp"

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kConfigError = 2, kNumericalAbort = 3 };

struct Options {
  std::string config_path;
  std::string out_dir;
  std::vector<std::string> sets;
  std::vector<std::string> only;
  int jobs = 1;
};

int execute(pmlwave::ExperimentId id, const Options& opt) {
  using namespace pmlwave;
  std::vector<std::string> sets = opt.sets;
  if (!opt.out_dir.empty()) sets.push_back("out_dir=" + opt.out_dir);
  const RunConfig cfg = resolve_config(id, opt.config_path, sets);
  if (opt.jobs < 1) throw ConfigError("--jobs must be at least 1");

  ExperimentReport rep;
  switch (id) {
    case ExperimentId::Experiment1: rep = experiment1(cfg, opt.jobs); break;
    case ExperimentId::Experiment2: rep = experiment2(cfg, opt.jobs); break;
    case ExperimentId::Experiment3: rep = experiment3(cfg, opt.jobs); break;
    case ExperimentId::Verify: rep = verify(cfg, opt.only, opt.jobs); break;
    case ExperimentId::Run: rep = run_snapshot(cfg, opt.jobs); break;
  }
  rep.write_tables(cfg.out_dir, cfg.provenance());
  std::cout << rep.summary();
  return rep.passed() ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PML wave-equation experiments and verification scans"};
  app.require_subcommand(1);
  Options opt;
  const char* names[] = {"experiment1", "experiment2", "experiment3", "verify", "run"};
  const char* blurbs[] = {
      "Gaussian source, PML solution vs full-space reference at T",
      "Sup error vs truncation radius R with exponential fit",
      "Offset indicator sources, sup error vs offset c",
      "Special-function and frequency-domain checks",
      "Single solver run; writes modal fields at T",
  };
  for (int i = 0; i < 5; ++i) {
    CLI::App* sub = app.add_subcommand(names[i], blurbs[i]);
    sub->add_option("--config", opt.config_path, "key = value configuration file")->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out_dir, "output directory (overrides out_dir)");
    sub->add_option("--set", opt.sets, "KEY=VALUE override, repeatable")->take_all();
    sub->add_option("--jobs", opt.jobs, "worker threads")->capture_default_str();
    if (std::string(names[i]) == "verify") {
      sub->add_option("--only", opt.only, "run only these checks: i1i2, ratio, moments, symmetry, w")
          ->delimiter(',');
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  try {
    return execute(pmlwave::parse_experiment(chosen->get_name()), opt);
  } catch (const pmlwave::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const pmlwave::NumericalAbort& e) {
    std::cerr << "numerical abort: " << e.what() << '\n';
    return kNumericalAbort;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kCheckFailed;
  }
}
