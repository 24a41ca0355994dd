#include "cznd/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <ostream>

#include "CLI11.hpp"
#include "cznd/report.hpp"
#include "cznd/selfcheck.hpp"

namespace cznd::cli {

namespace fs = std::filesystem;

namespace {

struct CommonFlags {
  std::uint64_t seed = 0;
  double t0 = 0.0, t1 = 10.0;
  double init_lo = -5.0, init_hi = 5.0;
  std::size_t samples = 1001;
  IntegratorConfig integrator;
  std::string out_dir;
  std::vector<std::string> formats{"csv", "json", "svg"};
};

void add_common(CLI::App& app, CommonFlags& flags) {
  app.add_option("--seed", flags.seed, "PRNG seed for the initial state");
  app.add_option("--t0", flags.t0, "Span start (s)");
  app.add_option("--t1", flags.t1, "Span end (s)");
  app.add_option("--init-lo", flags.init_lo, "Lower bound of initial entries");
  app.add_option("--init-hi", flags.init_hi, "Upper bound of initial entries");
  app.add_option("--samples", flags.samples, "Number of output samples");
  app.add_option("--rel-tol", flags.integrator.rel_tol, "Integrator relative tolerance");
  app.add_option("--abs-tol", flags.integrator.abs_tol, "Integrator absolute tolerance");
  app.add_option("--max-step", flags.integrator.max_step, "Largest integrator step (s)");
  app.add_option("--initial-step", flags.integrator.initial_step, "First integrator step (s)");
  app.add_option("--max-steps", flags.integrator.max_steps, "Integrator step budget");
  app.add_option("--out", flags.out_dir, "Output directory (default $CZND_OUT_DIR or ./out)");
  app.add_option("--formats", flags.formats, "Subset of csv,json,svg")
      ->delimiter(',')
      ->check(CLI::IsMember({"csv", "json", "svg"}));
  app.fallthrough();
}

// TOML reader that assigns top-level keys to the subcommand being run, so a
// config file can say `gamma = 10` instead of `run.gamma = 10`.
class SubcommandConfig : public CLI::ConfigTOML {
 public:
  explicit SubcommandConfig(const CLI::App& app) : app_(app) {}

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    std::vector<CLI::ConfigItem> items = CLI::ConfigTOML::from_config(input);
    const auto subs = app_.get_subcommands();
    if (subs.empty()) return items;
    for (auto& item : items) {
      if (item.parents.empty()) item.parents = {subs.front()->get_name()};
    }
    return items;
  }

 private:
  const CLI::App& app_;
};

RunConfig base_config(const CommonFlags& flags) {
  RunConfig config;
  config.seed = flags.seed;
  config.t0 = flags.t0;
  config.t1 = flags.t1;
  config.init_lo = flags.init_lo;
  config.init_hi = flags.init_hi;
  config.samples = flags.samples;
  config.integrator = flags.integrator;
  return config;
}

fs::path output_dir(const CommonFlags& flags) {
  if (!flags.out_dir.empty()) return flags.out_dir;
  if (const char* env = std::getenv("CZND_OUT_DIR"); env != nullptr && *env != '\0') return env;
  return "out";
}

bool wants(const CommonFlags& flags, const std::string& format) {
  return std::find(flags.formats.begin(), flags.formats.end(), format) != flags.formats.end();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot write " + path.string());
  os << content;
}

int cmd_run(const ProblemRegistry& registry, const CommonFlags& flags, const std::string& example,
            const std::string& model, double gamma, std::ostream& out) {
  RunConfig config = base_config(flags);
  config.example = example;
  config.model = parse_model(model);
  config.gamma = gamma;
  const TimeVariantProblem& problem = registry.get(example);
  config.validate();

  const RunResult result = run(problem, config);
  const fs::path dir = output_dir(flags);
  fs::create_directories(dir);

  if (wants(flags, "csv")) {
    std::ostringstream os;
    report::write_trajectory_csv(os, result, problem.m(), problem.n());
    write_file(dir / "trajectory.csv", os.str());
  }
  if (wants(flags, "json")) {
    write_file(dir / "summary.json", report::summary_json(result).dump(2) + "\n");
  }
  if (wants(flags, "svg")) {
    const std::string title = example + ", " + run_label(config) + ", seed " +
                              std::to_string(config.seed);
    write_file(dir / "residual.svg",
               report::residual_svg(result.trajectory.times,
                                    {{run_label(config), result.residuals}}, title));
  }
  out << example << " " << run_label(config) << " seed=" << config.seed << ": terminal residual "
      << report::format_double(result.summary.terminal_residual.value_or(NAN)) << ", wrote "
      << dir.string() << "\n";
  return kOk;
}

template <typename T>
std::vector<T> broadcast(const std::vector<T>& values, std::size_t count, const char* flag) {
  if (values.size() == count) return values;
  if (values.size() == 1) return std::vector<T>(count, values.front());
  throw ConfigError(std::string(flag) + " given " + std::to_string(values.size()) +
                    " times; expected 1 or " + std::to_string(count));
}

int cmd_compare(const ProblemRegistry& registry, const CommonFlags& flags,
                const std::vector<std::string>& examples, const std::vector<std::string>& models,
                const std::vector<double>& gammas, std::ostream& out) {
  const std::size_t count = std::max({examples.size(), models.size(), gammas.size()});
  if (count < 2) throw ComparabilityError("compare needs two --model or two --gamma values");
  const auto ex = broadcast(examples, count, "--example");
  const auto mo = broadcast(models, count, "--model");
  const auto ga = broadcast(gammas, count, "--gamma");

  std::vector<RunConfig> configs;
  for (std::size_t k = 0; k < count; ++k) {
    RunConfig config = base_config(flags);
    config.example = ex[k];
    config.model = parse_model(mo[k]);
    config.gamma = ga[k];
    config.validate();
    configs.push_back(config);
  }
  check_comparable(configs);
  registry.get(configs.front().example);

  const ComparisonTable table = compare(registry, configs);
  const fs::path dir = output_dir(flags);
  fs::create_directories(dir);
  if (wants(flags, "csv")) {
    std::ostringstream os;
    report::write_compare_csv(os, table);
    write_file(dir / "compare.csv", os.str());
  }
  if (wants(flags, "json")) {
    write_file(dir / "compare.json", report::comparison_json(table).dump(2) + "\n");
  }
  if (wants(flags, "svg")) {
    std::vector<report::Series> series;
    for (const auto& e : table.entries) series.push_back({e.label, e.residuals});
    write_file(dir / "compare.svg",
               report::residual_svg(table.times, series,
                                    table.example + ", seed " + std::to_string(table.seed)));
  }
  for (const auto& e : table.entries) {
    out << e.label << ": terminal residual "
        << report::format_double(e.summary.terminal_residual.value_or(NAN))
        << ", max residual tau>=5 "
        << report::format_double(e.summary.max_residual_late.value_or(NAN)) << "\n";
  }
  return kOk;
}

int cmd_list(const ProblemRegistry& registry, std::ostream& out) {
  for (const auto& name : registry.names()) {
    const auto& p = registry.get(name);
    out << name << "  X: " << p.m() << "x" << p.n() << "  F: " << p.n() << "x" << p.n()
        << "  A: " << p.m() << "x" << p.m() << "\n";
  }
  return kOk;
}

}  // namespace

int validate(const ProblemRegistry& registry, int tau_samples, std::ostream& out) {
  std::vector<selfcheck::CheckResult> checks = selfcheck::registry_consistency(registry, tau_samples);
  checks.push_back(selfcheck::vec_axb_identity());
  checks.push_back(selfcheck::penrose_conditions());
  bool ok = true;
  for (const auto& c : checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
    ok = ok && c.passed;
  }
  return ok ? kOk : kNumericalFailure;
}

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Zeroing-neural-dynamics solver for X(t)F(t) - A(t)conj(X(t)) = C(t)", "cznd"};
  app.require_subcommand(1, 1);
  app.set_config("--config", "", "TOML file with flag values; flags given on the command line win");
  app.config_formatter(std::make_shared<SubcommandConfig>(app));

  CommonFlags run_flags;
  std::string run_example = "example1", run_model = "con-cznd1";
  double run_gamma = 1.0;
  CLI::App* run_cmd = app.add_subcommand("run", "Integrate one model on one example");
  run_cmd->add_option("--example", run_example, "Example name (see `list`)");
  run_cmd->add_option("--model", run_model, "con-cznd1 or con-cznd2");
  run_cmd->add_option("--gamma", run_gamma, "Regulation parameter (> 0)");
  add_common(*run_cmd, run_flags);

  CommonFlags cmp_flags;
  std::vector<std::string> cmp_examples{"example1"}, cmp_models{"con-cznd1"};
  std::vector<double> cmp_gammas{1.0};
  CLI::App* cmp_cmd = app.add_subcommand("compare", "Run several configurations and overlay them");
  cmp_cmd->add_option("--example", cmp_examples, "Example name (repeatable)");
  cmp_cmd->add_option("--model", cmp_models, "Model (repeatable)");
  cmp_cmd->add_option("--gamma", cmp_gammas, "Regulation parameter (repeatable)");
  add_common(*cmp_cmd, cmp_flags);

  int tau_samples = 101;
  CLI::App* val_cmd =
      app.add_subcommand("validate", "Check the registered examples and the linear-algebra identities");
  val_cmd->add_option("--tau-samples", tau_samples, "Number of tau samples in [0, 10]")
      ->check(CLI::Range(2, 1000000));

  CLI::App* list_cmd = app.add_subcommand("list", "List the registered examples");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    const ProblemRegistry registry = register_examples();
    if (run_cmd->parsed()) {
      return cmd_run(registry, run_flags, run_example, run_model, run_gamma, out);
    }
    if (cmp_cmd->parsed()) {
      return cmd_compare(registry, cmp_flags, cmp_examples, cmp_models, cmp_gammas, out);
    }
    if (val_cmd->parsed()) return validate(registry, tau_samples, out);
    if (list_cmd->parsed()) return cmd_list(registry, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const ComparabilityError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kNumericalFailure;
  }
  return kUsageError;
}

}  // namespace cznd::cli
