// cvsteer command-line front end: parameter sweeps, figure datasets,
// sudden-death/birth thresholds, critical-point adjudication and the ln 2
// bound scan, emitted as CSV or JSON.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "cvsteer/cvsteer.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumeric = 2;
constexpr int kExitIo = 3;

cvsteer::OutputFormat parse_format(const std::string& format) {
  if (format == "csv") {
    return cvsteer::OutputFormat::csv;
  }
  if (format == "json") {
    return cvsteer::OutputFormat::json;
  }
  throw cvsteer::ConfigError("format must be csv or json");
}

// Writes through either stdout or a file; open failures are I/O errors.
class OutputTarget {
 public:
  explicit OutputTarget(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::out | std::ios::trunc);
      if (!file_) {
        throw cvsteer::IoError("cannot open output path: " + path);
      }
    }
  }

  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  void finish() {
    if (file_.is_open()) {
      file_.flush();
      if (!file_) {
        throw cvsteer::IoError("write failed");
      }
    }
  }

 private:
  std::ofstream file_;
};

struct GlobalOptions {
  std::string out_path;
  std::string format = "csv";
  double omega = 1.0;
  int jobs = 0;  // 0 means all cores
};

void run_sweep(const GlobalOptions& global, cvsteer::SweepConfig config) {
  const auto table = cvsteer::sweep(config, global.jobs);
  OutputTarget target(config.output_path);
  if (config.format == cvsteer::OutputFormat::csv) {
    cvsteer::write_csv(table, target.stream());
  } else {
    cvsteer::write_json(table, target.stream());
  }
  target.finish();
}

void run_figure(const GlobalOptions& global, const std::string& name) {
  const auto figure = cvsteer::parse_figure_name(name);
  if (!figure) {
    throw CLI::ValidationError("figure", "unknown figure name: " + name);
  }
  OutputTarget target(global.out_path);
  cvsteer::write_figure(*figure, target.stream(), parse_format(global.format), global.omega,
                        global.jobs);
  target.finish();
}

void run_threshold(const GlobalOptions& global, double s) {
  const auto result = cvsteer::find_death_birth(s);
  OutputTarget target(global.out_path);
  if (parse_format(global.format) == cvsteer::OutputFormat::csv) {
    cvsteer::write_csv(result, target.stream());
  } else {
    target.stream() << cvsteer::to_json(result).dump(2) << '\n';
  }
  target.finish();
}

void run_adjudicate(const GlobalOptions& global, const std::vector<double>& s_grid) {
  const auto report = cvsteer::adjudicate_critical_formula(s_grid);
  OutputTarget target(global.out_path);
  if (parse_format(global.format) == cvsteer::OutputFormat::csv) {
    cvsteer::write_csv(report, target.stream());
  } else {
    target.stream() << cvsteer::to_json(report).dump(2) << '\n';
  }
  target.finish();
}

void run_bound_check(const GlobalOptions& global, const cvsteer::BoundGridSpec& grid) {
  const auto report = cvsteer::verify_ln2_bound(grid, global.jobs);
  OutputTarget target(global.out_path);
  if (parse_format(global.format) == cvsteer::OutputFormat::csv) {
    cvsteer::write_csv(report, target.stream());
  } else {
    target.stream() << cvsteer::to_json(report).dump(2) << '\n';
  }
  target.finish();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian steering of a two-mode squeezed state under a two-mode-squeezing "
               "amplification channel: sweeps, thresholds and bound checks"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  app.add_option("--out", global.out_path, "output path (default: stdout)");
  app.add_option("--format", global.format, "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--omega", global.omega, "mode frequency for the temperature column")
      ->capture_default_str();
  app.add_option("--jobs", global.jobs, "worker threads (0 = all cores)")->capture_default_str();

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "steering sweep over an r grid");
  std::string pair_name = "ab";
  std::vector<double> s_values;
  double r_min = 0.0;
  double r_max = 2.0;
  int r_steps = 400;
  std::string config_path;
  auto* pair_opt = sweep_cmd->add_option("--pair", pair_name, "bipartition: ab or bbbar")
                       ->check(CLI::IsMember({"ab", "bbbar"}));
  auto* s_opt = sweep_cmd->add_option("--s", s_values, "squeezing value(s)");
  auto* rmin_opt = sweep_cmd->add_option("--r-min", r_min, "lower end of the r grid");
  auto* rmax_opt = sweep_cmd->add_option("--r-max", r_max, "upper end of the r grid");
  auto* rsteps_opt = sweep_cmd->add_option("--r-steps", r_steps, "number of r grid points");
  sweep_cmd->add_option("--config", config_path, "JSON config file (flags override its values)");

  // figure
  auto* figure_cmd = app.add_subcommand("figure", "emit a reference figure dataset");
  std::string figure_name;
  figure_cmd->add_option("name", figure_name, "one of fig1a, fig1b, fig2, fig3")->required();

  // threshold
  auto* threshold_cmd =
      app.add_subcommand("threshold", "sudden-death/birth roots and asymmetry peaks at fixed s");
  double threshold_s = 1.0;
  threshold_cmd->add_option("--s", threshold_s, "squeezing of the initial state")->required();

  // adjudicate
  auto* adjudicate_cmd =
      app.add_subcommand("adjudicate", "test the candidate critical-point relations on an s grid");
  std::vector<double> s_grid;
  adjudicate_cmd->add_option("--s-grid", s_grid, "squeezing grid (default 0.25..3 step 0.25)");

  // bound-check
  auto* bound_cmd = app.add_subcommand("bound-check", "scan the steering asymmetry against ln 2");
  cvsteer::BoundGridSpec bound_grid;
  bound_cmd->add_option("--s-max", bound_grid.s_max, "upper end of the s grid")
      ->capture_default_str();
  bound_cmd->add_option("--r-max", bound_grid.r_max, "upper end of the r grid")
      ->capture_default_str();
  bound_cmd->add_option("--step", bound_grid.step, "grid step")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (sweep_cmd->parsed()) {
      cvsteer::SweepConfig config;
      if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
          throw cvsteer::IoError("cannot open config file: " + config_path);
        }
        nlohmann::json j;
        try {
          in >> j;
        } catch (const nlohmann::json::exception& e) {
          throw cvsteer::ConfigError(std::string("config: ") + e.what());
        }
        config = cvsteer::sweep_config_from_json(j);
      }
      if (pair_opt->count() > 0) {
        config.pair = pair_name == "bbbar" ? cvsteer::BipartitePair::bob_antibob
                                           : cvsteer::BipartitePair::alice_bob;
      }
      if (s_opt->count() > 0) {
        config.s_values = s_values;
      }
      if (rmin_opt->count() > 0) {
        config.r_range.min = r_min;
      }
      if (rmax_opt->count() > 0) {
        config.r_range.max = r_max;
      }
      if (rsteps_opt->count() > 0) {
        config.r_range.steps = r_steps;
      }
      if (app.get_option("--omega")->count() > 0) {
        config.omega = global.omega;
      }
      if (app.get_option("--out")->count() > 0) {
        config.output_path = global.out_path;
      }
      if (app.get_option("--format")->count() > 0) {
        config.format = parse_format(global.format);
      }
      run_sweep(global, std::move(config));
    } else if (figure_cmd->parsed()) {
      run_figure(global, figure_name);
    } else if (threshold_cmd->parsed()) {
      run_threshold(global, threshold_s);
    } else if (adjudicate_cmd->parsed()) {
      if (s_grid.empty()) {
        for (int i = 1; i <= 12; ++i) {
          s_grid.push_back(0.25 * i);
        }
      }
      run_adjudicate(global, s_grid);
    } else if (bound_cmd->parsed()) {
      run_bound_check(global, bound_grid);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const cvsteer::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const cvsteer::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const cvsteer::ContractViolation& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const cvsteer::RangeLimitError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const cvsteer::NumericDomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitOk;
}
