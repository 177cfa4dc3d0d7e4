// fraclog command line front end. Talks to the library only through the C API.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fraclog/fraclog.h"

namespace {

enum ExitCode { kOk = 0, kInternal = 1, kBadArguments = 2, kNumericalFailure = 3, kIoFailure = 4 };

struct CliError {
  int code;
  std::string message;
};

int exit_code_for(fraclog_status status) {
  switch (status) {
    case FRACLOG_OK:
      return kOk;
    case FRACLOG_ERR_INVALID_ARGUMENT:
    case FRACLOG_ERR_DEGENERATE:
    case FRACLOG_ERR_PRECONDITION:
      return kBadArguments;
    case FRACLOG_ERR_BLOWUP:
    case FRACLOG_ERR_NUMERICAL:
      return kNumericalFailure;
    case FRACLOG_ERR_IO:
      return kIoFailure;
    case FRACLOG_ERR_INTERNAL:
      break;
  }
  return kInternal;
}

void check(fraclog_status status, const std::string& context = {}) {
  if (status == FRACLOG_OK) return;
  std::string msg = fraclog_status_string(status);
  msg += ": ";
  msg += fraclog_last_error();
  if (!context.empty()) msg += " (" + context + ")";
  throw CliError{exit_code_for(status), msg};
}

struct ModelDeleter {
  void operator()(fraclog_model* m) const { fraclog_model_free(m); }
};
struct TrajectoryDeleter {
  void operator()(fraclog_trajectory* t) const { fraclog_trajectory_free(t); }
};
struct EquilibriaDeleter {
  void operator()(fraclog_equilibria* e) const { fraclog_equilibria_free(e); }
};
struct ConvergenceDeleter {
  void operator()(fraclog_convergence* c) const { fraclog_convergence_free(c); }
};
using ModelPtr = std::unique_ptr<fraclog_model, ModelDeleter>;
using TrajectoryPtr = std::unique_ptr<fraclog_trajectory, TrajectoryDeleter>;
using EquilibriaPtr = std::unique_ptr<fraclog_equilibria, EquilibriaDeleter>;
using ConvergencePtr = std::unique_ptr<fraclog_convergence, ConvergenceDeleter>;

std::string fmt(double v, int digits = 10) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

struct ModelOptions {
  std::string model;
  std::optional<double> a, b, c;
  std::optional<double> r, K, m;
  std::vector<double> E;
};

struct RunConfig {
  ModelOptions model;
  std::vector<double> alpha;
  std::vector<double> x0;
  std::optional<double> t_final;
  std::optional<std::int64_t> n_steps;
  std::string method = "adams";
  std::optional<double> h_state;
  std::string out_dir = ".";
  std::int64_t base_steps = 32;
  int refinements = 4;
};

void add_model_options(CLI::App* app, ModelOptions& opts) {
  app->add_option("--model", opts.model, "Right-hand side")
      ->required()
      ->check(CLI::IsMember({"cubic", "logistic", "logistic-harvest", "allee", "allee-harvest"}));
  app->add_option("--a", opts.a, "Cubic coefficient of x^3");
  app->add_option("--b", opts.b, "Cubic coefficient of x^2");
  app->add_option("--c", opts.c, "Cubic coefficient of x");
  app->add_option("--r", opts.r, "Intrinsic growth rate");
  app->add_option("--K", opts.K, "Carrying capacity");
  app->add_option("--m", opts.m, "Allee threshold");
  app->add_option("--E", opts.E, "Harvest effort (comma list for simulate)")->delimiter(',');
}

[[noreturn]] void bad_args(const std::string& msg) { throw CliError{kBadArguments, msg}; }

// Checks that exactly the parameters of the selected model were given.
void check_model_flags(const ModelOptions& o) {
  const bool cubic = o.model == "cubic";
  const bool harvest = o.model == "logistic-harvest" || o.model == "allee-harvest";
  const bool allee = o.model == "allee" || o.model == "allee-harvest";
  auto forbid = [&](bool given, const char* flag) {
    if (given) bad_args(std::string("--") + flag + " does not apply to --model " + o.model);
  };
  auto need = [&](bool given, const char* flag) {
    if (!given) bad_args(std::string("--model ") + o.model + " requires --" + flag);
  };
  if (cubic) {
    forbid(o.r.has_value(), "r");
    forbid(o.K.has_value(), "K");
    forbid(o.m.has_value(), "m");
    forbid(!o.E.empty(), "E");
    need(o.a || o.b || o.c, "a, --b or --c");
    return;
  }
  forbid(o.a.has_value(), "a");
  forbid(o.b.has_value(), "b");
  forbid(o.c.has_value(), "c");
  need(o.r.has_value(), "r");
  need(o.K.has_value(), "K");
  if (allee) {
    need(o.m.has_value(), "m");
  } else {
    forbid(o.m.has_value(), "m");
  }
  if (harvest) {
    need(!o.E.empty(), "E");
  } else {
    forbid(!o.E.empty(), "E");
  }
}

// Harvest efforts to sweep; a single placeholder for models without E.
std::vector<std::optional<double>> effort_sweep(const ModelOptions& o) {
  std::vector<std::optional<double>> out;
  if (o.E.empty()) {
    out.emplace_back(std::nullopt);
  } else {
    for (double e : o.E) out.emplace_back(e);
  }
  return out;
}

ModelPtr build_model(const ModelOptions& o, std::optional<double> effort) {
  fraclog_model* raw = nullptr;
  fraclog_status st = FRACLOG_ERR_INTERNAL;
  if (o.model == "cubic") {
    st = fraclog_model_cubic(o.a.value_or(0.0), o.b.value_or(0.0), o.c.value_or(0.0), &raw);
  } else if (o.model == "logistic") {
    st = fraclog_model_logistic(*o.r, *o.K, &raw);
  } else if (o.model == "logistic-harvest") {
    st = fraclog_model_logistic_harvest(*o.r, *o.K, *effort, &raw);
  } else if (o.model == "allee") {
    st = fraclog_model_allee(*o.r, *o.K, *o.m, &raw);
  } else if (o.model == "allee-harvest") {
    st = fraclog_model_allee_harvest(*o.r, *o.K, *o.m, *effort, &raw);
  }
  check(st, "building model " + o.model);
  return ModelPtr(raw);
}

fraclog_method parse_method(const std::string& name) {
  return name == "euler" ? FRACLOG_METHOD_EULER : FRACLOG_METHOD_ADAMS;
}

std::string csv_name(const RunConfig& cfg, double alpha, double x0, std::optional<double> effort) {
  std::string name = cfg.model.model + "_alpha" + fmt(alpha, 6) + "_x0" + fmt(x0, 6);
  if (effort) name += "_E" + fmt(*effort, 6);
  return name + ".csv";
}

std::string describe(const RunConfig& cfg, double alpha, double x0, std::optional<double> effort) {
  std::string s = "model=" + cfg.model.model + " alpha=" + fmt(alpha) + " x0=" + fmt(x0);
  if (effort) s += " E=" + fmt(*effort);
  return s;
}

int cmd_simulate(const RunConfig& cfg) {
  check_model_flags(cfg.model);
  if (cfg.x0.empty()) bad_args("simulate requires --x0");
  if (!cfg.t_final) bad_args("simulate requires --t-final");
  const std::vector<double> alphas = cfg.alpha.empty() ? std::vector<double>{0.25, 0.5, 0.75, 1.0} : cfg.alpha;

  std::error_code ec;
  std::filesystem::create_directories(cfg.out_dir, ec);
  if (ec) throw CliError{kIoFailure, "cannot create output directory '" + cfg.out_dir + "': " + ec.message()};

  for (const auto effort : effort_sweep(cfg.model)) {
    const ModelPtr model = build_model(cfg.model, effort);
    for (double alpha : alphas) {
      for (double x0 : cfg.x0) {
        std::int64_t n_steps = 0;
        if (cfg.n_steps) {
          n_steps = *cfg.n_steps;
        } else {
          check(fraclog_default_n_steps(model.get(), alpha, x0, *cfg.t_final, &n_steps),
                describe(cfg, alpha, x0, effort));
        }
        fraclog_trajectory* raw = nullptr;
        std::int64_t blowup = -1;
        check(fraclog_solve(model.get(), alpha, x0, *cfg.t_final, n_steps, parse_method(cfg.method), &raw, &blowup),
              describe(cfg, alpha, x0, effort));
        const TrajectoryPtr traj(raw);
        const std::string path = (std::filesystem::path(cfg.out_dir) / csv_name(cfg, alpha, x0, effort)).string();
        check(fraclog_trajectory_write_csv(traj.get(), path.c_str()));
        const std::size_t len = fraclog_trajectory_length(traj.get());
        std::cout << path << " x(T)=" << fmt(fraclog_trajectory_values(traj.get())[len - 1]) << "\n";
      }
    }
  }
  return kOk;
}

int cmd_equilibria(const RunConfig& cfg) {
  check_model_flags(cfg.model);
  const std::vector<double> alphas = cfg.alpha.empty() ? std::vector<double>{1.0} : cfg.alpha;
  for (const auto effort : effort_sweep(cfg.model)) {
    const ModelPtr model = build_model(cfg.model, effort);
    double a = 0, b = 0, c = 0;
    check(fraclog_model_coefficients(model.get(), &a, &b, &c));
    for (double alpha : alphas) {
      fraclog_equilibria* raw = nullptr;
      check(fraclog_classify_all(model.get(), alpha, &raw));
      const EquilibriaPtr eq(raw);
      std::cout << "# model=" << cfg.model.model;
      if (effort) std::cout << " E=" << fmt(*effort);
      std::cout << " a=" << fmt(a) << " b=" << fmt(b) << " c=" << fmt(c) << " alpha=" << fmt(alpha) << "\n";
      std::cout << "x_eq,lambda,classification,multiplicity\n";
      std::string summary;
      for (std::size_t i = 0; i < fraclog_equilibria_count(eq.get()); ++i) {
        fraclog_equilibrium e{};
        check(fraclog_equilibria_get(eq.get(), i, &e));
        const char* tag = fraclog_stability_tag(e.classification);
        std::cout << fmt(e.x_eq) << "," << fmt(e.lambda) << "," << tag << "," << e.multiplicity << "\n";
        if (!summary.empty()) summary += ", ";
        summary += fmt(e.x_eq) + " " + tag;
      }
      std::cout << "summary: " << summary << "\n";
    }
  }
  return kOk;
}

int cmd_bound(const RunConfig& cfg) {
  check_model_flags(cfg.model);
  if (cfg.alpha.empty()) bad_args("bound requires --alpha");
  const std::vector<double> x0s = cfg.x0.empty() ? std::vector<double>{0.0} : cfg.x0;
  for (const auto effort : effort_sweep(cfg.model)) {
    const ModelPtr model = build_model(cfg.model, effort);
    for (double alpha : cfg.alpha) {
      for (double x0 : x0s) {
        double h = 0.0;
        if (cfg.h_state) {
          h = *cfg.h_state;
        } else {
          check(fraclog_model_default_h_state(model.get(), x0, &h), "pass --h-state for a cubic model");
        }
        double rhs_bound = 0.0, n_min = 0.0;
        check(fraclog_existence_bound(model.get(), h, alpha, &rhs_bound, &n_min));
        std::cout << "model=" << cfg.model.model;
        if (effort) std::cout << " E=" << fmt(*effort);
        std::cout << " alpha=" << fmt(alpha) << " h_state=" << fmt(h) << " rhs_bound=" << fmt(rhs_bound, 15)
                  << " n_min=" << fmt(n_min, 15) << "\n";
      }
    }
  }
  return kOk;
}

int cmd_convergence(const RunConfig& cfg) {
  check_model_flags(cfg.model);
  const std::vector<double> alphas = cfg.alpha.empty() ? std::vector<double>{1.0} : cfg.alpha;
  const std::vector<double> x0s = cfg.x0.empty() ? std::vector<double>{1.0} : cfg.x0;
  const double t_final = cfg.t_final.value_or(1.0);
  for (const auto effort : effort_sweep(cfg.model)) {
    const ModelPtr model = build_model(cfg.model, effort);
    for (double alpha : alphas) {
      for (double x0 : x0s) {
        fraclog_convergence* raw = nullptr;
        check(fraclog_convergence_study(model.get(), alpha, x0, t_final, parse_method(cfg.method), cfg.base_steps,
                                        cfg.refinements, &raw),
              describe(cfg, alpha, x0, effort));
        const ConvergencePtr study(raw);
        std::cout << "# " << describe(cfg, alpha, x0, effort) << " T=" << fmt(t_final) << " method=" << cfg.method
                  << "\n";
        std::cout << "n_steps,step,error\n";
        for (std::size_t i = 0; i < fraclog_convergence_levels(study.get()); ++i) {
          std::int64_t n = 0;
          double step = 0.0, err = 0.0;
          check(fraclog_convergence_level(study.get(), i, &n, &step, &err));
          std::cout << n << "," << fmt(step) << "," << fmt(err) << "\n";
        }
        std::cout << "order=" << fmt(fraclog_convergence_order(study.get()), 6) << "\n";
      }
    }
  }
  return kOk;
}

void add_run_options(CLI::App* sub, RunConfig& cfg, bool with_h_state, bool with_output, bool with_convergence) {
  add_model_options(sub, cfg.model);
  sub->add_option("--alpha", cfg.alpha, "Fractional order(s) in (0,1], comma separated")->delimiter(',');
  sub->add_option("--x0", cfg.x0, "Initial value(s), comma separated")->delimiter(',');
  sub->add_option("--t-final", cfg.t_final, "Time horizon T");
  sub->add_option("--n-steps", cfg.n_steps, "Grid intervals (default: 10 per unit time, refined for stability, at most 50000)");
  sub->add_option("--method", cfg.method, "Integrator")->check(CLI::IsMember({"euler", "adams"}));
  if (with_h_state) sub->add_option("--h-state", cfg.h_state, "Half-width h of the state box [-h, h]");
  if (with_output) sub->add_option("--out", cfg.out_dir, "Output directory for CSV files");
  if (with_convergence) {
    sub->add_option("--base-steps", cfg.base_steps, "Coarsest grid size")->check(CLI::PositiveNumber);
    sub->add_option("--refinements", cfg.refinements, "Number of grid doublings (>= 2)")
        ->check(CLI::Range(2, 30));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Caputo-fractional cubic population models: simulation, equilibria, existence bound"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(fraclog_version()));

  RunConfig sim_cfg, eq_cfg, bound_cfg, conv_cfg;
  auto* simulate = app.add_subcommand("simulate", "Integrate a parameter sweep and write one CSV per run");
  add_run_options(simulate, sim_cfg, false, true, false);
  auto* equilibria = app.add_subcommand("equilibria", "List equilibria with their stability class");
  add_run_options(equilibria, eq_cfg, false, false, false);
  auto* bound = app.add_subcommand("bound", "Evaluate the existence and uniqueness bound");
  add_run_options(bound, bound_cfg, true, false, false);
  auto* convergence = app.add_subcommand("convergence", "Empirical order of convergence against a closed form");
  add_run_options(convergence, conv_cfg, false, false, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kBadArguments;
  }

  try {
    if (*simulate) return cmd_simulate(sim_cfg);
    if (*equilibria) return cmd_equilibria(eq_cfg);
    if (*bound) return cmd_bound(bound_cfg);
    if (*convergence) return cmd_convergence(conv_cfg);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }
  return kBadArguments;
}
