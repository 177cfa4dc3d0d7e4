#include <exception>
#include <new>
#include <string>
#include <vector>

#include "fraclog/csv.hpp"
#include "fraclog/error.hpp"
#include "fraclog/fraclog.h"
#include "fraclog/model.hpp"
#include "fraclog/solver.hpp"
#include "fraclog/specfun.hpp"
#include "fraclog/stability.hpp"

struct fraclog_model {
  fraclog::model::ModelSpec spec;
};

struct fraclog_trajectory {
  fraclog::solver::Trajectory traj;
  std::vector<double> times;
};

struct fraclog_equilibria {
  std::vector<fraclog_equilibrium> items;
};

struct fraclog_convergence {
  fraclog::solver::ConvergenceStudy study;
};

namespace {

thread_local std::string g_last_error;

fraclog_status fail(fraclog_status status, const char* message) {
  g_last_error = message;
  return status;
}

// Runs `body` and maps the library's exception types onto status codes.
template <class Body>
fraclog_status guarded(Body&& body, std::int64_t* blowup_index = nullptr) noexcept {
  try {
    body();
    return FRACLOG_OK;
  } catch (const fraclog::BlowUpError& e) {
    if (blowup_index) *blowup_index = e.index();
    return fail(FRACLOG_ERR_BLOWUP, e.what());
  } catch (const fraclog::DegenerateModelError& e) {
    return fail(FRACLOG_ERR_DEGENERATE, e.what());
  } catch (const fraclog::DomainError& e) {
    return fail(FRACLOG_ERR_INVALID_ARGUMENT, e.what());
  } catch (const fraclog::PreconditionError& e) {
    return fail(FRACLOG_ERR_PRECONDITION, e.what());
  } catch (const fraclog::NumericalError& e) {
    return fail(FRACLOG_ERR_NUMERICAL, e.what());
  } catch (const fraclog::IoError& e) {
    return fail(FRACLOG_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(FRACLOG_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(FRACLOG_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(FRACLOG_ERR_INTERNAL, "unknown error");
  }
}

fraclog_status null_arg(const char* name) {
  return fail(FRACLOG_ERR_INVALID_ARGUMENT, (std::string("null pointer argument: ") + name).c_str());
}

fraclog::solver::SolverMethod to_method(fraclog_method m) {
  switch (m) {
    case FRACLOG_METHOD_EULER:
      return fraclog::solver::SolverMethod::FracEuler;
    case FRACLOG_METHOD_ADAMS:
      return fraclog::solver::SolverMethod::FracAdamsPECE;
  }
  throw fraclog::DomainError("unknown solver method " + std::to_string(static_cast<int>(m)));
}

fraclog_stability to_c(fraclog::stability::Classification c) {
  switch (c) {
    case fraclog::stability::Classification::Unstable:
      return FRACLOG_UNSTABLE;
    case fraclog::stability::Classification::AsymptoticallyStable:
      return FRACLOG_ASYMPTOTICALLY_STABLE;
    case fraclog::stability::Classification::Inconclusive:
      break;
  }
  return FRACLOG_INCONCLUSIVE;
}

template <class Make>
fraclog_status make_model(fraclog_model** out, Make&& make) {
  if (!out) return null_arg("out");
  return guarded([&] { *out = new fraclog_model{make()}; });
}

}  // namespace

extern "C" {

const char* fraclog_version(void) { return "1.0.0"; }

const char* fraclog_last_error(void) { return g_last_error.c_str(); }

const char* fraclog_status_string(fraclog_status status) {
  switch (status) {
    case FRACLOG_OK:
      return "ok";
    case FRACLOG_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case FRACLOG_ERR_DEGENERATE:
      return "degenerate model";
    case FRACLOG_ERR_PRECONDITION:
      return "precondition violated";
    case FRACLOG_ERR_BLOWUP:
      return "solution blow-up";
    case FRACLOG_ERR_NUMERICAL:
      return "numerical failure";
    case FRACLOG_ERR_IO:
      return "i/o failure";
    case FRACLOG_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* fraclog_stability_tag(fraclog_stability s) {
  switch (s) {
    case FRACLOG_UNSTABLE:
      return "U";
    case FRACLOG_ASYMPTOTICALLY_STABLE:
      return "AS";
    case FRACLOG_INCONCLUSIVE:
      return "INCONCLUSIVE";
  }
  return "?";
}

fraclog_status fraclog_gamma(double t, double* out) {
  if (!out) return null_arg("out");
  return guarded([&] { *out = fraclog::specfun::gamma(t); });
}

fraclog_status fraclog_mittag_leffler(double alpha, double z, double* out) {
  if (!out) return null_arg("out");
  return guarded([&] { *out = fraclog::specfun::mittag_leffler(alpha, z); });
}

fraclog_status fraclog_model_cubic(double a, double b, double c, fraclog_model** out) {
  return make_model(out, [&] { return fraclog::model::ModelSpec::cubic(a, b, c); });
}

fraclog_status fraclog_model_logistic(double r, double K, fraclog_model** out) {
  return make_model(out, [&] { return fraclog::model::ModelSpec::logistic(r, K); });
}

fraclog_status fraclog_model_logistic_harvest(double r, double K, double E, fraclog_model** out) {
  return make_model(out, [&] { return fraclog::model::ModelSpec::logistic_harvest(r, K, E); });
}

fraclog_status fraclog_model_allee(double r, double K, double m, fraclog_model** out) {
  return make_model(out, [&] { return fraclog::model::ModelSpec::allee(r, K, m); });
}

fraclog_status fraclog_model_allee_harvest(double r, double K, double m, double E, fraclog_model** out) {
  return make_model(out, [&] { return fraclog::model::ModelSpec::allee_harvest(r, K, m, E); });
}

void fraclog_model_free(fraclog_model* model) { delete model; }

const char* fraclog_model_name(const fraclog_model* model) {
  // name() views a string literal, so data() is NUL-terminated.
  return model ? model->spec.name().data() : "";
}

fraclog_status fraclog_model_coefficients(const fraclog_model* model, double* a, double* b, double* c) {
  if (!model) return null_arg("model");
  if (!a || !b || !c) return null_arg("a/b/c");
  return guarded([&] {
    const auto k = fraclog::model::to_cubic(model->spec);
    *a = k.a;
    *b = k.b;
    *c = k.c;
  });
}

fraclog_status fraclog_model_rhs(const fraclog_model* model, double x, double* out) {
  if (!model) return null_arg("model");
  if (!out) return null_arg("out");
  return guarded([&] { *out = fraclog::model::rhs_eval(fraclog::model::to_cubic(model->spec), x); });
}

fraclog_status fraclog_model_default_h_state(const fraclog_model* model, double x0, double* out) {
  if (!model) return null_arg("model");
  if (!out) return null_arg("out");
  return guarded([&] { *out = fraclog::model::default_h_state(model->spec, x0); });
}

fraclog_status fraclog_existence_bound(const fraclog_model* model, double h_state, double alpha,
                                       double* rhs_bound, double* n_min) {
  if (!model) return null_arg("model");
  if (!rhs_bound || !n_min) return null_arg("rhs_bound/n_min");
  return guarded([&] {
    const auto bound = fraclog::model::existence_bound(fraclog::model::to_cubic(model->spec), h_state, alpha);
    *rhs_bound = bound.rhs_bound;
    *n_min = bound.n_min;
  });
}

fraclog_status fraclog_solve(const fraclog_model* model, double alpha, double x0, double t_final,
                             int64_t n_steps, fraclog_method method, fraclog_trajectory** out,
                             int64_t* blowup_index) {
  if (!model) return null_arg("model");
  if (!out) return null_arg("out");
  return guarded(
      [&] {
        const fraclog::model::FractionalIVP ivp{alpha, model->spec, x0, t_final};
        auto traj = fraclog::solver::solve(ivp, n_steps, to_method(method));
        auto times = traj.times();
        *out = new fraclog_trajectory{std::move(traj), std::move(times)};
      },
      blowup_index);
}

fraclog_status fraclog_default_n_steps(const fraclog_model* model, double alpha, double x0, double t_final,
                                       int64_t* out) {
  if (!model) return null_arg("model");
  if (!out) return null_arg("out");
  return guarded([&] {
    const fraclog::model::FractionalIVP ivp{alpha, model->spec, x0, t_final};
    *out = fraclog::solver::default_n_steps(ivp);
  });
}

void fraclog_trajectory_free(fraclog_trajectory* traj) { delete traj; }

size_t fraclog_trajectory_length(const fraclog_trajectory* traj) { return traj ? traj->traj.values.size() : 0; }

const double* fraclog_trajectory_times(const fraclog_trajectory* traj) {
  return traj ? traj->times.data() : nullptr;
}

const double* fraclog_trajectory_values(const fraclog_trajectory* traj) {
  return traj ? traj->traj.values.data() : nullptr;
}

fraclog_status fraclog_trajectory_write_csv(const fraclog_trajectory* traj, const char* path) {
  if (!traj) return null_arg("traj");
  if (!path) return null_arg("path");
  return guarded([&] { fraclog::write_csv(path, traj->traj); });
}

fraclog_status fraclog_classify_all(const fraclog_model* model, double alpha, fraclog_equilibria** out) {
  if (!model) return null_arg("model");
  if (!out) return null_arg("out");
  return guarded([&] {
    const auto reports = fraclog::stability::classify_all(fraclog::model::to_cubic(model->spec), alpha);
    auto* result = new fraclog_equilibria{};
    for (const auto& r : reports) {
      result->items.push_back(fraclog_equilibrium{r.x_eq, r.lambda, to_c(r.classification), r.multiplicity});
    }
    *out = result;
  });
}

void fraclog_equilibria_free(fraclog_equilibria* eq) { delete eq; }

size_t fraclog_equilibria_count(const fraclog_equilibria* eq) { return eq ? eq->items.size() : 0; }

fraclog_status fraclog_equilibria_get(const fraclog_equilibria* eq, size_t index, fraclog_equilibrium* out) {
  if (!eq) return null_arg("eq");
  if (!out) return null_arg("out");
  if (index >= eq->items.size()) return fail(FRACLOG_ERR_INVALID_ARGUMENT, "equilibrium index out of range");
  *out = eq->items[index];
  return FRACLOG_OK;
}

fraclog_status fraclog_harvest_threshold(double r, double K, double m, double* out) {
  if (!out) return null_arg("out");
  return guarded([&] { *out = fraclog::stability::harvest_threshold(r, K, m); });
}

fraclog_status fraclog_logistic_harvest_equilibrium(double r, double K, double E, double* out) {
  if (!out) return null_arg("out");
  return guarded([&] { *out = fraclog::stability::logistic_harvest_equilibrium(r, K, E); });
}

fraclog_status fraclog_convergence_study(const fraclog_model* model, double alpha, double x0, double t_final,
                                         fraclog_method method, int64_t base_steps, int refinements,
                                         fraclog_convergence** out) {
  if (!model) return null_arg("model");
  if (!out) return null_arg("out");
  return guarded([&] {
    const fraclog::model::FractionalIVP ivp{alpha, model->spec, x0, t_final};
    auto study = fraclog::solver::convergence_study(ivp, to_method(method), base_steps, refinements);
    *out = new fraclog_convergence{std::move(study)};
  });
}

void fraclog_convergence_free(fraclog_convergence* study) { delete study; }

size_t fraclog_convergence_levels(const fraclog_convergence* study) {
  return study ? study->study.levels.size() : 0;
}

fraclog_status fraclog_convergence_level(const fraclog_convergence* study, size_t index, int64_t* n_steps,
                                         double* step, double* error) {
  if (!study) return null_arg("study");
  if (!n_steps || !step || !error) return null_arg("n_steps/step/error");
  if (index >= study->study.levels.size()) return fail(FRACLOG_ERR_INVALID_ARGUMENT, "level index out of range");
  const auto& lv = study->study.levels[index];
  *n_steps = lv.n_steps;
  *step = lv.step;
  *error = lv.error;
  return FRACLOG_OK;
}

double fraclog_convergence_order(const fraclog_convergence* study) { return study ? study->study.order : 0.0; }

}  // extern "C"
