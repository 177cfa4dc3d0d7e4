#include "fraclog/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fraclog/error.hpp"
#include "fraclog/specfun.hpp"
#include "fraclog/stability.hpp"

namespace fraclog::solver {

using model::CubicCoefficients;
using model::FractionalIVP;

Grid Grid::uniform(double t_final, std::int64_t n_steps) {
  if (n_steps < 1) throw DomainError("n_steps must be at least 1, got " + std::to_string(n_steps));
  if (!(std::isfinite(t_final) && t_final > 0.0)) throw DomainError("t_final must be positive");
  return Grid{n_steps, t_final / static_cast<double>(n_steps), t_final};
}

std::vector<double> Trajectory::times() const {
  std::vector<double> t(values.size());
  for (std::size_t j = 0; j < t.size(); ++j) t[j] = grid.time(static_cast<std::int64_t>(j));
  return t;
}

std::string_view method_name(SolverMethod method) noexcept {
  switch (method) {
    case SolverMethod::FracEuler:
      return "euler";
    case SolverMethod::FracAdamsPECE:
      return "adams";
  }
  return "unknown";
}

namespace weights {

double predictor(double alpha, std::int64_t lag) {
  if (lag == 0) return 1.0;
  const double k = static_cast<double>(lag);
  // k^a ((1 + 1/k)^a - 1), free of the cancellation in the plain difference.
  return std::pow(k, alpha) * std::expm1(alpha * std::log1p(1.0 / k));
}

double corrector(double alpha, std::int64_t lag) {
  const double p = alpha + 1.0;
  const double k = static_cast<double>(lag);
  if (lag < 8) {
    return std::pow(k + 2.0, p) + std::pow(k, p) - 2.0 * std::pow(k + 1.0, p);
  }
  // (k+1)^p [(1+x)^p + (1-x)^p - 2] with x = 1/(k+1); the bracket is the even
  // part of the binomial series, 2 sum_i C(p, 2i) x^{2i}.
  const double x = 1.0 / (k + 1.0);
  const double x2 = x * x;
  double binom = 1.0;  // C(p, n)
  double xpow = 1.0;
  double bracket = 0.0;
  for (int n = 0; n < 60; n += 2) {
    binom *= (p - n) / (n + 1.0);
    binom *= (p - n - 1.0) / (n + 2.0);
    xpow *= x2;
    const double term = 2.0 * binom * xpow;
    bracket += term;
    if (std::abs(term) <= 1e-18 * std::abs(bracket)) break;
  }
  return std::pow(k + 1.0, p) * bracket;
}

double corrector_start(double alpha, std::int64_t n) {
  const double nn = static_cast<double>(n);
  return std::pow(nn, alpha + 1.0) - (nn - alpha) * std::pow(nn + 1.0, alpha);
}

}  // namespace weights

namespace {

struct Setup {
  CubicCoefficients coeffs;
  Grid grid;
  double h_alpha;
};

Setup prepare(const FractionalIVP& ivp, std::int64_t n_steps) {
  ivp.validate();
  const Grid grid = Grid::uniform(ivp.t_final, n_steps);
  return Setup{model::to_cubic(ivp.model), grid, std::pow(grid.step, ivp.alpha)};
}

void check_blow_up(double u, std::int64_t index) {
  if (!std::isfinite(u) || std::abs(u) > kBlowUpThreshold) throw BlowUpError(index, u);
}

std::vector<double> predictor_weights(double alpha, std::int64_t n) {
  std::vector<double> w(static_cast<std::size_t>(n));
  for (std::int64_t k = 0; k < n; ++k) w[static_cast<std::size_t>(k)] = weights::predictor(alpha, k);
  return w;
}

// sum_{j=0}^{n} w[n-j] f[j]
double history_sum(const std::vector<double>& w, const std::vector<double>& f, std::size_t first, std::size_t n) {
  double s = 0.0;
  for (std::size_t j = first; j <= n; ++j) s += w[n - j] * f[j];
  return s;
}

}  // namespace

Trajectory frac_euler(const FractionalIVP& ivp, std::int64_t n_steps) {
  const Setup s = prepare(ivp, n_steps);
  const double scale = s.h_alpha / specfun::gamma(ivp.alpha + 1.0);
  const std::vector<double> b = predictor_weights(ivp.alpha, n_steps);

  const auto N = static_cast<std::size_t>(n_steps);
  std::vector<double> u(N + 1);
  std::vector<double> f(N + 1);
  u[0] = ivp.x0;
  f[0] = model::rhs_eval(s.coeffs, u[0]);
  for (std::size_t n = 0; n < N; ++n) {
    u[n + 1] = ivp.x0 + scale * history_sum(b, f, 0, n);
    check_blow_up(u[n + 1], static_cast<std::int64_t>(n + 1));
    f[n + 1] = model::rhs_eval(s.coeffs, u[n + 1]);
  }
  return Trajectory{s.grid, std::move(u)};
}

Trajectory frac_adams_pece(const FractionalIVP& ivp, std::int64_t n_steps) {
  const Setup s = prepare(ivp, n_steps);
  const double alpha = ivp.alpha;
  const double pred_scale = s.h_alpha / specfun::gamma(alpha + 1.0);
  const double corr_scale = s.h_alpha / specfun::gamma(alpha + 2.0);

  const std::vector<double> b = predictor_weights(alpha, n_steps);
  std::vector<double> a(static_cast<std::size_t>(n_steps));
  for (std::int64_t k = 0; k < n_steps; ++k) a[static_cast<std::size_t>(k)] = weights::corrector(alpha, k);

  const auto N = static_cast<std::size_t>(n_steps);
  std::vector<double> u(N + 1);
  std::vector<double> f(N + 1);
  u[0] = ivp.x0;
  f[0] = model::rhs_eval(s.coeffs, u[0]);
  for (std::size_t n = 0; n < N; ++n) {
    const double predicted = ivp.x0 + pred_scale * history_sum(b, f, 0, n);
    check_blow_up(predicted, static_cast<std::int64_t>(n + 1));
    const double f_predicted = model::rhs_eval(s.coeffs, predicted);

    double corr = weights::corrector_start(alpha, static_cast<std::int64_t>(n)) * f[0];
    if (n >= 1) corr += history_sum(a, f, 1, n);
    corr += f_predicted;
    u[n + 1] = ivp.x0 + corr_scale * corr;
    check_blow_up(u[n + 1], static_cast<std::int64_t>(n + 1));
    f[n + 1] = model::rhs_eval(s.coeffs, u[n + 1]);
  }
  return Trajectory{s.grid, std::move(u)};
}

Trajectory solve(const FractionalIVP& ivp, std::int64_t n_steps, SolverMethod method) {
  switch (method) {
    case SolverMethod::FracEuler:
      return frac_euler(ivp, n_steps);
    case SolverMethod::FracAdamsPECE:
      return frac_adams_pece(ivp, n_steps);
  }
  throw DomainError("unknown solver method");
}

std::int64_t default_n_steps(const FractionalIVP& ivp) {
  ivp.validate();
  const CubicCoefficients k = model::to_cubic(ivp.model);

  double lo = std::min(ivp.x0, 0.0);
  double hi = std::max(ivp.x0, 0.0);
  if (k.a != 0.0 || k.b != 0.0) {
    for (const auto& eq : stability::equilibria(k)) {
      lo = std::min(lo, eq.x_eq);
      hi = std::max(hi, eq.x_eq);
    }
  }
  // |f'| of a quadratic peaks at an endpoint or at its vertex.
  auto slope = [&](double x) { return std::abs((3.0 * k.a * x + 2.0 * k.b) * x + k.c); };
  double lipschitz = std::max(slope(lo), slope(hi));
  if (k.a != 0.0) {
    const double vertex = -k.b / (3.0 * k.a);
    if (vertex > lo && vertex < hi) lipschitz = std::max(lipschitz, slope(vertex));
  }

  double step = 0.1;
  if (lipschitz > 0.0) step = std::min(step, std::pow(1.0 / lipschitz, 1.0 / ivp.alpha));
  const double n = std::ceil(ivp.t_final / step * (1.0 - 1e-12));
  return static_cast<std::int64_t>(std::clamp(n, 1.0, static_cast<double>(kMaxDefaultSteps)));
}

std::optional<double> reference_solution(const FractionalIVP& ivp, double t) {
  ivp.validate();
  const CubicCoefficients k = model::to_cubic(ivp.model);
  const double x0 = ivp.x0;
  if (t == 0.0) return x0;

  if (ivp.alpha == 1.0 && k.a == 0.0) {
    // x' = c x + b x^2
    double denom = 0.0;
    double numer = 0.0;
    if (k.c == 0.0) {
      numer = x0;
      denom = 1.0 - k.b * x0 * t;
    } else {
      const double growth = std::exp(k.c * t);
      numer = k.c * x0 * growth;
      denom = k.c - k.b * x0 * std::expm1(k.c * t);
    }
    if (!(std::isfinite(numer) && std::isfinite(denom)) || denom == 0.0 ||
        (k.c == 0.0 ? denom < 0.0 : denom / k.c < 0.0)) {
      throw NumericalError("closed-form solution blows up before t = " + std::to_string(t));
    }
    return numer / denom;
  }
  if (k.a == 0.0 && k.b == 0.0) {
    return x0 * specfun::mittag_leffler(ivp.alpha, k.c * std::pow(t, ivp.alpha));
  }
  return std::nullopt;
}

ConvergenceStudy convergence_study(const FractionalIVP& ivp, SolverMethod method, std::int64_t base_steps,
                                   int refinements) {
  ivp.validate();
  if (base_steps < 1) throw DomainError("base_steps must be at least 1");
  if (refinements < 2) throw DomainError("refinements must be at least 2");

  std::optional<double> exact;
  try {
    exact = reference_solution(ivp, ivp.t_final);
  } catch (const NumericalError& e) {
    throw PreconditionError(std::string("reference solution unavailable: ") + e.what());
  }
  if (!exact) {
    throw PreconditionError(
        "order estimation needs a closed-form reference: use a linear model (a = b = 0) "
        "or alpha = 1 with a = 0");
  }

  ConvergenceStudy study;
  for (int k = 0; k <= refinements; ++k) {
    const std::int64_t n = base_steps << k;
    const Trajectory traj = solve(ivp, n, method);
    const double err = std::abs(traj.final_value() - *exact);
    if (!(err > 0.0)) {
      throw PreconditionError("error against the reference vanished at n = " + std::to_string(n) +
                              "; the order is undefined");
    }
    study.levels.push_back(ConvergenceLevel{n, traj.grid.step, err});
  }

  // Least-squares slope of log(error) on log(step).
  const double m = static_cast<double>(study.levels.size());
  double sx = 0.0, sy = 0.0;
  for (const auto& lv : study.levels) {
    sx += std::log(lv.step);
    sy += std::log(lv.error);
  }
  const double mx = sx / m, my = sy / m;
  double sxy = 0.0, sxx = 0.0;
  for (const auto& lv : study.levels) {
    const double dx = std::log(lv.step) - mx;
    sxy += dx * (std::log(lv.error) - my);
    sxx += dx * dx;
  }
  study.order = sxy / sxx;
  return study;
}

double estimate_order(const FractionalIVP& ivp, SolverMethod method, std::int64_t base_steps, int refinements) {
  return convergence_study(ivp, method, base_steps, refinements).order;
}

}  // namespace fraclog::solver
