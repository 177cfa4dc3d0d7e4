#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstring>
#include <vector>

#include "fraclog/error.hpp"
#include "fraclog/model.hpp"
#include "fraclog/solver.hpp"
#include "fraclog/specfun.hpp"
#include "oracles.hpp"

using namespace fraclog;
using model::CubicCoefficients;
using model::FractionalIVP;
using model::ModelSpec;
using solver::SolverMethod;

namespace {

FractionalIVP linear(double alpha, double x0 = 1.0, double T = 1.0) {
  return FractionalIVP{alpha, ModelSpec::cubic(0, 0, -1), x0, T};
}

bool bitwise_equal(const std::vector<double>& x, const std::vector<double>& y) {
  return x.size() == y.size() && std::memcmp(x.data(), y.data(), x.size() * sizeof(double)) == 0;
}

// Fractional Adams written straight from the weight definitions with plain
// power differences, in long double so the differences keep their digits.
std::vector<double> naive_adams(const CubicCoefficients& k, double alpha, double x0, double T, int n) {
  using L = long double;
  const L al = alpha;
  const L h = static_cast<L>(T) / n;
  const L ha = std::pow(h, al);
  const auto rhs = [&](L x) { return ((k.a * x + k.b) * x + k.c) * x; };
  std::vector<L> u(n + 1), f(n + 1);
  u[0] = x0;
  f[0] = rhs(u[0]);
  for (int m = 0; m < n; ++m) {
    L p = 0.0L;
    for (int j = 0; j <= m; ++j) p += (std::pow(L(m + 1 - j), al) - std::pow(L(m - j), al)) * f[j];
    const L pred = x0 + ha / std::tgamma(al + 1) * p;
    L c = (std::pow(L(m), al + 1) - (m - al) * std::pow(L(m + 1), al)) * f[0];
    for (int j = 1; j <= m; ++j) {
      c += (std::pow(L(m - j + 2), al + 1) + std::pow(L(m - j), al + 1) - 2 * std::pow(L(m - j + 1), al + 1)) * f[j];
    }
    c += rhs(pred);
    u[m + 1] = x0 + ha / std::tgamma(al + 2) * c;
    f[m + 1] = rhs(u[m + 1]);
  }
  return std::vector<double>(u.begin(), u.end());
}

}  // namespace

TEST_CASE("grid nodes are uniform and end at t_final") {
  const auto g = solver::Grid::uniform(500.0, 5000);
  CHECK(g.step == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(g.time(0) == 0.0);
  CHECK(g.time(5000) == 500.0);
  CHECK(g.time(1234) == doctest::Approx(123.4).epsilon(1e-14));
  CHECK_THROWS_AS(solver::Grid::uniform(1.0, 0), DomainError);
  CHECK_THROWS_AS(solver::Grid::uniform(-1.0, 10), DomainError);

  const auto traj = solver::frac_euler(linear(0.5, 2.0, 3.0), 7);
  CHECK(traj.values.size() == 8);
  CHECK(traj.values[0] == 2.0);
  CHECK(traj.times().back() == 3.0);
}

TEST_CASE("euler: single classical step and zero dynamics") {
  const auto one = solver::frac_euler(linear(1.0), 1);
  CHECK(std::abs(one.values[1]) < 1e-15);

  for (auto method : {SolverMethod::FracEuler, SolverMethod::FracAdamsPECE}) {
    const auto flat = solver::solve(FractionalIVP{0.5, ModelSpec::cubic(0, 0, 0), 3.0, 10.0}, 64, method);
    for (double v : flat.values) CHECK(v == 3.0);
  }
}

TEST_CASE("euler at alpha = 1 is classical forward Euler step by step") {
  const auto spec = ModelSpec::logistic(0.5, 10);
  const auto k = model::to_cubic(spec);
  const auto traj = solver::frac_euler(FractionalIVP{1.0, spec, 0.7, 12.0}, 300);
  const double h = 12.0 / 300;
  for (std::size_t j = 0; j + 1 < traj.values.size(); ++j) {
    const double classical = traj.values[j] + h * model::rhs_eval(k, traj.values[j]);
    CHECK(std::abs(traj.values[j + 1] - classical) <= 1e-12 * std::abs(classical));
  }
}

TEST_CASE("linear problem against the Mittag-Leffler solution") {
  const double exact = specfun::mittag_leffler(0.5, -1.0);
  CHECK(std::abs(solver::frac_euler(linear(0.5), 512).final_value() - exact) < 5e-2);
  CHECK(std::abs(solver::frac_adams_pece(linear(0.5), 512).final_value() - exact) < 5e-3);
}

TEST_CASE("adams at alpha = 1 matches the logistic closed form") {
  const FractionalIVP ivp{1.0, ModelSpec::logistic(0.5, 10), 5.0, 20.0};
  const double e = std::exp(0.5 * 20.0);
  const double exact = 10.0 * 5.0 * e / (10.0 + 5.0 * (e - 1.0));
  CHECK(std::abs(solver::frac_adams_pece(ivp, 4000).final_value() - exact) < 1e-3);
  CHECK(std::abs(oracle::bernoulli(-0.05, 0.5, 5.0, 20.0) - exact) < 1e-12);
}

TEST_CASE("quadrature weights reduce to rectangle and trapezoid rules at alpha = 1") {
  for (std::int64_t lag = 0; lag < 2000; lag += (lag < 20 ? 1 : 97)) {
    CHECK(std::abs(solver::weights::predictor(1.0, lag) - 1.0) < 1e-12);
    CHECK(std::abs(solver::weights::corrector(1.0, lag) - 2.0) < 1e-12);  // h/Gamma(3) * 2 = h
    CHECK(std::abs(solver::weights::corrector_start(1.0, lag) - 1.0) < 1e-12);  // h/2
  }
}

TEST_CASE("quadrature weights match their defining differences") {
  for (double alpha : {0.1, 0.3, 0.5, 0.77, 0.95}) {
    for (std::int64_t k = 0; k < 60; ++k) {
      const double kd = static_cast<double>(k);
      const double b = std::pow(kd + 1, alpha) - std::pow(kd, alpha);
      const double a = std::pow(kd + 2, alpha + 1) + std::pow(kd, alpha + 1) - 2 * std::pow(kd + 1, alpha + 1);
      CHECK(std::abs(solver::weights::predictor(alpha, k) - b) <= 1e-12 * std::abs(b) + 1e-14);
      CHECK(std::abs(solver::weights::corrector(alpha, k) - a) <= 1e-11 * std::abs(a) + 1e-13);
    }
    // Positive, decreasing memory.
    for (std::int64_t k = 1; k < 5000; k += 37) {
      CHECK(solver::weights::predictor(alpha, k) > 0.0);
      CHECK(solver::weights::predictor(alpha, k) < solver::weights::predictor(alpha, k - 1));
      CHECK(solver::weights::corrector(alpha, k) > 0.0);
    }
  }
}

TEST_CASE("adams agrees with a direct transcription of the scheme") {
  const CubicCoefficients k{-0.05, 0.55, -0.7};
  for (double alpha : {0.25, 0.5, 0.9}) {
    const auto ref = naive_adams(k, alpha, 4.0, 10.0, 300);
    const auto got = solver::frac_adams_pece(FractionalIVP{alpha, ModelSpec::cubic(k.a, k.b, k.c), 4.0, 10.0}, 300);
    for (std::size_t j = 0; j < ref.size(); ++j) CHECK(std::abs(got.values[j] - ref[j]) <= 1e-11 * std::max(1.0, std::abs(ref[j])));
  }
}

TEST_CASE("adams at alpha = 1 is the integral-form trapezoid PECE and second-order close to Heun") {
  const auto spec = ModelSpec::logistic(0.5, 10);
  const auto k = model::to_cubic(spec);
  const auto f = [&](double x) { return model::rhs_eval(k, x); };
  const auto got = solver::frac_adams_pece(FractionalIVP{1.0, spec, 0.5, 10.0}, 400);
  const auto ref = oracle::integral_trapezoid_pece(f, 0.5, 10.0, 400);
  for (std::size_t j = 0; j < ref.size(); ++j) CHECK(std::abs(got.values[j] - ref[j]) <= 1e-12 * std::abs(ref[j]));

  double prev = 0.0;
  for (int n : {100, 200, 400, 800}) {
    const auto a = solver::frac_adams_pece(FractionalIVP{1.0, spec, 0.5, 10.0}, n).final_value();
    const double diff = std::abs(a - oracle::heun(f, 0.5, 10.0, n).back());
    if (prev > 0.0) CHECK(diff < prev / 3.0);  // ~ 4x per halving
    prev = diff;
  }
}

TEST_CASE("x0 = 0 stays at zero for every named model") {
  for (const auto& spec : {ModelSpec::logistic(0.5, 10), ModelSpec::logistic_harvest(0.5, 10, 0.2),
                           ModelSpec::allee(0.5, 10, 1), ModelSpec::allee_harvest(0.5, 10, 1, 1.5)}) {
    for (double alpha : {0.25, 0.5, 1.0}) {
      const auto traj = solver::frac_adams_pece(FractionalIVP{alpha, spec, 0.0, 25.0}, 200);
      for (double v : traj.values) CHECK(v == 0.0);
    }
  }
}

TEST_CASE("starting on an equilibrium stays there") {
  // Roots where the floating-point right-hand side vanishes exactly, stable
  // or not, and stable roots carrying a rounding-level residual.
  struct Case {
    ModelSpec spec;
    double x0;
  };
  const std::vector<Case> cases = {{ModelSpec::logistic(0.5, 10), 10.0},
                                   {ModelSpec::logistic_harvest(0.5, 10, 0.2), 6.0},
                                   {ModelSpec::allee(1, 4, 2), 2.0},
                                   {ModelSpec::allee(0.5, 10, 1), 10.0},
                                   {ModelSpec::allee_harvest(1, 4, 2, 0.5), 0.0},
                                   {ModelSpec::cubic(1, 0, -1), 1.0},
                                   {ModelSpec::cubic(1, 0, -1), -1.0},
                                   {ModelSpec::cubic(-2, 1, 3), -1.0}};
  for (const auto& c : cases) {
    CAPTURE(c.spec.name());
    CAPTURE(c.x0);
    for (double alpha : {0.3, 0.75, 1.0}) {
      for (auto method : {SolverMethod::FracEuler, SolverMethod::FracAdamsPECE}) {
        // Resolve the stiffest root so the explicit predictor is stable there.
        const FractionalIVP ivp{alpha, c.spec, c.x0, 20.0};
        const auto traj = solver::solve(ivp, std::max<std::int64_t>(400, solver::default_n_steps(ivp)), method);
        for (double v : traj.values) CHECK(std::abs(v - c.x0) <= 1e-10);
      }
    }
  }
}

TEST_CASE("solve dispatch and model mapping are bitwise identical") {
  const auto spec = ModelSpec::logistic(0.5, 10);
  const auto k = model::to_cubic(spec);
  const FractionalIVP named{0.5, spec, 4.0, 50.0};
  const FractionalIVP raw{0.5, ModelSpec::cubic(k.a, k.b, k.c), 4.0, 50.0};
  CHECK(bitwise_equal(solver::solve(named, 500, SolverMethod::FracEuler).values,
                      solver::frac_euler(named, 500).values));
  CHECK(bitwise_equal(solver::solve(named, 500, SolverMethod::FracAdamsPECE).values,
                      solver::frac_adams_pece(named, 500).values));
  CHECK(bitwise_equal(solver::solve(named, 500, SolverMethod::FracAdamsPECE).values,
                      solver::solve(raw, 500, SolverMethod::FracAdamsPECE).values));
  CHECK(solver::method_name(SolverMethod::FracEuler) == "euler");
  CHECK(solver::method_name(SolverMethod::FracAdamsPECE) == "adams");
}

TEST_CASE("empirical convergence orders") {
  CHECK(solver::estimate_order(linear(1.0), SolverMethod::FracAdamsPECE, 32, 4) == doctest::Approx(2.0).epsilon(0.1));
  CHECK(std::abs(solver::estimate_order(linear(1.0), SolverMethod::FracAdamsPECE, 32, 4) - 2.0) <= 0.2);
  CHECK(std::abs(solver::estimate_order(linear(1.0), SolverMethod::FracEuler, 32, 4) - 1.0) <= 0.2);

  const double short_run = solver::estimate_order(linear(0.5), SolverMethod::FracEuler, 16, 3);
  const double long_run = solver::estimate_order(linear(0.5), SolverMethod::FracEuler, 16, 9);
  MESSAGE("alpha = 0.5 euler order: ", short_run, " (3 refinements), ", long_run, " (9 refinements)");
  CHECK(std::abs(short_run - long_run) <= 0.25);

  const auto study = solver::convergence_study(linear(1.0), SolverMethod::FracEuler, 10, 2);
  REQUIRE(study.levels.size() == 3);
  CHECK(study.levels[2].n_steps == 40);
  CHECK(study.levels[2].step == doctest::Approx(0.025));
  CHECK(study.levels[2].error < study.levels[0].error);
}

TEST_CASE("convergence study preconditions") {
  const FractionalIVP allee{0.5, ModelSpec::allee(0.5, 10, 1), 4.0, 1.0};
  CHECK_THROWS_AS(solver::estimate_order(allee, SolverMethod::FracEuler, 16, 3), PreconditionError);
  // Logistic has a reference only at alpha = 1.
  CHECK_THROWS_AS(solver::estimate_order(FractionalIVP{0.5, ModelSpec::logistic(0.5, 10), 4.0, 1.0},
                                         SolverMethod::FracEuler, 16, 3),
                  PreconditionError);
  CHECK_NOTHROW(solver::estimate_order(FractionalIVP{1.0, ModelSpec::logistic(0.5, 10), 4.0, 1.0},
                                       SolverMethod::FracEuler, 16, 3));
  CHECK_THROWS_AS(solver::estimate_order(linear(1.0), SolverMethod::FracEuler, 16, 1), DomainError);
  CHECK_THROWS_AS(solver::estimate_order(linear(1.0), SolverMethod::FracEuler, 0, 3), DomainError);
  // x0 = 0 reproduces the reference exactly: the order is undefined.
  CHECK_THROWS_AS(solver::estimate_order(linear(1.0, 0.0), SolverMethod::FracEuler, 16, 3), PreconditionError);
}

TEST_CASE("reference solutions") {
  CHECK(*solver::reference_solution(linear(1.0), 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(*solver::reference_solution(linear(0.5, 2.0), 1.0) ==
        doctest::Approx(2.0 * 0.42758357615580700441).epsilon(1e-12));
  const FractionalIVP lg{1.0, ModelSpec::logistic(0.5, 10), 0.1, 30.0};
  CHECK(*solver::reference_solution(lg, 7.0) == doctest::Approx(oracle::bernoulli(-0.05, 0.5, 0.1, 7.0)).epsilon(1e-13));
  CHECK_FALSE(solver::reference_solution(FractionalIVP{1.0, ModelSpec::allee(0.5, 10, 1), 4.0, 1.0}, 1.0));
}

TEST_CASE("monotone approach to the carrying capacity") {
  const auto spec = ModelSpec::logistic(0.5, 10);
  for (double alpha : {0.25, 0.5, 0.75, 1.0}) {
    for (double x0 : {0.1, 4.0, 8.0}) {
      const auto traj = solver::frac_adams_pece(FractionalIVP{alpha, spec, x0, 100.0}, 1000);
      for (std::size_t j = 1; j < traj.values.size(); ++j) CHECK(traj.values[j] >= traj.values[j - 1] - 1e-9);
    }
    const auto above = solver::frac_adams_pece(FractionalIVP{alpha, spec, 12.0, 100.0}, 1000);
    for (std::size_t j = 1; j < above.values.size(); ++j) CHECK(above.values[j] <= above.values[j - 1] + 1e-9);
  }
}

TEST_CASE("grid refinement changes shrink in figure regimes") {
  struct Regime {
    ModelSpec spec;
    double alpha, x0, T;
  };
  const std::vector<Regime> regimes = {
      {ModelSpec::logistic_harvest(0.5, 10, 0.2), 0.5, 0.1, 50.0},
      {ModelSpec::logistic_harvest(0.5, 10, 0.0), 0.25, 4.0, 50.0},
      {ModelSpec::logistic_harvest(0.5, 10, 0.5), 0.75, 12.0, 50.0},
      {ModelSpec::allee_harvest(0.5, 10, 1, 0.5), 0.5, 8.0, 25.0},
      {ModelSpec::allee_harvest(0.5, 10, 1, 1.5), 0.5, 12.0, 25.0},
      {ModelSpec::allee(0.5, 10, 1), 0.75, 0.1, 25.0},
      {ModelSpec::allee(0.5, 10, 1), 0.25, 8.0, 25.0},
  };
  for (const auto& r : regimes) {
    const FractionalIVP ivp{r.alpha, r.spec, r.x0, r.T};
    const std::int64_t n0 = solver::default_n_steps(ivp);
    CAPTURE(r.spec.name());
    CAPTURE(r.alpha);
    CAPTURE(r.x0);
    CAPTURE(n0);
    const std::int64_t n_max = n0 <= 3000 ? 8 * n0 : 4 * n0;
    double prev_value = solver::frac_adams_pece(ivp, n0).final_value();
    double prev_change = INFINITY;
    for (std::int64_t n = 2 * n0; n <= n_max; n *= 2) {
      const double v = solver::frac_adams_pece(ivp, n).final_value();
      const double change = std::abs(v - prev_value);
      CHECK(change < prev_change);
      prev_change = change;
      prev_value = v;
    }
  }
}

TEST_CASE("final value approaches the classical one monotonically as alpha -> 1") {
  std::vector<double> finals;
  for (double alpha : {0.9, 0.99, 1.0}) finals.push_back(solver::frac_adams_pece(linear(alpha), 1024).final_value());
  CHECK(finals[0] > finals[1]);
  CHECK(finals[1] > finals[2]);
  CHECK(std::abs(finals[0] - finals[2]) > std::abs(finals[1] - finals[2]));
}

TEST_CASE("blow-up is detected and reports the first offending step") {
  // x' = x^3, x(0) = 1 escapes at t = 1/2.
  const FractionalIVP ivp{1.0, ModelSpec::cubic(1, 0, 0), 1.0, 1.0};
  for (auto method : {SolverMethod::FracEuler, SolverMethod::FracAdamsPECE}) {
    try {
      solver::solve(ivp, 1000, method);
      FAIL("expected blow-up");
    } catch (const BlowUpError& e) {
      CHECK(e.index() > 480);
      CHECK(e.index() < 700);
      CHECK((!std::isfinite(e.value()) || std::abs(e.value()) > solver::kBlowUpThreshold));
      // One step earlier the solution is still finite: integrating to the
      // previous node succeeds.
      const double t_prev = (e.index() - 1) / 1000.0;
      CHECK_NOTHROW(solver::solve(FractionalIVP{1.0, ivp.model, 1.0, t_prev}, e.index() - 1, method));
    }
  }
}

TEST_CASE("solver rejects invalid problems") {
  CHECK_THROWS_AS(solver::frac_euler(linear(0.0), 10), DomainError);
  CHECK_THROWS_AS(solver::frac_adams_pece(linear(1.2), 10), DomainError);
  CHECK_THROWS_AS(solver::frac_adams_pece(linear(0.5), 0), DomainError);
  CHECK_THROWS_AS(solver::frac_adams_pece(linear(0.5, 1.0, -1.0), 10), DomainError);
}

TEST_CASE("default grid size") {
  // |f'| <= 0.5 on [0, 10]: the 10-per-unit-time rule applies.
  CHECK(solver::default_n_steps(FractionalIVP{0.5, ModelSpec::logistic(0.5, 10), 0.1, 500}) == 5000);
  CHECK(solver::default_n_steps(FractionalIVP{1.0, ModelSpec::logistic(0.5, 10), 4.0, 20}) == 200);
  // Allee: max |f'| = 4.5 at x = K, so h = 4.5^-4 at alpha = 1/4.
  const auto n = solver::default_n_steps(FractionalIVP{0.25, ModelSpec::allee(0.5, 10, 1), 8.0, 25});
  CHECK(n == static_cast<std::int64_t>(std::ceil(25.0 * std::pow(4.5, 4.0))));
  CHECK(solver::default_n_steps(FractionalIVP{0.1, ModelSpec::allee(0.5, 10, 1), 8.0, 25}) == solver::kMaxDefaultSteps);
  CHECK(solver::default_n_steps(FractionalIVP{0.5, ModelSpec::cubic(0, 0, 0), 7.0, 0.05}) == 1);
}
