#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "fraclog/model.hpp"

namespace fraclog::solver {

/// Uniform grid t_j = j * step on [0, t_final].
struct Grid {
  std::int64_t n_steps;
  double step;
  double t_final;

  static Grid uniform(double t_final, std::int64_t n_steps);

  // Computed as t_final * j / n_steps so the last node is t_final exactly.
  double time(std::int64_t j) const noexcept {
    return t_final * static_cast<double>(j) / static_cast<double>(n_steps);
  }
};

struct Trajectory {
  Grid grid;
  std::vector<double> values;  // n_steps + 1 entries, values[0] == x0

  double final_value() const { return values.back(); }
  std::vector<double> times() const;
};

enum class SolverMethod { FracEuler, FracAdamsPECE };

std::string_view method_name(SolverMethod method) noexcept;

// |u_j| above this (or a non-finite u_j) aborts the integration with BlowUpError.
inline constexpr double kBlowUpThreshold = 1e12;

/// Fractional forward Euler (product-rectangle rule):
///   u_{n+1} = u_0 + h^a/Gamma(a+1) * sum_{j<=n} ((n+1-j)^a - (n-j)^a) f(u_j).
/// Classical forward Euler for alpha = 1.
Trajectory frac_euler(const model::FractionalIVP& ivp, std::int64_t n_steps);

/// Fractional Adams predictor-corrector, one corrector pass per step
/// (PECE). The predictor is frac_euler's formula; the corrector is the
/// product-trapezoidal rule with weights
///   a_{0,n+1}   = n^{a+1} - (n-a)(n+1)^a
///   a_{j,n+1}   = (n-j+2)^{a+1} + (n-j)^{a+1} - 2(n-j+1)^{a+1},  1 <= j <= n
///   a_{n+1,n+1} = 1
/// all scaled by h^a/Gamma(a+2). The full history is convolved every step,
/// O(n^2) in total.
Trajectory frac_adams_pece(const model::FractionalIVP& ivp, std::int64_t n_steps);

Trajectory solve(const model::FractionalIVP& ivp, std::int64_t n_steps, SolverMethod method);

/// Grid size used when the caller does not pick one: 10 steps per unit time,
/// refined until h^alpha * L <= 1 where L = max |f'| over the interval
/// spanned by x0 and the equilibria, capped at 50000. The explicit scheme
/// goes unstable well before the cap is needed for small alpha.
std::int64_t default_n_steps(const model::FractionalIVP& ivp);

inline constexpr std::int64_t kMaxDefaultSteps = 50000;

// Unscaled quadrature weights, exposed for testing. `lag` is n - j.
namespace weights {
double predictor(double alpha, std::int64_t lag);         // (lag+1)^a - lag^a
double corrector(double alpha, std::int64_t lag);         // (lag+2)^{a+1} + lag^{a+1} - 2(lag+1)^{a+1}
double corrector_start(double alpha, std::int64_t n);     // n^{a+1} - (n-a)(n+1)^a
}  // namespace weights

/// Closed-form solution of the IVP at time t when one is known: the linear
/// case a = b = 0 (x0 * E_alpha(c t^alpha)) or alpha = 1 with a = 0
/// (Bernoulli/logistic closed form). Empty otherwise. May throw
/// NumericalError when the Mittag-Leffler series is outside its accurate
/// range.
std::optional<double> reference_solution(const model::FractionalIVP& ivp, double t);

struct ConvergenceLevel {
  std::int64_t n_steps;
  double step;
  double error;  // |u_N - x(T)|
};

struct ConvergenceStudy {
  std::vector<ConvergenceLevel> levels;
  double order;  // least-squares slope of log(error) against log(step)
};

/// Runs grids n = base_steps * 2^k, k = 0..refinements, and fits the
/// observed order against reference_solution. Throws PreconditionError
/// when no reference solution exists or an error vanishes exactly.
ConvergenceStudy convergence_study(const model::FractionalIVP& ivp, SolverMethod method,
                                   std::int64_t base_steps, int refinements);

double estimate_order(const model::FractionalIVP& ivp, SolverMethod method, std::int64_t base_steps,
                      int refinements);

}  // namespace fraclog::solver
