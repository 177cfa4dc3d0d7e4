#include "fraclog/stability.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fraclog/error.hpp"

namespace fraclog::stability {

using model::CubicCoefficients;

std::string_view tag(Classification c) noexcept {
  switch (c) {
    case Classification::Unstable:
      return "U";
    case Classification::AsymptoticallyStable:
      return "AS";
    case Classification::Inconclusive:
      return "INCONCLUSIVE";
  }
  return "?";
}

namespace {

double derivative(const CubicCoefficients& k, double x) noexcept {
  return (3.0 * k.a * x + 2.0 * k.b) * x + k.c;
}

bool coincident(double x, double y) noexcept {
  return std::abs(x - y) <= 1e-10 * (1.0 + std::abs(x));
}

// Residual scale used for the "is a root" check.
bool is_root(const CubicCoefficients& k, double x) noexcept {
  const double ax = std::abs(x);
  const double scale = 1.0 + ax * ax * ax * std::abs(k.a) + ax * ax * std::abs(k.b) + ax * std::abs(k.c);
  return std::abs(model::rhs_eval(k, x)) <= 1e-9 * scale;
}

void add_root(std::vector<EquilibriumReport>& roots, double x, int multiplicity) {
  for (auto& r : roots) {
    if (coincident(r.x_eq, x)) {
      r.multiplicity += multiplicity;
      return;
    }
  }
  roots.push_back(EquilibriumReport{x, 0.0, Classification::Inconclusive, multiplicity});
}

}  // namespace

double lambda_tolerance(const CubicCoefficients& k, double x) noexcept {
  return 1e-12 * (1.0 + std::abs(3.0 * k.a * x * x) + std::abs(2.0 * k.b * x) + std::abs(k.c));
}

std::vector<EquilibriumReport> equilibria(const CubicCoefficients& k) {
  if (!(std::isfinite(k.a) && std::isfinite(k.b) && std::isfinite(k.c))) {
    throw DomainError("equilibria: coefficients must be finite");
  }
  if (k.a == 0.0 && k.b == 0.0 && k.c == 0.0) {
    throw DegenerateModelError("equilibria: a = b = c = 0, every state is an equilibrium");
  }

  std::vector<EquilibriumReport> roots;
  add_root(roots, 0.0, 1);

  if (k.a != 0.0) {
    // Remaining roots solve a x^2 + b x + c = 0.
    const double disc = k.b * k.b - 4.0 * k.a * k.c;
    const double disc_tol = 1e-12 * (k.b * k.b + 4.0 * std::abs(k.a * k.c) + 1.0);
    if (std::abs(disc) <= disc_tol) {
      add_root(roots, -k.b / (2.0 * k.a), 2);
    } else if (disc > 0.0) {
      const double sq = std::sqrt(disc);
      const double q = -0.5 * (k.b + std::copysign(sq, k.b));
      add_root(roots, q / k.a, 1);
      add_root(roots, k.c / q, 1);
    }
  } else if (k.b != 0.0) {
    add_root(roots, -k.c / k.b, 1);
  }

  std::sort(roots.begin(), roots.end(), [](const auto& l, const auto& r) { return l.x_eq < r.x_eq; });
  for (auto& r : roots) r.lambda = r.multiplicity > 1 ? 0.0 : derivative(k, r.x_eq);
  return roots;
}

EquilibriumReport classify(const CubicCoefficients& k, double x_eq, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw DomainError("classify: alpha must lie in (0, 1], got " + std::to_string(alpha));
  }
  if (!std::isfinite(x_eq) || !is_root(k, x_eq)) {
    throw PreconditionError("classify: x = " + std::to_string(x_eq) + " is not an equilibrium");
  }
  EquilibriumReport report{x_eq, derivative(k, x_eq), Classification::Inconclusive, 1};
  const double tol = lambda_tolerance(k, x_eq);
  if (std::abs(report.lambda) <= tol) return report;

  // arg(lambda) for a real eigenvalue.
  const double arg = report.lambda > 0.0 ? 0.0 : std::numbers::pi;
  const double sector = alpha * std::numbers::pi / 2.0;
  report.classification = arg < sector ? Classification::Unstable : Classification::AsymptoticallyStable;
  return report;
}

std::vector<EquilibriumReport> classify_all(const CubicCoefficients& k, double alpha) {
  std::vector<EquilibriumReport> roots = equilibria(k);
  for (auto& r : roots) {
    if (r.multiplicity > 1) {
      if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("classify_all: alpha must lie in (0, 1]");
      r.lambda = 0.0;
      r.classification = Classification::Inconclusive;
      continue;
    }
    const int mult = r.multiplicity;
    r = classify(k, r.x_eq, alpha);
    r.multiplicity = mult;
  }
  return roots;
}

double harvest_threshold(double r, double K, double m) {
  if (!(r > 0.0 && K > 0.0 && m > 0.0 && m < K)) {
    throw DomainError("harvest_threshold: need r > 0, K > 0 and 0 < m < K");
  }
  const double gap = K - m;
  return r / (4.0 * K) * gap * gap;
}

double logistic_harvest_equilibrium(double r, double K, double E) {
  if (!(r > 0.0 && K > 0.0 && E >= 0.0)) {
    throw DomainError("logistic_harvest_equilibrium: need r > 0, K > 0 and E >= 0");
  }
  return K * (1.0 - E / r);
}

}  // namespace fraclog::stability
