#pragma once

#include <string_view>
#include <vector>

#include "fraclog/model.hpp"

namespace fraclog::stability {

// Local stability from the sign of arg(lambda) against alpha*pi/2.
enum class Classification { Unstable, AsymptoticallyStable, Inconclusive };

// "U", "AS", "INCONCLUSIVE".
std::string_view tag(Classification c) noexcept;

struct EquilibriumReport {
  double x_eq = 0.0;
  double lambda = 0.0;  // f'(x_eq) = 3a x^2 + 2b x + c
  Classification classification = Classification::Inconclusive;
  int multiplicity = 1;
};

/// Real roots of a x^3 + b x^2 + c x, ascending, coincident roots merged with
/// their multiplicity. The classification field is left Inconclusive and
/// lambda is filled in. Throws DegenerateModelError for a = b = c = 0.
std::vector<EquilibriumReport> equilibria(const model::CubicCoefficients& coeffs);

/// Band |lambda| <= tol inside which no conclusion is drawn.
double lambda_tolerance(const model::CubicCoefficients& coeffs, double x_eq) noexcept;

/// Matignon test for a scalar equilibrium. lambda is real, so arg(lambda) is
/// 0 (Unstable, since 0 < alpha pi / 2) or pi (AsymptoticallyStable, since
/// pi > alpha pi / 2). Throws PreconditionError if x_eq is not a root and
/// DomainError for alpha outside (0, 1].
EquilibriumReport classify(const model::CubicCoefficients& coeffs, double x_eq, double alpha);

/// equilibria() followed by classify() on every root. Multiple roots have
/// f' = 0 exactly and are reported Inconclusive with lambda = 0.
std::vector<EquilibriumReport> classify_all(const model::CubicCoefficients& coeffs, double alpha);

/// E* = r (K - m)^2 / (4K). Below E* the harvested Allee model has two
/// positive equilibria; above it only x = 0 survives.
double harvest_threshold(double r, double K, double m);

/// Positive equilibrium K (1 - E/r) of the harvested logistic model.
double logistic_harvest_equilibrium(double r, double K, double E);

}  // namespace fraclog::stability
