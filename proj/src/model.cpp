#include "fraclog/model.hpp"

#include <cmath>
#include <string>

#include "fraclog/error.hpp"

namespace fraclog::model {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

void check_rate_and_capacity(double r, double K) {
  require(std::isfinite(r) && r > 0.0, "growth rate r must be positive and finite, got " + std::to_string(r));
  require(std::isfinite(K) && K > 0.0, "carrying capacity K must be positive and finite, got " + std::to_string(K));
}

void check_threshold(double m, double K) {
  require(std::isfinite(m) && m > 0.0 && m < K,
          "Allee threshold m must lie in (0, K), got m = " + std::to_string(m) + ", K = " + std::to_string(K));
}

void check_effort(double E) {
  require(std::isfinite(E) && E >= 0.0, "harvest effort E must be non-negative and finite, got " + std::to_string(E));
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

ModelSpec ModelSpec::cubic(double a, double b, double c) {
  require(std::isfinite(a) && std::isfinite(b) && std::isfinite(c), "cubic coefficients must be finite");
  return ModelSpec(CubicCoefficients{a, b, c});
}

ModelSpec ModelSpec::logistic(double r, double K) {
  check_rate_and_capacity(r, K);
  return ModelSpec(Logistic{r, K});
}

ModelSpec ModelSpec::logistic_harvest(double r, double K, double E) {
  check_rate_and_capacity(r, K);
  check_effort(E);
  return ModelSpec(LogisticHarvest{r, K, E});
}

ModelSpec ModelSpec::allee(double r, double K, double m) {
  check_rate_and_capacity(r, K);
  check_threshold(m, K);
  return ModelSpec(Allee{r, K, m});
}

ModelSpec ModelSpec::allee_harvest(double r, double K, double m, double E) {
  check_rate_and_capacity(r, K);
  check_threshold(m, K);
  check_effort(E);
  return ModelSpec(AlleeHarvest{r, K, m, E});
}

std::string_view ModelSpec::name() const noexcept {
  return std::visit(Overloaded{
                        [](const CubicCoefficients&) { return std::string_view("cubic"); },
                        [](const Logistic&) { return std::string_view("logistic"); },
                        [](const LogisticHarvest&) { return std::string_view("logistic-harvest"); },
                        [](const Allee&) { return std::string_view("allee"); },
                        [](const AlleeHarvest&) { return std::string_view("allee-harvest"); },
                    },
                    model_);
}

std::optional<double> ModelSpec::carrying_capacity() const noexcept {
  return std::visit(Overloaded{
                        [](const CubicCoefficients&) -> std::optional<double> { return std::nullopt; },
                        [](const auto& named) -> std::optional<double> { return named.K; },
                    },
                    model_);
}

void FractionalIVP::validate() const {
  require(alpha > 0.0 && alpha <= 1.0, "alpha must lie in (0, 1], got " + std::to_string(alpha));
  require(std::isfinite(t_final) && t_final > 0.0, "t_final must be positive, got " + std::to_string(t_final));
  require(std::isfinite(x0), "x0 must be finite");
}

CubicCoefficients to_cubic(const ModelSpec& model) {
  return std::visit(Overloaded{
                        [](const CubicCoefficients& k) { return k; },
                        [](const Logistic& p) { return CubicCoefficients{0.0, -p.r / p.K, p.r}; },
                        [](const LogisticHarvest& p) { return CubicCoefficients{0.0, -p.r / p.K, p.r - p.E}; },
                        [](const Allee& p) {
                          return CubicCoefficients{-p.r / p.K, (p.m / p.K + 1.0) * p.r, -p.r * p.m};
                        },
                        [](const AlleeHarvest& p) {
                          return CubicCoefficients{-p.r / p.K, (p.m / p.K + 1.0) * p.r, -p.r * p.m - p.E};
                        },
                    },
                    model.variant());
}

ExistenceBound existence_bound(const CubicCoefficients& coeffs, double h_state, double alpha) {
  require(std::isfinite(h_state) && h_state > 0.0, "h_state must be positive, got " + std::to_string(h_state));
  require(alpha > 0.0 && alpha <= 1.0, "alpha must lie in (0, 1], got " + std::to_string(alpha));
  const double h = h_state;
  const double rhs_bound = 3.0 * std::abs(coeffs.a) * h * h + 2.0 * std::abs(coeffs.b) * h + std::abs(coeffs.c);
  return ExistenceBound{h, rhs_bound, std::pow(rhs_bound, 1.0 / alpha)};
}

double default_h_state(const ModelSpec& model, double x0) {
  require(std::isfinite(x0), "x0 must be finite");
  const double scale = std::max(std::abs(x0), model.carrying_capacity().value_or(0.0));
  require(scale > 0.0, "cubic model with x0 = 0 has no default state box; pass h_state explicitly");
  return 1.2 * scale;
}

}  // namespace fraclog::model
