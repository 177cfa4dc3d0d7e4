#pragma once

#include <optional>
#include <string_view>
#include <variant>

namespace fraclog::model {

/// Right-hand side a x^3 + b x^2 + c x of the cubic Caputo equation.
struct CubicCoefficients {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  friend bool operator==(const CubicCoefficients&, const CubicCoefficients&) = default;
};

// Named population models. r: intrinsic growth rate, K: carrying capacity,
// m: Allee threshold, E: harvest effort.
struct Logistic {
  double r;
  double K;
};
struct LogisticHarvest {
  double r;
  double K;
  double E;
};
struct Allee {
  double r;
  double K;
  double m;
};
struct AlleeHarvest {
  double r;
  double K;
  double m;
  double E;
};

/// One of the five supported right-hand sides. Construction validates the
/// parameter invariants (r > 0, K > 0, 0 < m < K, E >= 0, all finite) and
/// throws DomainError otherwise.
class ModelSpec {
 public:
  using Variant = std::variant<CubicCoefficients, Logistic, LogisticHarvest, Allee, AlleeHarvest>;

  static ModelSpec cubic(double a, double b, double c);
  static ModelSpec logistic(double r, double K);
  static ModelSpec logistic_harvest(double r, double K, double E);
  static ModelSpec allee(double r, double K, double m);
  static ModelSpec allee_harvest(double r, double K, double m, double E);

  const Variant& variant() const noexcept { return model_; }

  // "cubic", "logistic", "logistic-harvest", "allee", "allee-harvest".
  std::string_view name() const noexcept;

  // K for the named models, empty for a raw cubic.
  std::optional<double> carrying_capacity() const noexcept;

 private:
  explicit ModelSpec(Variant v) : model_(v) {}
  Variant model_;
};

/// Initial value problem D^alpha x = f(x), x(0) = x0 on [0, t_final].
struct FractionalIVP {
  double alpha;
  ModelSpec model;
  double x0;
  double t_final;

  // Throws DomainError unless 0 < alpha <= 1, t_final > 0 and x0 finite.
  void validate() const;
};

struct ExistenceBound {
  double h_state;    // half-width of the state box [-h, h]
  double rhs_bound;  // 3|a|h^2 + 2|b|h + |c|
  double n_min;      // rhs_bound^(1/alpha), smallest admissible N
};

CubicCoefficients to_cubic(const ModelSpec& model);

/// a x^3 + b x^2 + c x in Horner form.
inline double rhs_eval(const CubicCoefficients& k, double x) noexcept {
  return ((k.a * x + k.b) * x + k.c) * x;
}

/// Bound N^alpha > 3|a|h^2 + 2|b|h + |c| under which the Volterra operator of
/// the problem is a contraction on [-h, h] in the weighted sup norm.
ExistenceBound existence_bound(const CubicCoefficients& coeffs, double h_state, double alpha);

/// 1.2 * max(|x0|, K) for the named models. A raw cubic has no natural
/// scale, so only |x0| is used; throws DomainError if that is zero.
double default_h_state(const ModelSpec& model, double x0);

}  // namespace fraclog::model
