#pragma once

namespace fraclog::specfun {

/// Gamma function for t > 0.
///
/// Lanczos approximation (g = 7, 9 coefficients) with Gamma(t) = Gamma(t+1)/t
/// below 1/2. Relative error stays under 1e-12 on (0, 170]. Throws
/// DomainError for t <= 0 or NaN and NumericalError once the result would
/// overflow a double (t > ~171.62).
double gamma(double t);

/// One-parameter Mittag-Leffler function E_alpha(z) = sum_k z^k / Gamma(alpha k + 1).
///
/// Direct series summed in extended precision, stopped once
/// |term| < 1e-16 |partial sum| (at most 200 terms). Accepts alpha in (0,1]
/// and |z| <= 30; outside that a DomainError is thrown. Inside it, the call
/// throws NumericalError rather than return a value whose absolute error
/// could exceed max(1e-10, a few ulps of the result): series not converged
/// within the cap, or alternating cancellation too large for the working
/// precision.
double mittag_leffler(double alpha, double z);

inline constexpr double kMittagLefflerMaxAbsZ = 30.0;
inline constexpr int kMittagLefflerMaxTerms = 200;

}  // namespace fraclog::specfun
