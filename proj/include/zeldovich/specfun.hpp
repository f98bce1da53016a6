#pragma once

// Special functions used throughout the library: complete and incomplete
// gamma functions, integer-order Bessel functions J0/J1/J2 and generalized
// Laguerre polynomials. Everything here is a pure function; arguments outside
// the supported domain raise std::domain_error instead of returning NaN.

namespace zeldovich::specfun {

/// Gamma(s) for 0 < s <= 171.6 (larger s overflows a double; use log_gamma).
double gamma_complete(double s);

/// ln Gamma(s) for s > 0.
double log_gamma(double s);

/// Upper incomplete gamma Gamma(s, x) = int_x^inf t^(s-1) e^-t dt, s > 0, x >= 0.
/// Underflows gracefully to 0 once e^-x is below the double range.
double gamma_upper(double s, double x);

/// Lower incomplete gamma gamma(s, x) = Gamma(s) - Gamma(s, x), computed
/// without the subtraction when x is small relative to s.
double gamma_lower(double s, double x);

/// e^x * Gamma(s, x); finite for large x where gamma_upper underflows.
double gamma_upper_scaled(double s, double x);

/// Regularized P(s, x) = gamma(s, x) / Gamma(s).
double gamma_p(double s, double x);

struct BesselJ012 {
  double j0;
  double j1;
  double j2;
};

/// J0, J1 and J2 from one evaluation (Miller recurrence or Hankel expansion).
BesselJ012 bessel_j012(double x);

/// J1(x) for x >= 0.
double bessel_j1(double x);

/// Generalized Laguerre polynomial L_degree^order(x) by upward recurrence.
double laguerre(int degree, double order, double x);

}  // namespace zeldovich::specfun
