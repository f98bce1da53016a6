#include "zeldovich/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace zeldovich::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kMaxGammaArg = 171.6;
constexpr int kMaxIter = 2000;

void require(bool ok, const char* what) {
  if (!ok) throw std::domain_error(what);
}

void require_args(double s, double x, const char* fn) {
  if (!std::isfinite(s) || !std::isfinite(x) || s <= 0.0 || x < 0.0)
    throw std::domain_error(std::string(fn) + ": requires s > 0 and x >= 0");
}

// sum_{n>=0} x^n / (s (s+1) ... (s+n)); gamma(s,x) = x^s e^-x * this.
double lower_series(double s, double x) {
  double term = 1.0 / s;
  double sum = term;
  for (int n = 1; n < kMaxIter; ++n) {
    term *= x / (s + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps * 0.5) return sum;
  }
  throw std::domain_error("gamma series failed to converge");
}

// Modified Lentz evaluation of the continued fraction for e^x x^-s Gamma(s,x).
double upper_fraction(double s, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - s;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIter; ++i) {
    const double an = -i * (i - s);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  throw std::domain_error("gamma continued fraction failed to converge");
}

bool use_series(double s, double x) { return x < s + 1.0; }

}  // namespace

double log_gamma(double s) {
  require(std::isfinite(s) && s > 0.0, "log_gamma: requires s > 0");
  if (s < 170.0) return std::log(std::tgamma(s));
  // Stirling series; the first omitted term is below 1e-19 for s >= 170.
  const double inv = 1.0 / s;
  const double inv2 = inv * inv;
  return (s - 0.5) * std::log(s) - s + 0.5 * std::log(2.0 * std::numbers::pi) +
         inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 / 1260.0));
}

double gamma_complete(double s) {
  require(std::isfinite(s) && s > 0.0, "gamma_complete: requires s > 0");
  if (s > kMaxGammaArg) throw std::overflow_error("gamma_complete: result exceeds double range");
  return std::tgamma(s);
}

double gamma_lower(double s, double x) {
  require_args(s, x, "gamma_lower");
  if (x == 0.0) return 0.0;
  if (use_series(s, x)) return std::exp(s * std::log(x) - x) * lower_series(s, x);
  return gamma_complete(s) - gamma_upper(s, x);
}

double gamma_upper(double s, double x) {
  require_args(s, x, "gamma_upper");
  if (x == 0.0) return gamma_complete(s);
  if (use_series(s, x)) return gamma_complete(s) - gamma_lower(s, x);
  return std::exp(s * std::log(x) - x) * upper_fraction(s, x);
}

double gamma_upper_scaled(double s, double x) {
  require_args(s, x, "gamma_upper_scaled");
  if (use_series(s, x)) return std::exp(x) * gamma_upper(s, x);
  return std::exp(s * std::log(x)) * upper_fraction(s, x);
}

double gamma_p(double s, double x) {
  require_args(s, x, "gamma_p");
  if (x == 0.0) return 0.0;
  if (use_series(s, x)) return std::exp(s * std::log(x) - x - log_gamma(s)) * lower_series(s, x);
  return 1.0 - std::exp(s * std::log(x) - x - log_gamma(s)) * upper_fraction(s, x);
}

namespace {

BesselJ012 bessel_series(double x) {
  const double h = 0.5 * x;
  const double h2 = h * h;
  auto series = [&](int n) {
    double term = 1.0;
    for (int i = 1; i <= n; ++i) term *= h / i;
    double sum = term;
    for (int k = 1; k < 60; ++k) {
      term *= -h2 / (k * static_cast<double>(k + n));
      sum += term;
      if (std::abs(term) < kEps * 1e-2 * std::abs(sum)) break;
    }
    return sum;
  };
  return {series(0), series(1), series(2)};
}

// Miller's backward recurrence normalized by J0 + 2 sum J_2k = 1.
BesselJ012 bessel_miller(double x) {
  const int top = 2 * (static_cast<int>(x / 2.0) + 26);
  double next = 0.0;
  double cur = 1e-30;
  double norm = 0.0;
  double j1 = 0.0;
  double j2 = 0.0;
  for (int n = top; n >= 1; --n) {
    const double prev = (2.0 * n / x) * cur - next;
    next = cur;
    cur = prev;  // cur now holds J_{n-1}
    const int order = n - 1;
    if (order > 0 && order % 2 == 0) norm += 2.0 * cur;
    if (order == 2) j2 = cur;
    if (order == 1) j1 = cur;
    if (std::abs(cur) > 1e250) {
      cur *= 1e-250;
      next *= 1e-250;
      norm *= 1e-250;
      j1 *= 1e-250;
      j2 *= 1e-250;
    }
  }
  norm += cur;
  return {cur / norm, j1 / norm, j2 / norm};
}

// Hankel asymptotic expansion; the phase is assembled from sin x and cos x so
// that no precision is lost forming x - phi for large x.
double bessel_hankel(int nu, double x, double sin_x, double cos_x) {
  const double mu = 4.0 * nu * nu;
  double term = 1.0;
  double p = 1.0;
  double q = 0.0;
  double last = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (k * 8.0 * x);
    const double mag = std::abs(term);
    if (mag > last) break;
    last = mag;
    const int m = k % 4;
    if (m == 1) q += term;
    else if (m == 2) p -= term;
    else if (m == 3) q -= term;
    else p += term;
    if (mag < 1e-18) break;
  }
  constexpr double r = std::numbers::sqrt2 / 2.0;
  // phi = (2 nu + 1) pi / 4
  double cphi = r, sphi = r;
  if (nu == 1) cphi = -r;
  if (nu == 2) { cphi = -r; sphi = -r; }
  const double cos_w = cos_x * cphi + sin_x * sphi;
  const double sin_w = sin_x * cphi - cos_x * sphi;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * cos_w - q * sin_w);
}

}  // namespace

BesselJ012 bessel_j012(double x) {
  require(std::isfinite(x) && x >= 0.0, "bessel: requires finite x >= 0");
  if (x == 0.0) return {1.0, 0.0, 0.0};
  if (x < 1.0) return bessel_series(x);
  if (x <= 25.0) return bessel_miller(x);
  const double s = std::sin(x);
  const double c = std::cos(x);
  return {bessel_hankel(0, x, s, c), bessel_hankel(1, x, s, c), bessel_hankel(2, x, s, c)};
}

double bessel_j1(double x) {
  require(std::isfinite(x) && x >= 0.0, "bessel_j1: requires finite x >= 0");
  if (x == 0.0) return 0.0;
  if (x > 25.0) return bessel_hankel(1, x, std::sin(x), std::cos(x));
  return bessel_j012(x).j1;
}

double laguerre(int degree, double order, double x) {
  require(degree >= 0, "laguerre: degree must be non-negative");
  if (degree == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 + order - x;
  for (int n = 1; n < degree; ++n) {
    const double next = ((2.0 * n + 1.0 + order - x) * cur - (n + order) * prev) / (n + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace zeldovich::specfun
