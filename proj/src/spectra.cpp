#include "zeldovich/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "zeldovich/specfun.hpp"

namespace zeldovich {

namespace {

constexpr double kPi = std::numbers::pi;
const double kNorm = std::pow(2.0 * kPi, -1.5);

double horner(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double factorial(int n) { return std::tgamma(n + 1.0); }

void require_k(double k, const char* fn) {
  if (!(k > 0.0) || !std::isfinite(k)) throw std::domain_error(std::string(fn) + ": requires k > 0");
}

}  // namespace

quad::QuadResult radial_fourier(const RadialFunction& f, double k, double rel_tol) {
  require_k(k, "radial_fourier");
  quad::QuadSpec spec;
  spec.rel_tol = rel_tol;
  spec.abs_tol = 1e-300;
  spec.oscillation_wavelength = 2.0 * kPi / k;
  for (double bp : f.breakpoints)
    if (bp > 0.0 && bp < f.extent) spec.breakpoints.push_back(bp);
  const double pref = std::sqrt(2.0 / kPi);
  auto integrand = [&](double r) {
    if (r <= 0.0) return 0.0;
    return r * std::sin(k * r) / k * f.f(r);
  };
  spec.abs_tol = quad::roundoff_floor(integrand, 0.0, f.extent, spec);
  quad::QuadResult out = quad::integrate(integrand, 0.0, f.extent, spec);
  out.value *= pref;
  out.abs_error_estimate *= pref;
  return out;
}

double ball_factor(double x) {
  if (std::abs(x) < 1.0) {
    // 3 sum_m (-1)^m 2(m+1) x^(2m) / (2m+3)!
    const double x2 = x * x;
    double term = 1.0;  // (-1)^m x^(2m) 6 / (2m+3)!
    double sum = 1.0;
    for (int m = 1; m < 12; ++m) {
      term *= -x2 / ((2.0 * m + 2.0) * (2.0 * m + 3.0));
      sum += term * (m + 1.0);
    }
    return sum;
  }
  return 3.0 * (std::sin(x) - x * std::cos(x)) / (x * x * x);
}

double proton_chi_factor(double x) {
  if (std::abs(x) < 0.1) {
    const double x2 = x * x;
    return 6.0 - x2 / 2.0 * (1.0 - x2 / 30.0 * (1.0 - x2 / 56.0 * (1.0 - x2 / 90.0)));
  }
  // 1 - cos x = 2 sin^2(x/2) avoids the subtraction.
  const double s = std::sin(0.5 * x);
  return 24.0 * s * s / (x * x);
}

double proton_chi_slope(double x) {
  if (std::abs(x) < 1.0) {
    // sum_{m>=1} (-1)^m 2m x^(2m-1) / (2m+2)!
    const double x2 = x * x;
    double term = -x / 24.0;  // (-1)^m x^(2m-1) / (2m+2)!
    double sum = 2.0 * term;
    for (int m = 2; m < 12; ++m) {
      term *= -x2 / ((2.0 * m + 1.0) * (2.0 * m + 2.0));
      sum += 2.0 * m * term;
    }
    return sum;
  }
  const double s = std::sin(0.5 * x);
  return std::sin(x) / (x * x) - 4.0 * s * s / (x * x * x);
}

double electron_charge_factor(double gamma, double kappa) {
  if (kappa == 0.0) return 1.0;
  const double sigma = 2.0 * gamma * std::atan(0.5 * kappa);
  return std::sin(sigma) / (gamma * kappa * std::pow(1.0 + 0.25 * kappa * kappa, gamma));
}

double electron_chi_factor(double gamma, double kappa) {
  if (kappa == 0.0) return 1.0 / gamma;
  const double m = 2.0 * gamma - 1.0;
  const double t = std::atan(0.5 * kappa);
  return 2.0 * std::sin(m * t) /
         (gamma * m * kappa * std::pow(1.0 + 0.25 * kappa * kappa, gamma - 0.5));
}

double electron_chi_slope(double gamma, double kappa) {
  if (std::abs(kappa) < 1e-3) {
    const double c1 = -(2.0 * gamma + 1.0) / 6.0;
    const double c3 = gamma * gamma * gamma / 30.0 + gamma * gamma / 10.0 + 11.0 * gamma / 120.0 +
                      1.0 / 40.0;
    return kappa * (c1 + c3 * kappa * kappa);
  }
  const double m = 2.0 * gamma - 1.0;
  const double t = std::atan(0.5 * kappa);
  const double num =
      m * kappa * std::cos(m * t) - (2.0 + gamma * kappa * kappa) * std::sin(m * t);
  return num / (gamma * m * kappa * kappa * std::pow(1.0 + 0.25 * kappa * kappa, gamma + 0.5));
}

double proton_charge_spectrum(const HydrogenAtom& atom, double k) {
  return kNorm * ball_factor(atom.constants.proton_a * k);
}

double electron_charge_spectrum(const HydrogenAtom& atom, double k) {
  return kNorm * electron_charge_factor(atom.dirac_gamma, atom.constants.bohr_b * k);
}

double hydrogen_charge_spectrum(const HydrogenAtom& atom, double k) {
  require_k(k, "hydrogen_charge_spectrum");
  return proton_charge_spectrum(atom, k) - electron_charge_spectrum(atom, k);
}

double proton_chi_spectrum(const HydrogenAtom& atom, double k) {
  const double a = atom.constants.proton_a;
  return kNorm * atom.constants.mu_geom / (a * a) * proton_chi_factor(a * k);
}

double electron_chi_spectrum(const HydrogenAtom& atom, double k) {
  const double b = atom.constants.bohr_b;
  return kNorm * atom.constants.alpha / b * electron_chi_factor(atom.dirac_gamma, b * k);
}

double hydrogen_chi_spectrum(const HydrogenAtom& atom, double k) {
  require_k(k, "hydrogen_chi_spectrum");
  return proton_chi_spectrum(atom, k) - electron_chi_spectrum(atom, k);
}

double proton_chi_spectrum_deriv(const HydrogenAtom& atom, double k) {
  const double a = atom.constants.proton_a;
  return kNorm * 12.0 * atom.constants.d_ratio() * proton_chi_slope(a * k);
}

double electron_chi_spectrum_deriv(const HydrogenAtom& atom, double k) {
  return kNorm * atom.constants.alpha *
         electron_chi_slope(atom.dirac_gamma, atom.constants.bohr_b * k);
}

double hydrogen_chi_spectrum_deriv(const HydrogenAtom& atom, double k) {
  require_k(k, "hydrogen_chi_spectrum_deriv");
  return proton_chi_spectrum_deriv(atom, k) - electron_chi_spectrum_deriv(atom, k);
}

RadialSpectrum hydrogen_charge_spectrum(const HydrogenAtom& atom) {
  const auto& c = atom.constants;
  return {[atom](double k) { return hydrogen_charge_spectrum(atom, k); },
          {1.0 / c.bohr_b, 1.0 / c.proton_a},
          0.0};
}

RadialSpectrum hydrogen_chi_spectrum(const HydrogenAtom& atom) {
  const auto& c = atom.constants;
  const double limit =
      kNorm * (6.0 * c.mu_geom / (c.proton_a * c.proton_a) - c.alpha / (c.bohr_b * atom.dirac_gamma));
  return {[atom](double k) { return hydrogen_chi_spectrum(atom, k); },
          {1.0 / c.bohr_b, 1.0 / c.proton_a},
          limit};
}

double sphere_pair_form_factor(const SpherePair& pair, double k, double cos_theta) {
  require_k(k, "sphere_pair_form_factor");
  const double ak = pair.radius_a * k;
  const double shell = ak < 1e-8 ? 1.0 - ak * ak / 6.0 : std::sin(ak) / ak;
  return 2.0 * kNorm * std::sin(0.5 * pair.separation_d * k * cos_theta) * shell;
}

double loop_current_spectrum(const CurrentLoop& loop, double k_perp) {
  if (!(k_perp >= 0.0)) throw std::domain_error("loop_current_spectrum: requires k_perp >= 0");
  const double a = loop.radius_a;
  const double root = std::sqrt(2.0 * kPi);
  if (k_perp == 0.0) return a * a * loop.current_a / (2.0 * root);
  return a * loop.current_a * specfun::bessel_j1(a * k_perp) / (root * k_perp);
}

ShellTransform::ShellTransform(const NobleGasAtom& atom, const Shell& shell) {
  const int n = shell.n;
  const int l = shell.l;
  if (n < 1 || n > 5 || l < 0 || l >= n)
    throw std::invalid_argument("shell_spectrum: unsupported (n, l)");
  beta_ = 2.0 * atom.Z / (n * atom.bohr_b);

  // rho^(2l) [L_m^(2l+1)(rho)]^2 as a polynomial in rho.
  const int m = n - l - 1;
  const int order = 2 * l + 1;
  std::vector<double> lag(m + 1);
  for (int i = 0; i <= m; ++i)
    lag[i] = (i % 2 ? -1.0 : 1.0) * binomial(m + order, m - i) / factorial(i);
  std::vector<double> poly(2 * l + 2 * m + 1, 0.0);
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= m; ++j) poly[2 * l + i + j] += lag[i] * lag[j];

  // int_0^inf x^(j+1) e^-x sin(qx) dx / q = (j+1)! S_p(q^2) / (1+q^2)^p, p = j + 2,
  // with S_p(u) = sum_i (-1)^i C(p, 2i+1) u^i.
  const int jmax = static_cast<int>(poly.size()) - 1;
  power_ = jmax + 2;
  numerator_.assign(power_, 0.0);
  for (int j = 0; j <= jmax; ++j) {
    if (poly[j] == 0.0) continue;
    const int p = j + 2;
    std::vector<double> term;
    for (int i = 0; 2 * i + 1 <= p; ++i) term.push_back((i % 2 ? -1.0 : 1.0) * binomial(p, 2 * i + 1));
    for (int e = 0; e < power_ - p; ++e) {  // multiply by (1 + u)
      term.push_back(0.0);
      for (std::size_t t = term.size() - 1; t > 0; --t) term[t] += term[t - 1];
    }
    const double w = poly[j] * factorial(j + 1);
    for (std::size_t t = 0; t < term.size(); ++t) numerator_[t] += w * term[t];
  }
  while (numerator_.size() > 1 && numerator_.back() == 0.0) numerator_.pop_back();

  const double norm = factorial(n - l - 1) / (2.0 * n * factorial(n + l));
  prefactor_ = std::sqrt(2.0 / kPi) * shell.occupancy * norm / (4.0 * kPi);
}

double ShellTransform::operator()(double k) const {
  const double q = k / beta_;
  const double u = q * q;
  if (u <= 1.0) return prefactor_ * horner(numerator_, u) / std::pow(1.0 + u, power_);
  // Large u: divide through by u^power to stay in range.
  const double v = 1.0 / u;
  std::vector<double> rev(numerator_.rbegin(), numerator_.rend());
  const int gap = power_ - static_cast<int>(numerator_.size()) + 1;
  return prefactor_ * std::pow(v, gap) * horner(rev, v) / std::pow(1.0 + v, power_);
}

double shell_spectrum(const NobleGasAtom& atom, const Shell& shell, double k) {
  require_k(k, "shell_spectrum");
  return ShellTransform(atom, shell)(k);
}

RadialSpectrum atom_charge_spectrum(const NobleGasAtom& atom) {
  atom.validate();
  std::vector<ShellTransform> shells;
  std::vector<double> hints{1.0 / atom.nucleus_radius()};
  for (const auto& sh : atom.shells) {
    shells.emplace_back(atom, sh);
    hints.push_back(shells.back().beta());
  }
  std::sort(hints.begin(), hints.end());
  const double a = atom.nucleus_radius();
  const double Z = atom.Z;
  auto eval = [shells = std::move(shells), a, Z](double k) {
    double sum = Z * kNorm * ball_factor(a * k);
    for (const auto& s : shells) sum -= s(k);
    return sum;
  };
  return {eval, hints, 0.0};
}

double d_spectrum(double rho_tilde, double k) {
  require_k(k, "d_spectrum");
  return rho_tilde * rho_tilde / (k * k);
}

double h_spectrum(double chi_tilde_deriv, double k, double u) {
  require_k(k, "h_spectrum");
  return (1.0 - u * u) * chi_tilde_deriv * chi_tilde_deriv / (k * k);
}

}  // namespace zeldovich
