#pragma once

#include <functional>
#include <vector>

#include "zeldovich/quadrature.hpp"
#include "zeldovich/sources.hpp"

// Fourier-space form factors. Radial transforms use the unitary convention
// f~(k) = (2 pi)^(-3/2) int d^3r e^(-i k.r) f(r), which for a spherically
// symmetric f reduces to sqrt(2/pi) int_0^inf r sin(kr)/k f(r) dr.

namespace zeldovich {

struct RadialSpectrum {
  std::function<double(double)> eval;  // k in 1/m, k > 0
  std::vector<double> scale_hints;     // characteristic wavenumbers (1/m)
  double zero_limit = 0.0;             // analytic value at k -> 0

  double operator()(double k) const { return k == 0.0 ? zero_limit : eval(k); }
};

/// A radial density with optional support bound and kinks/discontinuities.
struct RadialFunction {
  std::function<double(double)> f;  // evaluated for r > 0
  std::vector<double> breakpoints;  // increasing radii (m)
  double extent = quad::kInfinity;  // f vanishes beyond this radius
};

/// Numeric radial transform. Oscillation wavelength 2 pi / k is passed to the
/// quadrature so every panel covers at most half a period.
quad::QuadResult radial_fourier(const RadialFunction& f, double k, double rel_tol = 1e-12);

// --- dimensionless building blocks (series near zero) ----------------------

/// 3 (sin x - x cos x) / x^3, the uniform-ball form factor normalized to 1.
double ball_factor(double x);
/// 12 (1 - cos x) / x^2, the proton chi transform in units of mu / a^2.
double proton_chi_factor(double x);
/// sin x / x^2 - 2 (1 - cos x) / x^3 = d/dx of proton_chi_factor / 12.
double proton_chi_slope(double x);
/// sin(2 g atan(k/2)) / (g k (1 + k^2/4)^g), with k = b * wavenumber.
double electron_charge_factor(double gamma, double kappa);
/// 2 sin((2g-1) t) / (g (2g-1) k (1 + k^2/4)^(g - 1/2)), t = atan(k/2).
double electron_chi_factor(double gamma, double kappa);
/// d/dk of electron_chi_factor.
double electron_chi_slope(double gamma, double kappa);

// --- hydrogen ----------------------------------------------------------------

/// rho~(k) = (2 pi)^(-3/2) [ball(ak) - electron term].
double hydrogen_charge_spectrum(const HydrogenAtom& atom, double k);
double proton_charge_spectrum(const HydrogenAtom& atom, double k);
double electron_charge_spectrum(const HydrogenAtom& atom, double k);
/// Radial transform of chi = chi_p - chi_e (units 1/m).
double hydrogen_chi_spectrum(const HydrogenAtom& atom, double k);
double proton_chi_spectrum(const HydrogenAtom& atom, double k);
double electron_chi_spectrum(const HydrogenAtom& atom, double k);
/// d/dk of hydrogen_chi_spectrum (dimensionless).
double hydrogen_chi_spectrum_deriv(const HydrogenAtom& atom, double k);
double proton_chi_spectrum_deriv(const HydrogenAtom& atom, double k);
double electron_chi_spectrum_deriv(const HydrogenAtom& atom, double k);

RadialSpectrum hydrogen_charge_spectrum(const HydrogenAtom& atom);
RadialSpectrum hydrogen_chi_spectrum(const HydrogenAtom& atom);

// --- classical sources --------------------------------------------------------

/// 2 (2 pi)^(-3/2) sin(d k cos/2) sin(ak)/(ak): the pair transform with the
/// charge and the overall factor i removed.
double sphere_pair_form_factor(const SpherePair& pair, double k, double cos_theta);

/// m(k_perp) with j~ = i m {k_y, -k_x, 0}; units A m^2 (current in amperes).
double loop_current_spectrum(const CurrentLoop& loop, double k_perp);

// --- multi-electron atoms ---------------------------------------------------------

/// Exact transform of one shell: prefactor * N(q^2) / (1 + q^2)^power with
/// q = k / beta, beta = 2 Z / (n b). Coefficients are generated from the
/// Laguerre expansion of the density.
class ShellTransform {
 public:
  ShellTransform(const NobleGasAtom& atom, const Shell& shell);

  double operator()(double k) const;
  [[nodiscard]] double beta() const { return beta_; }
  [[nodiscard]] int denominator_power() const { return power_; }
  [[nodiscard]] const std::vector<double>& numerator() const { return numerator_; }

 private:
  double beta_;
  double prefactor_;
  int power_;
  std::vector<double> numerator_;  // ascending powers of q^2
};

double shell_spectrum(const NobleGasAtom& atom, const Shell& shell, double k);

/// Nucleus minus all shells, with the per-shell transforms built once.
RadialSpectrum atom_charge_spectrum(const NobleGasAtom& atom);

// --- field spectra ----------------------------------------------------------------

/// |D~|^2 = rho~^2 / k^2.
double d_spectrum(double rho_tilde, double k);
/// |H~|^2 = (1 - u^2) chi~'^2 / k^2 with u the cosine between k and n_z.
double h_spectrum(double chi_tilde_deriv, double k, double u);

}  // namespace zeldovich
