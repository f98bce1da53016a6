#include <cmath>

#include <gtest/gtest.h>

#include "zeldovich/spectra.hpp"

using namespace zeldovich;

namespace {

const double kNorm = std::pow(2.0 * M_PI, -1.5);

long double ball_ld(long double x) { return 3.0L * (std::sin(x) - x * std::cos(x)) / (x * x * x); }
long double proton_chi_ld(long double x) { return 12.0L * (1.0L - std::cos(x)) / (x * x); }

double central_diff(const std::function<double(double)>& f, double x, double h) {
  return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12.0 * h);
}

}  // namespace

TEST(Factors, SeriesBranchesMatchLongDouble) {
  for (double x : {0.02, 0.0999, 0.1001, 0.3}) {
    EXPECT_NEAR(ball_factor(x), static_cast<double>(ball_ld(x)), 1e-15) << x;
    EXPECT_NEAR(proton_chi_factor(x), static_cast<double>(proton_chi_ld(x)), 2e-14) << x;
  }
  EXPECT_DOUBLE_EQ(ball_factor(0.0), 1.0);
  EXPECT_DOUBLE_EQ(proton_chi_factor(0.0), 6.0);
}

TEST(Factors, ProtonSlopeIsDerivative) {
  for (double x : {0.05, 0.0999, 0.1001, 0.5, 3.0, 12.0}) {
    const double fd = central_diff(proton_chi_factor, x, 1e-3 * std::max(x, 0.1)) / 12.0;
    EXPECT_NEAR(proton_chi_slope(x), fd, 1e-10) << x;
  }
  EXPECT_DOUBLE_EQ(proton_chi_slope(0.0), 0.0);
}

TEST(Factors, ElectronOneSFormFactor) {
  for (double kappa : {1e-4, 0.3, 2.0, 40.0}) {
    const double want = 1.0 / std::pow(1.0 + 0.25 * kappa * kappa, 2);
    EXPECT_NEAR(electron_charge_factor(1.0, kappa), want, 1e-14 * std::max(1.0, want)) << kappa;
  }
  EXPECT_DOUBLE_EQ(electron_charge_factor(0.99, 0.0), 1.0);
}

TEST(Factors, ElectronChiSlopeIsDerivative) {
  const double g = std::sqrt(1.0 - 7.2973525693e-3 * 7.2973525693e-3);
  auto chi = [g](double k) { return electron_chi_factor(g, k); };
  for (double kappa : {5e-4, 9.99e-4, 1.001e-3, 0.01, 0.7, 2.0, 15.0}) {
    const double fd = central_diff(chi, kappa, 1e-3 * std::max(kappa, 1e-2));
    EXPECT_NEAR(electron_chi_slope(g, kappa), fd, 1e-9 * std::max(1.0, std::abs(fd))) << kappa;
  }
  EXPECT_NEAR(electron_chi_factor(g, 1e-6), 1.0 / g, 1e-11);
}

TEST(Factors, ElectronChiNonrelativistic) {
  // gamma = 1: chi factor reduces to 2 sin(t) / (k sqrt(1 + k^2/4)) = 1 / (1 + k^2/4).
  for (double kappa : {0.1, 1.0, 9.0}) {
    EXPECT_NEAR(electron_chi_factor(1.0, kappa), 1.0 / (1.0 + 0.25 * kappa * kappa), 1e-14);
  }
}

TEST(Hydrogen, NeutralAtKZero) {
  const auto atom = HydrogenAtom::dirac();
  const double b = atom.constants.bohr_b;
  const double k = 1e-4 / b;
  EXPECT_LT(std::abs(hydrogen_charge_spectrum(atom, k)), 1e-6 * kNorm);
  const auto spec = hydrogen_charge_spectrum(atom);
  EXPECT_EQ(spec(0.0), 0.0);
  EXPECT_EQ(spec.scale_hints.size(), 2u);
}

TEST(Hydrogen, ChiSpectrumLimitAndDerivative) {
  const auto atom = HydrogenAtom::dirac();
  const auto spec = hydrogen_chi_spectrum(atom);
  const double b = atom.constants.bohr_b;
  EXPECT_NEAR(spec(1e-6 / b) / spec.zero_limit, 1.0, 1e-9);
  // The proton term is nearly constant at atomic k, so each source is differenced alone.
  auto fp = [&](double k) { return proton_chi_spectrum(atom, k); };
  auto fe = [&](double k) { return electron_chi_spectrum(atom, k); };
  for (double kb : {0.05, 1.0, 7.0, 300.0, 2e5}) {
    const double k = kb / b;
    const double h = 1e-3 * k;
    EXPECT_NEAR(electron_chi_spectrum_deriv(atom, k) / central_diff(fe, k, h), 1.0, 1e-7) << kb;
    if (kb > 100.0) {
      EXPECT_NEAR(proton_chi_spectrum_deriv(atom, k) / central_diff(fp, k, h), 1.0, 1e-7) << kb;
    }
    EXPECT_EQ(hydrogen_chi_spectrum_deriv(atom, k),
              proton_chi_spectrum_deriv(atom, k) - electron_chi_spectrum_deriv(atom, k));
  }
}

TEST(RadialFourier, GaussianIsSelfDual) {
  const RadialFunction g{[](double r) { return std::exp(-0.5 * r * r); }, {1.0, 4.0}, 40.0};
  for (double k : {0.1, 1.0, 3.0}) {
    const auto res = radial_fourier(g, k);
    EXPECT_TRUE(res.converged());
    EXPECT_NEAR(res.value, std::exp(-0.5 * k * k), 1e-12);
  }
  EXPECT_THROW(radial_fourier(g, 0.0), std::domain_error);
}

TEST(RadialFourier, MatchesProtonBall) {
  const auto atom = HydrogenAtom::dirac();
  const double a = atom.constants.proton_a;
  const RadialFunction rho{[&](double r) { return proton_density(atom.constants, r); }, {}, a};
  for (double ka : {0.01, 1.0, 25.0}) {
    EXPECT_NEAR(radial_fourier(rho, ka / a).value / proton_charge_spectrum(atom, ka / a), 1.0, 1e-10);
  }
}

TEST(Sphere, FormFactorOddInCosine) {
  const SpherePair pair{1.0, 3.0, 1.0};
  EXPECT_DOUBLE_EQ(sphere_pair_form_factor(pair, 2.0, 0.4), -sphere_pair_form_factor(pair, 2.0, -0.4));
  EXPECT_EQ(sphere_pair_form_factor(pair, 2.0, 0.0), 0.0);
  EXPECT_NEAR(sphere_pair_form_factor(pair, 1e-10, 1.0), 2.0 * kNorm * 1.5e-10, 1e-22);
}

TEST(Loop, SmallKLimit) {
  const CurrentLoop loop{0.5, 2.0};
  const double want = 0.25 * 2.0 / (2.0 * std::sqrt(2.0 * M_PI));
  EXPECT_DOUBLE_EQ(loop_current_spectrum(loop, 0.0), want);
  EXPECT_NEAR(loop_current_spectrum(loop, 1e-6) / want, 1.0, 1e-11);
  EXPECT_THROW(loop_current_spectrum(loop, -1.0), std::domain_error);
}

TEST(Shell, OneSEqualsHydrogenFormFactor) {
  const auto atom = hydrogen_like_atom();
  const auto nr = HydrogenAtom::nonrelativistic();
  const double b = atom.bohr_b;
  for (double kb : {0.01, 1.0, 2.0, 2.0001, 50.0}) {
    const double k = kb / b;
    EXPECT_NEAR(shell_spectrum(atom, atom.shells[0], k) / electron_charge_spectrum(nr, k), 1.0, 1e-13);
  }
}

TEST(Shell, TransformContinuousAcrossBranch) {
  const auto xe = noble_gas("Xe");
  for (const auto& sh : xe.shells) {
    const ShellTransform t(xe, sh);
    const double k = t.beta();
    const double scale = kNorm * sh.occupancy;
    EXPECT_NEAR(t(k * (1.0 - 1e-9)), t(k * (1.0 + 1e-9)), 1e-7 * scale) << sh.n << sh.l;
    EXPECT_NEAR(t(1e-9 * k) / scale, 1.0, 1e-9);
    const RadialFunction rho{[&](double r) { return shell_density(xe, sh, r); },
                             {1.0 / k, 4.0 * sh.n / k},
                             (80.0 + 12.0 * sh.n) / k};
    for (double q : {0.7, 1.3}) {
      EXPECT_NEAR(t(q * k), radial_fourier(rho, q * k).value, 1e-9 * scale) << sh.n << sh.l << " q=" << q;
    }
  }
}

TEST(Shell, DenominatorPowerMatchesPolynomialDegree) {
  const auto kr = noble_gas("Kr");
  const ShellTransform s1(kr, {1, 0, 2});
  EXPECT_EQ(s1.denominator_power(), 2);
  const ShellTransform s4(kr, {4, 1, 6});
  EXPECT_EQ(s4.denominator_power(), 8);
  EXPECT_LT(s4.numerator().size(), static_cast<std::size_t>(s4.denominator_power()));
}

TEST(Atom, ChargeSpectrumNeutral) {
  for (const auto& sym : noble_gas_symbols()) {
    const auto atom = noble_gas(sym);
    const auto spec = atom_charge_spectrum(atom);
    const double k = 1e-5 / atom.bohr_b;
    EXPECT_LT(std::abs(spec(k)), 1e-7 * atom.Z * kNorm) << sym;
    EXPECT_NEAR(spec(1e3 / atom.nucleus_radius()) / kNorm, 0.0, 1e-5 * atom.Z);
  }
}

TEST(FieldSpectra, Definitions) {
  EXPECT_DOUBLE_EQ(d_spectrum(3.0, 2.0), 2.25);
  EXPECT_DOUBLE_EQ(h_spectrum(2.0, 1.0, 0.6), 0.64 * 4.0);
  EXPECT_EQ(h_spectrum(2.0, 1.0, 1.0), 0.0);
}
