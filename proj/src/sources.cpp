#include "zeldovich/sources.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "zeldovich/specfun.hpp"

namespace zeldovich {

namespace {

constexpr double kPi = std::numbers::pi;

void require_positive_radius(double r, const char* fn) {
  if (!(r > 0.0) || !std::isfinite(r)) throw std::domain_error(std::string(fn) + ": requires r > 0");
}

double factorial(int n) { return std::tgamma(n + 1.0); }

}  // namespace

double PhysConst::gamma_rel() const { return std::sqrt(1.0 - alpha * alpha); }

void PhysConst::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  for (double len : {lambda_bar, bohr_b, proton_a})
    if (!(len > 0.0) || !std::isfinite(len))
      throw std::invalid_argument("constant lengths must be positive");
  if (!(mu_geom >= 0.0) || !std::isfinite(mu_geom))
    throw std::invalid_argument("proton moment must be non-negative");
}

void SpherePair::validate() const {
  if (!(radius_a > 0.0)) throw std::invalid_argument("sphere radius must be positive");
  if (!(separation_d >= 0.0)) throw std::invalid_argument("sphere separation must be >= 0");
  if (!std::isfinite(charge_over_e)) throw std::invalid_argument("charge must be finite");
}

void CurrentLoop::validate() const {
  if (!(radius_a > 0.0)) throw std::invalid_argument("loop radius must be positive");
  if (!std::isfinite(current_a)) throw std::invalid_argument("loop current must be finite");
}

HydrogenAtom HydrogenAtom::dirac(const PhysConst& c) {
  c.validate();
  return {c, c.gamma_rel()};
}

HydrogenAtom HydrogenAtom::nonrelativistic(const PhysConst& c) {
  c.validate();
  return {c, 1.0};
}

HydrogenAtom HydrogenAtom::with_gamma(const PhysConst& c, double gamma) {
  c.validate();
  if (!(gamma > 0.5 && gamma <= 1.0)) throw std::invalid_argument("gamma must lie in (1/2, 1]");
  return {c, gamma};
}

double NobleGasAtom::nucleus_radius() const {
  return nuclear_radius_override.value_or(nuclear_radius(A));
}

void NobleGasAtom::validate() const {
  if (Z < 1) throw std::invalid_argument("Z must be >= 1");
  if (A < 1) throw std::invalid_argument("A must be >= 1");
  if (!(bohr_b > 0.0)) throw std::invalid_argument("Bohr radius must be positive");
  int total = 0;
  for (const auto& sh : shells) {
    if (sh.n < 1 || sh.l < 0 || sh.l >= sh.n)
      throw std::invalid_argument("shell quantum numbers require 0 <= l < n");
    if (sh.n > 5) throw std::invalid_argument("shells beyond n = 5 are not supported");
    if (sh.occupancy < 1 || sh.occupancy > sh.capacity())
      throw std::invalid_argument("shell occupancy out of range");
    if (sh.l > 0 && sh.occupancy != sh.capacity())
      throw std::invalid_argument("shells with l > 0 must be closed");
    total += sh.occupancy;
  }
  if (total != Z) throw std::invalid_argument("shell occupancies must sum to Z");
}

NobleGasAtom noble_gas(std::string_view symbol) {
  const std::vector<Shell> he{{1, 0, 2}};
  auto extend = [](std::vector<Shell> base, std::initializer_list<Shell> more) {
    base.insert(base.end(), more);
    return base;
  };
  const auto ne = extend(he, {{2, 0, 2}, {2, 1, 6}});
  const auto ar = extend(ne, {{3, 0, 2}, {3, 1, 6}});
  const auto kr = extend(ar, {{3, 2, 10}, {4, 0, 2}, {4, 1, 6}});
  const auto xe = extend(kr, {{4, 2, 10}, {5, 0, 2}, {5, 1, 6}});
  if (symbol == "He") return {"He", 2, 4, he, {}};
  if (symbol == "Ne") return {"Ne", 10, 20, ne, {}};
  if (symbol == "Ar") return {"Ar", 18, 40, ar, {}};
  if (symbol == "Kr") return {"Kr", 36, 84, kr, {}};
  if (symbol == "Xe") return {"Xe", 54, 131, xe, {}};
  throw std::invalid_argument("unknown element symbol: " + std::string(symbol));
}

std::vector<std::string> noble_gas_symbols() { return {"He", "Ne", "Ar", "Kr", "Xe"}; }

NobleGasAtom hydrogen_like_atom() { return {"H", 1, 1, {{1, 0, 1}}, {}}; }

double electron_density(const HydrogenAtom& atom, double r) {
  require_positive_radius(r, "electron_density");
  const double g = atom.dirac_gamma;
  const double x = 2.0 * r / atom.constants.bohr_b;
  const double b = atom.constants.bohr_b;
  const double shape = std::exp((2.0 * g - 2.0) * std::log(x) - x - specfun::log_gamma(2.0 * g + 1.0));
  return 2.0 * shape / (kPi * b * b * b);
}

double electron_current_prefactor(const HydrogenAtom& atom, double r) {
  return atom.constants.alpha * electron_density(atom, r) / r;
}

double proton_density(const PhysConst& c, double r) {
  if (!(r >= 0.0)) throw std::domain_error("proton_density: requires r >= 0");
  const double a = c.proton_a;
  return r < a ? 3.0 / (4.0 * kPi * a * a * a) : 0.0;
}

double proton_current_prefactor(const PhysConst& c, double r) {
  require_positive_radius(r, "proton_current_prefactor");
  const double a = c.proton_a;
  return r < a ? 3.0 * c.mu_geom / (kPi * a * a * a * a * r) : 0.0;
}

double charge_density(const HydrogenAtom& atom, double r) {
  return proton_density(atom.constants, r) - electron_density(atom, r);
}

double current_chi(const HydrogenAtom& atom, double r) {
  return proton_current_prefactor(atom.constants, r) - electron_current_prefactor(atom, r);
}

Vec3 current_density(const HydrogenAtom& atom, const Vec3& position) {
  const double r = norm(position);
  if (r == 0.0) return {0.0, 0.0, 0.0};
  const double chi = current_chi(atom, r);
  return {-position[1] * chi, position[0] * chi, 0.0};
}

double shell_density(const NobleGasAtom& atom, const Shell& shell, double r) {
  require_positive_radius(r, "shell_density");
  const int n = shell.n;
  const int l = shell.l;
  const double k = 2.0 * atom.Z / (n * atom.bohr_b);
  const double rho = k * r;
  const double norm_factor = factorial(n - l - 1) / (2.0 * n * factorial(n + l));
  const double lag = specfun::laguerre(n - l - 1, 2.0 * l + 1.0, rho);
  return shell.occupancy / (4.0 * kPi) * norm_factor * k * k * k * std::pow(rho, 2 * l) *
         std::exp(-rho) * lag * lag;
}

double nucleus_density(const NobleGasAtom& atom, double r) {
  if (!(r >= 0.0)) throw std::domain_error("nucleus_density: requires r >= 0");
  const double a = atom.nucleus_radius();
  return r < a ? 3.0 * atom.Z / (4.0 * kPi * a * a * a) : 0.0;
}

double electron_cloud_density(const NobleGasAtom& atom, double r) {
  double sum = 0.0;
  for (const auto& sh : atom.shells) sum += shell_density(atom, sh, r);
  return sum;
}

double nuclear_radius(int mass_number) {
  if (mass_number < 1) throw std::invalid_argument("mass number must be >= 1");
  return 1.2e-15 * std::cbrt(static_cast<double>(mass_number));
}

}  // namespace zeldovich
