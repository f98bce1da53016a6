#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zeldovich/vec3.hpp"

// Charge and current densities of every source model, in geometric units:
// charge densities are normalized to the elementary charge (1/m^3) and
// currents to e*c, so field vectors come out in 1/m^2.

namespace zeldovich {

inline constexpr double kElementaryCharge = 1.602176634e-19;  // C
inline constexpr double kSpeedOfLight = 299792458.0;          // m/s

/// Atomic-scale constants. Lengths in meters.
struct PhysConst {
  double alpha = 7.2973525693e-3;
  double lambda_bar = 3.86e-13;  // reduced Compton wavelength
  double bohr_b = 5.29e-11;
  double proton_a = 8.5e-16;
  double mu_geom = 5.8e-16;  // proton moment mu_p / (e c)

  [[nodiscard]] double gamma_rel() const;
  [[nodiscard]] double s_ratio() const { return proton_a / bohr_b; }
  [[nodiscard]] double d_ratio() const { return mu_geom / proton_a; }

  /// Throws std::invalid_argument unless all lengths are positive and 0 < alpha < 1.
  void validate() const;
};

/// Two spheres carrying +Q and -Q uniformly on their surfaces.
struct SpherePair {
  double radius_a = 1.0;      // m
  double separation_d = 0.0;  // m, centre to centre
  double charge_over_e = 1.0;

  [[nodiscard]] double b_ratio() const { return separation_d / radius_a; }
  void validate() const;
};

/// Circular filament of radius a carrying current I.
struct CurrentLoop {
  double radius_a = 1.0;   // m
  double current_a = 1.0;  // A

  /// a I / (e c), the dimensionless strength entering the loop formulas.
  [[nodiscard]] double scaled_strength() const {
    return radius_a * current_a / (kElementaryCharge * kSpeedOfLight);
  }
  void validate() const;
};

/// Hydrogen in the Dirac ground state (or its nonrelativistic limit) with a
/// uniformly charged, uniformly magnetized proton of radius a.
struct HydrogenAtom {
  PhysConst constants;
  double dirac_gamma = 1.0;  // sqrt(1 - alpha^2) when relativistic

  static HydrogenAtom dirac(const PhysConst& c = {});
  static HydrogenAtom nonrelativistic(const PhysConst& c = {});
  /// Arbitrary exponent in (1/2, 1]; used to study the gamma -> 1 limit.
  static HydrogenAtom with_gamma(const PhysConst& c, double gamma);
};

struct Shell {
  int n = 1;
  int l = 0;
  int occupancy = 2;

  [[nodiscard]] int capacity() const { return 2 * (2 * l + 1); }
};

/// Closed-shell atom with noninteracting hydrogenic electrons.
struct NobleGasAtom {
  std::string symbol;
  int Z = 2;
  int A = 4;
  std::vector<Shell> shells;
  std::optional<double> nuclear_radius_override;
  double bohr_b = PhysConst{}.bohr_b;

  [[nodiscard]] double nucleus_radius() const;
  /// Shell occupancies must sum to Z, satisfy l < n and not exceed 2(2l+1);
  /// only s shells may be partially filled (they stay spherically symmetric).
  void validate() const;
};

/// Built-in roster: He, Ne, Ar, Kr, Xe with their ground-state configurations.
NobleGasAtom noble_gas(std::string_view symbol);
std::vector<std::string> noble_gas_symbols();
/// One electron in 1s around a nucleus with Z = 1, A = 1.
NobleGasAtom hydrogen_like_atom();

// --- hydrogen densities -----------------------------------------------------

/// Dirac ground-state probability density; r > 0.
double electron_density(const HydrogenAtom& atom, double r);
/// Scalar p with j_e = {-y, x, 0} * p, equal to alpha rho_e(r) / r.
double electron_current_prefactor(const HydrogenAtom& atom, double r);
/// Uniform unit charge in a ball of radius a.
double proton_density(const PhysConst& c, double r);
/// Scalar p with j_p = {-y, x, 0} * p = 3 mu / (pi a^4 r) inside the proton,
/// oriented so the proton moment points along +z.
double proton_current_prefactor(const PhysConst& c, double r);

/// rho = rho_p - rho_e.
double charge_density(const HydrogenAtom& atom, double r);
/// chi with j = {-y, x, 0} chi: chi_p - chi_e.
double current_chi(const HydrogenAtom& atom, double r);
/// Total current vector j = j_p - j_e at a position.
Vec3 current_density(const HydrogenAtom& atom, const Vec3& position);

// --- multi-electron atoms ---------------------------------------------------

/// Density of one hydrogenic (n, l) shell scaled by its occupancy; r > 0.
double shell_density(const NobleGasAtom& atom, const Shell& shell, double r);
/// Nuclear charge Z spread uniformly in a ball of radius a(A).
double nucleus_density(const NobleGasAtom& atom, double r);
/// Sum over all shells.
double electron_cloud_density(const NobleGasAtom& atom, double r);

/// a(A) = 1.2 A^(1/3) fm.
double nuclear_radius(int mass_number);

}  // namespace zeldovich
