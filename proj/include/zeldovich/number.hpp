#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "zeldovich/quadrature.hpp"
#include "zeldovich/sources.hpp"
#include "zeldovich/spectra.hpp"

// The Zeldovich number N_Z = 2 pi alpha int d^3k / k (|D~|^2 + |H~|^2) for
// every source family, and the field energy in units of m_e c^2.

namespace zeldovich {

struct NzBreakdown {
  double electric = 0.0;
  double magnetic = 0.0;
  double total = 0.0;
  std::optional<double> energy_mc2;
  double quad_error = 0.0;
  quad::QuadStatus status = quad::QuadStatus::converged;
  std::vector<std::string> flags;

  [[nodiscard]] bool converged() const { return status == quad::QuadStatus::converged; }
};

enum class SphereMethod { closed, quadrature, asymptotic };
enum class LoopMethod { closed, quadrature };
enum class MagneticRoute { reduced, angular };
enum class EnergyPart { total, proton_only, electron_only };

inline constexpr double kClassicalTol = 1e-9;
inline constexpr double kAtomicTol = 1e-7;

NzBreakdown nz_sphere_pair(const SpherePair& pair, SphereMethod method = SphereMethod::closed,
                           double rel_tol = kClassicalTol);

NzBreakdown nz_loop(const CurrentLoop& loop, LoopMethod method = LoopMethod::closed,
                    double rel_tol = kClassicalTol);
/// The printed closed form with 4 pi alpha, kept for reporting only.
double nz_loop_printed(const CurrentLoop& loop);

NzBreakdown nz_hydrogen_electric(const HydrogenAtom& atom, double rel_tol = kAtomicTol);
NzBreakdown nz_hydrogen_magnetic(const HydrogenAtom& atom,
                                 MagneticRoute route = MagneticRoute::reduced,
                                 double rel_tol = kAtomicTol);
/// Electric plus magnetic, with both contributions filled in.
NzBreakdown nz_hydrogen(const HydrogenAtom& atom, double rel_tol = kAtomicTol);

/// The electron cloud without its proton: the integral diverges at small k.
/// partial_values[i] is the integral restricted to kappa > lower_cutoffs[i].
struct DivergenceProbe {
  std::vector<double> lower_cutoffs;
  std::vector<double> partial_values;
  quad::QuadResult full;  // attempt over the whole axis
};
DivergenceProbe nz_unshielded_electron(const HydrogenAtom& atom, double rel_tol = kAtomicTol);

NzBreakdown nz_atom_electric(const NobleGasAtom& atom, double rel_tol = kAtomicTol);

/// Field energy (electric + magnetic) in m_e c^2; `electric` and `magnetic`
/// carry the split and energy_mc2 the sum.
NzBreakdown field_energy(const HydrogenAtom& atom, EnergyPart part = EnergyPart::total,
                         double rel_tol = kAtomicTol);

// --- generic axially symmetric spectra -----------------------------------------

struct AxialHints {
  std::vector<double> k_scales;       // where the spectrum changes character
  std::optional<double> wavelength;   // oscillation period in k at large k
};

/// |F~(k, u)|^2 with u = cos of the angle between k and the symmetry axis.
struct AxialSpectrum {
  std::function<double(double k, double u)> value;
  std::function<AxialHints(double u)> hints;
  bool even_in_u = true;
};

/// 2 pi alpha int d^3k / k (|D~|^2 + |H~|^2) as a 2-D quadrature: u outer,
/// k inner. Either spectrum may be empty.
NzBreakdown nz_generic(const AxialSpectrum* d_spec, const AxialSpectrum* h_spec,
                       double rel_tol = kAtomicTol, double alpha = PhysConst{}.alpha);

AxialSpectrum sphere_pair_d_spectrum(const SpherePair& pair);
AxialSpectrum loop_h_spectrum(const CurrentLoop& loop);
AxialSpectrum hydrogen_d_spectrum(const HydrogenAtom& atom);
AxialSpectrum hydrogen_h_spectrum(const HydrogenAtom& atom);

/// int_0^inf g(k) dk / k for g vanishing at 0: a linear piece near 0, a
/// log-spaced middle through the given scales, then a (possibly oscillatory)
/// tail from `tail_start`.
struct LogAxisPlan {
  std::vector<double> scales;
  double tail_start = 1.0;
  std::optional<double> wavelength;
};
quad::QuadResult integrate_dk_over_k(const std::function<double(double)>& g,
                                     const LogAxisPlan& plan, double rel_tol);

}  // namespace zeldovich
