#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "zeldovich/quadrature.hpp"
#include "zeldovich/sources.hpp"
#include "zeldovich/spectra.hpp"
#include "zeldovich/vec3.hpp"

// Independent checks of the Fourier-space machinery.

namespace zeldovich {

// --- kernel identity -----------------------------------------------------------

struct KernelCheck {
  double lhs;  // (2 pi)^-3 int d^3k / k e^(i k.r), regulated and extrapolated
  double rhs;  // 1 / (2 pi^2 r^2)
  quad::QuadStatus status;
};

/// The k-integral is cut at `cutoff_k` with an e^(-eps k) damping, evaluated
/// for a ladder of eps and extrapolated to eps -> 0.
KernelCheck kernel_identity_check(double separation, double cutoff_k);

// --- position-space Monte Carlo --------------------------------------------------

struct McSpec {
  std::int64_t samples = 200'000;
  std::uint64_t seed = 12345;
  double importance_scale = 1.0;  // largest field scale (m)
  double min_scale = 0.0;         // smallest field scale; 0 means importance_scale
  int batches = 32;

  void validate() const;
};

struct McEstimate {
  double value;
  double stderr_;
};

/// (D, H) at a point, both in 1/m^2.
using FieldSampler = std::function<std::pair<Vec3, Vec3>(const Vec3&)>;

/// (alpha / pi) int int d^3r d^3r' [D.D' + H.H'] / |r - r'|^2 by importance
/// sampling. The first point follows a log-uniform mixture over scales in
/// [min_scale, importance_scale] of the law r^2 / (r^2 + l^2)^2; the second
/// is drawn half the time the same way and half the time as a displacement
/// from the first with density ~ 1 / (D^2 (D + r)^2), which keeps the kernel
/// singularity out of the variance.
McEstimate nz_position_space(const FieldSampler& field, const McSpec& mc);

/// Field of a circular current loop in the z = 0 plane, centred on the origin.
std::pair<Vec3, Vec3> loop_fields(const CurrentLoop& loop, const Vec3& position);

// --- transform audit --------------------------------------------------------------

struct AuditPair {
  std::string name;
  std::function<double(double)> analytic;
  std::function<double(double)> numeric;
  std::vector<double> grid;  // wavenumbers (1/m)
};

struct AuditEntry {
  std::string name;
  double max_rel_dev = 0.0;
  double worst_k = 0.0;
  int points_checked = 0;
  bool passed = false;
};

/// Points whose analytic value is below 1e-12 of the pair's peak are skipped.
std::vector<AuditEntry> spectrum_audit(const std::vector<AuditPair>& pairs, double threshold = 1e-6);

/// n log-spaced points in [lo, hi].
std::vector<double> log_grid(double lo, double hi, int n);

/// dF/dk of the radial transform, computed numerically from the density.
quad::QuadResult radial_fourier_deriv(const RadialFunction& f, double k, double rel_tol = 1e-12);

/// Every closed-form transform of the library paired with a numeric one.
std::vector<AuditPair> standard_audit_pairs(const PhysConst& c = {}, bool include_atoms = true);

}  // namespace zeldovich
