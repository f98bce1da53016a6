#pragma once

#include <vector>

#include "zeldovich/sources.hpp"
#include "zeldovich/vec3.hpp"

// Position-space potentials and fields of the hydrogen atom. The scalar phi
// generates D = -grad phi; the scalar a generates H = curl({-y, x, 0} a).

namespace zeldovich {

struct PotentialPair {
  double phi;     // 1/m
  double a_frak;  // 1/m^2
};

struct PotentialDerivs {
  double dphi;     // d phi / dr
  double da_frak;  // d a / dr
};

struct FieldSample {
  Vec3 position;
  Vec3 D;
  Vec3 H;
};

/// Closed forms built from incomplete gamma functions; r > 0.
PotentialPair potentials(const HydrogenAtom& atom, double r);
PotentialDerivs potential_derivs(const HydrogenAtom& atom, double r);

/// Proton-only and electron-only pieces, so callers can isolate a source.
PotentialPair proton_potentials(const HydrogenAtom& atom, double r);
PotentialPair electron_potentials(const HydrogenAtom& atom, double r);

Vec3 d_field(const HydrogenAtom& atom, const Vec3& position);
Vec3 h_field(const HydrogenAtom& atom, const Vec3& position);
/// Finite value of H at the origin, 2 a(0) n_z.
Vec3 h_field_at_origin(const HydrogenAtom& atom);

/// Charge inside radius r, 4 pi r^2 |D(r)|; 0 at r = 0.
double enclosed_charge(const HydrogenAtom& atom, double r);

/// Square resolution x resolution grid over x, z in [-extent, extent], y = 0,
/// row-major with z outer and x inner.
std::vector<FieldSample> field_grid(const HydrogenAtom& atom, double extent, int resolution);

}  // namespace zeldovich
