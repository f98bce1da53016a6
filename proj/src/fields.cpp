#include "zeldovich/fields.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "zeldovich/specfun.hpp"

namespace zeldovich {

namespace {

constexpr double kPi = std::numbers::pi;

void require_radius(double r, const char* fn) {
  if (!(r > 0.0) || !std::isfinite(r)) throw std::domain_error(std::string(fn) + ": requires r > 0");
}

// Quantities shared by every closed form: X = 2r/b, s = 2 gamma,
// G = Gamma(2 gamma + 1) and the electron orbital length alpha * b.
struct Electron {
  double X, s, G, lam;
};

Electron electron_terms(const HydrogenAtom& atom, double r) {
  const auto& c = atom.constants;
  const double s = 2.0 * atom.dirac_gamma;
  return {2.0 * r / c.bohr_b, s, specfun::gamma_complete(s + 1.0), c.alpha * c.bohr_b};
}

// Proton shape factors: phi, phi', a, a' brackets (1 outside the proton).
struct ProtonShape {
  double phi, dphi, a, da;
};

ProtonShape proton_shape(double r, double a) {
  if (r >= a) return {1.0, 1.0, 1.0, 1.0};
  const double t = r / a;
  const double t3 = t * t * t;
  return {0.5 * (3.0 * t - t3), t3, 4.0 * t3 - 3.0 * t3 * t, t3 * t};
}

double electron_phi_bracket(const Electron& e) {
  return (specfun::gamma_lower(e.s + 1.0, e.X) + e.X * specfun::gamma_upper(e.s, e.X)) / e.G;
}

double electron_a_bracket(const Electron& e) {
  return e.lam *
         (specfun::gamma_lower(e.s + 2.0, e.X) +
          e.X * e.X * e.X * specfun::gamma_upper(e.s - 1.0, e.X)) /
         (6.0 * e.G);
}

}  // namespace

PotentialPair proton_potentials(const HydrogenAtom& atom, double r) {
  require_radius(r, "proton_potentials");
  const auto& c = atom.constants;
  const ProtonShape p = proton_shape(r, c.proton_a);
  return {p.phi / (4.0 * kPi * r), c.mu_geom * p.a / (4.0 * kPi * r * r * r)};
}

PotentialPair electron_potentials(const HydrogenAtom& atom, double r) {
  require_radius(r, "electron_potentials");
  const Electron e = electron_terms(atom, r);
  return {-electron_phi_bracket(e) / (4.0 * kPi * r),
          -electron_a_bracket(e) / (4.0 * kPi * r * r * r)};
}

PotentialPair potentials(const HydrogenAtom& atom, double r) {
  require_radius(r, "potentials");
  const auto& c = atom.constants;
  const Electron e = electron_terms(atom, r);
  const ProtonShape p = proton_shape(r, c.proton_a);
  double phi_bracket = 0.0;
  if (r >= c.proton_a) {
    // 1 - [gamma(s+1,X) + X Gamma(s,X)] / G written without the cancellation.
    const double tail = std::exp(e.s * std::log(e.X) - e.X);
    phi_bracket = ((e.s - e.X) * specfun::gamma_upper(e.s, e.X) + tail) / e.G;
  } else {
    phi_bracket = p.phi - electron_phi_bracket(e);
  }
  const double a_bracket = c.mu_geom * p.a - electron_a_bracket(e);
  return {phi_bracket / (4.0 * kPi * r), a_bracket / (4.0 * kPi * r * r * r)};
}

PotentialDerivs potential_derivs(const HydrogenAtom& atom, double r) {
  require_radius(r, "potential_derivs");
  const auto& c = atom.constants;
  const Electron e = electron_terms(atom, r);
  const ProtonShape p = proton_shape(r, c.proton_a);
  const double q = r >= c.proton_a ? specfun::gamma_upper(e.s + 1.0, e.X) / e.G
                                   : p.dphi - specfun::gamma_lower(e.s + 1.0, e.X) / e.G;
  const double m =
      3.0 * c.mu_geom * p.da - e.lam * specfun::gamma_lower(e.s + 2.0, e.X) / (2.0 * e.G);
  const double r2 = r * r;
  return {-q / (4.0 * kPi * r2), -m / (4.0 * kPi * r2 * r2)};
}

Vec3 d_field(const HydrogenAtom& atom, const Vec3& position) {
  const double r = norm(position);
  require_radius(r, "d_field");
  return (-potential_derivs(atom, r).dphi / r) * position;
}

Vec3 h_field(const HydrogenAtom& atom, const Vec3& position) {
  const double r = norm(position);
  require_radius(r, "h_field");
  const double a = potentials(atom, r).a_frak;
  const double da = potential_derivs(atom, r).da_frak;
  Vec3 h = (-position[2] / r * da) * position;
  h[2] += r * da + 2.0 * a;
  return h;
}

Vec3 h_field_at_origin(const HydrogenAtom& atom) {
  const auto& c = atom.constants;
  const double s = 2.0 * atom.dirac_gamma;
  const double b3 = c.bohr_b * c.bohr_b * c.bohr_b;
  const double a3 = c.proton_a * c.proton_a * c.proton_a;
  const double a0 = c.mu_geom / (kPi * a3) - c.alpha * c.bohr_b * specfun::gamma_complete(s - 1.0) /
                                                 (3.0 * kPi * specfun::gamma_complete(s + 1.0) * b3);
  return {0.0, 0.0, 2.0 * a0};
}

double enclosed_charge(const HydrogenAtom& atom, double r) {
  if (r == 0.0) return 0.0;
  require_radius(r, "enclosed_charge");
  return 4.0 * kPi * r * r * std::abs(potential_derivs(atom, r).dphi);
}

std::vector<FieldSample> field_grid(const HydrogenAtom& atom, double extent, int resolution) {
  if (resolution < 2) throw std::invalid_argument("field_grid: resolution must be >= 2");
  if (!(extent > 0.0)) throw std::invalid_argument("field_grid: extent must be positive");
  std::vector<FieldSample> out;
  out.reserve(static_cast<std::size_t>(resolution) * resolution);
  const double step = 2.0 * extent / (resolution - 1);
  for (int iz = 0; iz < resolution; ++iz) {
    for (int ix = 0; ix < resolution; ++ix) {
      // Integer-symmetric coordinates keep the grid exactly mirror-symmetric.
      const double x = (2 * ix - (resolution - 1)) * 0.5 * step;
      const double z = (2 * iz - (resolution - 1)) * 0.5 * step;
      const Vec3 pos{x, 0.0, z};
      if (x == 0.0 && z == 0.0) {
        out.push_back({pos, {0.0, 0.0, 0.0}, h_field_at_origin(atom)});
      } else {
        out.push_back({pos, d_field(atom, pos), h_field(atom, pos)});
      }
    }
  }
  return out;
}

}  // namespace zeldovich
