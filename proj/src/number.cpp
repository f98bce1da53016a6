#include "zeldovich/number.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "zeldovich/specfun.hpp"

namespace zeldovich {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTiny = 1e-300;

using quad::QuadResult;
using quad::QuadSpec;
using quad::QuadStatus;

void accumulate(QuadResult& into, const QuadResult& part) {
  into.value += part.value;
  into.abs_error_estimate += part.abs_error_estimate;
  into.evaluations += part.evaluations;
  into.subdivisions += part.subdivisions;
  if (!part.converged()) into.status = QuadStatus::non_convergence;
}

void merge_status(NzBreakdown& out, const QuadResult& r) {
  out.quad_error += r.abs_error_estimate;
  if (!r.converged()) out.status = QuadStatus::non_convergence;
}

double sinc(double x) {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

// 1 - sin(x)/x without cancellation.
double one_minus_sinc(double x) {
  if (std::abs(x) < 1e-2) {
    const double x2 = x * x;
    return x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0));
  }
  return 1.0 - std::sin(x) / x;
}

// The square bracket of the closed form, divided by b; series at both ends.
double sphere_bracket_over_b(double b) {
  if (b < 1e-2) {
    const double b2 = b * b;
    return b2 * (2.0 * std::log(2.0) - 2.0 * std::log(b) + 11.0 / 3.0) - b2 * b2 / 40.0 -
           b2 * b2 * b2 / 1120.0;
  }
  if (b > 50.0) {
    const double y2 = 1.0 / (b * b);
    return 24.0 * std::log(b) + 12.0 - 24.0 * std::log(2.0) +
           y2 * (8.0 + y2 * (32.0 / 15.0 + y2 * (64.0 / 35.0 + y2 * 256.0 / 105.0)));
  }
  const double up = (b + 2.0) * (b + 2.0) * (b + 2.0) * std::log(b + 2.0);
  const double dn = b == 2.0 ? 0.0 : (b - 2.0) * (b - 2.0) * (b - 2.0) * std::log(std::abs(b - 2.0));
  return (up + dn - 2.0 * b * (4.0 + 12.0 * std::log(2.0)) - 2.0 * b * b * b * std::log(b)) / b;
}

NzBreakdown electric_only(const QuadResult& r) {
  NzBreakdown out;
  out.electric = r.value;
  out.total = r.value;
  merge_status(out, r);
  return out;
}

NzBreakdown magnetic_only(const QuadResult& r) {
  NzBreakdown out;
  out.magnetic = r.value;
  out.total = r.value;
  merge_status(out, r);
  return out;
}

LogAxisPlan hydrogen_kappa_plan(const HydrogenAtom& atom) {
  const double s = atom.constants.s_ratio();
  return {{1.0, 1.0 / s}, 4.0 * kPi / s, 2.0 * kPi / s};
}

// Bracket of the reduced magnetic integrand: 12 d g(s kappa) - alpha e(kappa).
double magnetic_bracket(const HydrogenAtom& atom, double kappa, double proton_w, double electron_w) {
  const auto& c = atom.constants;
  return proton_w * 12.0 * c.d_ratio() * proton_chi_slope(c.s_ratio() * kappa) -
         electron_w * c.alpha * electron_chi_slope(atom.dirac_gamma, kappa);
}

double electric_bracket(const HydrogenAtom& atom, double kappa, double proton_w, double electron_w) {
  return proton_w * ball_factor(atom.constants.s_ratio() * kappa) -
         electron_w * electron_charge_factor(atom.dirac_gamma, kappa);
}

}  // namespace

QuadResult integrate_dk_over_k(const std::function<double(double)>& g, const LogAxisPlan& plan,
                               double rel_tol) {
  std::vector<double> scales = plan.scales;
  if (scales.empty()) scales.push_back(plan.tail_start);
  const double k_lo = *std::min_element(scales.begin(), scales.end()) * 1e-6;
  if (!(plan.tail_start > k_lo)) throw std::invalid_argument("integrate_dk_over_k: bad plan");

  QuadSpec mid;
  mid.rel_tol = rel_tol;
  mid.abs_tol = kTiny;
  const double t_lo = std::log(k_lo);
  const double t_hi = std::log(plan.tail_start);
  std::vector<double> bps;
  for (double sc : scales) {
    const double t = std::log(sc);
    if (t > t_lo && t < t_hi) bps.push_back(t);
  }
  std::sort(bps.begin(), bps.end());
  bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
  mid.breakpoints = bps;
  QuadResult out = quad::integrate([&](double t) { return g(std::exp(t)); }, t_lo, t_hi, mid);

  QuadSpec side;
  side.rel_tol = rel_tol;
  side.abs_tol = std::max(kTiny, 0.1 * rel_tol * std::abs(out.value));
  auto over_k = [&](double k) { return g(k) / k; };
  accumulate(out, quad::integrate(over_k, 0.0, k_lo, side));

  QuadSpec tail = side;
  tail.oscillation_wavelength = plan.wavelength;
  tail.tail_scale = plan.tail_start;
  accumulate(out, quad::integrate(over_k, plan.tail_start, quad::kInfinity, tail));
  return out;
}

// --- classical sources ----------------------------------------------------------------

NzBreakdown nz_sphere_pair(const SpherePair& pair, SphereMethod method, double rel_tol) {
  pair.validate();
  const double b = pair.b_ratio();
  const double q2 = pair.charge_over_e * pair.charge_over_e;
  const double alpha = PhysConst{}.alpha;
  NzBreakdown out;
  if (b == 0.0) {
    out.flags.push_back("coincident_charges");
    return out;
  }
  if (b < 2.0) out.flags.push_back("geometrically_overlapping");
  switch (method) {
    case SphereMethod::closed:
      out.electric = alpha * q2 / (12.0 * kPi) * sphere_bracket_over_b(b);
      break;
    case SphereMethod::asymptotic:
      if (b < 10.0) out.flags.push_back("asymptotic_outside_validity");
      out.electric = 2.0 * alpha / kPi * q2 * std::log(b);
      break;
    case SphereMethod::quadrature: {
      // Angular integral of sin^2(b x u / 2) done exactly; x = a k.
      auto g = [b, alpha](double x) {
        const double s = sinc(x);
        return 2.0 * alpha / kPi * s * s * one_minus_sinc(b * x);
      };
      const double top = std::max(1.0, 1.0 / b);
      const LogAxisPlan plan{{1.0, 1.0 / b}, 4.0 * kPi * top, std::min(kPi, 2.0 * kPi / b)};
      const QuadResult r = integrate_dk_over_k(g, plan, rel_tol);
      out.electric = q2 * r.value;
      out.quad_error = q2 * r.abs_error_estimate;
      out.status = r.status;
      break;
    }
  }
  out.total = out.electric;
  return out;
}

NzBreakdown nz_loop(const CurrentLoop& loop, LoopMethod method, double rel_tol) {
  loop.validate();
  const double alpha = PhysConst{}.alpha;
  const double s2 = loop.scaled_strength() * loop.scaled_strength();
  NzBreakdown out;
  if (s2 == 0.0) return out;
  if (method == LoopMethod::closed) {
    out.magnetic = 2.0 * kPi * alpha * s2;
  } else {
    // alpha S^2 int dx dz dphi x J1(x)^2 / (x^2 + z^2)^(3/2) in units of a.
    QuadSpec inner;
    inner.rel_tol = 0.1 * rel_tol;
    inner.abs_tol = kTiny;
    QuadResult inner_total;
    auto g = [&](double x) {
      inner.tail_scale = x;
      const QuadResult z = quad::integrate(
          [x](double zeta) { return std::pow(x * x + zeta * zeta, -1.5); }, 0.0, quad::kInfinity,
          inner);
      inner_total.evaluations += z.evaluations;
      if (!z.converged()) inner_total.status = QuadStatus::non_convergence;
      const double j1 = specfun::bessel_j1(x);
      return 2.0 * kPi * alpha * x * x * j1 * j1 * 2.0 * z.value;
    };
    const QuadResult r = integrate_dk_over_k(g, {{1.0}, 4.0 * kPi, kPi}, rel_tol);
    out.magnetic = s2 * r.value;
    out.quad_error = s2 * r.abs_error_estimate;
    out.status = r.converged() && inner_total.converged() ? QuadStatus::converged
                                                         : QuadStatus::non_convergence;
  }
  out.total = out.magnetic;
  return out;
}

double nz_loop_printed(const CurrentLoop& loop) {
  const double s = loop.scaled_strength();
  return 4.0 * kPi * PhysConst{}.alpha * s * s;
}

// --- hydrogen -----------------------------------------------------------------------

NzBreakdown nz_hydrogen_electric(const HydrogenAtom& atom, double rel_tol) {
  atom.constants.validate();
  const double alpha = atom.constants.alpha;
  auto g = [&](double kappa) {
    const double v = electric_bracket(atom, kappa, 1.0, 1.0);
    return alpha / kPi * v * v;
  };
  return electric_only(integrate_dk_over_k(g, hydrogen_kappa_plan(atom), rel_tol));
}

NzBreakdown nz_hydrogen_magnetic(const HydrogenAtom& atom, MagneticRoute route, double rel_tol) {
  atom.constants.validate();
  if (route == MagneticRoute::angular) {
    const AxialSpectrum h = hydrogen_h_spectrum(atom);
    return nz_generic(nullptr, &h, rel_tol, atom.constants.alpha);
  }
  const double alpha = atom.constants.alpha;
  auto g = [&](double kappa) {
    const double v = magnetic_bracket(atom, kappa, 1.0, 1.0);
    return 2.0 * alpha / (3.0 * kPi) * v * v;
  };
  return magnetic_only(integrate_dk_over_k(g, hydrogen_kappa_plan(atom), rel_tol));
}

NzBreakdown nz_hydrogen(const HydrogenAtom& atom, double rel_tol) {
  NzBreakdown out = nz_hydrogen_electric(atom, rel_tol);
  const NzBreakdown mag = nz_hydrogen_magnetic(atom, MagneticRoute::reduced, rel_tol);
  out.magnetic = mag.magnetic;
  out.total = out.electric + out.magnetic;
  out.quad_error += mag.quad_error;
  if (!mag.converged()) out.status = QuadStatus::non_convergence;
  return out;
}

DivergenceProbe nz_unshielded_electron(const HydrogenAtom& atom, double rel_tol) {
  atom.constants.validate();
  const double alpha = atom.constants.alpha;
  auto f = [&](double kappa) {
    const double e = electron_charge_factor(atom.dirac_gamma, kappa);
    return alpha / kPi * e * e / kappa;
  };
  DivergenceProbe probe;
  QuadSpec spec;
  spec.rel_tol = rel_tol;
  spec.abs_tol = kTiny;
  spec.tail_scale = 1.0;
  for (int j = 1; j <= 8; ++j) {
    const double cut = std::pow(10.0, -j);
    probe.lower_cutoffs.push_back(cut);
    probe.partial_values.push_back(quad::integrate(f, cut, quad::kInfinity, spec).value);
  }
  QuadSpec full = spec;
  full.max_subdivisions = 400;
  probe.full = quad::integrate(f, 0.0, quad::kInfinity, full);
  return probe;
}

NzBreakdown nz_atom_electric(const NobleGasAtom& atom, double rel_tol) {
  const RadialSpectrum rho = atom_charge_spectrum(atom);
  const double alpha = PhysConst{}.alpha;
  const double lift = std::pow(2.0 * kPi, 1.5);
  auto g = [&](double k) {
    const double v = lift * rho(k);
    return alpha / kPi * v * v;
  };
  const double a = atom.nucleus_radius();
  const LogAxisPlan plan{rho.scale_hints, 4.0 * kPi / a, 2.0 * kPi / a};
  return electric_only(integrate_dk_over_k(g, plan, rel_tol));
}

NzBreakdown field_energy(const HydrogenAtom& atom, EnergyPart part, double rel_tol) {
  const auto& c = atom.constants;
  c.validate();
  const double pw = part == EnergyPart::electron_only ? 0.0 : 1.0;
  const double ew = part == EnergyPart::proton_only ? 0.0 : 1.0;
  const double unit = c.alpha * c.lambda_bar / (kPi * c.bohr_b);
  const LogAxisPlan plan = hydrogen_kappa_plan(atom);
  auto el = [&](double kappa) {
    const double v = electric_bracket(atom, kappa, pw, ew);
    return unit * kappa * v * v;
  };
  auto mag = [&](double kappa) {
    const double v = magnetic_bracket(atom, kappa, pw, ew);
    return 2.0 / 3.0 * unit * kappa * v * v;
  };
  const QuadResult re = integrate_dk_over_k(el, plan, rel_tol);
  const QuadResult rm = integrate_dk_over_k(mag, plan, rel_tol);
  NzBreakdown out;
  out.electric = re.value;
  out.magnetic = rm.value;
  out.total = re.value + rm.value;
  out.energy_mc2 = out.total;
  merge_status(out, re);
  merge_status(out, rm);
  return out;
}

// --- generic axially symmetric route ---------------------------------------------------

NzBreakdown nz_generic(const AxialSpectrum* d_spec, const AxialSpectrum* h_spec, double rel_tol,
                       double alpha) {
  NzBreakdown out;
  auto part = [&](const AxialSpectrum& spec) {
    QuadResult inner_total;
    auto over_u = [&](double u) {
      const AxialHints hints = spec.hints(u);
      if (hints.k_scales.empty()) return 0.0;
      const double top = *std::max_element(hints.k_scales.begin(), hints.k_scales.end());
      LogAxisPlan plan{hints.k_scales, 8.0 * top, hints.wavelength};
      const QuadResult r = integrate_dk_over_k(
          [&](double k) { return k * k * spec.value(k, u); }, plan, 0.1 * rel_tol);
      inner_total.abs_error_estimate = std::max(inner_total.abs_error_estimate, r.abs_error_estimate);
      if (!r.converged()) inner_total.status = QuadStatus::non_convergence;
      return r.value;
    };
    QuadSpec outer;
    outer.rel_tol = rel_tol;
    outer.abs_tol = kTiny;
    QuadResult r = spec.even_in_u ? quad::integrate(over_u, 0.0, 1.0, outer)
                                  : quad::integrate(over_u, -1.0, 1.0, outer);
    const double w = 2.0 * kPi * alpha * 2.0 * kPi * (spec.even_in_u ? 2.0 : 1.0);
    r.value *= w;
    r.abs_error_estimate = w * (r.abs_error_estimate + 2.0 * inner_total.abs_error_estimate);
    if (!inner_total.converged()) r.status = QuadStatus::non_convergence;
    return r;
  };
  if (d_spec) {
    const QuadResult r = part(*d_spec);
    out.electric = r.value;
    merge_status(out, r);
  }
  if (h_spec) {
    const QuadResult r = part(*h_spec);
    out.magnetic = r.value;
    merge_status(out, r);
  }
  out.total = out.electric + out.magnetic;
  return out;
}

AxialSpectrum sphere_pair_d_spectrum(const SpherePair& pair) {
  pair.validate();
  return {[pair](double k, double u) {
            const double f = pair.charge_over_e * sphere_pair_form_factor(pair, k, u);
            return f * f / (k * k);
          },
          [pair](double u) {
            AxialHints h{{1.0 / pair.radius_a}, kPi / pair.radius_a};
            const double du = pair.separation_d * std::abs(u);
            if (du > 0.0) {
              h.k_scales.push_back(1.0 / du);
              h.wavelength = std::min(*h.wavelength, 2.0 * kPi / du);
            }
            return h;
          },
          true};
}

AxialSpectrum loop_h_spectrum(const CurrentLoop& loop) {
  loop.validate();
  const double s2 = loop.scaled_strength() * loop.scaled_strength();
  const double a = loop.radius_a;
  return {[s2, a](double k, double u) {
            const double kp = k * std::sqrt(std::max(0.0, 1.0 - u * u));
            const double j1 = specfun::bessel_j1(a * kp);
            return s2 * j1 * j1 / (2.0 * kPi * k * k);
          },
          [a](double u) {
            const double sin_t = std::sqrt(std::max(0.0, 1.0 - u * u));
            if (sin_t == 0.0) return AxialHints{};
            return AxialHints{{1.0 / (a * sin_t)}, kPi / (a * sin_t)};
          },
          true};
}

AxialSpectrum hydrogen_d_spectrum(const HydrogenAtom& atom) {
  const auto& c = atom.constants;
  return {[atom](double k, double) { return d_spectrum(hydrogen_charge_spectrum(atom, k), k); },
          [c](double) { return AxialHints{{1.0 / c.bohr_b, 1.0 / c.proton_a}, 2.0 * kPi / c.proton_a}; },
          true};
}

AxialSpectrum hydrogen_h_spectrum(const HydrogenAtom& atom) {
  const auto& c = atom.constants;
  return {[atom](double k, double u) {
            return h_spectrum(hydrogen_chi_spectrum_deriv(atom, k), k, u);
          },
          [c](double) { return AxialHints{{1.0 / c.bohr_b, 1.0 / c.proton_a}, 2.0 * kPi / c.proton_a}; },
          true};
}

}  // namespace zeldovich
