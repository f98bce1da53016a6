#include "zeldovich/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "zeldovich/specfun.hpp"

namespace zeldovich {

namespace {

constexpr double kPi = std::numbers::pi;
const double kNorm = std::pow(2.0 * kPi, -1.5);

// Uniform double in (0, 1) from the raw 64-bit stream, identical on every platform.
double uniform(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

Vec3 random_direction(std::mt19937_64& rng) {
  const double u = 2.0 * uniform(rng) - 1.0;
  const double phi = 2.0 * kPi * uniform(rng);
  const double s = std::sqrt(std::max(0.0, 1.0 - u * u));
  return {s * std::cos(phi), s * std::sin(phi), u};
}

// Radial sample from r^2 / (r^2 + l^2)^2: r = l tan(t) with CDF (2t - sin 2t) / pi.
double sample_radius(std::mt19937_64& rng, double ell) {
  const double target = kPi * uniform(rng);
  double lo = 0.0, hi = 0.5 * kPi;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (2.0 * mid - std::sin(2.0 * mid) < target ? lo : hi) = mid;
  }
  return ell * std::tan(0.5 * (lo + hi));
}

struct ScaleMixture {
  double l1, l2;

  double sample(std::mt19937_64& rng) const {
    const double ell = l1 == l2 ? l1 : l1 * std::pow(l2 / l1, uniform(rng));
    return sample_radius(rng, ell);
  }

  // 3-D density of a point at distance r from the origin.
  double density(double r) const {
    if (l1 == l2) {
      const double d = r * r + l1 * l1;
      return l1 / (kPi * kPi * d * d);
    }
    double g;
    if (r < 1e-3 * l1) {
      auto p = [](double l, int n) { return std::pow(l, -n); };
      g = (p(l1, 3) - p(l2, 3)) / 3.0 - 0.4 * r * r * (p(l1, 5) - p(l2, 5));
    } else {
      auto F = [r](double l) {
        return l / (2.0 * r * r * (r * r + l * l)) + std::atan(l / r) / (2.0 * r * r * r);
      };
      g = F(l2) - F(l1);
    }
    return g / (kPi * kPi * std::log(l2 / l1));
  }
};

// Displacement law around a point at distance ell from the origin.
double displacement_density(double delta, double ell) {
  return ell / (4.0 * kPi * delta * delta * (delta + ell) * (delta + ell));
}

}  // namespace

KernelCheck kernel_identity_check(double separation, double cutoff_k) {
  if (!(separation > 0.0)) throw std::invalid_argument("kernel_identity_check: separation must be > 0");
  if (!(cutoff_k * separation >= 10.0))
    throw std::invalid_argument("kernel_identity_check: cutoff must exceed 10 / separation");
  const double pref = 4.0 * kPi / (8.0 * kPi * kPi * kPi * separation);
  const double eps_min = 40.0 / cutoff_k;
  quad::QuadSpec spec;
  spec.rel_tol = 1e-12;
  spec.abs_tol = 1e-300;
  spec.oscillation_wavelength = 2.0 * kPi / separation;
  constexpr int kLevels = 4;
  std::vector<double> row;
  quad::QuadStatus status = quad::QuadStatus::converged;
  for (int m = kLevels - 1; m >= 0; --m) {
    const double eps = eps_min * std::ldexp(1.0, m);
    const auto r = quad::integrate(
        [&](double k) { return std::sin(k * separation) * std::exp(-eps * k); }, 0.0, cutoff_k, spec);
    if (!r.converged()) status = quad::QuadStatus::non_convergence;
    row.push_back(pref * r.value);
  }
  // Richardson in eps^2 (the regulated value is even in eps).
  for (int level = 1; level < kLevels; ++level) {
    const double f = std::pow(4.0, level);
    for (int i = kLevels - 1; i >= level; --i) row[i] = row[i] + (row[i] - row[i - 1]) / (f - 1.0);
  }
  return {row.back(), 1.0 / (2.0 * kPi * kPi * separation * separation), status};
}

void McSpec::validate() const {
  if (samples < 1000) throw std::invalid_argument("McSpec: at least 1000 samples required");
  if (!(importance_scale > 0.0)) throw std::invalid_argument("McSpec: importance scale must be > 0");
  if (min_scale < 0.0 || min_scale > importance_scale)
    throw std::invalid_argument("McSpec: min_scale must lie in [0, importance_scale]");
  if (batches < 2 || batches > samples) throw std::invalid_argument("McSpec: bad batch count");
}

McEstimate nz_position_space(const FieldSampler& field, const McSpec& mc) {
  mc.validate();
  const double alpha = PhysConst{}.alpha;
  const ScaleMixture mix{mc.min_scale > 0.0 ? mc.min_scale : mc.importance_scale,
                         mc.importance_scale};
  std::mt19937_64 rng(mc.seed);
  std::vector<double> batch_sum(mc.batches, 0.0);
  std::vector<std::int64_t> batch_n(mc.batches, 0);
  for (std::int64_t i = 0; i < mc.samples; ++i) {
    const double r1 = mix.sample(rng);
    const Vec3 p1 = r1 * random_direction(rng);
    Vec3 p2;
    if (uniform(rng) < 0.5) {
      p2 = mix.sample(rng) * random_direction(rng);
    } else {
      const double u = uniform(rng);
      p2 = p1 + (r1 * u / (1.0 - u)) * random_direction(rng);
    }
    const Vec3 diff = p2 - p1;
    const double delta2 = dot(diff, diff);
    double x = 0.0;
    if (delta2 > 0.0) {
      const auto [d1, h1] = field(p1);
      const auto [d2, h2] = field(p2);
      const double num = dot(d1, d2) + dot(h1, h2);
      if (!std::isfinite(num)) throw quad::NonFiniteIntegrand(norm(p1));
      if (num != 0.0) {
        const double m = 0.5 * mix.density(norm(p2)) +
                         0.5 * displacement_density(std::sqrt(delta2), r1);
        x = alpha / kPi * num / delta2 / (mix.density(r1) * m);
      }
    }
    const auto b = static_cast<std::size_t>(i % mc.batches);
    batch_sum[b] += x;
    ++batch_n[b];
  }
  double total = 0.0;
  std::vector<double> means(mc.batches);
  for (int b = 0; b < mc.batches; ++b) {
    means[b] = batch_sum[b] / static_cast<double>(batch_n[b]);
    total += batch_sum[b];
  }
  const double mean = total / static_cast<double>(mc.samples);
  double var = 0.0;
  for (double m : means) var += (m - mean) * (m - mean);
  var /= (mc.batches - 1);
  return {mean, std::sqrt(var / mc.batches)};
}

std::pair<Vec3, Vec3> loop_fields(const CurrentLoop& loop, const Vec3& position) {
  const double a = loop.radius_a;
  const double c = loop.current_a / (kElementaryCharge * kSpeedOfLight);
  const double x = position[0], y = position[1], z = position[2];
  const double rho = std::hypot(x, y);
  const double sum = a * a + rho * rho + z * z;
  const double al2 = sum - 2.0 * a * rho;
  const double be2 = sum + 2.0 * a * rho;
  const double be = std::sqrt(be2);
  const double k = std::sqrt(std::max(0.0, 1.0 - al2 / be2));
  const double K = std::comp_ellint_1(k);
  const double E = std::comp_ellint_2(k);
  const double hz = c / (2.0 * kPi * al2 * be) * ((a * a - rho * rho - z * z) * E + al2 * K);
  Vec3 h{0.0, 0.0, hz};
  if (rho > 1e-12 * a) {
    const double hr = c * z / (2.0 * kPi * al2 * be * rho) * (sum * E - al2 * K);
    h[0] = hr * x / rho;
    h[1] = hr * y / rho;
  }
  return {{0.0, 0.0, 0.0}, h};
}

std::vector<double> log_grid(double lo, double hi, int n) {
  if (!(lo > 0.0 && hi > lo) || n < 2) throw std::invalid_argument("log_grid: bad range");
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  return g;
}

std::vector<AuditEntry> spectrum_audit(const std::vector<AuditPair>& pairs, double threshold) {
  std::vector<AuditEntry> out;
  for (const auto& p : pairs) {
    AuditEntry e;
    e.name = p.name;
    std::vector<double> values;
    double peak = 0.0;
    for (double k : p.grid) {
      values.push_back(p.analytic(k));
      peak = std::max(peak, std::abs(values.back()));
    }
    for (std::size_t i = 0; i < p.grid.size(); ++i) {
      if (std::abs(values[i]) <= 1e-12 * peak) continue;
      const double dev = std::abs(p.numeric(p.grid[i]) - values[i]) / std::abs(values[i]);
      ++e.points_checked;
      if (dev >= e.max_rel_dev) {
        e.max_rel_dev = dev;
        e.worst_k = p.grid[i];
      }
    }
    e.passed = e.points_checked > 0 && e.max_rel_dev <= threshold;
    out.push_back(e);
  }
  return out;
}

quad::QuadResult radial_fourier_deriv(const RadialFunction& f, double k, double rel_tol) {
  if (!(k > 0.0)) throw std::domain_error("radial_fourier_deriv: requires k > 0");
  quad::QuadSpec spec;
  spec.rel_tol = rel_tol;
  spec.abs_tol = 1e-300;
  spec.oscillation_wavelength = 2.0 * kPi / k;
  for (double bp : f.breakpoints)
    if (bp > 0.0 && bp < f.extent) spec.breakpoints.push_back(bp);
  auto integrand = [&](double r) {
    if (r <= 0.0) return 0.0;
    // d/dk [sin(kr)/k] = (x cos x - sin x) / k^2 = -k r^3 ball_factor(x) / 3
    return -r * r * r * r * k * ball_factor(k * r) / 3.0 * f.f(r);
  };
  spec.abs_tol = quad::roundoff_floor(integrand, 0.0, f.extent, spec);
  quad::QuadResult out = quad::integrate(integrand, 0.0, f.extent, spec);
  const double pref = std::sqrt(2.0 / kPi);
  out.value *= pref;
  out.abs_error_estimate *= pref;
  return out;
}

namespace {

std::function<double(double)> numeric_transform(RadialFunction f) {
  return [f = std::move(f)](double k) { return radial_fourier(f, k).value; };
}

std::function<double(double)> numeric_transform_deriv(RadialFunction f) {
  return [f = std::move(f)](double k) { return radial_fourier_deriv(f, k).value; };
}

// Sphere-pair transform by direct integration over both charged surfaces.
double sphere_pair_numeric(const SpherePair& pair, double k, double u) {
  const double kx = k * std::sqrt(1.0 - u * u);
  const double kz = k * u;
  const double a = pair.radius_a;
  const double h = 0.5 * pair.separation_d;
  quad::QuadSpec inner;
  inner.rel_tol = 1e-11;
  inner.abs_tol = 1e-14;
  inner.oscillation_wavelength = 2.0 * kPi / std::max(k * a, 1.0);
  auto over_phi = [&](double phi) {
    const double cphi = std::cos(phi);
    const auto r = quad::integrate(
        [&](double ct) {
          const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
          const double base = a * (kx * st * cphi + kz * ct);
          return std::sin(base + kz * h) - std::sin(base - kz * h);
        },
        -1.0, 1.0, inner);
    return r.value;
  };
  quad::QuadSpec outer = inner;
  outer.rel_tol = 1e-10;
  outer.abs_tol = 1e-13;
  const auto r = quad::integrate(over_phi, 0.0, 2.0 * kPi, outer);
  return kNorm * pair.charge_over_e * r.value / (4.0 * kPi);
}

// Loop transform by integrating the filament current around the ring.
double loop_numeric(const CurrentLoop& loop, double k_perp) {
  const double x = k_perp * loop.radius_a;
  quad::QuadSpec spec;
  spec.rel_tol = 1e-13;
  spec.abs_tol = 1e-300;
  spec.oscillation_wavelength = 2.0 * kPi / std::max(x, 1.0);
  const auto r = quad::integrate(
      [x](double phi) { return std::cos(phi) * std::sin(x * std::cos(phi)); }, 0.0, 2.0 * kPi, spec);
  return kNorm * loop.current_a * loop.radius_a * r.value / k_perp;
}

RadialFunction shell_function(const NobleGasAtom& atom, const Shell& sh) {
  const double beta = 2.0 * atom.Z / (sh.n * atom.bohr_b);
  std::vector<double> bps;
  for (double m : {0.5, 1.0, 2.0 * sh.n, 4.0 * sh.n}) bps.push_back(m / beta);
  return {[atom, sh](double r) { return shell_density(atom, sh, r); }, bps,
          (80.0 + 12.0 * sh.n) / beta};
}

}  // namespace

std::vector<AuditPair> standard_audit_pairs(const PhysConst& c, bool include_atoms) {
  std::vector<AuditPair> out;
  const HydrogenAtom atom = HydrogenAtom::dirac(c);
  const double a = c.proton_a;
  const double b = c.bohr_b;
  const auto grid_b = log_grid(1e-2 / b, 1e2 / b, 30);
  const auto grid_p = log_grid(1e-2 / b, 10.0 / a, 30);
  const std::vector<double> ebps{a, 0.1 * b, b, 5.0 * b, 20.0 * b};
  const double eext = 80.0 * b;

  const RadialFunction rho_p{[c](double r) { return proton_density(c, r); }, {}, a};
  const RadialFunction rho_e{[atom](double r) { return electron_density(atom, r); }, ebps, eext};
  const RadialFunction rho{[atom](double r) { return charge_density(atom, r); }, ebps, eext};
  const RadialFunction chi_p{[c](double r) { return proton_current_prefactor(c, r); }, {}, a};
  const RadialFunction chi_e{[atom](double r) { return electron_current_prefactor(atom, r); }, ebps,
                             eext};
  const RadialFunction chi{[atom](double r) { return current_chi(atom, r); }, ebps, eext};

  auto fn = [atom](double (*f)(const HydrogenAtom&, double)) {
    return [atom, f](double k) { return f(atom, k); };
  };
  using Spec = double (*)(const HydrogenAtom&, double);
  out.push_back({"hydrogen_charge", fn(static_cast<Spec>(hydrogen_charge_spectrum)),
                 numeric_transform(rho), grid_b});
  out.push_back({"proton_charge", fn(proton_charge_spectrum), numeric_transform(rho_p), grid_p});
  out.push_back({"electron_charge", fn(electron_charge_spectrum), numeric_transform(rho_e), grid_b});
  out.push_back({"hydrogen_chi", fn(static_cast<Spec>(hydrogen_chi_spectrum)),
                 numeric_transform(chi), grid_b});
  out.push_back({"proton_chi", fn(proton_chi_spectrum), numeric_transform(chi_p), grid_p});
  out.push_back({"electron_chi", fn(electron_chi_spectrum), numeric_transform(chi_e), grid_b});
  out.push_back({"hydrogen_chi_deriv", fn(hydrogen_chi_spectrum_deriv),
                 numeric_transform_deriv(chi), grid_b});
  out.push_back({"proton_chi_deriv", fn(proton_chi_spectrum_deriv), numeric_transform_deriv(chi_p),
                 grid_p});
  out.push_back({"electron_chi_deriv", fn(electron_chi_spectrum_deriv),
                 numeric_transform_deriv(chi_e), grid_b});

  const SpherePair pair{1.0, 3.0, 1.0};
  const auto grid_a = log_grid(1e-2, 1e2, 30);
  out.push_back({"sphere_pair", [pair](double k) { return sphere_pair_form_factor(pair, k, 0.6); },
                 [pair](double k) { return sphere_pair_numeric(pair, k, 0.6); }, grid_a});
  const CurrentLoop loop{1.0, 1.0};
  out.push_back({"loop_current", [loop](double k) { return loop_current_spectrum(loop, k); },
                 [loop](double k) { return loop_numeric(loop, k); }, grid_a});

  if (!include_atoms) return out;
  for (const auto& sym : noble_gas_symbols()) {
    const NobleGasAtom ng = noble_gas(sym);
    const auto grid = log_grid(1e-2 / ng.bohr_b, 1e2 / ng.bohr_b, 30);
    for (const auto& sh : ng.shells) {
      const ShellTransform t(ng, sh);
      out.push_back({sym + "_" + std::to_string(sh.n) + "_" + std::to_string(sh.l),
                     [t](double k) { return t(k); }, numeric_transform(shell_function(ng, sh)), grid});
    }
  }
  const NobleGasAtom xe = noble_gas("Xe");
  std::vector<double> bps{xe.nucleus_radius()};
  double ext = 0.0;
  for (const auto& sh : xe.shells) {
    const RadialFunction f = shell_function(xe, sh);
    bps.insert(bps.end(), f.breakpoints.begin(), f.breakpoints.end());
    ext = std::max(ext, f.extent);
  }
  std::sort(bps.begin(), bps.end());
  bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
  const RadialFunction xe_rho{
      [xe](double r) { return nucleus_density(xe, r) - electron_cloud_density(xe, r); }, bps, ext};
  const RadialSpectrum xe_spec = atom_charge_spectrum(xe);
  out.push_back({"Xe_charge", [xe_spec](double k) { return xe_spec(k); }, numeric_transform(xe_rho),
                 log_grid(1e-2 / xe.bohr_b, 1e2 / xe.bohr_b, 30)});
  return out;
}

}  // namespace zeldovich
