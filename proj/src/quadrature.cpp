#include "zeldovich/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <string>
#include <utility>

namespace zeldovich::quad {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct TailMap {
  double origin;
  double scale;
};

struct Panel {
  double a;
  double b;
  bool tail = false;
  double value = 0.0;
  double error = 0.0;
  bool roundoff_limited = false;
};

class Engine {
 public:
  Engine(const Integrand& f, const QuadSpec& spec, std::optional<TailMap> map)
      : f_(f), spec_(spec), map_(map) {}

  double eval(double t, bool tail) {
    ++evaluations_;
    double x = t;
    double jac = 1.0;
    if (tail) {
      const double om = 1.0 - t;
      x = map_->origin + map_->scale * t / om;
      jac = map_->scale / (om * om);
    }
    const double fx = f_(x);
    if (!std::isfinite(fx)) throw NonFiniteIntegrand(x);
    return fx * jac;
  }

  void rule(Panel& p) {
    const double centre = 0.5 * (p.a + p.b);
    const double half = 0.5 * (p.b - p.a);
    const double fc = eval(centre, p.tail);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    double resabs = std::abs(resk);
    std::array<double, 7> f1{}, f2{};
    for (int j = 0; j < 7; ++j) {
      const double dx = half * kXgk[j];
      f1[j] = eval(centre - dx, p.tail);
      f2[j] = eval(centre + dx, p.tail);
      const double sum = f1[j] + f2[j];
      resk += kWgk[j] * sum;
      resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
      if (j % 2 == 1) resg += kWg[j / 2] * sum;
    }
    const double mean = 0.5 * resk;
    double resasc = kWgk[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j)
      resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
    const double scale = std::abs(half);
    p.value = resk * half;
    resabs *= scale;
    resasc *= scale;
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double floor = 50.0 * kEps * resabs;
    p.roundoff_limited = err <= floor;
    p.error = std::max(err, floor);
  }

  QuadResult run(std::vector<Panel> panels) {
    for (auto& p : panels) rule(p);
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item> heap;
    for (std::size_t i = 0; i < panels.size(); ++i)
      if (!panels[i].roundoff_limited) heap.emplace(panels[i].error, i);

    auto totals = [&panels] {
      double v = 0.0, e = 0.0;
      for (const auto& p : panels) {
        v += p.value;
        e += p.error;
      }
      return std::pair{v, e};
    };
    auto [value, error] = totals();
    bool width_limited = false;
    std::size_t iter = 0;
    while (error > tolerance(value)) {
      if (heap.empty() || panels.size() >= spec_.max_subdivisions) break;
      const std::size_t idx = heap.top().second;
      heap.pop();
      Panel& p = panels[idx];
      const double mid = 0.5 * (p.a + p.b);
      if (!(mid > p.a && mid < p.b) || (p.tail && mid >= 1.0)) {
        width_limited = true;
        continue;
      }
      Panel right{mid, p.b, p.tail};
      Panel left{p.a, mid, p.tail};
      rule(left);
      rule(right);
      value += left.value + right.value - p.value;
      error += left.error + right.error - p.error;
      p = left;
      panels.push_back(right);
      if (!panels[idx].roundoff_limited) heap.emplace(panels[idx].error, idx);
      if (!panels.back().roundoff_limited) heap.emplace(panels.back().error, panels.size() - 1);
      if (++iter % 512 == 0) std::tie(value, error) = totals();
    }

    // Fixed summation order makes the result independent of refinement history.
    std::sort(panels.begin(), panels.end(), [](const Panel& l, const Panel& r) {
      return l.tail != r.tail ? !l.tail : l.a < r.a;
    });
    double sum = 0.0, comp = 0.0, err_sum = 0.0, refinable_err = 0.0;
    for (const auto& p : panels) {
      const double t = sum + p.value;
      comp += std::abs(sum) >= std::abs(p.value) ? (sum - t) + p.value : (p.value - t) + sum;
      sum = t;
      err_sum += p.error;
      if (!p.roundoff_limited) refinable_err += p.error;
    }
    QuadResult out;
    out.value = sum + comp;
    out.abs_error_estimate = err_sum;
    out.evaluations = evaluations_;
    out.subdivisions = panels.size();
    const bool ok = err_sum <= tolerance(out.value) ||
                    (!width_limited && heap.empty() && refinable_err <= tolerance(out.value));
    out.status = ok ? QuadStatus::converged : QuadStatus::non_convergence;
    return out;
  }

  double tolerance(double value) const {
    return std::max(spec_.abs_tol, spec_.rel_tol * std::abs(value));
  }

 private:
  const Integrand& f_;
  const QuadSpec& spec_;
  std::optional<TailMap> map_;
  std::size_t evaluations_ = 0;
};

// Finite [lo, hi] cut at breakpoints and, if requested, into half-wavelength pieces.
std::vector<Panel> finite_panels(double lo, double hi, const QuadSpec& spec) {
  std::vector<double> pts{lo};
  for (double bp : spec.breakpoints)
    if (bp > lo && bp < hi) pts.push_back(bp);
  pts.push_back(hi);
  std::vector<Panel> panels;
  const std::size_t budget = std::max<std::size_t>(spec.max_subdivisions / 4, 1);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    std::size_t pieces = 1;
    if (spec.oscillation_wavelength) {
      const double n = std::ceil((pts[i + 1] - pts[i]) / (0.5 * *spec.oscillation_wavelength));
      pieces = static_cast<std::size_t>(std::clamp(n, 1.0, static_cast<double>(budget)));
    }
    const double w = (pts[i + 1] - pts[i]) / static_cast<double>(pieces);
    for (std::size_t k = 0; k < pieces; ++k) {
      const double a = pts[i] + w * static_cast<double>(k);
      const double b = k + 1 == pieces ? pts[i + 1] : a + w;
      panels.push_back({a, b});
    }
  }
  return panels;
}

QuadResult finite(const Integrand& f, double lo, double hi, const QuadSpec& spec) {
  Engine engine(f, spec, std::nullopt);
  return engine.run(finite_panels(lo, hi, spec));
}

double last_finite_point(double lo, const QuadSpec& spec) {
  double last = lo;
  for (double bp : spec.breakpoints)
    if (bp > last) last = bp;
  return last;
}

QuadResult mapped_tail(const Integrand& f, double lo, const QuadSpec& spec) {
  const double last = last_finite_point(lo, spec);
  double scale = spec.tail_scale.value_or(last - lo);
  if (!(scale > 0.0)) scale = 1.0;
  Engine engine(f, spec, TailMap{last, scale});
  auto panels = last > lo ? finite_panels(lo, last, spec) : std::vector<Panel>{};
  panels.push_back({0.0, 1.0, true});
  return engine.run(std::move(panels));
}

// Iterated Aitken delta-squared on a sequence whose error decays geometrically
// with an unknown ratio. Returns the last two values of the deepest full column.
std::pair<double, double> aitken(std::vector<double> s) {
  std::vector<double> prev_col = s;
  while (s.size() >= 4) {
    std::vector<double> next;
    for (std::size_t i = 0; i + 2 < s.size(); ++i) {
      const double d1 = s[i + 1] - s[i];
      const double d2 = s[i + 2] - s[i + 1];
      const double den = d2 - d1;
      next.push_back(den == 0.0 ? s[i + 2] : s[i + 2] - d2 * d2 / den);
    }
    prev_col = s;
    s = std::move(next);
  }
  if (s.size() >= 2) return {s[s.size() - 2], s.back()};
  return {prev_col[prev_col.size() - 2], prev_col.back()};
}

// Semi-infinite oscillatory integrand: partial integrals up to cutoffs at
// whole multiples of the wavelength, doubled each step. The tail is
// extrapolated by Richardson in 1/X (integer-power decay) and, as a second
// estimate, by iterated Aitken (any power); the first to settle is taken.
QuadResult oscillatory_tail(const Integrand& f, double lo, const QuadSpec& spec) {
  const double lambda = *spec.oscillation_wavelength;
  const double last = last_finite_point(lo, spec);
  double cutoff = std::ceil((last + 16.0 * lambda) / lambda) * lambda;
  constexpr int kMaxDoublings = 14;
  constexpr int kMaxOrder = 4;
  constexpr int kMinAitkenSums = 7;

  QuadResult out = finite(f, lo, cutoff, spec);
  std::vector<std::vector<double>> table{{out.value}};
  std::vector<double> partial{out.value};
  double quad_err = out.abs_error_estimate;
  bool inner_ok = out.converged();
  double estimate = out.value;
  double prev_estimate = out.value;

  auto finish = [&](double value, double extrapolation_err, bool ok) {
    out.value = value;
    out.abs_error_estimate = quad_err + extrapolation_err;
    out.status = ok && inner_ok ? QuadStatus::converged : QuadStatus::non_convergence;
    return out;
  };

  for (int j = 1; j <= kMaxDoublings; ++j) {
    QuadSpec piece = spec;
    piece.breakpoints.clear();
    const QuadResult step = finite(f, cutoff, 2.0 * cutoff, piece);
    cutoff *= 2.0;
    out.evaluations += step.evaluations;
    out.subdivisions += step.subdivisions;
    quad_err += step.abs_error_estimate;
    inner_ok = inner_ok && step.converged();

    std::vector<double> row{table.back()[0] + step.value};
    partial.push_back(row[0]);
    const int order = std::min(j, kMaxOrder);
    for (int m = 1; m <= order; ++m) {
      const double pow2 = std::ldexp(1.0, m);
      row.push_back(row[m - 1] + (row[m - 1] - table.back()[m - 1]) / (pow2 - 1.0));
    }
    table.push_back(row);
    prev_estimate = estimate;
    estimate = row[order];
    const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(estimate));
    // The raw partial sums have already settled: no extrapolation needed.
    if (std::abs(step.value) <= 0.25 * tol && j >= 2) return finish(row[0], std::abs(step.value), true);
    if (j >= 3 && std::abs(estimate - prev_estimate) <= tol)
      return finish(estimate, std::abs(estimate - prev_estimate), true);
    if (static_cast<int>(partial.size()) >= kMinAitkenSums) {
      const auto [a_prev, a_last] = aitken(partial);
      if (std::abs(a_last - a_prev) <= tol) return finish(a_last, std::abs(a_last - a_prev), true);
    }
  }
  return finish(estimate, std::abs(estimate - prev_estimate), false);
}

}  // namespace

NonFiniteIntegrand::NonFiniteIntegrand(double at)
    : std::runtime_error("integrand is not finite at x = " + std::to_string(at)), where(at) {}

void QuadSpec::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
    throw std::invalid_argument("QuadSpec: tolerances must be positive");
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    if (!std::isfinite(breakpoints[i]))
      throw std::invalid_argument("QuadSpec: breakpoints must be finite");
    if (i > 0 && !(breakpoints[i] > breakpoints[i - 1]))
      throw std::invalid_argument("QuadSpec: breakpoints must be strictly increasing");
  }
  if (oscillation_wavelength && !(*oscillation_wavelength > 0.0))
    throw std::invalid_argument("QuadSpec: oscillation wavelength must be positive");
  if (tail_scale && !(*tail_scale > 0.0))
    throw std::invalid_argument("QuadSpec: tail scale must be positive");
  if (max_subdivisions == 0) throw std::invalid_argument("QuadSpec: max_subdivisions must be >= 1");
}

QuadResult integrate(const Integrand& f, double lo, double hi, const QuadSpec& spec) {
  spec.validate();
  if (!std::isfinite(lo) || std::isnan(hi) || hi == -kInfinity)
    throw std::invalid_argument("integrate: lower limit must be finite, upper finite or +inf");
  if (hi == lo) return {};
  if (std::isfinite(hi)) {
    if (hi < lo) {
      QuadResult r = finite(f, hi, lo, spec);
      r.value = -r.value;
      return r;
    }
    return finite(f, lo, hi, spec);
  }
  if (spec.oscillation_wavelength) return oscillatory_tail(f, lo, spec);
  return mapped_tail(f, lo, spec);
}

QuadResult integrate_double_radial(const std::function<double(double, double)>& g, double r,
                                   const QuadSpec& spec) {
  spec.validate();
  if (!(r >= 0.0)) throw std::invalid_argument("integrate_double_radial: r must be >= 0");
  QuadSpec inner = spec;
  inner.rel_tol = spec.rel_tol * 0.1;
  inner.oscillation_wavelength.reset();
  inner.tail_scale.reset();
  std::size_t inner_evals = 0;
  bool inner_ok = true;
  auto outer = [&](double v) {
    if (v == 0.0) return 0.0;
    QuadSpec local = inner;
    std::erase_if(local.breakpoints, [v](double bp) { return !(bp > 0.0 && bp < v); });
    const QuadResult q = finite([&](double u) { return g(v, u); }, 0.0, v, local);
    inner_evals += q.evaluations;
    inner_ok = inner_ok && q.converged();
    return q.value;
  };
  QuadSpec outer_spec = spec;
  std::erase_if(outer_spec.breakpoints, [r](double bp) { return !(bp > r); });
  QuadResult out = integrate(outer, r, kInfinity, outer_spec);
  out.evaluations += inner_evals;
  if (!inner_ok) out.status = QuadStatus::non_convergence;
  return out;
}

double roundoff_floor(const Integrand& f, double lo, double hi, const QuadSpec& spec) {
  QuadSpec coarse = spec;
  coarse.rel_tol = 1e-3;
  coarse.abs_tol = 1e-300;
  coarse.max_subdivisions = 20'000;
  const double l1 = integrate([&f](double x) { return std::abs(f(x)); }, lo, hi, coarse).value;
  return std::max(spec.abs_tol, 1e-13 * l1);
}

}  // namespace zeldovich::quad
