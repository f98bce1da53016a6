#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

namespace zeldovich::quad {

using Integrand = std::function<double(double)>;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Integration controls. Breakpoints are honored exactly: no panel straddles
/// one. When oscillation_wavelength is set every initial panel is at most half
/// a wavelength wide, and a semi-infinite range is summed over
/// wavelength-aligned cutoffs with Richardson extrapolation of the tail.
struct QuadSpec {
  double rel_tol = 1e-9;
  double abs_tol = 1e-14;
  std::vector<double> breakpoints;
  std::optional<double> oscillation_wavelength;
  std::size_t max_subdivisions = 1'000'000;
  // Scale c of the tail map x = x0 + c t / (1 - t). Defaults to the distance
  // from the lower limit to the last finite point, or 1 when that is zero.
  std::optional<double> tail_scale;

  void validate() const;
};

enum class QuadStatus { converged, non_convergence };

struct QuadResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  std::size_t evaluations = 0;
  std::size_t subdivisions = 0;
  QuadStatus status = QuadStatus::converged;

  [[nodiscard]] bool converged() const { return status == QuadStatus::converged; }
};

/// Thrown when the integrand returns NaN or an infinity inside the domain.
class NonFiniteIntegrand : public std::runtime_error {
 public:
  explicit NonFiniteIntegrand(double at);
  double where;
};

/// Adaptive Gauss-Kronrod (7/15) integration of f over [lo, hi]; hi may be
/// kInfinity. Non-convergence is reported through QuadResult::status with the
/// best available estimate.
QuadResult integrate(const Integrand& f, double lo, double hi, const QuadSpec& spec = {});

/// Absolute tolerance at the summation roundoff level of f over [lo, hi]:
/// 1e-13 times a coarse estimate of the integral of |f|, never below spec.abs_tol.
double roundoff_floor(const Integrand& f, double lo, double hi, const QuadSpec& spec);

/// int_r^inf dv int_0^v du g(v, u), inner integral restricted to the
/// breakpoints of `spec` that fall inside (0, v).
QuadResult integrate_double_radial(const std::function<double(double, double)>& g, double r,
                                   const QuadSpec& spec);

}  // namespace zeldovich::quad
