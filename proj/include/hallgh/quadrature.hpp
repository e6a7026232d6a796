#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>

namespace hallgh {

struct QuadResult {
  double value = 0.0;
  double err_estimate = 0.0;
  std::size_t evals = 0;
  /// Set by integrate_halfline when w|f(w)| does not shrink far out, i.e.
  /// the integral may diverge.
  bool divergence_warning = false;
};

/// Algebraic endpoint behaviour: f ~ (u - a)^left_exponent near a and
/// f ~ (b - u)^right_exponent near b. Zero means regular. Positive exponents
/// are allowed and also get a smoothing substitution.
struct SingularitySpec {
  double left_exponent = 0.0;
  double right_exponent = 0.0;
};

struct QuadOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  std::size_t max_evals = 1'000'000;

  static QuadOptions with_tol(double abs_tol, double rel_tol = 1e-9) {
    QuadOptions o;
    o.abs_tol = abs_tol;
    o.rel_tol = rel_tol;
    return o;
  }
};

/// Thrown when the evaluation budget runs out before the tolerance is met,
/// or when the remaining error sits on panels too small to bisect.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, QuadResult partial)
      : std::runtime_error(what), partial_(partial) {}
  const QuadResult& partial() const noexcept { return partial_; }

 private:
  QuadResult partial_;
};

using Integrand = std::function<double(double)>;
/// Evaluates f at every x[i] into y[i]; x and y have the same length.
using BatchIntegrand =
    std::function<void(std::span<const double> x, std::span<double> y)>;

/// Adaptive Gauss-Kronrod (10/21) integration of f over [a, b].
///
/// Endpoint singularities are removed by u = a + h * sigma^(1/(1+e)) on the
/// left half (mirrored on the right half). Optional breakpoints in (a, b) seed
/// the initial panels, which is how callers point the engine at narrow
/// features it would otherwise step over. Refinement stops when the summed
/// error meets the tolerance, or when it is within twice the summed rounding
/// level 50 eps |f| of the panels, which bisection cannot reduce; the
/// returned err_estimate then exceeds the requested tolerance.
QuadResult integrate_finite(const Integrand& f, double a, double b,
                            SingularitySpec sing = {},
                            const QuadOptions& opts = {},
                            std::span<const double> breakpoints = {});

QuadResult integrate_finite_batch(const BatchIntegrand& f, double a, double b,
                                  SingularitySpec sing = {},
                                  const QuadOptions& opts = {},
                                  std::span<const double> breakpoints = {});

/// Integral of f over (0, inf) through w = v / (1 - v).
///
/// sing0 is the exponent of f at 0; decay_exponent is the assumed power-law
/// decay of f at infinity (must be < -1) and becomes the algebraic exponent
/// -decay_exponent - 2 at v = 1. Breakpoints are given in w.
QuadResult integrate_halfline(const Integrand& f, double sing0,
                              const QuadOptions& opts = {},
                              std::span<const double> breakpoints = {},
                              double decay_exponent = -1.5);

QuadResult integrate_halfline_batch(const BatchIntegrand& f, double sing0,
                                    const QuadOptions& opts = {},
                                    std::span<const double> breakpoints = {},
                                    double decay_exponent = -1.5);

/// Integrand of integrate_halfline after the compactifying map, as a function
/// of v in [0, 1): f(v / (1 - v)) / (1 - v)^2.
double halfline_transformed(const Integrand& f, double v);

namespace gk21 {
/// Kronrod abscissae on [0, 1] (the rule is symmetric), descending; the last
/// entry is the centre. Odd indices are the Gauss points.
std::span<const double> kronrod_nodes();
std::span<const double> kronrod_weights();
/// Weights of the embedded 10-point Gauss rule at kronrod_nodes()[1,3,...,9].
std::span<const double> gauss_weights();
}  // namespace gk21

}  // namespace hallgh
