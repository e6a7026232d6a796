#pragma once

namespace hallgh {

/// Order parameter of the class S*(alpha), 0 <= alpha < 1.
///
/// The companion parameter gamma = 1 - 2*alpha is always derived from alpha
/// and never stored on its own.
class OrderAlpha {
 public:
  /// Throws std::domain_error unless 0 <= alpha < 1.
  explicit OrderAlpha(double alpha);

  double alpha() const noexcept { return alpha_; }
  double gamma() const noexcept { return 1.0 - 2.0 * alpha_; }

  friend bool operator==(const OrderAlpha&, const OrderAlpha&) = default;

 private:
  double alpha_;
};

/// ln Gamma(x) for x > 0 (Lanczos, g = 7, nine terms).
double log_gamma(double x);

/// Euler beta function B(x, y) = Gamma(x) Gamma(y) / Gamma(x + y).
double beta_fn(double x, double y);

/// Sharp Gehring-Hayman constant Gamma(1/2) Gamma(2 - alpha) / Gamma(3/2 - alpha).
double hall_constant(OrderAlpha order);

/// The non-sharp bound 1 + (1 - alpha) (ln 4)^alpha.
double hall_crude_bound(OrderAlpha order);

}  // namespace hallgh
