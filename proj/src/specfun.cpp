#include "hallgh/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hallgh {

OrderAlpha::OrderAlpha(double alpha) : alpha_(alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw std::domain_error("order alpha must lie in [0, 1), got " +
                            std::to_string(alpha));
  }
}

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoef = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// Valid for x >= 1/2.
double lanczos_log_gamma(double x) {
  const double xm1 = x - 1.0;
  double series = kLanczosCoef[0];
  for (std::size_t k = 1; k < kLanczosCoef.size(); ++k) {
    series += kLanczosCoef[k] / (xm1 + static_cast<double>(k));
  }
  const double t = xm1 + kLanczosG + 0.5;
  constexpr double half_log_two_pi = 0.91893853320467274178;
  return half_log_two_pi + (xm1 + 0.5) * std::log(t) - t + std::log(series);
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::domain_error("log_gamma requires a finite x > 0");
  }
  double shift = 0.0;
  while (x < 0.5) {
    shift += std::log(x);
    x += 1.0;
  }
  return lanczos_log_gamma(x) - shift;
}

double beta_fn(double x, double y) {
  if (!(x > 0.0) || !(y > 0.0)) {
    throw std::domain_error("beta_fn requires x > 0 and y > 0");
  }
  return std::exp(log_gamma(x) + log_gamma(y) - log_gamma(x + y));
}

double hall_constant(OrderAlpha order) {
  const double a = order.alpha();
  return std::exp(log_gamma(0.5) + log_gamma(2.0 - a) - log_gamma(1.5 - a));
}

double hall_crude_bound(OrderAlpha order) {
  const double a = order.alpha();
  return 1.0 + (1.0 - a) * std::pow(std::log(4.0), a);
}

}  // namespace hallgh
