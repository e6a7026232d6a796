#include "hallgh/hall.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "hallgh/parallel.hpp"
#include "hallgh/starlike.hpp"

namespace hallgh {

namespace {

constexpr double kPi = std::numbers::pi;

void check_gamma(double gamma) {
  if (!(gamma > -1.0 && gamma <= 1.0)) {
    throw std::domain_error("gamma must lie in (-1, 1]");
  }
}

void check_chord(double X, const char* name) {
  if (!(X > 0.0 && X <= 4.0)) {
    throw std::domain_error(std::string(name) + " must lie in (0, 4]");
  }
}

void check_angle(double x, const char* name) {
  if (!(x > 0.0 && x <= kPi)) {
    throw std::domain_error(std::string(name) + " must lie in (0, pi]");
  }
}

// The u-integrands peak within ~sqrt(S) and ~sqrt(T) of u = 1; seed panels
// on a geometric mesh down to those scales.
std::vector<double> graded_toward_one(std::initializer_list<double> widths) {
  std::vector<double> cuts;
  for (double width : widths) {
    if (!(width < 0.25)) continue;
    for (double gap = 0.25 * width; gap < 0.5; gap *= 4.0) cuts.push_back(1.0 - gap);
  }
  return cuts;
}

double quad_u(const Integrand& f, std::initializer_list<double> widths,
              const QuadOptions& opts) {
  const auto cuts = graded_toward_one(widths);
  return integrate_finite(f, 0.0, 1.0, {}, opts, cuts).value;
}

}  // namespace

double squared_chord(double angle) {
  const double h = std::sin(0.5 * angle);
  return 4.0 * h * h;
}

ChordPair ChordPair::from_angles(double s, double t) {
  check_angle(s, "s");
  check_angle(t, "t");
  return {s, t, squared_chord(s), squared_chord(t)};
}

double I_angles(double s, double t, OrderAlpha order, const QuadOptions& opts) {
  check_angle(s, "s");
  check_angle(t, "t");
  const double alpha = order.alpha();
  const double gamma = order.gamma();
  const double cos_t = std::cos(t);
  const double sin_t = std::sin(t);
  const double omc_s = 0.5 * squared_chord(s);  // 1 - cos s
  const double omc_t = 0.5 * squared_chord(t);
  const double lift = (1.0 + gamma) * sin_t;
  auto f = [=](double u) {
    const double v = 1.0 - u;
    const double d_t = v * v + 2.0 * u * omc_t;  // 1 + u^2 - 2u cos t
    const double d_s = v * v + 2.0 * u * omc_s;
    const double root = std::sqrt(1.0 + gamma * gamma * u * u + 2.0 * gamma * u * cos_t);
    const double numer = 1.0 - gamma * u * u - 2.0 * alpha * u * cos_t;
    // root/sqrt(d_t) - numer/d_t with root^2 d_t - numer^2 = ((1+g) u sin t)^2.
    const double lu = lift * u;
    const double bracket = lu * lu / (d_t * (root * std::sqrt(d_t) + numer));
    return bracket * std::pow(2.0 * omc_s / d_s, 1.0 - alpha);
  };
  return quad_u(f, {std::sqrt(2.0 * omc_s), std::sqrt(2.0 * omc_t)}, opts);
}

double I_bracket(double u, double T, double gamma) {
  const double v = 1.0 - u;
  const double d = v * v + T * u;
  const double gu1 = 1.0 + gamma * u;
  const double root = std::sqrt(gu1 * gu1 - gamma * T * u);
  // P = (1+g)/2 (1-u^2) + (1-g)/2 D > 0
  const double p = 0.5 * (1.0 + gamma) * (1.0 - u * u) + 0.5 * (1.0 - gamma) * d;
  const double num = (1.0 + gamma) * (1.0 + gamma) * u * u * T * (1.0 - 0.25 * T);
  return num / (d * (root * std::sqrt(d) + p));
}

double I_st(double S, double T, double gamma, const QuadOptions& opts) {
  check_chord(S, "S");
  check_chord(T, "T");
  check_gamma(gamma);
  const double expo = 0.5 * (1.0 + gamma);
  auto f = [=](double u) {
    const double v = 1.0 - u;
    return std::pow(S / (v * v + S * u), expo) * I_bracket(u, T, gamma);
  };
  return quad_u(f, {std::sqrt(S), std::sqrt(T)}, opts);
}

JK jk_values(double s, double t, OrderAlpha order, const QuadOptions& opts) {
  check_angle(s, "s");
  check_angle(t, "t");
  const double alpha = order.alpha();
  const double gamma = order.gamma();
  const double omc_s = 0.5 * squared_chord(s);
  const double omc_t = 0.5 * squared_chord(t);
  const double cos_t = std::cos(t);
  auto parts = [=](double u, double& j, double& k) {
    const double v = 1.0 - u;
    const double d_t = v * v + 2.0 * u * omc_t;
    const double d_s_pow = std::pow(v * v + 2.0 * u * omc_s, 1.0 - alpha);
    const double gu1 = 1.0 + gamma * u;
    j = std::sqrt(gu1 * gu1 - 2.0 * gamma * u * omc_t) / (std::sqrt(d_t) * d_s_pow);
    k = (1.0 - gamma * u * u - 2.0 * alpha * u * cos_t) / (d_t * d_s_pow);
  };
  const std::initializer_list<double> widths{std::sqrt(2.0 * omc_s), std::sqrt(2.0 * omc_t)};
  JK out;
  out.J = quad_u([&](double u) { double j, k; parts(u, j, k); return j; }, widths, opts);
  out.K = quad_u([&](double u) { double j, k; parts(u, j, k); return k; }, widths, opts);
  return out;
}

double check_pointwise_lemma2(double u, double T, double gamma) {
  if (!(u >= 0.0 && u < 1.0)) throw std::domain_error("u must lie in [0, 1)");
  if (!(T >= 0.0 && T <= 4.0)) throw std::domain_error("T must lie in [0, 4]");
  check_gamma(gamma);
  const double v = 1.0 - u;
  const double root_d = std::sqrt(v * v + T * u);
  const double gu1 = 1.0 + gamma * u;
  const double lhs = std::sqrt(gu1 * gu1 - gamma * T * u) / root_d;
  const double rhs = 0.5 * (1.0 + gamma) * (1.0 + u) / root_d + 0.5 * (1.0 - gamma);
  return rhs - lhs;
}

double phi_lemma2(double T, double u, double b) {
  if (!(b > 0.0 && b < 1.0)) throw std::domain_error("b must lie in (0, 1)");
  const double v = 1.0 - u;
  const double vb = 1.0 - b * u;
  // sqrt(A^2 + x) - A = x / (sqrt(A^2 + x) + A)
  const double first = T * u / (std::sqrt(v * v + T * u) + v);
  const double second = b * T * u / (std::sqrt(vb * vb + b * T * u) + vb);
  return 0.5 * first - second / (1.0 + b);
}

double phi_lemma2_prime(double T, double u, double b) {
  if (!(b > 0.0 && b < 1.0)) throw std::domain_error("b must lie in (0, 1)");
  const double v = 1.0 - u;
  const double vb = 1.0 - b * u;
  return 0.25 * u / std::sqrt(v * v + T * u) -
         b * u / (2.0 * (1.0 + b) * std::sqrt(vb * vb + b * T * u));
}

double G_gamma(double a, double gamma, const QuadOptions& opts) {
  if (!(a > 0.0) || !std::isfinite(a)) throw std::domain_error("a must be positive");
  check_gamma(gamma);
  const double expo = 0.5 * (1.0 + gamma);
  const double inv_a = 1.0 / a;
  auto f = [=](double w) {
    const double sq = std::sqrt(1.0 + w);
    // (sqrt(1+w) - 1)/(1+w) * w^{-(1-g)/2} = w^{(1+g)/2} / ((sqrt(1+w) + 1)(1+w))
    const double tail = std::pow(w, expo) / ((sq + 1.0) * (1.0 + w));
    return (std::pow(a + w, -expo) + std::pow(inv_a + w, -expo)) * tail;
  };
  std::vector<double> cuts;
  if (a != 1.0) cuts = {std::min(a, inv_a), std::max(a, inv_a)};
  return integrate_halfline(f, -0.5 * (1.0 - gamma), opts, cuts).value;
}

double upper_bound_U(double a, double gamma, const QuadOptions& opts) {
  return 0.5 * (1.0 + gamma) * G_gamma(a, gamma, opts);
}

double lemma3_domination(double S, double T, double gamma, const QuadOptions& opts) {
  check_chord(S, "S");
  check_chord(T, "T");
  const double sum = I_st(S, T, gamma, opts) + I_st(T, S, gamma, opts);
  return upper_bound_U(T / S, gamma, opts) - sum;
}

double G1_closed(double a) {
  if (!(a > 0.0 && a < 1.0)) throw std::domain_error("G1_closed requires 0 < a < 1");
  if (1.0 - a < 1e-4) return G_gamma(a, 1.0);
  const double x = std::sqrt(1.0 - a);
  const double root_a = std::sqrt(a);
  const double log_a = a < 0.5 ? std::log(a) : std::log1p(a - 1.0);
  const double arctan_part = 2.0 * (root_a / x) * std::atan(x / root_a);
  // With 1 - x = a / (1 + x): (1/x) log((1+x)/(1-x)) - (1+a)/(1-a) log(1/a)
  //   = (2/x) log(1+x) + log(a) * a (2+x) / ((1+x)(1-a)).
  const double log_part = 2.0 / x * std::log1p(x);
  const double weight = a * (2.0 + x) / ((1.0 + x) * (1.0 - a));
  return arctan_part + log_part + log_a * weight;
}

Lemma4Helpers lemma4_helpers(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw std::domain_error("lemma4_helpers requires x > 0");
  const double b = x;
  const double b2 = b * b;
  const double rb = std::sqrt(1.0 + b2);
  const double ash_b = std::asinh(b);  // log(b + sqrt(1 + b^2))
  const double l1p_b2 = std::log1p(b2);

  const double c = x;
  const double ash_rc = std::asinh(std::sqrt(c));  // log(sqrt c + sqrt(1 + c))
  const double frac = c / (1.0 + c);

  Lemma4Helpers out;
  out.G = 2.0 / b * std::atan(b) + 2.0 * rb / b * ash_b - (2.0 + b2) / b2 * l1p_b2;
  out.g = -std::atan(b) - ash_b / rb + 2.0 / b * l1p_b2;
  out.h = 2.0 * frac + frac * std::sqrt(frac) * ash_rc - 2.0 * std::log1p(c);
  out.k = -std::sqrt(c * (1.0 + c)) + ash_rc;
  return out;
}

double main_bound_rhs(OrderAlpha order, const QuadOptions& opts) {
  const double alpha = order.alpha();
  // [(1+w)^{a-3/2} - (1+w)^{a-2}] w^{-a} = w^{1-a} (1+w)^{a-2} / (sqrt(1+w) + 1)
  auto f = [=](double w) {
    return std::pow(w, 1.0 - alpha) * std::pow(1.0 + w, alpha - 2.0) /
           (std::sqrt(1.0 + w) + 1.0);
  };
  return (1.0 - alpha) * integrate_halfline(f, -alpha, opts).value;
}

double extremal_limit(double T, double gamma, const QuadOptions& opts) {
  check_chord(T, "T");
  check_gamma(gamma);
  const double root_t = std::sqrt(T);
  // w = T u / (1 - u)^2 and q = (1 - u)/sqrt(T) = 2 / (sqrt(T + 4w) + sqrt(T)).
  auto f = [=](double w) {
    const double q = 2.0 / (std::sqrt(T + 4.0 * w) + root_t);
    const double one_minus_u = root_t * q;
    const double u = 1.0 - one_minus_u;
    const double gu1 = 1.0 + gamma * u;
    const double root = std::sqrt(gu1 * gu1 - gamma * T * u);
    return root * std::pow(q, 1.0 - gamma) /
           ((2.0 - one_minus_u) * std::pow(1.0 + w, 1.0 + 0.5 * gamma));
  };
  const std::array<double, 3> cuts{0.25 * T, T, 4.0 * T};
  return integrate_halfline(f, -0.5 * (1.0 - gamma), opts, cuts).value;
}

double extremal_ratio_direct(OrderAlpha order, double r, double theta, const QuadOptions& opts) {
  return gh_ratio(StarlikeMap::extremal(order), r, theta, opts);
}

std::vector<double> main_grid_angles(std::size_t grid_n) {
  std::vector<double> out(grid_n);
  for (std::size_t i = 0; i < grid_n; ++i) {
    out[i] = kPi * static_cast<double>(i + 1) / static_cast<double>(grid_n + 1);
  }
  return out;
}

std::vector<double> corner_angles(std::size_t grid_n) {
  constexpr int kLevels = 8;
  std::vector<double> out;
  double s = kPi / static_cast<double>(grid_n + 1);
  for (int k = 0; k < kLevels; ++k) {
    s *= 0.25;
    out.push_back(s);
  }
  return out;
}

namespace {

std::vector<double> open_grid(std::size_t n, double lo, double hi) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i + 1) / static_cast<double>(n + 1);
  }
  return out;
}

void require_grid(std::size_t n) {
  if (n < 2) throw std::invalid_argument("grid size must be at least 2");
}

}  // namespace

VerificationReport verify_lemma2(std::size_t grid_n, double tol, unsigned workers) {
  require_grid(grid_n);
  const auto us = open_grid(grid_n, 0.0, 1.0);
  const auto ts = open_grid(grid_n, 0.0, 4.0);
  std::vector<double> gammas(grid_n);
  for (std::size_t k = 0; k < grid_n; ++k) {
    gammas[k] = -1.0 + 2.0 * static_cast<double>(k + 1) / static_cast<double>(grid_n);
  }

  std::vector<VerificationReport> slices(grid_n);
  parallel_for(
      grid_n,
      [&](std::size_t k) {
        for (double u : us) {
          for (double T : ts) {
            slices[k].observe(check_pointwise_lemma2(u, T, gammas[k]),
                              {{"u", u}, {"T", T}, {"gamma", gammas[k]}});
          }
        }
      },
      workers);

  VerificationReport report;
  report.suite = "lemma2";
  report.grid = grid_n;
  report.tolerance = tol;
  for (auto& s : slices) report.observe(s.worst_margin, std::move(s.worst_location));
  return report;
}

VerificationReport verify_lemma3(OrderAlpha order, std::size_t grid_n, double tol,
                                 const QuadOptions& opts, unsigned workers) {
  require_grid(grid_n);
  const double gamma = order.gamma();
  const auto chords = open_grid(grid_n, 0.0, 4.0);
  const std::size_t n = grid_n;
  std::vector<double> I(n * n), U(n * n);
  parallel_for(
      n * n,
      [&](std::size_t idx) {
        const double S = chords[idx / n];
        const double T = chords[idx % n];
        I[idx] = I_st(S, T, gamma, opts);
        U[idx] = upper_bound_U(T / S, gamma, opts);
      },
      workers);

  VerificationReport report;
  report.suite = "lemma3";
  report.alpha = order.alpha();
  report.grid = grid_n;
  report.tolerance = tol;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double sum = I[i * n + j] + I[j * n + i];
      report.observe(U[i * n + j] - sum, {{"S", chords[i]}, {"T", chords[j]}});
    }
  }
  return report;
}

VerificationReport verify_lemma4(std::size_t grid_n, double tol, const QuadOptions& opts,
                                 unsigned workers) {
  require_grid(grid_n);
  const auto as = open_grid(grid_n, 0.0, 1.0);
  std::vector<double> g1(grid_n);
  parallel_for(grid_n, [&](std::size_t i) { g1[i] = G1_closed(as[i]); }, workers);

  VerificationReport report;
  report.suite = "lemma4";
  report.grid = grid_n;
  report.tolerance = tol;
  for (std::size_t i = 0; i + 1 < grid_n; ++i) {
    report.observe(g1[i + 1] - g1[i], {{"a_lo", as[i]}, {"a_hi", as[i + 1]}});
  }

  constexpr double kAgreement = 1e-8;
  std::array<double, 9> probe{};
  std::array<double, 9> diff{};
  for (std::size_t i = 0; i < probe.size(); ++i) probe[i] = 0.1 * static_cast<double>(i + 1);
  parallel_for(
      probe.size(),
      [&](std::size_t i) { diff[i] = std::abs(G1_closed(probe[i]) - G_gamma(probe[i], 1.0, opts)); },
      workers);
  double worst_diff = 0.0;
  for (std::size_t i = 0; i < probe.size(); ++i) {
    worst_diff = std::max(worst_diff, diff[i]);
    report.observe(kAgreement - diff[i], {{"a", probe[i]}});
  }

  report.details = {
      {"max_closed_vs_quadrature", worst_diff},
      {"G1_at_1e-6_minus_2ln2", G1_closed(1e-6) - 2.0 * std::numbers::ln2},
      {"G1_at_1-1e-6_minus_2", G1_closed(1.0 - 1e-6) - 2.0},
  };
  return report;
}

VerificationReport verify_lemma5(OrderAlpha order, std::size_t extra_points, double tol,
                                 const QuadOptions& opts, unsigned workers) {
  const double gamma = order.gamma();
  std::vector<double> as;
  for (int i = 1; i <= 19; ++i) as.push_back(0.05 * i);
  for (double a : {1.5, 3.0, 10.0}) as.push_back(a);
  for (std::size_t i = 0; i < extra_points; ++i) {
    const double frac = extra_points == 1 ? 0.5
                                          : static_cast<double>(i) /
                                                static_cast<double>(extra_points - 1);
    as.push_back(std::pow(10.0, -2.0 + 4.0 * frac));
  }

  const double at_one = G_gamma(1.0, gamma, opts);
  std::vector<double> values(as.size());
  parallel_for(as.size(), [&](std::size_t i) { values[i] = G_gamma(as[i], gamma, opts); },
               workers);

  VerificationReport report;
  report.suite = "lemma5";
  report.alpha = order.alpha();
  report.grid = as.size();
  report.tolerance = tol;
  for (std::size_t i = 0; i < as.size(); ++i) {
    report.observe(at_one - values[i], {{"a", as[i]}, {"gamma", gamma}});
  }
  report.details = {{"G_gamma_at_1", at_one}};
  return report;
}

VerificationReport verify_main_claim(OrderAlpha order, std::size_t grid_n, double tol,
                                     const QuadOptions& opts, unsigned workers) {
  require_grid(grid_n);
  const double bound = 2.0 * (hall_constant(order) - 1.0);

  // Block A: the open grid plus s = pi (edge), all ordered pairs.
  std::vector<double> block_a = main_grid_angles(grid_n);
  block_a.push_back(kPi);
  const std::vector<double> block_c = corner_angles(grid_n);
  const std::size_t na = block_a.size();
  const std::size_t nc = block_c.size();

  std::vector<double> ia(na * na), ic(nc * nc);
  parallel_for(
      na * na + nc * nc,
      [&](std::size_t idx) {
        if (idx < na * na) {
          ia[idx] = I_angles(block_a[idx / na], block_a[idx % na], order, opts);
        } else {
          const std::size_t k = idx - na * na;
          ic[k] = I_angles(block_c[k / nc], block_c[k % nc], order, opts);
        }
      },
      workers);

  VerificationReport report;
  report.suite = "main";
  report.alpha = order.alpha();
  report.grid = grid_n;
  report.tolerance = tol;

  VerificationReport grid_part, edge_part, corner_part;
  double corner_sup = 0.0;
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < na; ++j) {
      const double margin = bound - (ia[i * na + j] + ia[j * na + i]);
      NamedValues where{{"s", block_a[i]}, {"t", block_a[j]}};
      if (i + 1 == na || j + 1 == na) {
        edge_part.observe(margin, where);
      } else {
        grid_part.observe(margin, where);
      }
      report.observe(margin, std::move(where));
    }
  }
  for (std::size_t i = 0; i < nc; ++i) {
    for (std::size_t j = 0; j < nc; ++j) {
      const double sum = ic[i * nc + j] + ic[j * nc + i];
      corner_sup = std::max(corner_sup, sum);
      NamedValues where{{"s", block_c[i]}, {"t", block_c[j]}};
      corner_part.observe(bound - sum, where);
      report.observe(bound - sum, std::move(where));
    }
  }
  report.details = {
      {"bound", bound},
      {"grid_min_margin", grid_part.worst_margin},
      {"edge_pi_min_margin", edge_part.worst_margin},
      {"corner_min_margin", corner_part.worst_margin},
      {"corner_sup", corner_sup},
      {"smallest_corner_angle", block_c.back()},
      // I(0, t) = I(t, 0) = 0: the sum vanishes on the s = 0 and t = 0 edges.
      {"edge_zero_limit_margin", bound},
  };
  return report;
}

VerificationReport verify_chain(OrderAlpha order, std::size_t grid_n, double tol,
                                const QuadOptions& opts, unsigned workers) {
  require_grid(grid_n);
  const double gamma = order.gamma();
  const auto chords = open_grid(grid_n, 0.0, 4.0);
  const std::size_t n = grid_n;
  std::vector<double> I(n * n), U(n * n);
  parallel_for(
      n * n,
      [&](std::size_t idx) {
        const double S = chords[idx / n];
        const double T = chords[idx % n];
        I[idx] = I_st(S, T, gamma, opts);
        U[idx] = upper_bound_U(T / S, gamma, opts);
      },
      workers);
  const double u_one = upper_bound_U(1.0, gamma, opts);
  const double target = 2.0 * (hall_constant(order) - 1.0);

  VerificationReport report;
  report.suite = "chain";
  report.alpha = order.alpha();
  report.grid = grid_n;
  report.tolerance = tol;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double sum = I[i * n + j] + I[j * n + i];
      report.observe(U[i * n + j] - sum, {{"S", chords[i]}, {"T", chords[j]}, {"step", 1}});
      report.observe(u_one - U[i * n + j], {{"S", chords[i]}, {"T", chords[j]}, {"step", 2}});
    }
  }
  report.observe(-std::abs(u_one - target), {{"step", 3}});
  report.details = {{"U_at_1", u_one}, {"bound", target}};
  return report;
}

}  // namespace hallgh
