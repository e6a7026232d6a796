#include "doctest.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "hallgh/hall.hpp"
#include "hallgh/starlike.hpp"

using hallgh::OrderAlpha;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;

double bound(double alpha) { return 2.0 * (hallgh::hall_constant(OrderAlpha(alpha)) - 1.0); }

// Sharpness limit integrated directly in u, without the half-line change of
// variables used by extremal_limit.
double extremal_limit_u(double T, double gamma) {
  auto f = [=](double u) {
    const double v = 1.0 - u;
    const double d = v * v + T * u;
    return std::sqrt((1.0 + gamma * u) * (1.0 + gamma * u) - gamma * T * u) /
           std::pow(d, 1.0 + 0.5 * gamma);
  };
  std::vector<double> cuts;
  for (double gap = 0.25 * std::sqrt(T); gap < 0.5; gap *= 2.0) cuts.push_back(1.0 - gap);
  const auto r = hallgh::integrate_finite(f, 0.0, 1.0, {}, hallgh::QuadOptions::with_tol(1e-13, 1e-13),
                                          cuts);
  return std::pow(T, 0.5 * (1.0 + gamma)) * r.value;
}

}  // namespace

TEST_CASE("chord variables") {
  CHECK(hallgh::squared_chord(kPi) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(hallgh::squared_chord(kPi / 2) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(hallgh::squared_chord(1e-9) == doctest::Approx(1e-18).epsilon(1e-12));
  for (double s : {0.01, 0.7, 2.0, kPi}) {
    for (double t : {0.003, 1.1, 3.0}) {
      const auto p = hallgh::ChordPair::from_angles(s, t);
      CHECK(p.S == doctest::Approx(2.0 * (1.0 - std::cos(s))).epsilon(1e-12));
      CHECK(std::abs(p.a() * p.swapped().a() - 1.0) <= 1e-12);
    }
  }
  CHECK_THROWS_AS(hallgh::ChordPair::from_angles(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(hallgh::ChordPair::from_angles(1.0, 3.5), std::domain_error);
}

TEST_CASE("I against frozen high-precision values") {
  struct Case {
    double s, t, alpha, value;
  };
  const Case cases[] = {{1.0, 0.5, 0.3, 0.65666656673440165044},
                        {0.2, 2.0, 0.0, 0.13732483491735317802},
                        {kPi / 2, kPi / 2, 0.5, 0.11072073453959156175},
                        {0.05, 0.05, 0.25, 0.78432499252744466785}};
  for (const auto& c : cases) {
    CAPTURE(c.s);
    CAPTURE(c.t);
    const OrderAlpha order(c.alpha);
    CHECK(std::abs(hallgh::I_angles(c.s, c.t, order) - c.value) <= 1e-10);
    const auto p = hallgh::ChordPair::from_angles(c.s, c.t);
    CHECK(std::abs(hallgh::I_st(p.S, p.T, order.gamma()) - c.value) <= 1e-10);
  }
}

TEST_CASE("angle form and chord form agree on a 10x10 grid") {
  for (double alpha : {0.0, 0.5, 0.8}) {
    const OrderAlpha order(alpha);
    for (int i = 1; i <= 10; ++i) {
      for (int j = 1; j <= 10; ++j) {
        const double s = kPi * i / 11.0, t = kPi * j / 11.0;
        const auto p = hallgh::ChordPair::from_angles(s, t);
        CHECK(std::abs(hallgh::I_angles(s, t, order) - hallgh::I_st(p.S, p.T, order.gamma())) <= 1e-9);
      }
    }
  }
}

TEST_CASE("I at the antipodal edge") {
  const OrderAlpha koebe(0.0);
  const double edge = hallgh::I_angles(kPi, kPi, koebe);
  CHECK(std::abs(edge) <= 1e-12);
  CHECK(2.0 * edge <= 2.0);
  CHECK(hallgh::I_bracket(0.0, 1.3, 0.4) == 0.0);
}

TEST_CASE("J/K recomposition uses J(s,t) - K(s,t)") {
  for (double alpha : {0.0, 0.3, 0.5, 0.9}) {
    const OrderAlpha order(alpha);
    for (double s : {0.2, 1.0, 2.7}) {
      for (double t : {0.1, 1.5, 3.0}) {
        const auto jk = hallgh::jk_values(s, t, order);
        const double S = hallgh::squared_chord(s);
        const double recomposed = std::pow(S, 1.0 - alpha) * (jk.J - jk.K);
        const double direct = hallgh::I_angles(s, t, order);
        CHECK(std::abs(recomposed - direct) <= 1e-8);
        CHECK(jk.K > 0.0);
        if (s != t && alpha != 0.5) {
          // The swapped pairing does not reproduce I.
          const auto swapped = hallgh::jk_values(t, s, order);
          CHECK(std::abs(std::pow(S, 1.0 - alpha) * (swapped.J - swapped.K) - direct) > 1e-6);
        }
      }
    }
  }
  for (double s : {0.1, 1.0, 3.0}) {
    const auto jk = hallgh::jk_values(s, s, OrderAlpha(0.5));
    CHECK(jk.J >= jk.K);
  }
}

TEST_CASE("pointwise bound: equality cases and grid") {
  for (double gamma : {-0.9, -0.3, 0.0, 0.5, 1.0}) {
    for (double u : {0.0, 0.2, 0.7, 0.99}) {
      CHECK(std::abs(hallgh::check_pointwise_lemma2(u, 0.0, gamma)) <= 1e-13 * (1.0 + 1.0 / (1.0 - u)));
    }
  }
  for (double u : {0.1, 0.5, 0.9}) {
    CHECK(hallgh::check_pointwise_lemma2(u, 1e-12, 1.0) >= 0.0);
    CHECK(hallgh::check_pointwise_lemma2(u, 1e-12, 1.0) <= 1e-9);
  }
  double worst = 1.0;
  for (int i = 0; i < 30; ++i) {
    for (int j = 0; j < 30; ++j) {
      for (int k = 0; k < 30; ++k) {
        worst = std::min(worst, hallgh::check_pointwise_lemma2((i + 1) / 31.0, 4.0 * (j + 1) / 31.0,
                                                               -1.0 + 2.0 * (k + 1) / 30.0));
      }
    }
  }
  CHECK(worst >= -1e-12);
  CHECK_THROWS_AS(hallgh::check_pointwise_lemma2(1.0, 1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(hallgh::check_pointwise_lemma2(0.5, 4.5, 0.0), std::domain_error);
  CHECK_THROWS_AS(hallgh::check_pointwise_lemma2(0.5, 1.0, -1.0), std::domain_error);
}

TEST_CASE("phi vanishes at 0, increases, and its derivative is consistent") {
  for (double b : {0.05, 0.4, 0.95}) {
    for (double u : {0.1, 0.5, 0.95}) {
      CHECK(hallgh::phi_lemma2(0.0, u, b) == 0.0);
      double previous = 0.0;
      for (int i = 1; i < 400; ++i) {
        const double T = 0.01 * i;
        const double phi = hallgh::phi_lemma2(T, u, b);
        CHECK(phi >= previous);
        previous = phi;
        CHECK(hallgh::phi_lemma2_prime(T, u, b) >= -1e-12);
      }
      const double T = 1.7, h = 1e-5;
      const double fd = (hallgh::phi_lemma2(T + h, u, b) - hallgh::phi_lemma2(T - h, u, b)) / (2.0 * h);
      CHECK(std::abs(fd - hallgh::phi_lemma2_prime(T, u, b)) <= 1e-8);
    }
  }
}

TEST_CASE("U and G_gamma values") {
  CHECK(std::abs(hallgh::upper_bound_U(1.0, 1.0) - 2.0) <= 1e-11);
  struct Case {
    double a, gamma, value;
  };
  const Case cases[] = {{0.3, 0.5, 2.0760110119048706542},
                        {2.0, -0.5, 2.4756365251239609025},
                        {1.0, 0.0, 2.2831853071795864769},
                        {0.05, 1.0, 1.7759058896814230935}};
  for (const auto& c : cases) {
    CHECK(std::abs(hallgh::G_gamma(c.a, c.gamma) - c.value) <= 1e-10);
  }
  for (double gamma : {-0.5, 0.0, 0.5, 1.0}) {
    for (double a : {0.01, 0.3, 2.0, 40.0}) {
      CHECK(std::abs(hallgh::upper_bound_U(a, gamma) - hallgh::upper_bound_U(1.0 / a, gamma)) <= 1e-10);
      CHECK(std::abs(hallgh::G_gamma(a, gamma) - hallgh::G_gamma(1.0 / a, gamma)) <= 1e-10);
    }
  }
  CHECK_THROWS_AS(hallgh::G_gamma(0.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(hallgh::G_gamma(1.0, -1.0), std::domain_error);
}

TEST_CASE("small-a behaviour of G1") {
  // G1(a) = 2 ln 2 + pi sqrt(a) + O(a log a).
  CHECK(std::abs(hallgh::G1_closed(1e-6) - 1.3894134252019203286) <= 1e-12);
  CHECK(std::abs(hallgh::G1_closed(1e-10) - 1.3863257734118651657) <= 1e-12);
  CHECK(std::abs((hallgh::G1_closed(1e-10) - 2.0 * kLn2) / 1e-5 - kPi) <= 1e-3);
  CHECK(std::abs(hallgh::upper_bound_U(1e-6, 1.0) - hallgh::G1_closed(1e-6)) <= 1e-9);
  CHECK(hallgh::upper_bound_U(1e-6, 1.0) > 2.0 * kLn2);
}

TEST_CASE("G1 closed form against its defining integral") {
  for (int i = 1; i <= 9; ++i) {
    const double a = 0.1 * i;
    CHECK(std::abs(hallgh::G1_closed(a) - hallgh::G_gamma(a, 1.0)) <= 1e-8);
  }
  CHECK(std::abs(hallgh::G1_closed(0.5) - 1.9842557456759827446) <= 1e-13);
  CHECK(std::abs(hallgh::G1_closed(0.9999) - 1.9999999996666333304) <= 1e-11);
  CHECK(std::abs(hallgh::G1_closed(1.0 - 1e-6) - 2.0) <= 1e-3);
  // The switch to quadrature near a = 1 is continuous.
  CHECK(std::abs(hallgh::G1_closed(1.0 - 1.0001e-4) - hallgh::G1_closed(1.0 - 0.9999e-4)) <= 1e-9);
  CHECK_THROWS_AS(hallgh::G1_closed(0.0), std::domain_error);
  CHECK_THROWS_AS(hallgh::G1_closed(1.0), std::domain_error);
}

TEST_CASE("monotonicity helpers") {
  const auto at1 = hallgh::lemma4_helpers(1.0);
  CHECK(std::abs(at1.G - 1.9842557456759827446) <= 1e-14);
  CHECK(std::abs(at1.g - -0.022329042417788204175) <= 1e-14);
  CHECK(std::abs(at1.h - -0.074681741049775362137) <= 1e-14);
  CHECK(std::abs(at1.k - -0.53283997535355202357) <= 1e-14);
  const auto at03 = hallgh::lemma4_helpers(0.3);
  CHECK(std::abs(at03.G - 1.9997525124674439936) <= 1e-13);
  CHECK(std::abs(at03.g - -0.00014223632520793266071) <= 1e-13);
  CHECK(std::abs(at03.h - -0.0051577076309975835072) <= 1e-14);
  CHECK(std::abs(at03.k - -0.10101584233824560972) <= 1e-14);

  for (double c : {0.1, 1.0, 10.0, 100.0}) CHECK(hallgh::lemma4_helpers(c).k < 0.0);
  CHECK(std::abs(hallgh::lemma4_helpers(1e-8).k) <= 1e-11);

  double prev_g = hallgh::lemma4_helpers(0.01).g;
  double prev_G = hallgh::lemma4_helpers(0.01).G;
  for (int i = 2; i <= 500; ++i) {
    const auto v = hallgh::lemma4_helpers(0.01 * i);
    CHECK(v.h < 0.0);
    CHECK(v.g < prev_g);
    CHECK(v.G < prev_G);
    prev_g = v.g;
    prev_G = v.G;
  }

  const double step = 1e-5;
  for (double x : {0.2, 1.0, 3.0, 12.0}) {
    CAPTURE(x);
    const auto v = hallgh::lemma4_helpers(x);
    const double dG = (hallgh::lemma4_helpers(x + step).G - hallgh::lemma4_helpers(x - step).G) / (2 * step);
    CHECK(std::abs(0.5 * x * x * dG - v.g) <= 1e-8);
    const double rx = std::sqrt(x);
    const double dg = (hallgh::lemma4_helpers(rx + step).g - hallgh::lemma4_helpers(rx - step).g) / (2 * step);
    CHECK(std::abs(x * dg - v.h) <= 1e-8);
    // h'(c) = 3 sqrt(c) / (2 (1 + c)^(5/2)) k(c).
    const double dh = (hallgh::lemma4_helpers(x + step).h - hallgh::lemma4_helpers(x - step).h) / (2 * step);
    CHECK(std::abs(dh - 1.5 * rx / std::pow(1.0 + x, 2.5) * v.k) <= 1e-9);
    // G(b) is G1 at a = 1 / (1 + b^2).
    CHECK(std::abs(v.G - hallgh::G1_closed(1.0 / (1.0 + x * x))) <= 1e-12);
  }
}

TEST_CASE("G_gamma peaks at a = 1") {
  for (double gamma : {-0.5, 0.0, 0.5, 1.0}) {
    const double peak = hallgh::G_gamma(1.0, gamma);
    for (double a : {0.05, 0.2, 0.5, 0.8, 0.95, 1.5, 3.0, 10.0}) {
      CHECK(hallgh::G_gamma(a, gamma) <= peak + 1e-8);
    }
  }
}

TEST_CASE("beta identity closes the chain") {
  for (int i = 0; i < 20; ++i) {
    const OrderAlpha order(0.05 * i);
    const double beta = hallgh::hall_constant(order);
    CAPTURE(order.alpha());
    CHECK(std::abs(hallgh::main_bound_rhs(order) - (beta - 1.0)) <= 1e-9);
    CHECK(std::abs(hallgh::upper_bound_U(1.0, order.gamma()) - 2.0 * (beta - 1.0)) <= 1e-9);
  }
  CHECK(std::abs(hallgh::main_bound_rhs(OrderAlpha(0.0)) - 1.0) <= 1e-10);
  CHECK(std::abs(hallgh::main_bound_rhs(OrderAlpha(0.5)) - (kPi / 2 - 1.0)) <= 1e-10);
}

TEST_CASE("domination of the I-sum by U") {
  for (double gamma : {-0.5, 0.0, 0.5, 1.0}) {
    for (int i = 1; i <= 6; ++i) {
      for (int j = 1; j <= 6; ++j) {
        CHECK(hallgh::lemma3_domination(4.0 * i / 7.0, 4.0 * j / 7.0, gamma) >= -1e-8);
      }
    }
    const double S = 0.9;
    CHECK(std::abs(hallgh::lemma3_domination(S, S, gamma) -
                   (hallgh::upper_bound_U(1.0, gamma) - 2.0 * hallgh::I_st(S, S, gamma))) <= 1e-12);
  }
  const double near_corner = 2.0 * hallgh::I_st(1e-4, 1e-4, 1.0);
  CHECK(near_corner < 2.0);
  CHECK(near_corner > 1.97);
}

TEST_CASE("sharpness limit") {
  struct Case {
    double T, gamma, value;
  };
  const Case cases[] = {{0.01, 0.0, 1.5226800110860625405},
                        {0.5, 1.0, 1.8862206782344666979},
                        {1e-4, -0.5, 1.3037042939301193246},
                        {2.0, 0.4, 1.2470510675617461002}};
  for (const auto& c : cases) {
    CHECK(std::abs(hallgh::extremal_limit(c.T, c.gamma) - c.value) <= 1e-10);
    CHECK(std::abs(extremal_limit_u(c.T, c.gamma) - c.value) <= 1e-9);
  }
  CHECK(std::abs(hallgh::extremal_limit(1e-6, 1.0) - 2.0) <= 0.02);
  CHECK(std::abs(hallgh::extremal_limit(1e-6, 0.0) - kPi / 2) <= 0.01 * kPi / 2);

  for (double alpha : {0.0, 0.3, 0.5, 0.9}) {
    const OrderAlpha order(alpha);
    const double beta = hallgh::hall_constant(order);
    double previous = 0.0;
    bool monotone = true;
    for (double T = 4.0; T >= 1e-8; T /= 3.0) {
      const double value = hallgh::extremal_limit(T, order.gamma());
      CHECK(value <= beta + 1e-6);
      monotone = monotone && value >= previous;
      previous = value;
    }
    if (!monotone) MESSAGE("limit not monotone in T at alpha = " << alpha);
  }
}

TEST_CASE("direct extremal ratio") {
  const OrderAlpha koebe(0.0);
  for (double r : {0.3, 0.9, 0.9999}) {
    CHECK(std::abs(hallgh::extremal_ratio_direct(koebe, r, 0.0) - 1.0) <= 1e-10);
  }
  CHECK(std::abs(hallgh::extremal_ratio_direct(koebe, 1.0 - 1e-5, 1e-3) - 2.0) <= 0.06);
  for (double alpha : {0.0, 0.5, 0.8}) {
    const OrderAlpha order(alpha);
    const double theta = 0.02;
    const double direct = hallgh::extremal_ratio_direct(order, 1.0 - 1e-6, theta);
    const double limit = hallgh::extremal_limit(hallgh::squared_chord(theta), order.gamma());
    CHECK(std::abs(direct - limit) <= 0.02 * limit);
  }
}

TEST_CASE("report semantics") {
  hallgh::VerificationReport r;
  r.suite = "demo";
  r.tolerance = 1e-3;
  CHECK(r.passed());
  r.observe(0.5, {{"x", 1.0}});
  r.observe(0.2, {{"x", 2.0}});
  r.observe(0.2, {{"x", 3.0}});
  CHECK(r.worst_margin == 0.2);
  CHECK(r.worst_location.front().second == 2.0);
  r.observe(-5e-4, {{"x", 4.0}});
  CHECK(r.passed());
  r.observe(std::nan(""), {{"x", 5.0}});
  CHECK_FALSE(r.passed());
  CHECK(r.worst_location.front().second == 5.0);
  const auto j = r.to_json();
  for (const char* key : {"suite", "alpha", "grid", "tolerance", "worst_margin", "worst_location", "passed"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["alpha"].is_null());
  CHECK(j["passed"] == false);
  CHECK(r.summary().rfind("[FAIL] demo", 0) == 0);
}

TEST_CASE("verification suites on small grids") {
  CHECK(hallgh::verify_lemma2(12).passed());
  CHECK(hallgh::verify_lemma4(200).passed());
  for (double alpha : {0.0, 0.5}) {
    const OrderAlpha order(alpha);
    const auto main = hallgh::verify_main_claim(order, 6);
    CHECK(main.passed());
    CHECK(main.worst_margin <= bound(alpha));
    CHECK(hallgh::verify_lemma3(order, 5).passed());
    CHECK(hallgh::verify_lemma5(order, 5).passed());
    CHECK(hallgh::verify_chain(order, 5).passed());
  }
  CHECK_THROWS_AS(hallgh::verify_main_claim(OrderAlpha(0.0), 1), std::invalid_argument);
}

TEST_CASE("corner refinement approaches the bound") {
  const OrderAlpha order(0.25);
  const auto report = hallgh::verify_main_claim(order, 8);
  double corner_sup = 0.0;
  for (const auto& [name, value] : report.details) {
    if (name == "corner_sup") corner_sup = value;
  }
  CHECK(corner_sup <= bound(0.25) + 1e-6);
  CHECK(corner_sup >= bound(0.25) - 1e-3);
}

TEST_CASE("suite results do not depend on the worker count") {
  const OrderAlpha order(0.3);
  const auto one = hallgh::verify_lemma3(order, 6, 1e-8, hallgh::hall_quad_defaults(), 1);
  const auto many = hallgh::verify_lemma3(order, 6, 1e-8, hallgh::hall_quad_defaults(), 4);
  CHECK(one.worst_margin == many.worst_margin);
  CHECK(one.worst_location == many.worst_location);
  CHECK(one.to_json().dump() == many.to_json().dump());
  const auto m1 = hallgh::verify_main_claim(order, 5, 1e-6, hallgh::hall_quad_defaults(), 1);
  const auto m3 = hallgh::verify_main_claim(order, 5, 1e-6, hallgh::hall_quad_defaults(), 3);
  CHECK(m1.to_json().dump() == m3.to_json().dump());
}
