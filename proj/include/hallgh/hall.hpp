#pragma once

// Executable form of the proof of the sharp Gehring-Hayman bound for
// S*(alpha): the integrand I, its J/K split, the pointwise and integral
// lemmas, the closing beta identity, and the sharpness limit along k_alpha.
//
// Notation: gamma = 1 - 2 alpha, S = 2(1 - cos s), T = 2(1 - cos t), a = T/S.

#include <cstddef>
#include <vector>

#include "hallgh/quadrature.hpp"
#include "hallgh/report.hpp"
#include "hallgh/specfun.hpp"

namespace hallgh {

/// Quadrature settings used by the proof-chain integrals unless overridden.
inline QuadOptions hall_quad_defaults() { return QuadOptions::with_tol(1e-12, 1e-11); }

/// 2(1 - cos x), evaluated as 4 sin^2(x/2) so it keeps full precision for small x.
double squared_chord(double angle);

struct ChordPair {
  double s = 0.0, t = 0.0;
  double S = 0.0, T = 0.0;

  /// s, t in (0, pi].
  static ChordPair from_angles(double s, double t);
  double a() const { return T / S; }
  ChordPair swapped() const { return {t, s, T, S}; }
};

/// I(s, t) written directly in the angles; the bracket uses
/// N^2 D - P^2 = ((1 + gamma) u sin t)^2 to avoid cancellation near u = 1.
double I_angles(double s, double t, OrderAlpha order,
                const QuadOptions& opts = hall_quad_defaults());

/// I in chord variables; S, T in (0, 4], gamma in (-1, 1].
double I_st(double S, double T, double gamma, const QuadOptions& opts = hall_quad_defaults());

/// The bracket of the I_st integrand at u, in the cancellation-free form
/// (1+gamma)^2 u^2 T (1 - T/4) / (D (N sqrt(D) + P)).
double I_bracket(double u, double T, double gamma);

struct JK {
  double J = 0.0;
  double K = 0.0;
};

/// J(s, t) and K(s, t): t enters the square root and the kernel, s the
/// (1 + u^2 - 2u cos s)^(1 - alpha) factor. I(s, t) = S^(1 - alpha) (J - K)
/// with this argument order.
JK jk_values(double s, double t, OrderAlpha order, const QuadOptions& opts = hall_quad_defaults());

/// Right side minus left side of the pointwise bound
/// sqrt((1+gu)^2 - gTu)/sqrt(D) <= (1+g)/2 (1+u)/sqrt(D) + (1-g)/2.
/// T may be 0.
double check_pointwise_lemma2(double u, double T, double gamma);

/// phi(T) for gamma = -b < 0; phi(0) = 0 and phi is increasing in T.
double phi_lemma2(double T, double u, double b);
double phi_lemma2_prime(double T, double u, double b);

/// G(a) = int_0^inf [(a+w)^{-(1+g)/2} + (1/a+w)^{-(1+g)/2}] (sqrt(1+w)-1)/(1+w) w^{-(1-g)/2} dw.
double G_gamma(double a, double gamma, const QuadOptions& opts = hall_quad_defaults());

/// U(a, gamma) = (1+gamma)/2 * G_gamma(a, gamma), the upper bound for I(S,T) + I(T,S).
double upper_bound_U(double a, double gamma, const QuadOptions& opts = hall_quad_defaults());

/// U(T/S) - (I(S,T) + I(T,S)); nonnegative when the domination holds.
double lemma3_domination(double S, double T, double gamma,
                         const QuadOptions& opts = hall_quad_defaults());

/// Closed form of G_gamma(a, 1) for a in (0, 1). Within 1e-4 of a = 1 the
/// defining integral is used instead.
double G1_closed(double a);

struct Lemma4Helpers {
  double G = 0.0;  ///< G(b), b = sqrt((1 - a)/a)
  double g = 0.0;  ///< b^2/2 G'(b)
  double h = 0.0;  ///< c g'(sqrt c)
  double k = 0.0;  ///< -sqrt(c(1+c)) + asinh(sqrt c)
};

/// G and g at b = x, h and k at c = x. x > 0.
Lemma4Helpers lemma4_helpers(double x);

/// (1-alpha) int_0^inf [(1+w)^{alpha-3/2} - (1+w)^{alpha-2}] w^{-alpha} dw, by quadrature.
double main_bound_rhs(OrderAlpha order, const QuadOptions& opts = hall_quad_defaults());

/// lim_{r -> 1} l(r, theta) / |k_alpha(r e^{i theta})| at T = 2(1 - cos theta).
double extremal_limit(double T, double gamma, const QuadOptions& opts = hall_quad_defaults());

/// gh_ratio of k_alpha itself.
double extremal_ratio_direct(OrderAlpha order, double r, double theta,
                             const QuadOptions& opts = QuadOptions::with_tol(1e-12, 1e-11));

// Verification suites. All grids are deterministic and cells may be
// evaluated concurrently; `workers` = 0 picks default_workers().

/// n^3 grid u in (0,1), T in (0,4), gamma in (-1,1].
VerificationReport verify_lemma2(std::size_t grid_n, double tol = 1e-12, unsigned workers = 0);

/// n x n grid of (S, T) in (0, 4)^2 at gamma = 1 - 2 alpha.
VerificationReport verify_lemma3(OrderAlpha order, std::size_t grid_n, double tol = 1e-8,
                                 const QuadOptions& opts = hall_quad_defaults(),
                                 unsigned workers = 0);

/// Pairwise monotonicity of G1_closed on a_i = i/(n+1), plus agreement of
/// the closed form with the defining integral at a = 0.1, ..., 0.9 within 1e-8.
VerificationReport verify_lemma4(std::size_t grid_n, double tol = 0.0,
                                 const QuadOptions& opts = hall_quad_defaults(),
                                 unsigned workers = 0);

/// G_gamma(1) - G_gamma(a) for a in {0.05, ..., 0.95, 1.5, 3, 10} plus
/// `extra_points` log-spaced a in [1e-2, 1e2].
VerificationReport verify_lemma5(OrderAlpha order, std::size_t extra_points = 0,
                                 double tol = 1e-8,
                                 const QuadOptions& opts = hall_quad_defaults(),
                                 unsigned workers = 0);

/// sup of I(s,t) + I(t,s) against 2(beta(alpha) - 1) on an n x n grid of
/// (0, pi)^2, a geometric refinement toward the (0, 0) corner, and the s = pi
/// edge.
VerificationReport verify_main_claim(OrderAlpha order, std::size_t grid_n, double tol = 1e-6,
                                     const QuadOptions& opts = hall_quad_defaults(),
                                     unsigned workers = 0);

/// I(S,T) + I(T,S) <= U(T/S) <= U(1) = 2(beta - 1) on an n x n (S, T) grid.
VerificationReport verify_chain(OrderAlpha order, std::size_t grid_n, double tol = 1e-8,
                                const QuadOptions& opts = hall_quad_defaults(),
                                unsigned workers = 0);

/// The (s, t) angles used by verify_main_claim, exposed for sweeps.
std::vector<double> main_grid_angles(std::size_t grid_n);
std::vector<double> corner_angles(std::size_t grid_n);

}  // namespace hallgh
