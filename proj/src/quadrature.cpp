#include "hallgh/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

namespace hallgh {

namespace gk21 {
namespace {
constexpr std::array<double, 11> kNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr std::array<double, 11> kKronrod = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525452379, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kGauss = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};
}  // namespace

std::span<const double> kronrod_nodes() { return kNodes; }
std::span<const double> kronrod_weights() { return kKronrod; }
std::span<const double> gauss_weights() { return kGauss; }
}  // namespace gk21

namespace {

constexpr std::size_t kRulePoints = 21;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Maps the reference coordinate t in [0, 1] of either half of the domain onto
// the integration variable, together with the Jacobian. t = 0 is always the
// outer endpoint of the half, t = 1 the split point.
struct Chart {
  bool halfline = false;
  double a = 0.0, b = 1.0, mid = 0.5;
  double p_left = 1.0, p_right = 1.0;

  static double power_of(double exponent) { return 1.0 / (1.0 + exponent); }

  void map(int half, double t, double& x, double& jac) const {
    const double p = half == 0 ? p_left : p_right;
    const double tp = std::pow(t, p);
    const double dtp = p == 1.0 ? 1.0 : p * std::pow(t, p - 1.0);
    if (!halfline) {
      if (half == 0) {
        const double h = mid - a;
        x = a + h * tp;
        jac = h * dtp;
      } else {
        const double h = b - mid;
        x = b - h * tp;
        jac = h * dtp;
      }
      return;
    }
    if (half == 0) {
      const double v = 0.5 * tp;
      const double q = 1.0 - v;
      x = v / q;
      jac = 0.5 * dtp / (q * q);
    } else {
      const double q = 0.5 * tp;  // distance of v from 1
      x = (1.0 - q) / q;
      jac = 0.5 * dtp / (q * q);
    }
  }

  // Inverse of map for a point strictly inside the domain.
  void locate(double x, int& half, double& t) const {
    if (!halfline) {
      if (x <= mid) {
        half = 0;
        t = std::pow((x - a) / (mid - a), 1.0 / p_left);
      } else {
        half = 1;
        t = std::pow((b - x) / (b - mid), 1.0 / p_right);
      }
      return;
    }
    const double v = x / (1.0 + x);
    if (v <= 0.5) {
      half = 0;
      t = std::pow(2.0 * v, 1.0 / p_left);
    } else {
      half = 1;
      t = std::pow(2.0 / (1.0 + x), 1.0 / p_right);
    }
  }

  bool at_endpoint(double x) const {
    if (halfline) return !(x > 0.0) || !std::isfinite(x);
    return x <= a || x >= b;
  }
};

struct Panel {
  int half = 0;
  double lo = 0.0, hi = 1.0;
  double value = 0.0, err = 0.0;
  double floor = 0.0;  // rounding level 50 eps h resabs, included in err
};

struct ByError {
  bool operator()(const Panel& l, const Panel& r) const {
    if (l.err != r.err) return l.err < r.err;
    if (l.half != r.half) return l.half > r.half;
    return l.lo > r.lo;
  }
};

class Engine {
 public:
  Engine(const BatchIntegrand& f, const Chart& chart, const QuadOptions& opts)
      : f_(f), chart_(chart), opts_(opts) {}

  QuadResult run(std::span<const double> breakpoints) {
    std::array<std::vector<double>, 2> cuts{std::vector<double>{0.0, 1.0},
                                            std::vector<double>{0.0, 1.0}};
    for (double bp : breakpoints) {
      if (!std::isfinite(bp) || chart_.at_endpoint(bp)) continue;
      if (!chart_.halfline && (bp <= chart_.a || bp >= chart_.b)) continue;
      int half = 0;
      double t = 0.0;
      chart_.locate(bp, half, t);
      if (t > 0.0 && t < 1.0) cuts[half].push_back(t);
    }
    std::vector<Panel> initial;
    for (int half = 0; half < 2; ++half) {
      auto& c = cuts[half];
      std::sort(c.begin(), c.end());
      c.erase(std::unique(c.begin(), c.end()), c.end());
      for (std::size_t i = 0; i + 1 < c.size(); ++i) {
        initial.push_back(Panel{half, c[i], c[i + 1]});
      }
    }
    evaluate(initial);
    for (const Panel& p : initial) push(p);

    for (;;) {
      const double value = static_cast<double>(value_sum_);
      const double target = std::max(opts_.abs_tol, opts_.rel_tol * std::abs(value));
      if (static_cast<double>(err_sum_) <= target) break;
      // Bisection cannot push the estimate below the summed rounding level.
      if (err_sum_ <= 2.0L * floor_sum_) break;
      if (heap_.empty()) {
        fail("error is limited by panels too small to bisect");
      }
      if (evals_ + 2 * kRulePoints > opts_.max_evals) {
        fail("evaluation budget exhausted");
      }
      Panel worst = heap_.top();
      heap_.pop();
      value_sum_ -= worst.value;
      err_sum_ -= worst.err;
      floor_sum_ -= worst.floor;
      const double centre = 0.5 * (worst.lo + worst.hi);
      if (!(centre > worst.lo && centre < worst.hi) ||
          worst.hi - worst.lo < 8.0 * kEps * std::max(1.0, std::abs(centre))) {
        frozen_.push_back(worst);
        value_sum_ += worst.value;
        err_sum_ += worst.err;
        floor_sum_ += worst.floor;
        continue;
      }
      std::vector<Panel> kids{Panel{worst.half, worst.lo, centre},
                              Panel{worst.half, centre, worst.hi}};
      evaluate(kids);
      push(kids[0]);
      push(kids[1]);
    }
    return collect();
  }

 private:
  void push(const Panel& p) {
    heap_.push(p);
    value_sum_ += p.value;
    err_sum_ += p.err;
    floor_sum_ += p.floor;
  }

  void evaluate(std::vector<Panel>& panels) {
    const auto nodes = gk21::kronrod_nodes();
    const std::size_t n = panels.size() * kRulePoints;
    xs_.resize(n);
    jac_.resize(n);
    ys_.resize(n);
    for (std::size_t p = 0; p < panels.size(); ++p) {
      const double c = 0.5 * (panels[p].lo + panels[p].hi);
      const double h = 0.5 * (panels[p].hi - panels[p].lo);
      for (std::size_t k = 0; k < kRulePoints; ++k) {
        // k < 10: c - h*x_k, k == 10: centre, k > 10: c + h*x_{20-k}
        double t;
        if (k < 10) {
          t = c - h * nodes[k];
        } else if (k == 10) {
          t = c;
        } else {
          t = c + h * nodes[20 - k];
        }
        double x = 0.0, jac = 0.0;
        chart_.map(panels[p].half, t, x, jac);
        if (chart_.at_endpoint(x) && jac > 0.0 && !chart_.halfline) {
          x = panels[p].half == 0 ? std::nextafter(chart_.a, chart_.b)
                                  : std::nextafter(chart_.b, chart_.a);
        }
        xs_[p * kRulePoints + k] = x;
        jac_[p * kRulePoints + k] = jac;
      }
    }
    f_(std::span<const double>(xs_), std::span<double>(ys_));
    evals_ += n;

    const auto wk = gk21::kronrod_weights();
    const auto wg = gk21::gauss_weights();
    for (std::size_t p = 0; p < panels.size(); ++p) {
      const double h = 0.5 * (panels[p].hi - panels[p].lo);
      double kron = 0.0, gauss = 0.0, resabs = 0.0;
      for (std::size_t k = 0; k < kRulePoints; ++k) {
        const std::size_t i = p * kRulePoints + k;
        double g = 0.0;
        if (jac_[i] != 0.0 && std::isfinite(jac_[i]) && std::isfinite(xs_[i])) {
          if (!std::isfinite(ys_[i])) {
            std::ostringstream os;
            os << "integrand is not finite at x = " << xs_[i];
            throw std::domain_error(os.str());
          }
          g = ys_[i] * jac_[i];
        }
        const std::size_t node = k <= 10 ? k : 20 - k;
        kron += wk[node] * g;
        resabs += wk[node] * std::abs(g);
        if (node % 2 == 1) gauss += wg[node / 2] * g;
      }
      panels[p].value = h * kron;
      panels[p].floor = 50.0 * kEps * h * resabs;
      panels[p].err = std::max(std::abs(h * (kron - gauss)), panels[p].floor);
    }
  }

  QuadResult collect() {
    std::vector<Panel> all = std::move(frozen_);
    while (!heap_.empty()) {
      all.push_back(heap_.top());
      heap_.pop();
    }
    std::sort(all.begin(), all.end(), [](const Panel& l, const Panel& r) {
      return l.half != r.half ? l.half < r.half : l.lo < r.lo;
    });
    long double value = 0.0L, err = 0.0L;
    for (const Panel& p : all) {
      value += p.value;
      err += p.err;
    }
    QuadResult out;
    out.value = static_cast<double>(value);
    out.err_estimate = static_cast<double>(err);
    out.evals = evals_;
    return out;
  }

  [[noreturn]] void fail(const char* why) {
    QuadResult partial;
    partial.value = static_cast<double>(value_sum_);
    partial.err_estimate = static_cast<double>(err_sum_);
    partial.evals = evals_;
    std::ostringstream os;
    os << "quadrature did not converge: " << why << " (value " << partial.value
       << ", error estimate " << partial.err_estimate << ", " << evals_
       << " evaluations)";
    throw QuadratureError(os.str(), partial);
  }

  const BatchIntegrand& f_;
  Chart chart_;
  QuadOptions opts_;
  std::priority_queue<Panel, std::vector<Panel>, ByError> heap_;
  std::vector<Panel> frozen_;
  long double value_sum_ = 0.0L;
  long double err_sum_ = 0.0L;
  long double floor_sum_ = 0.0L;
  std::size_t evals_ = 0;
  std::vector<double> xs_, jac_, ys_;
};

void check_exponent(double e, const char* which) {
  if (!(e > -1.0) || !std::isfinite(e)) {
    std::ostringstream os;
    os << which << " singularity exponent must be finite and > -1, got " << e;
    throw std::invalid_argument(os.str());
  }
}

void check_options(const QuadOptions& opts) {
  if (!(opts.abs_tol >= 0.0) || !(opts.rel_tol >= 0.0) ||
      (opts.abs_tol == 0.0 && opts.rel_tol == 0.0)) {
    throw std::invalid_argument("quadrature tolerances must be >= 0 and not both zero");
  }
  if (opts.max_evals < 2 * kRulePoints) {
    throw std::invalid_argument("quadrature evaluation budget is too small");
  }
}

BatchIntegrand batched(const Integrand& f) {
  return [&f](std::span<const double> x, std::span<double> y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = f(x[i]);
  };
}

}  // namespace

QuadResult integrate_finite_batch(const BatchIntegrand& f, double a, double b,
                                  SingularitySpec sing, const QuadOptions& opts,
                                  std::span<const double> breakpoints) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
    throw std::invalid_argument("integrate_finite requires finite a < b");
  }
  check_exponent(sing.left_exponent, "left");
  check_exponent(sing.right_exponent, "right");
  check_options(opts);
  Chart chart;
  chart.a = a;
  chart.b = b;
  chart.mid = 0.5 * (a + b);
  chart.p_left = Chart::power_of(sing.left_exponent);
  chart.p_right = Chart::power_of(sing.right_exponent);
  return Engine(f, chart, opts).run(breakpoints);
}

QuadResult integrate_finite(const Integrand& f, double a, double b,
                            SingularitySpec sing, const QuadOptions& opts,
                            std::span<const double> breakpoints) {
  return integrate_finite_batch(batched(f), a, b, sing, opts, breakpoints);
}

QuadResult integrate_halfline_batch(const BatchIntegrand& f, double sing0,
                                    const QuadOptions& opts,
                                    std::span<const double> breakpoints,
                                    double decay_exponent) {
  check_exponent(sing0, "left");
  if (!(decay_exponent < -1.0)) {
    throw std::invalid_argument("half-line integrand must decay faster than 1/w");
  }
  check_options(opts);
  Chart chart;
  chart.halfline = true;
  chart.p_left = Chart::power_of(sing0);
  chart.p_right = Chart::power_of(-decay_exponent - 2.0);
  // Tail sanity: w |f(w)| must keep shrinking for the integral to exist.
  const std::array<double, 2> far{1e6, 1e8};
  std::array<double, 2> vals{};
  f(far, vals);
  const double near_tail = far[0] * std::abs(vals[0]);
  const double far_tail = far[1] * std::abs(vals[1]);
  const bool diverging = near_tail > 0.0 && far_tail >= near_tail;

  QuadResult out;
  try {
    out = Engine(f, chart, opts).run(breakpoints);
  } catch (const QuadratureError& e) {
    if (!diverging) throw;
    QuadResult partial = e.partial();
    partial.divergence_warning = true;
    partial.evals += far.size();
    throw QuadratureError(std::string(e.what()) + "; the integral may diverge", partial);
  }
  out.evals += far.size();
  out.divergence_warning = diverging;
  return out;
}

QuadResult integrate_halfline(const Integrand& f, double sing0,
                              const QuadOptions& opts,
                              std::span<const double> breakpoints,
                              double decay_exponent) {
  return integrate_halfline_batch(batched(f), sing0, opts, breakpoints,
                                  decay_exponent);
}

double halfline_transformed(const Integrand& f, double v) {
  const double q = 1.0 - v;
  return f(v / q) / (q * q);
}

}  // namespace hallgh
