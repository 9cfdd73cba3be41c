#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <queue>

#include "opoly/numerics.hpp"

namespace opoly::numerics {

namespace {

constexpr int kInitialPanels = 8;
constexpr int kMaxDepth = 60;
constexpr long kMaxPanels = 20000;

int rule_size(Bits w) { return std::clamp(static_cast<int>(w / 10) + 8, 16, 64); }

struct LegendreValue {
  XReal p;
  XReal dp;
};

LegendreValue legendre(int n, const XReal& x) {
  XReal p0(1L, x.precision());
  XReal p1 = x;
  for (int k = 2; k <= n; ++k) {
    XReal p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
    p0 = std::move(p1);
    p1 = std::move(p2);
  }
  XReal dp = n * (x * p1 - p0) / (x * x - 1);
  return {p1, dp};
}

GaussLegendreRule compute_rule(int n, Bits bits) {
  Bits w = bits + 16;
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  XReal tolerance = XReal::pow2(-bits - 8, w);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double guess = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    XReal x(guess, w);
    for (int iter = 0; iter < 100; ++iter) {
      LegendreValue v = legendre(n, x);
      XReal dx = v.p / v.dp;
      x -= dx;
      if (abs(dx) < tolerance) break;
    }
    LegendreValue v = legendre(n, x);
    XReal weight = 2 / ((1 - x * x) * v.dp * v.dp);
    rule.nodes[n - 1 - i] = x.with_precision(bits);
    rule.nodes[i] = (-x).with_precision(bits);
    rule.weights[i] = weight.with_precision(bits);
    rule.weights[n - 1 - i] = weight.with_precision(bits);
  }
  if (n % 2 == 1) rule.nodes[n / 2] = XReal(0L, bits);
  return rule;
}

struct PanelSums {
  std::vector<XReal> value;
  std::vector<XReal> absolute;
};

class PanelIntegrator {
public:
  PanelIntegrator(const VectorIntegrand& f, std::size_t m, Bits w)
      : f_(f), m_(m), w_(w), rule_(gauss_legendre(rule_size(w), w)), scratch_(m) {}

  PanelSums operator()(const XReal& lo, const XReal& hi) {
    XReal half = (hi - lo) / 2;
    XReal mid = (hi + lo) / 2;
    PanelSums s{std::vector<XReal>(m_, XReal(0L, w_)), std::vector<XReal>(m_, XReal(0L, w_))};
    for (std::size_t i = 0; i < rule_.nodes.size(); ++i) {
      XReal r = mid + half * rule_.nodes[i];
      for (auto& v : scratch_) v = XReal(0L, w_);
      f_(r, scratch_);
      for (std::size_t c = 0; c < m_; ++c) {
        XReal t = rule_.weights[i] * scratch_[c];
        s.value[c] += t;
        s.absolute[c] += abs(t);
      }
    }
    for (std::size_t c = 0; c < m_; ++c) {
      s.value[c] *= half;
      s.absolute[c] *= half;
    }
    evaluations_ += static_cast<long>(rule_.nodes.size());
    return s;
  }

  long evaluations() const { return evaluations_; }

private:
  const VectorIntegrand& f_;
  std::size_t m_;
  Bits w_;
  const GaussLegendreRule& rule_;
  std::vector<XReal> scratch_;
  long evaluations_ = 0;
};

struct Panel {
  XReal lo;
  XReal hi;
  int depth = 0;
  PanelSums left;
  PanelSums right;
  std::vector<XReal> error;  // |whole - left - right| per component
  double key = 0.0;
};

struct IntervalSums {
  std::vector<XReal> value;
  std::vector<XReal> absolute;
  std::vector<XReal> error;
  long evaluations = 0;
};

Panel make_panel(PanelIntegrator& integrate, const XReal& lo, const XReal& hi, int depth,
                 const PanelSums& whole) {
  XReal mid = (lo + hi) / 2;
  Panel p{lo, hi, depth, integrate(lo, mid), integrate(mid, hi), {}, 0.0};
  p.error.reserve(whole.value.size());
  for (std::size_t c = 0; c < whole.value.size(); ++c) {
    p.error.push_back(abs(whole.value[c] - p.left.value[c] - p.right.value[c]));
  }
  return p;
}

IntervalSums integrate_interval(const VectorIntegrand& f, std::size_t m, const XReal& lo_in,
                                const XReal& hi_in, Bits p, Bits w) {
  PanelIntegrator integrate(f, m, w);
  XReal lo = lo_in.with_precision(w);
  XReal hi = hi_in.with_precision(w);

  IntervalSums totals{std::vector<XReal>(m, XReal(0L, w)), std::vector<XReal>(m, XReal(0L, w)),
                      std::vector<XReal>(m, XReal(0L, w)), 0};
  std::vector<Panel> panels;
  auto add = [&](const Panel& panel, int sign) {
    for (std::size_t c = 0; c < m; ++c) {
      XReal v = panel.left.value[c] + panel.right.value[c];
      XReal a = panel.left.absolute[c] + panel.right.absolute[c];
      if (sign > 0) {
        totals.value[c] += v;
        totals.absolute[c] += a;
        totals.error[c] += panel.error[c];
      } else {
        totals.value[c] -= v;
        totals.absolute[c] -= a;
        totals.error[c] -= panel.error[c];
      }
    }
  };

  XReal width = (hi - lo) / kInitialPanels;
  for (int k = 0; k < kInitialPanels; ++k) {
    XReal a = lo + width * k;
    XReal b = (k + 1 == kInitialPanels) ? hi : lo + width * (k + 1);
    PanelSums whole = integrate(a, b);
    panels.push_back(make_panel(integrate, a, b, 0, whole));
    add(panels.back(), +1);
  }

  XReal relative = XReal::pow2(-p - 8, w);
  XReal floor_factor = XReal::pow2(-w + 16, w);
  auto tolerances = [&]() {
    std::vector<XReal> tol(m);
    for (std::size_t c = 0; c < m; ++c) {
      tol[c] = max(relative * abs(totals.value[c]), floor_factor * totals.absolute[c]);
    }
    return tol;
  };
  auto score = [&](Panel& panel, const std::vector<XReal>& tol) {
    double worst = 0.0;
    for (std::size_t c = 0; c < m; ++c) {
      if (panel.error[c].is_zero()) continue;
      double ratio = tol[c].is_zero() ? std::numeric_limits<double>::infinity()
                                      : (panel.error[c] / tol[c]).to_double();
      worst = std::max(worst, ratio);
    }
    panel.key = worst;
  };
  auto cmp = [](const Panel& x, const Panel& y) { return x.key < y.key; };

  std::vector<XReal> tol = tolerances();
  for (auto& panel : panels) score(panel, tol);
  std::make_heap(panels.begin(), panels.end(), cmp);

  auto converged = [&](const std::vector<XReal>& t) {
    for (std::size_t c = 0; c < m; ++c) {
      if (totals.error[c] > t[c]) return false;
    }
    return true;
  };

  while (!converged(tol)) {
    if (static_cast<long>(panels.size()) > kMaxPanels) {
      throw NonConvergence("quadrature: panel limit reached before the error target");
    }
    std::pop_heap(panels.begin(), panels.end(), cmp);
    Panel top = std::move(panels.back());
    panels.pop_back();
    if (top.depth >= kMaxDepth) {
      throw NonConvergence("quadrature: subdivision depth limit reached");
    }
    add(top, -1);
    XReal mid = (top.lo + top.hi) / 2;
    Panel left = make_panel(integrate, top.lo, mid, top.depth + 1, top.left);
    Panel right = make_panel(integrate, mid, top.hi, top.depth + 1, top.right);
    add(left, +1);
    add(right, +1);
    tol = tolerances();
    score(left, tol);
    score(right, tol);
    panels.push_back(std::move(left));
    std::push_heap(panels.begin(), panels.end(), cmp);
    panels.push_back(std::move(right));
    std::push_heap(panels.begin(), panels.end(), cmp);
  }
  totals.evaluations = integrate.evaluations();
  return totals;
}

// Tanh-sinh abscissae are generated in t >= 0 and mirrored. For a node at
// t the distance to the nearer endpoint, in units of the half-width, is
// delta = 2 / (exp(2u) + 1) with u = (pi/2) sinh t; computing it this way
// avoids forming 1 - tanh(u) by cancellation.
IntervalSums tanh_sinh(const VectorIntegrand& f, std::size_t m, const XReal& lo_in,
                       const XReal& hi_in, Bits p, Bits w) {
  XReal lo = lo_in.with_precision(w);
  XReal hi = hi_in.with_precision(w);
  XReal half = (hi - lo) / 2;
  XReal half_pi = XReal::pi(w) / 2;
  double t_max = std::asinh(static_cast<double>(w + 8) * std::log(2.0) / M_PI) + 0.5;

  std::vector<XReal> scratch(m);
  long evaluations = 0;
  auto accumulate = [&](const XReal& t, std::vector<XReal>& sum, std::vector<XReal>& absolute) {
    XReal u = half_pi * sinh(t);
    XReal e2u = exp(2 * u);
    XReal delta = 2 / (e2u + 1);
    XReal cu = cosh(u);
    XReal weight = half * half_pi * cosh(t) / (cu * cu);
    if (weight.is_zero()) return;
    for (int side = 0; side < (t.is_zero() ? 1 : 2); ++side) {
      XReal r = side == 0 ? lo + half * delta : hi - half * delta;
      if (t.is_zero()) r = lo + half;
      for (auto& v : scratch) v = XReal(0L, w);
      f(r, scratch);
      ++evaluations;
      for (std::size_t c = 0; c < m; ++c) {
        XReal term = weight * scratch[c];
        sum[c] += term;
        absolute[c] += abs(term);
      }
    }
  };

  std::vector<XReal> sum(m, XReal(0L, w));
  std::vector<XReal> absolute(m, XReal(0L, w));
  XReal h(1L, w);
  // Level 0: integer multiples of h.
  for (long k = 0; k <= static_cast<long>(std::ceil(t_max)); ++k) {
    accumulate(XReal(k, w), sum, absolute);
  }
  std::vector<XReal> previous(m);
  for (std::size_t c = 0; c < m; ++c) previous[c] = sum[c] * h;

  XReal relative = XReal::pow2(-p - 8, w);
  XReal floor_factor = XReal::pow2(-w + 16, w);
  for (int level = 1; level <= 12; ++level) {
    h /= 2;
    long count = static_cast<long>(std::ceil(t_max / h.to_double()));
    for (long k = 1; k <= count; k += 2) accumulate(h * k, sum, absolute);
    std::vector<XReal> current(m);
    bool done = level >= 3;
    std::vector<XReal> error(m);
    for (std::size_t c = 0; c < m; ++c) {
      current[c] = sum[c] * h;
      error[c] = abs(current[c] - previous[c]);
      XReal tol = max(relative * abs(current[c]), floor_factor * absolute[c] * h);
      if (error[c] > tol) done = false;
    }
    if (done) {
      IntervalSums out{current, {}, error, evaluations};
      for (std::size_t c = 0; c < m; ++c) out.absolute.push_back(absolute[c] * h);
      return out;
    }
    previous = std::move(current);
  }
  throw NonConvergence("quadrature: tanh-sinh levels did not converge");
}

}  // namespace

Decay Decay::gaussian(double a, double scale, double power) {
  return Decay{a, 2.0, std::log(scale), power, 0.0};
}

Decay Decay::exponential(double a, double scale, double power) {
  return Decay{a, 1.0, std::log(scale), power, 0.0};
}

Decay Decay::stretched(double rate, double kappa, double scale, double power) {
  return Decay{rate, kappa, std::log(scale), power, 0.0};
}

double Decay::log_tail(double r) const {
  // int_R^inf r^s e^{-lambda r^k} dr <= R^{s-k+1} e^{-lambda R^k} / (lambda k)
  //   / (1 - (s-k+1)/(lambda k R^k))   when s-k+1 > 0.
  if (r <= 0.0) return std::numeric_limits<double>::infinity();
  double e = power - kappa + 1.0;
  double rk = std::pow(r, kappa);
  double result = log_scale + e * std::log(r) - rate * rk - std::log(rate * kappa);
  if (e > 0.0) {
    double q = e / (rate * kappa * rk);
    if (q >= 1.0) return std::numeric_limits<double>::infinity();
    result -= std::log1p(-q);
  }
  return result;
}

double Decay::log_total() const {
  double s1 = (power + 1.0) / kappa;
  return log_scale + std::lgamma(s1) - std::log(kappa) - s1 * std::log(rate);
}

double Decay::radius_for(double log_target) const {
  double lo = std::max(r_min, 1e-3);
  if (log_tail(lo) <= log_target) return lo;
  double hi = std::max(2.0 * lo, 1.0);
  while (log_tail(hi) > log_target) {
    hi *= 2.0;
    if (hi > 1e12) throw NonConvergence("quadrature: tail radius out of range");
  }
  for (int i = 0; i < 60; ++i) {
    double mid = 0.5 * (lo + hi);
    if (log_tail(mid) > log_target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

const GaussLegendreRule& gauss_legendre(int n, Bits bits) {
  static std::mutex mutex;
  static std::map<std::pair<int, Bits>, std::unique_ptr<GaussLegendreRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{n, bits}];
  if (!slot) slot = std::make_unique<GaussLegendreRule>(compute_rule(n, bits));
  return *slot;
}

std::vector<QuadratureResult<XReal>> quad_interval_batch(const VectorIntegrand& f,
                                                         std::size_t components,
                                                         const XReal& lo, const XReal& hi,
                                                         Bits p) {
  Bits w = p + special_function_guard_bits;
  PrecisionGuard guard(w);
  IntervalSums s = integrate_interval(f, components, lo, hi, p, w);
  std::vector<QuadratureResult<XReal>> out;
  for (std::size_t c = 0; c < components; ++c) {
    out.push_back({s.value[c].with_precision(p), s.error[c].with_precision(p), s.evaluations});
  }
  return out;
}

QuadratureResult<XReal> quad_interval(const ScalarIntegrand& f, const XReal& lo,
                                      const XReal& hi, Bits p) {
  VectorIntegrand g = [&](const XReal& r, std::span<XReal> out) { out[0] = f(r); };
  return quad_interval_batch(g, 1, lo, hi, p).front();
}

std::vector<QuadratureResult<XReal>> quad_tanh_sinh_batch(const VectorIntegrand& f,
                                                          std::size_t components,
                                                          const XReal& lo, const XReal& hi,
                                                          Bits p) {
  Bits w = p + special_function_guard_bits;
  PrecisionGuard guard(w);
  IntervalSums s = tanh_sinh(f, components, lo, hi, p, w);
  std::vector<QuadratureResult<XReal>> out;
  for (std::size_t c = 0; c < components; ++c) {
    out.push_back({s.value[c].with_precision(p), s.error[c].with_precision(p), s.evaluations});
  }
  return out;
}

std::vector<QuadratureResult<XReal>> quad_semiinf_batch(const VectorIntegrand& f,
                                                        std::size_t components,
                                                        const Decay& decay, Bits p) {
  Bits w = p + special_function_guard_bits;
  PrecisionGuard guard(w);
  const double ln2 = std::log(2.0);
  double target = decay.log_total() - (static_cast<double>(p) + 32.0) * ln2;
  double radius = decay.radius_for(target);
  double r0 = std::min(1.0, radius / 4);

  IntervalSums s = tanh_sinh(f, components, XReal(0L, w), XReal(r0, w), p, w);
  IntervalSums body = integrate_interval(f, components, XReal(r0, w), XReal(radius, w), p, w);
  for (std::size_t c = 0; c < components; ++c) {
    s.value[c] += body.value[c];
    s.absolute[c] += body.absolute[c];
    s.error[c] += body.error[c];
  }
  long evaluations = s.evaluations + body.evaluations;

  // Grow R until the tail bound is negligible against every component.
  for (int round = 0; round < 8; ++round) {
    double needed = radius;
    for (std::size_t c = 0; c < components; ++c) {
      double scale = s.value[c].is_zero() ? s.absolute[c].log2_abs() : s.value[c].log2_abs();
      if (!std::isfinite(scale)) continue;
      double goal = (scale - static_cast<double>(p) - 16.0) * ln2;
      if (decay.log_tail(radius) > goal) needed = std::max(needed, decay.radius_for(goal - ln2));
    }
    if (needed <= radius) break;
    IntervalSums extra =
        integrate_interval(f, components, XReal(radius, w), XReal(needed, w), p, w);
    for (std::size_t c = 0; c < components; ++c) {
      s.value[c] += extra.value[c];
      s.absolute[c] += extra.absolute[c];
      s.error[c] += extra.error[c];
    }
    evaluations += extra.evaluations;
    radius = needed;
  }

  XReal tail = exp(XReal(decay.log_tail(radius), w));
  std::vector<QuadratureResult<XReal>> out;
  for (std::size_t c = 0; c < components; ++c) {
    out.push_back({s.value[c].with_precision(p), (s.error[c] + tail).with_precision(p),
                   evaluations});
  }
  return out;
}

QuadratureResult<XReal> quad_semiinf(const ScalarIntegrand& f, const Decay& decay, Bits p) {
  VectorIntegrand g = [&](const XReal& r, std::span<XReal> out) { out[0] = f(r); };
  return quad_semiinf_batch(g, 1, decay, p).front();
}

}  // namespace opoly::numerics
