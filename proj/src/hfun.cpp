#include "opoly/hfun.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace opoly::hfun {

namespace {

using numerics::Rational;
using numerics::SeriesSum;

struct Parameters {
  std::vector<Rational> numerators;
  std::vector<Rational> denominators;
};

Parameters phi_parameters(int d, int m) {
  Parameters params;
  params.numerators.push_back({m + 1, d});
  for (int j = m + 2; j <= d - 1; ++j) params.denominators.push_back({j, d});
  for (int j = d + 1; j <= m + d; ++j) params.denominators.push_back({j, d});
  return params;
}

// X = (-1)^(d+1) d^(2-d)
XReal argument_scale(int d, Bits bits) {
  XReal x = XReal(1L, bits) / pow(XReal(static_cast<long>(d), bits), static_cast<long>(d - 2));
  return d % 2 == 0 ? -x : x;
}

// Coefficient of phi_m in h:
//   pi d^(2/d-1) (-d^(2/d))^m / m! Gamma((m+1)/d) / Gamma(1-(m+1)/d).
XReal basis_coefficient(int d, int m, Bits bits) {
  XReal dd(static_cast<long>(d), bits);
  XReal two_over_d = XReal(2L, bits) / d;
  XReal c = XReal::pi(bits) * pow(dd, two_over_d - 1);
  XReal step = -pow(dd, two_over_d);
  for (int j = 1; j <= m; ++j) c = c * step / j;
  Rational r{m + 1, d};
  return c * numerics::gamma(r.to_xreal(bits), bits) *
         numerics::rgamma(1 - r.to_xreal(bits), bits);
}

struct PhiSeries {
  std::vector<XReal> value;      // phi_m^(k), k = 0..max_order
  std::vector<XReal> magnitude;  // same with |terms|
  std::vector<XReal> bound;      // truncation bound
};

// phi_m^(k)(a) = a^(m-k) sum_j T_j ff(m + d j, k) (a^d)^j at working precision w.
PhiSeries phi_series(int d, int m, const XReal& a, int max_order, Bits w) {
  PhiSeries out;
  if (a.is_zero()) {
    for (int k = 0; k <= max_order; ++k) {
      XReal v(0L, w);
      if (k == m) {
        v = XReal(1L, w);
        for (int j = 2; j <= m; ++j) v *= j;
      }
      // Only the j = 0 term can survive, and k < m + d.
      if (k >= m + d) throw DomainError("phi: derivative order too high at a = 0");
      out.value.push_back(v);
      out.magnitude.push_back(abs(v));
      out.bound.push_back(XReal(0L, w));
    }
    return out;
  }
  Parameters params = phi_parameters(d, m);
  XReal aw = a.with_precision(w);
  XReal x = argument_scale(d, w) * pow(aw, static_cast<long>(d));
  std::vector<SeriesSum> sums =
      numerics::hypergeometric_sums(params.numerators, params.denominators, x, w, m, d, max_order);
  for (int k = 0; k <= max_order; ++k) {
    XReal scale = pow(aw, static_cast<long>(m - k));
    out.value.push_back(sums[k].value * scale);
    out.magnitude.push_back(sums[k].magnitude * scale);
    out.bound.push_back(sums[k].truncation_bound * scale);
  }
  return out;
}

void require_basis_range(int d, int m) {
  if (d < 3) throw DomainError("phi: the hypergeometric basis needs d >= 3");
  if (m < 0 || m > d - 2) {
    throw DomainError("phi: index m=" + std::to_string(m) + " outside 0..d-2");
  }
}

Bits ceil_bits(double b) { return static_cast<Bits>(std::ceil(std::max(b, 0.0))); }

std::vector<XReal> closed_derivatives(int d, const XReal& a, int max_order, Bits p) {
  if (max_order > 1) {
    throw DomainError("h_derivatives: closed forms for d <= 2 provide orders 0 and 1");
  }
  Bits w = p + special_function_guard_bits;
  XReal aw = a.with_precision(w);
  XReal pi = XReal::pi(w);
  std::vector<XReal> out;
  if (d == 1) {
    if (aw <= 0) throw DomainError("h: a = 0 is not a regular point for d = 1");
    XReal e = exp(-1 / aw);
    out.push_back(pi / aw * e);
    if (max_order >= 1) out.push_back(pi * e * (1 / (aw * aw * aw) - 1 / (aw * aw)));
  } else {
    XReal s = aw * aw + 1;
    out.push_back(pi / sqrt(s));
    if (max_order >= 1) out.push_back(-pi * aw / (s * sqrt(s)));
  }
  for (auto& v : out) v = v.with_precision(p);
  return out;
}

// Bits by which the phi_m series exceed h: the terms of 1F(q) at argument
// x peak near exp(q |x|^(1/q)) with q = d - 2, while h stays O(1/a).
double cancellation_estimate(int d, double a) {
  double q = d - 2;
  double x = std::pow(a, d) / std::pow(static_cast<double>(d), d - 2);
  return 1.4426950408889634 * q * std::pow(x, 1.0 / q) + std::log2(a + 1.0);
}

// Above this many bits of cancellation, d = 3 switches to the Bessel form.
constexpr double kBesselSwitchBits = 4096;

// d = 3 from h = e^x sqrt(pi a/3) K_{1/6}(x), x = a^3/6:
//   h'/h = x' (1 - K_{5/6}/K_{1/6} - 1/(6x)) + 1/(2a),  x' = a^2/2,
// and higher orders from differentiating h'' = a h + a^2 h'.
std::vector<XReal> cubic_bessel_derivatives(const XReal& a, int max_order, Bits p) {
  Bits w = p + special_function_guard_bits + 2 * ceil_bits(std::log2(a.to_double() + 1.0)) + 16;
  PrecisionGuard guard(w);
  XReal aw = a.with_precision(w);
  XReal x = aw * aw * aw / 6;
  XReal nu = XReal(1L, w) / 6;
  XReal k1 = numerics::bessel_k(nu, x, w);
  XReal k5 = numerics::bessel_k(1 - nu, x, w);
  XReal h = exp(x) * sqrt(XReal::pi(w) * aw / 3) * k1;
  XReal dx = aw * aw / 2;
  std::vector<XReal> out{h};
  if (max_order >= 1) out.push_back(h * (dx * (1 - k5 / k1 - nu / x) + 1 / (2 * aw)));
  for (int j = 0; j + 2 <= max_order; ++j) {
    // D^j (a h + a^2 h')
    XReal next = aw * out[j] + aw * aw * out[j + 1] + 2 * j * aw * out[j];
    if (j >= 1) next += (j + j * (j - 1)) * out[j - 1];
    out.push_back(next);
  }
  for (auto& v : out) v = v.with_precision(p);
  return out;
}

}  // namespace

XReal phi(int d, int m, const XReal& a, int k, Bits p) {
  require_basis_range(d, m);
  if (k < 0) throw DomainError("phi: negative derivative order");
  if (a < 0) throw DomainError("phi: a must be non-negative");
  Bits w = p + special_function_guard_bits;
  for (int attempt = 0; attempt < 24; ++attempt) {
    PrecisionGuard guard(w);
    PhiSeries s = phi_series(d, m, a, k, w);
    const XReal& v = s.value[k];
    if (v.is_zero()) return XReal(0L, p);
    double lost = s.magnitude[k].log2_abs() - v.log2_abs();
    if (lost <= static_cast<double>(w - p) - 8.0) return v.with_precision(p);
    w = p + special_function_guard_bits + std::max(ceil_bits(lost) + 16, 2 * (w - p));
  }
  throw PrecisionError("phi: cancellation not covered after raising precision");
}

std::vector<XReal> h_derivatives(int d, const XReal& a, int max_order, Bits p,
                                 std::vector<XReal>* errors) {
  if (d < 1) throw DomainError("h: d must be at least 1");
  if (a < 0) throw DomainError("h: a must be non-negative");
  if (max_order < 0) throw DomainError("h: negative derivative order");
  if (d <= 2) {
    std::vector<XReal> v = closed_derivatives(d, a, max_order, p);
    if (errors) {
      errors->clear();
      for (const auto& x : v) errors->push_back(abs(x) * XReal::pow2(2 - p, p));
    }
    return v;
  }

  double estimate = a.is_zero() ? 0.0 : cancellation_estimate(d, a.to_double());
  if (d == 3 && estimate > kBesselSwitchBits) {
    std::vector<XReal> v = cubic_bessel_derivatives(a, max_order, p);
    if (errors) {
      errors->clear();
      for (const auto& x : v) errors->push_back(abs(x) * XReal::pow2(8 - p, p));
    }
    return v;
  }
  Bits w = p + special_function_guard_bits + ceil_bits(estimate) + 16;
  for (int attempt = 0; attempt < 24; ++attempt) {
    PrecisionGuard guard(w);
    std::vector<XReal> value(max_order + 1, XReal(0L, w));
    std::vector<XReal> magnitude(max_order + 1, XReal(0L, w));
    std::vector<XReal> truncation(max_order + 1, XReal(0L, w));
    for (int m = 0; m <= d - 2; ++m) {
      XReal c = basis_coefficient(d, m, w);
      PhiSeries s = phi_series(d, m, a, max_order, w);
      for (int k = 0; k <= max_order; ++k) {
        value[k] += c * s.value[k];
        magnitude[k] += abs(c) * s.magnitude[k];
        truncation[k] += abs(c) * s.bound[k];
      }
    }
    double lost = 0.0;
    for (int k = 0; k <= max_order; ++k) {
      if (value[k].is_zero()) {
        lost = static_cast<double>(w);
        break;
      }
      lost = std::max(lost, magnitude[k].log2_abs() - value[k].log2_abs());
    }
    if (lost <= static_cast<double>(w - p) - 8.0) {
      std::vector<XReal> out;
      if (errors) errors->clear();
      for (int k = 0; k <= max_order; ++k) {
        out.push_back(value[k].with_precision(p));
        if (errors) {
          // Rounding in the summation is bounded by the term magnitudes.
          XReal e = truncation[k] + magnitude[k] * XReal::pow2(16 - w, w) +
                    abs(value[k]) * XReal::pow2(-p, w);
          errors->push_back(e.with_precision(p));
        }
      }
      return out;
    }
    // A value swamped by rounding understates the loss, so grow at least
    // geometrically.
    w = p + special_function_guard_bits + std::max(ceil_bits(lost) + 16, 2 * (w - p));
  }
  throw PrecisionError("h: cancellation not covered after raising precision");
}

HEval h_eval(int d, const XReal& a, Bits p) {
  HEval r;
  r.d = d;
  r.a = a;
  r.precision = p;
  int max_order = std::max(0, d - 2);
  r.values = h_derivatives(d, a, max_order, p, &r.errors);
  r.error = XReal(0L, p);
  for (std::size_t k = 0; k < r.values.size(); ++k) {
    if (!r.values[k].is_zero()) r.error = max(r.error, r.errors[k] / abs(r.values[k]));
  }
  return r;
}

XReal h_closed(int d, const XReal& a, Bits p) {
  Bits w = p + special_function_guard_bits;
  PrecisionGuard guard(w);
  XReal aw = a.with_precision(w);
  XReal pi = XReal::pi(w);
  switch (d) {
    case 1:
      if (aw <= 0) throw DomainError("h_closed: a = 0 is not a regular point for d = 1");
      return (pi / aw * exp(-1 / aw)).with_precision(p);
    case 2:
      return (pi / sqrt(aw * aw + 1)).with_precision(p);
    case 3: {
      if (aw <= 0) throw DomainError("h_closed: the d = 3 Bessel form needs a > 0");
      XReal x = aw * aw * aw / 6;
      XReal k = numerics::bessel_k(XReal(1L, w) / 6, x, w);
      return (exp(x) * sqrt(pi * aw / 3) * k).with_precision(p);
    }
    case 4: {
      if (aw <= 0) throw DomainError("h_closed: the d = 4 Bessel form needs a > 0");
      XReal y = aw * aw / 4;
      XReal quarter = XReal(1L, w) / 4;
      XReal jm = numerics::bessel_j(-quarter, y, w);
      XReal jp = numerics::bessel_j(quarter, y, w);
      XReal combo = jm * jm - sqrt(XReal(2L, w)) * jm * jp + jp * jp;
      return (pi * pi * aw / 4 * combo).with_precision(p);
    }
    default:
      throw DomainError("h_closed: closed forms exist for d = 1..4 only");
  }
}

numerics::QuadratureResult<XReal> h_laplace(int d, const XReal& a, Bits p) {
  if (d < 1) throw DomainError("h_laplace: d must be at least 1");
  if (!(a > 0)) throw DomainError("h_laplace: a must be positive");
  Bits w = p + special_function_guard_bits;
  PrecisionGuard guard(w);
  XReal aw = a.with_precision(w);
  XReal pi = XReal::pi(w);
  XReal c = XReal(2L, w) / d;
  XReal zero(0L, w);
  const double ad = a.to_double();
  const double cd = 2.0 / d;

  if (d <= 2) {
    numerics::ScalarIntegrand f = [&](const XReal& t) {
      XReal arg = d == 1 ? c * sqrt(t) : c * t;
      return pi * exp(-aw * t) * numerics::bessel_j(zero, arg, w);
    };
    // |J_0| <= 1
    return numerics::quad_semiinf(f, numerics::Decay::exponential(ad, M_PI), p);
  }

  XReal inv_d = XReal(1L, w) / d;
  XReal damp = aw * cos_pi(inv_d);
  XReal turn = aw * sin_pi(inv_d);
  XReal angle = pi / d;
  XReal half_d = XReal(static_cast<long>(d), w) / 2;
  numerics::ScalarIntegrand f = [&](const XReal& u) {
    XReal k = numerics::bessel_k(zero, c * pow(u, half_d), w);
    return 2 * k * exp(-damp * u) * sin(angle - turn * u);
  };
  // Two envelopes for u >= 1: K_0(c u^(d/2)) <= K_0(c) with the exponential
  // factor, or K_0(x) <= sqrt(pi/2x) e^-x alone.
  double k0 = numerics::bessel_k(XReal(0L, 64), XReal(cd, 64), 64).to_double();
  numerics::Decay exponential = numerics::Decay::exponential(ad * std::cos(M_PI / d), 2 * k0);
  exponential.r_min = 1.0;
  numerics::Decay stretched =
      numerics::Decay::stretched(cd, d / 2.0, 2 * std::sqrt(M_PI / (2 * cd)), -d / 4.0);
  stretched.r_min = 1.0;
  double target = -(static_cast<double>(p) + 32.0) * std::log(2.0);
  double re = exponential.radius_for(exponential.log_total() + target);
  double rs = stretched.radius_for(stretched.log_total() + target);
  return numerics::quad_semiinf(f, rs < re ? stretched : exponential, p);
}

std::vector<XReal> initial_conditions(int d, const XReal& a, Bits p) {
  if (d <= 2) return {};
  std::vector<XReal> h = h_derivatives(d, a, d - 2, p);
  for (int j = 0; j <= d - 2; ++j) {
    int expected = j % 2 == 0 ? 1 : -1;
    if (h[j].sign() != expected) {
      throw SignError("initial_conditions: h^(" + std::to_string(j) + ")(a) has sign " +
                      std::to_string(h[j].sign()) + ", expected " + std::to_string(expected));
    }
  }
  std::vector<XReal> v;
  for (int j = 0; j <= d - 3; ++j) v.push_back(-h[j + 1] / h[j]);
  return v;
}

XReal ode_residual(int d, const XReal& a, Bits p) {
  std::vector<XReal> h = h_derivatives(d, a, std::max(1, d - 1), p);
  Bits w = p + special_function_guard_bits;
  XReal aw = a.with_precision(w);
  XReal top = h[static_cast<std::size_t>(d - 1)].with_precision(w);
  if ((d - 1) % 2 == 1) top = -top;
  XReal rhs = aw * h[0] + aw * aw * h[1];
  return (abs(top - rhs) / abs(aw * h[0])).with_precision(p);
}

}  // namespace opoly::hfun
