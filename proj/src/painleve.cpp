#include "opoly/painleve.hpp"

#include <algorithm>

#include "opoly/hfun.hpp"

namespace opoly::painleve {

namespace {

struct ForwardRun {
  std::vector<XReal> V;
  long lost_at = -1;  // index whose computation failed, or -1
};

ForwardRun forward(int d, const XReal& a, long N, Bits bits) {
  PrecisionGuard guard(bits);
  XReal aw = a.with_precision(bits);
  ForwardRun out;
  out.V = hfun::initial_conditions(d, aw, bits);
  std::vector<XReal> window(static_cast<std::size_t>(2 * d - 4));
  for (long n = 0; static_cast<long>(out.V.size()) <= N; ++n) {
    long base = n - d + 2;
    for (std::size_t i = 0; i < window.size(); ++i) {
      long idx = base + static_cast<long>(i);
      window[i] = idx < 0 ? XReal(0L, bits) : out.V[static_cast<std::size_t>(idx)];
    }
    try {
      out.V.push_back(step<XReal>(d, aw, window, n));
    } catch (const PositivityLost& e) {
      out.lost_at = e.index();
      break;
    }
  }
  return out;
}

XReal relation_lhs(const RecurrenceTrace& t, const XReal& a, long n) {
  const int d = t.d();
  auto V = [&](long i) { return i < 0 ? XReal(0L, a.precision()) : t.V[static_cast<std::size_t>(i)]; };
  XReal sum(0L, a.precision());
  for (long j = 0; j <= d - 2; ++j) {
    XReal product = V(n + j);
    for (long k = 1; k <= d - 2; ++k) product *= V(n + j - k);
    sum += product;
  }
  return V(n) + sum / (a * a);
}

}  // namespace

XReal RecurrenceTrace::v(long n) const {
  const int d = spec.d;
  if (d == 2) throw DomainError("standard form is undefined for d = 2");
  XReal a = spec.a.with_precision(precision);
  return pow(a, XReal(-2L, precision) / (d - 2)) * V.at(static_cast<std::size_t>(n));
}

RecurrenceTrace run(int d, const XReal& a, long N, Bits p) {
  if (d < 1) throw DomainError("run: d must be at least 1");
  if (!(a > 0)) throw DomainError("run: a must be positive");
  if (N < 0) throw DomainError("run: N must be non-negative");
  PrecisionGuard guard(p);
  RecurrenceTrace t;
  t.spec = density::PotentialSpec::canonical(d, a.with_precision(p));
  t.requested = N;
  t.precision = p;
  XReal aw = a.with_precision(p);
  if (d != 2) t.epsilon_std = pow(aw, XReal(-static_cast<long>(d), p) / (d - 2));

  if (d <= 2) {
    std::span<const XReal> none;
    for (long n = 0; n <= N; ++n) {
      t.V.push_back(step<XReal>(d, aw, none, n));
      t.V_errors.push_back(t.V.back() * XReal::pow2(-p, p));
    }
    t.validated_to = N;
    return t;
  }

  ForwardRun low = forward(d, a, N, p);
  ForwardRun high = forward(d, a, N, 2 * p);
  XReal tolerance = XReal::pow2(-p / 4, p);
  long common = static_cast<long>(std::min(low.V.size(), high.V.size()));
  for (long n = 0; n < common; ++n) {
    const XReal& x = high.V[static_cast<std::size_t>(n)];
    XReal diff = abs(low.V[static_cast<std::size_t>(n)] - x.with_precision(p));
    if (diff > tolerance * abs(x.with_precision(p))) break;
    t.validated_to = n;
  }
  if (high.lost_at >= 0 && t.validated_to >= high.lost_at - 1) {
    throw PositivityLost("run: positivity lost at V_" + std::to_string(high.lost_at) +
                             " although both precisions agree up to it",
                         high.lost_at);
  }
  for (long n = 0; n <= t.validated_to; ++n) {
    t.V.push_back(high.V[static_cast<std::size_t>(n)].with_precision(p));
    XReal gap = abs(low.V[static_cast<std::size_t>(n)] - t.V.back());
    t.V_errors.push_back(gap + t.V.back() * XReal::pow2(-p, p));
  }
  t.precision_exhausted = t.validated_to < N;
  return t;
}

std::vector<XReal> h_sequence(const RecurrenceTrace& trace, Bits p) {
  Bits w = p + special_function_guard_bits;
  PrecisionGuard guard(w);
  XReal h = hfun::h_derivatives(trace.d(), trace.spec.a, 0, w).front();
  std::vector<XReal> out{h.with_precision(p)};
  for (const auto& v : trace.V) {
    h *= v;
    out.push_back(h.with_precision(p));
  }
  return out;
}

std::vector<XReal> window_residuals(const RecurrenceTrace& trace) {
  const int d = trace.d();
  Bits w = trace.precision + special_function_guard_bits;
  PrecisionGuard guard(w);
  XReal a = trace.spec.a.with_precision(w);
  std::vector<XReal> out;
  long reach = std::max(d - 2, 0);
  for (long n = 0; n + reach <= trace.validated_to; ++n) {
    XReal rhs = XReal(n + 1, w) / a;
    out.push_back((abs(relation_lhs(trace, a, n) - rhs) / rhs).with_precision(trace.precision));
  }
  return out;
}

std::vector<XReal> standard_form_residuals(const RecurrenceTrace& trace) {
  const int d = trace.d();
  if (d < 3) throw DomainError("standard form residuals need d >= 3");
  Bits w = trace.precision + special_function_guard_bits;
  PrecisionGuard guard(w);
  XReal a = trace.spec.a.with_precision(w);
  XReal scale = pow(a, XReal(-2L, w) / (d - 2));
  XReal eps = trace.epsilon_std->with_precision(w);
  auto v = [&](long i) {
    return i < 0 ? XReal(0L, w) : scale * trace.V[static_cast<std::size_t>(i)];
  };
  std::vector<XReal> out;
  for (long n = 0; n + d - 2 <= trace.validated_to; ++n) {
    XReal lhs = v(n);
    for (long j = 0; j <= d - 2; ++j) {
      XReal product = v(n + j);
      for (long k = 1; k <= d - 2; ++k) product *= v(n + j - k);
      lhs += product;
    }
    XReal rhs = (n + 1) * eps;
    out.push_back((abs(lhs - rhs) / rhs).with_precision(trace.precision));
  }
  return out;
}

XReal dh_residual(int d, const XReal& a, long n, Bits p) {
  if (n < 0) throw DomainError("dh_residual: n must be non-negative");
  Bits w = p + p / 3 + 64;
  XReal aw = a.with_precision(w);
  XReal delta = XReal::pow2(-p / 3, w);
  auto hs = [&](const XReal& at) {
    RecurrenceTrace t = run(d, at, n + 1, p);
    if (t.validated_to < n) {
      throw PrecisionError("dh_residual: recurrence not validated up to n");
    }
    return h_sequence(t, p);
  };
  std::vector<XReal> plus = hs(aw + delta);
  std::vector<XReal> minus = hs(aw - delta);
  std::vector<XReal> centre = hs(aw);
  PrecisionGuard guard(w);
  auto at = [](const std::vector<XReal>& h, long i) { return h[static_cast<std::size_t>(i)]; };
  XReal derivative = (at(plus, n) - at(minus, n)) / (2 * delta);
  XReal rhs = -at(centre, n + 1);
  if (n - d + 1 >= 0) {
    XReal hn = at(centre, n);
    rhs += hn * hn / (aw * aw * at(centre, n - d + 1));
  }
  return (abs(derivative - rhs) / abs(at(centre, n + 1))).with_precision(p);
}

}  // namespace opoly::painleve
