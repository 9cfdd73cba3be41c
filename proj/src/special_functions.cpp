#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "opoly/numerics.hpp"

namespace opoly::numerics {

namespace {

constexpr double kLog2E = 1.4426950408889634074;
constexpr long kMaxSeriesTerms = 1'000'000;

bool is_nonpositive_integer(const XReal& x) { return x.is_integer() && x <= 0; }

Bits guarded(Bits p) { return p + special_function_guard_bits; }

Bits ceil_bits(double b) { return static_cast<Bits>(std::ceil(std::max(b, 0.0))); }

// Sup over j >= k of |term_{j+1} / term_j|, or +inf when k is too small for
// the elementary bound to hold.
double ratio_bound(std::span<const double> nums, std::span<const double> dens, double x_abs,
                   const TermWeight& weight, long k) {
  const double kk = static_cast<double>(k);
  double r = x_abs;
  std::size_t paired = std::min(nums.size(), dens.size());
  for (std::size_t i = 0; i < paired; ++i) {
    if (kk <= dens[i]) return INFINITY;
    r *= (nums[i] + kk) / (kk - dens[i]);
  }
  for (std::size_t i = paired; i < dens.size(); ++i) {
    if (kk <= dens[i]) return INFINITY;
    r /= kk - dens[i];
  }
  if (nums.size() > dens.size()) {
    // One numerator left over, paired with the k! factor.
    r *= std::max(1.0, (nums[paired] + kk) / (kk + 1.0));
  } else {
    r /= kk + 1.0;
  }
  if (weight.order > 0) {
    double lo = static_cast<double>(weight.offset + weight.step * k - weight.order + 1);
    if (lo <= 0) return INFINITY;
    double hi = static_cast<double>(weight.offset + weight.step * (k + 1));
    r *= std::pow(hi / lo, static_cast<double>(weight.order));
  }
  return r;
}

XReal falling_factorial(long top, long order, Bits bits) {
  XReal r(1L, bits);
  for (long i = 0; i < order; ++i) {
    if (top - i == 0) return XReal(0L, bits);
    r *= top - i;
  }
  return r;
}

// Large-argument expansions: sum_k a_k(nu)/x^k with
// a_k = prod_{j<=k} (4nu^2 - (2j-1)^2) / (k! 8^k). Returns nullopt when the
// smallest term is not below 2^-bits relative.
struct AsymptoticParts {
  XReal even;  // sum over even k with alternating signs (-1)^(k/2)
  XReal odd;   // sum over odd k with alternating signs (-1)^((k-1)/2)
  XReal all;   // plain sum over all k
};

std::optional<AsymptoticParts> hankel_asymptotic(const XReal& nu, const XReal& x, Bits bits) {
  XReal mu = 4 * nu * nu;
  XReal term(1L, bits);
  AsymptoticParts parts{XReal(1L, bits), XReal(0L, bits), XReal(1L, bits)};
  XReal tolerance = XReal::pow2(-bits, bits);
  XReal previous = abs(term);
  for (long k = 1; k < 100000; ++k) {
    long odd = 2 * k - 1;
    term *= (mu - odd * odd);
    term /= 8 * k;
    term /= x;
    if (term.is_zero()) return parts;
    XReal size = abs(term);
    // Past the smallest term (and beyond the order, where the remainder is
    // bounded by the first neglected term): the expansion is exhausted.
    if (size > previous && k > std::abs(nu.to_double()) + 1) return std::nullopt;
    parts.all += term;
    if (k % 2 == 0) {
      parts.even += (k % 4 == 0) ? term : -term;
    } else {
      parts.odd += (k % 4 == 1) ? term : -term;
    }
    if (size < tolerance) return parts;
    previous = size;
  }
  return std::nullopt;
}

// (x/2)^nu / Gamma(nu+1) * 0F1(; nu+1; sign*x^2/4), i.e. J (sign -1) or I (+1).
XReal bessel_series(const XReal& nu, const XReal& x, int sign, Bits bits) {
  XReal xw = x.with_precision(bits);
  XReal nuw = nu.with_precision(bits);
  XReal arg = xw * xw / 4;
  if (sign < 0) arg = -arg;
  std::vector<XReal> dens{nuw + 1};
  SeriesSum s = hypergeometric_sum({}, dens, arg, bits);
  XReal half = xw / 2;
  return pow(half, nuw) * rgamma(nuw + 1, bits) * s.value;
}

// DLMF 10.31.1: K_n for integer n >= 0 by its power series.
XReal bessel_k_integer_series(long n, const XReal& x, Bits bits) {
  XReal xw = x.with_precision(bits);
  XReal h = xw / 2;
  XReal h2 = h * h;
  XReal gamma_e = XReal::euler_gamma(bits);

  XReal finite(0L, bits);
  if (n > 0) {
    // sum_{k<n} (n-k-1)!/k! (-h2)^k
    XReal fact(1L, bits);  // (n-1)!
    for (long j = 2; j < n; ++j) fact *= j;
    XReal term = fact;
    for (long k = 0; k < n; ++k) {
      finite += term;
      if (k + 1 < n) {
        term *= -h2;
        term /= (k + 1);
        term /= (n - k - 1);
      }
    }
    finite = finite * pow(h, -n) / 2;
  }

  XReal in = bessel_series(XReal(n, bits), xw, +1, bits);
  XReal log_part = log(h) * in;
  if (n % 2 == 0) log_part = -log_part;

  // sum_k (psi(k+1) + psi(n+k+1)) h2^k / (k! (n+k)!)
  XReal term(1L, bits);
  for (long j = 2; j <= n; ++j) term /= j;
  XReal harmonic_k(0L, bits);
  XReal harmonic_nk(0L, bits);
  for (long j = 1; j <= n; ++j) harmonic_nk += XReal(1L, bits) / j;
  XReal sum(0L, bits);
  XReal tolerance = XReal::pow2(-bits, bits);
  for (long k = 0; k < kMaxSeriesTerms; ++k) {
    XReal psi_sum = harmonic_k + harmonic_nk - 2 * gamma_e;
    XReal contribution = term * psi_sum;
    sum += contribution;
    double kk = static_cast<double>(k + 1);
    double ratio = h2.to_double() / (kk * (kk + static_cast<double>(n)));
    if (ratio < 0.5 && abs(contribution) * 4 <= tolerance * abs(sum)) break;
    term *= h2;
    term /= (k + 1);
    term /= (n + k + 1);
    harmonic_k += XReal(1L, bits) / (k + 1);
    harmonic_nk += XReal(1L, bits) / (n + k + 1);
  }
  XReal series_part = pow(h, n) * sum / 2;
  if (n % 2 == 1) series_part = -series_part;
  return finite + log_part + series_part;
}

}  // namespace

XReal gamma(const XReal& x, Bits p) {
  if (is_nonpositive_integer(x)) {
    throw PoleError("gamma: pole at non-positive integer " + x.to_string(20));
  }
  XReal r = make_result(guarded(p));
  mpfr_gamma(r.get(), x.get(), MPFR_RNDN);
  return r.with_precision(p);
}

XReal rgamma(const XReal& x, Bits p) {
  if (is_nonpositive_integer(x)) return XReal(0L, p);
  XReal r = make_result(guarded(p));
  mpfr_gamma(r.get(), x.get(), MPFR_RNDN);
  return (XReal(1L, guarded(p)) / r).with_precision(p);
}

double bessel_asymptotic_threshold(Bits bits) {
  return std::max(20.0, (static_cast<double>(bits) + 8.0) * 0.34657359027997264);
}

XReal bessel_j(const XReal& nu, const XReal& x, Bits p) {
  if (x < 0) throw DomainError("bessel_j: negative argument");
  if (nu.is_integer() && nu < 0) {
    XReal r = bessel_j(-nu, x, p);
    return (nu.to_long() % 2 == 0) ? r : -r;
  }
  if (x.is_zero()) {
    if (nu.is_zero()) return XReal(1L, p);
    if (nu > 0) return XReal(0L, p);
    throw DomainError("bessel_j: J_nu(0) is infinite for negative non-integer nu");
  }
  Bits w = guarded(p);
  double xd = x.to_double();
  double nud = nu.to_double();
  if (xd > bessel_asymptotic_threshold(w) + 0.5 * nud * nud) {
    XReal xw = x.with_precision(w);
    if (auto parts = hankel_asymptotic(nu.with_precision(w), xw, w)) {
      XReal pi = XReal::pi(w);
      XReal omega = xw - (nu.with_precision(w) / 2 + XReal(1L, w) / 4) * pi;
      XReal amplitude = sqrt(2 / (pi * xw));
      return (amplitude * (parts->even * cos(omega) - parts->odd * sin(omega))).with_precision(p);
    }
  }
  // Terms of the ascending series peak near e^x.
  Bits ws = w + ceil_bits(xd * kLog2E) + 8;
  return bessel_series(nu, x, -1, ws).with_precision(p);
}

XReal bessel_i(const XReal& nu, const XReal& x, Bits p) {
  if (x < 0) throw DomainError("bessel_i: negative argument");
  if (nu.is_integer() && nu < 0) return bessel_i(-nu, x, p);
  if (x.is_zero()) {
    if (nu.is_zero()) return XReal(1L, p);
    if (nu > 0) return XReal(0L, p);
    throw DomainError("bessel_i: I_nu(0) is infinite for negative non-integer nu");
  }
  return bessel_series(nu, x, +1, guarded(p) + 8).with_precision(p);
}

XReal bessel_k(const XReal& nu_in, const XReal& x, Bits p) {
  if (x <= 0) throw DomainError("bessel_k: argument must be positive");
  XReal nu = abs(nu_in);
  Bits w = guarded(p);
  double xd = x.to_double();
  double nud = nu.to_double();
  if (xd > bessel_asymptotic_threshold(w) + 0.5 * nud * nud) {
    XReal xw = x.with_precision(w);
    if (auto parts = hankel_asymptotic(nu.with_precision(w), xw, w)) {
      XReal pi = XReal::pi(w);
      return (sqrt(pi / (2 * xw)) * exp(-xw) * parts->all).with_precision(p);
    }
  }
  // I_nu grows like e^x while K_nu decays like e^-x.
  Bits ws = w + ceil_bits(2.0 * xd * kLog2E) + 16;
  if (nu.is_integer()) {
    return bessel_k_integer_series(nu.to_long(), x, ws).with_precision(p);
  }
  XReal nuw = nu.with_precision(ws);
  XReal difference = bessel_series(-nuw, x, +1, ws) - bessel_series(nuw, x, +1, ws);
  XReal pi = XReal::pi(ws);
  return (pi / (2 * sin_pi(nuw)) * difference).with_precision(p);
}

SeriesSum hypergeometric_sum(std::span<const XReal> numerators,
                             std::span<const XReal> denominators, const XReal& x, Bits bits,
                             TermWeight weight) {
  bool terminating = false;
  std::vector<XReal> a;
  std::vector<XReal> b;
  std::vector<double> a_abs;
  std::vector<double> b_abs;
  for (const auto& v : numerators) {
    if (is_nonpositive_integer(v)) terminating = true;
    a.push_back(v.with_precision(bits));
    a_abs.push_back(std::fabs(v.to_double()));
  }
  for (const auto& v : denominators) {
    if (is_nonpositive_integer(v)) {
      throw ParameterError("genhyp: denominator parameter " + v.to_string(20) +
                           " is a non-positive integer");
    }
    b.push_back(v.with_precision(bits));
    b_abs.push_back(std::fabs(v.to_double()));
  }
  XReal xw = x.with_precision(bits);
  if (!terminating) {
    if (a.size() > b.size() + 1) {
      throw ConvergenceError("genhyp: series with more than q+1 numerators diverges");
    }
    if (a.size() == b.size() + 1 && abs(xw) >= 1) {
      throw ConvergenceError("genhyp: argument outside the unit disc of convergence");
    }
  }
  // Pair the largest numerators with the smallest denominators so that the
  // ratio bound tends to the true asymptotic ratio.
  std::vector<double> a_sorted = a_abs;
  std::vector<double> b_sorted = b_abs;
  std::sort(a_sorted.begin(), a_sorted.end(), std::greater<>());
  std::sort(b_sorted.begin(), b_sorted.end());

  const double x_abs = std::fabs(xw.to_double());
  SeriesSum out{XReal(0L, bits), XReal(0L, bits), XReal(0L, bits), 0};
  XReal t(1L, bits);
  XReal tolerance = XReal::pow2(-bits, bits);
  for (long k = 0;; ++k) {
    if (k >= kMaxSeriesTerms) {
      throw ConvergenceError("genhyp: no convergence within " + std::to_string(kMaxSeriesTerms) +
                             " terms");
    }
    XReal u = weight.order > 0 ? t * falling_factorial(weight.offset + weight.step * k,
                                                       weight.order, bits)
                               : t;
    out.value += u;
    out.magnitude += abs(u);
    out.terms = k + 1;

    t *= xw;
    for (const auto& ai : a) t *= ai + k;
    for (const auto& bj : b) t /= bj + k;
    t /= k + 1;
    if (t.is_zero()) break;

    double r = ratio_bound(a_sorted, b_sorted, x_abs, weight, k + 1);
    if (r < 1.0) {
      XReal next = weight.order > 0
                       ? t * falling_factorial(weight.offset + weight.step * (k + 1), weight.order,
                                               bits)
                       : t;
      XReal bound = abs(next) / (1.0 - r);
      if (bound <= tolerance * abs(out.value)) {
        out.truncation_bound = bound;
        break;
      }
    }
  }
  return out;
}

std::vector<SeriesSum> hypergeometric_sums(std::span<const Rational> numerators,
                                           std::span<const Rational> denominators,
                                           const XReal& x, Bits bits, long offset, long step,
                                           int max_order) {
  bool terminating = false;
  std::vector<double> a_abs;
  std::vector<double> b_abs;
  for (const auto& r : numerators) {
    if (r.num <= 0 && r.num % r.den == 0) terminating = true;
    a_abs.push_back(std::fabs(r.value()));
  }
  for (const auto& r : denominators) {
    if (r.num <= 0 && r.num % r.den == 0) {
      throw ParameterError("genhyp: denominator parameter " + std::to_string(r.num) + "/" +
                           std::to_string(r.den) + " is a non-positive integer");
    }
    b_abs.push_back(std::fabs(r.value()));
  }
  XReal xw = x.with_precision(bits);
  if (!terminating && numerators.size() > denominators.size() + 1) {
    throw ConvergenceError("genhyp: series with more than q+1 numerators diverges");
  }
  if (!terminating && numerators.size() == denominators.size() + 1 && abs(xw) >= 1) {
    throw ConvergenceError("genhyp: argument outside the unit disc of convergence");
  }
  std::sort(a_abs.begin(), a_abs.end(), std::greater<>());
  std::sort(b_abs.begin(), b_abs.end());
  const double x_abs = std::fabs(xw.to_double());
  const TermWeight bound_weight{offset, step, max_order};

  std::vector<SeriesSum> out(max_order + 1,
                             SeriesSum{XReal(0L, bits), XReal(0L, bits), XReal(0L, bits), 0});
  XReal t(1L, bits);
  XReal u(0L, bits);
  XReal tolerance = XReal::pow2(-bits, bits);
  for (long k = 0;; ++k) {
    if (k >= kMaxSeriesTerms) {
      throw ConvergenceError("genhyp: no convergence within " + std::to_string(kMaxSeriesTerms) +
                             " terms");
    }
    long top = offset + step * k;
    u = t;
    for (int j = 0; j <= max_order; ++j) {
      if (j > 0) u *= top - j + 1;
      out[j].value += u;
      out[j].magnitude += abs(u);
      out[j].terms = k + 1;
    }

    t *= xw;
    for (const auto& r : numerators) {
      t *= r.num + k * r.den;
      t /= r.den;
    }
    for (const auto& r : denominators) {
      t *= r.den;
      t /= r.num + k * r.den;
    }
    t /= k + 1;
    if (t.is_zero()) break;

    double ratio = ratio_bound(a_abs, b_abs, x_abs, bound_weight, k + 1);
    if (ratio < 1.0) {
      // The weight of order max_order dominates every lower order once the
      // ratio bound applies, so one tail estimate covers all of them.
      XReal next = t * falling_factorial(offset + step * (k + 1), max_order, bits);
      XReal bound = abs(next) / (1.0 - ratio);
      bool done = true;
      for (const auto& sum : out) {
        if (bound > tolerance * abs(sum.value)) {
          done = false;
          break;
        }
      }
      if (done) {
        for (auto& sum : out) sum.truncation_bound = bound;
        break;
      }
    }
  }
  return out;
}

XReal genhyp(std::span<const XReal> numerators, std::span<const XReal> denominators,
             const XReal& x, Bits p) {
  Bits w = guarded(p);
  for (int attempt = 0; attempt < 6; ++attempt) {
    SeriesSum s = hypergeometric_sum(numerators, denominators, x, w);
    if (s.value.is_zero()) return XReal(0L, p);
    double lost = s.magnitude.log2_abs() - s.value.log2_abs();
    if (lost <= static_cast<double>(w - p) - 8.0) return s.value.with_precision(p);
    w = p + special_function_guard_bits + ceil_bits(lost) + 16;
  }
  throw PrecisionError("genhyp: cancellation not covered after raising precision");
}

}  // namespace opoly::numerics
