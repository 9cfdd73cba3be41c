#include "opoly/density.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace opoly::density {

namespace {

using numerics::Decay;
using numerics::QuadratureResult;

long mod(long x, long m) { return ((x % m) + m) % m; }

XReal factorial(long n, Bits bits) {
  XReal r(1L, bits);
  for (long k = 2; k <= n; ++k) r *= k;
  return r;
}

// Envelope for (2/pi) s^alpha e^(-a cos(pi/d) s^2) K_q(c s^d), s >= 1. Two
// bounds are available (Gaussian factor, or the e^-x decay of K_q); the one
// with the smaller truncation radius wins.
Decay rotated_decay(int d, double a, double c, long q, long alpha_max, Bits p) {
  double kq1 = numerics::bessel_k(XReal(q, 64), XReal(c, 64), 64).to_double();
  double cos_d = std::cos(M_PI / d);
  Decay gaussian = Decay::gaussian(a * cos_d, 2.0 / M_PI * kq1, static_cast<double>(alpha_max));
  gaussian.r_min = 1.0;
  // sqrt(x) e^x K_q(x) is monotone, so K_q(x) <= B sqrt(pi/2x) e^-x for x >= c.
  double b = std::max(1.0, kq1 * std::sqrt(2.0 * c / M_PI) * std::exp(c)) * 1.0001;
  Decay stretched = Decay::stretched(c, static_cast<double>(d),
                                     2.0 / M_PI * b * std::sqrt(M_PI / (2.0 * c)),
                                     static_cast<double>(alpha_max) - d / 2.0);
  stretched.r_min = 1.0;
  if (cos_d <= 1e-12) return stretched;
  double target = -(static_cast<double>(p) + 32.0) * std::log(2.0);
  double rg = gaussian.radius_for(gaussian.log_total() + target);
  double rs = stretched.radius_for(stretched.log_total() + target);
  return rs < rg ? stretched : gaussian;
}

}  // namespace

XReal PotentialSpec::strength(Bits bits) const {
  if (t) return t->with_precision(bits);
  return XReal(1L, bits) / d;
}

void PotentialSpec::validate() const {
  if (d < 1) throw DomainError("potential: degree d must be at least 1");
  if (!(a >= 0)) throw DomainError("potential: a must be non-negative");
}

int SignData::sign_factor_exponent(long m) const {
  long two_d = 2L * d;
  long ell = mod(m, d);
  long e = epsilon_exponent;
  // (-eps)^(-chi) eps^m = omega^((d + e)(-chi) + e m); conjugation negates.
  long inner = -(static_cast<long>(d) + e) * chi[static_cast<std::size_t>(ell)] + e * mod(m, two_d);
  return static_cast<int>(mod(-inner, two_d));
}

XComplex SignData::sign_factor(long m, Bits bits) const {
  XReal angle = XReal(static_cast<long>(sign_factor_exponent(m)), bits) / d;
  return XComplex(cos_pi(angle), sin_pi(angle));
}

int SignData::rho(long n) const { return density::rho(d, n); }

int rho(int d, long n) {
  long ell = mod(n, d);
  long k = (n - ell) / d;
  return ((ell + k) % 2 == 0) ? 1 : -1;
}

SignData sign_data(int d, int epsilon_exponent) {
  if (d < 1) throw DomainError("sign_data: d must be at least 1");
  if (epsilon_exponent % 2 == 0) {
    throw DomainError("sign_data: epsilon exponent must be odd so that epsilon^d = -1");
  }
  SignData s;
  s.d = d;
  s.epsilon_exponent = static_cast<int>(mod(epsilon_exponent, 2L * d));
  XReal angle = XReal(static_cast<long>(s.epsilon_exponent), default_precision_bits) / d;
  s.epsilon = XComplex(cos_pi(angle), sin_pi(angle));
  for (int ell = 0; ell < d; ++ell) {
    s.chi.push_back(ell);
    bool last = ell == d - 1;
    s.tau.push_back(last && (d - 1) % 2 == 1 ? -1 : 1);
  }
  return s;
}

std::vector<QuadratureResult<XReal>> radial_integrals_real_axis(int d, const XReal& a,
                                                                const XReal& c, long q,
                                                                const std::vector<long>& alphas,
                                                                Bits p) {
  Bits w = p + special_function_guard_bits;
  PrecisionGuard guard(w);
  XReal aw = a.with_precision(w);
  XReal cw = c.with_precision(w);
  XReal order(q, w);
  long alpha_max = *std::max_element(alphas.begin(), alphas.end());
  numerics::VectorIntegrand f = [&](const XReal& r, std::span<XReal> out) {
    XReal kernel = exp(-aw * r * r) * numerics::bessel_j(order, cw * pow(r, static_cast<long>(d)), w);
    for (std::size_t j = 0; j < alphas.size(); ++j) out[j] = pow(r, alphas[j]) * kernel;
  };
  // |J_q| <= 1
  Decay decay = Decay::gaussian(a.to_double(), 1.0, static_cast<double>(alpha_max));
  decay.r_min = 1.0;
  return numerics::quad_semiinf_batch(f, alphas.size(), decay, p);
}

std::vector<QuadratureResult<XReal>> radial_integrals_rotated(int d, const XReal& a,
                                                              const XReal& c, long q,
                                                              const std::vector<long>& alphas,
                                                              Bits p) {
  if (d < 2) throw DomainError("rotated radial integral needs d >= 2");
  for (long alpha : alphas) {
    if (alpha + 1 <= d * std::abs(q)) {
      throw DomainError("rotated radial integral diverges at the origin for alpha + 1 <= d |q|");
    }
  }
  Bits w = p + special_function_guard_bits;
  PrecisionGuard guard(w);
  XReal aw = a.with_precision(w);
  XReal cw = c.with_precision(w);
  XReal order(q, w);
  XReal inv_d = XReal(1L, w) / d;
  XReal gauss_rate = aw * cos_pi(inv_d);
  XReal phase_rate = aw * sin_pi(inv_d);
  XReal two_over_pi = 2 / XReal::pi(w);

  std::vector<XReal> cos_beta;
  std::vector<XReal> sin_beta;
  for (long alpha : alphas) {
    XReal beta = XReal(alpha + 1, w) / (2L * d) - XReal(q + 1, w) / 2;
    cos_beta.push_back(cos_pi(beta));
    sin_beta.push_back(sin_pi(beta));
  }
  long alpha_max = *std::max_element(alphas.begin(), alphas.end());

  numerics::VectorIntegrand f = [&](const XReal& s, std::span<XReal> out) {
    XReal s2 = s * s;
    XReal kernel = two_over_pi * exp(-gauss_rate * s2) *
                   numerics::bessel_k(order, cw * pow(s, static_cast<long>(d)), w);
    XReal psi = phase_rate * s2;
    XReal cp = cos(psi);
    XReal sp = sin(psi);
    for (std::size_t j = 0; j < alphas.size(); ++j) {
      out[j] = pow(s, alphas[j]) * kernel * (cos_beta[j] * cp + sin_beta[j] * sp);
    }
  };
  Decay decay = rotated_decay(d, a.to_double(), c.to_double(), q, alpha_max, p);
  return numerics::quad_semiinf_batch(f, alphas.size(), decay, p);
}

namespace {

std::vector<QuadratureResult<XReal>> radial_integrals(int d, const XReal& a, const XReal& c,
                                                      long q, const std::vector<long>& alphas,
                                                      Bits p) {
  if (d <= 2) return radial_integrals_real_axis(d, a, c, q, alphas, p);
  return radial_integrals_rotated(d, a, c, q, alphas, p);
}

// (z^n, z^m) (m the second index) from the radial integral I of J_|q| with |c|:
//   s(m) 2 pi i^q (+-1) I, the sign collecting J_-q = (-1)^q J_q and c < 0.
XComplex assemble(const SignData& signs, long m, long q, bool negative_c, const XReal& radial,
                  Bits bits) {
  long parity = 0;
  if (q < 0) parity += q;
  if (negative_c) parity += q;
  XReal magnitude = 2 * XReal::pi(bits) * radial;
  if (mod(parity, 2) == 1) magnitude = -magnitude;
  XComplex factor = signs.sign_factor(m, bits) * i_pow(q, bits);
  return XComplex(factor.real() * magnitude, factor.imag() * magnitude);
}

}  // namespace

Moment moment_with_error(const PotentialSpec& spec, long n, long m, Bits p) {
  spec.validate();
  if (n < 0 || m < 0) throw DomainError("moment: negative power");
  Bits w = p + special_function_guard_bits;
  PrecisionGuard guard(w);
  const int d = spec.d;
  if (mod(n - m, d) != 0) return {XComplex(XReal(0L, p), XReal(0L, p)), XReal(0L, p)};
  if (spec.a <= 0) throw DomainError("moment: a must be positive");
  long q = (n - m) / d;
  SignData signs = sign_data(d);
  XReal t = spec.strength(w);
  XReal aw = spec.a.with_precision(w);

  if (t.is_zero()) {
    // J_q(0) = [q == 0]: (z^n, z^n) = s(n) pi n! / a^(n+1).
    if (q != 0) return {XComplex(XReal(0L, p), XReal(0L, p)), XReal(0L, p)};
    XReal radial = factorial(n, w) / (2 * pow(aw, n + 1));
    XComplex v = assemble(signs, m, 0, false, radial, w);
    return {with_precision(v, p), max_abs(v).with_precision(p) * XReal::pow2(-p, p)};
  }
  XReal c = 2 * abs(t);
  auto r = radial_integrals(d, aw, c, std::abs(q), {n + m + 1}, p + 8).front();
  XComplex v = assemble(signs, m, q, t < 0, r.value.with_precision(w), w);
  XReal error = 2 * XReal::pi(w) * r.error_estimate + max_abs(v) * XReal::pow2(-p, w);
  return {with_precision(v, p), error.with_precision(p)};
}

XComplex moment(const PotentialSpec& spec, long n, long m, Bits p) {
  return moment_with_error(spec, n, m, p).value;
}

GramMatrix gram(const PotentialSpec& spec, long N, Bits p) {
  spec.validate();
  if (N < 0) throw DomainError("gram: N must be non-negative");
  if (spec.a <= 0) throw DomainError("gram: a must be positive");
  Bits w = p + special_function_guard_bits;
  PrecisionGuard guard(w);
  const int d = spec.d;
  const long size = N + 1;
  GramMatrix g;
  g.N = N;
  g.precision = p;
  g.entries = XCMatrix::Constant(size, size, XComplex(XReal(0L, w), XReal(0L, w)));
  g.errors = XMatrix::Constant(size, size, XReal(0L, w));
  SignData signs = sign_data(d);
  XReal t = spec.strength(w);
  XReal aw = spec.a.with_precision(w);
  XReal two_pi = 2 * XReal::pi(w);

  for (long q = 0; q * d <= N; ++q) {
    std::vector<long> rows;  // m; the pair is (m + q d, m)
    std::vector<long> alphas;
    for (long m = 0; m + q * d <= N; ++m) {
      rows.push_back(m);
      alphas.push_back(2 * m + q * d + 1);
    }
    std::vector<QuadratureResult<XReal>> radial;
    if (t.is_zero()) {
      for (long m : rows) {
        XReal value = q == 0 ? factorial(m, w) / (2 * pow(aw, m + 1)) : XReal(0L, w);
        radial.push_back({value, abs(value) * XReal::pow2(-p - 8, w), 0});
      }
    } else {
      radial = radial_integrals(d, aw, 2 * abs(t), q, alphas, p + 8);
    }
    for (std::size_t j = 0; j < rows.size(); ++j) {
      long m = rows[j];
      long n = m + q * d;
      XReal value = radial[j].value.with_precision(w);
      XReal error = two_pi * radial[j].error_estimate + XReal::pow2(-p, w) * two_pi * abs(value);
      XComplex upper = assemble(signs, m, q, t < 0, value, w);
      XComplex lower = assemble(signs, n, -q, t < 0, value, w);
      XComplex skew = upper - std::conj(lower);
      if (max_abs(skew) > XReal::pow2(12 - p, w) * max_abs(upper)) {
        throw NumericalError("gram: hermiticity violated at (" + std::to_string(n) + ", " +
                             std::to_string(m) + ")");
      }
      g.entries(n, m) = upper;
      g.entries(m, n) = std::conj(upper);
      g.errors(n, m) = error;
      g.errors(m, n) = error;
    }
  }
  return g;
}

RescaleResult rescale(const XReal& a, const XReal& t, int d) {
  if (d < 1) throw DomainError("rescale: d must be at least 1");
  if (t <= 0) {
    throw DomainError(
        "rescale: t must be positive (t < 0 is the complex conjugate of the model with -t)");
  }
  if (!(a > 0)) throw DomainError("rescale: a must be positive");
  Bits bits = std::min(a.precision(), t.precision());
  XReal lambda = pow(d * t.with_precision(bits), XReal(-1L, bits) / d);
  return {a * lambda * lambda, lambda};
}

}  // namespace opoly::density
