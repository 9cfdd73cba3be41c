#pragma once

// Special functions and quadrature at explicit precision.
//
// Every routine takes the target precision p in bits, works internally with
// guard bits, and returns a value rounded to p bits.

#include <functional>
#include <span>
#include <vector>

#include "opoly/eigen_support.hpp"
#include "opoly/errors.hpp"
#include "opoly/xreal.hpp"

namespace opoly::numerics {

/// Gamma(x); PoleError at non-positive integers.
XReal gamma(const XReal& x, Bits p);
/// 1/Gamma(x), which is entire (zero at the poles of Gamma).
XReal rgamma(const XReal& x, Bits p);

/// Bessel function of the first kind J_nu(x), x >= 0.
XReal bessel_j(const XReal& nu, const XReal& x, Bits p);
/// Modified Bessel function of the first kind I_nu(x), x >= 0.
XReal bessel_i(const XReal& nu, const XReal& x, Bits p);
/// Modified Bessel function of the second kind K_nu(x), x > 0.
XReal bessel_k(const XReal& nu, const XReal& x, Bits p);

/// Argument above which the large-x asymptotic expansions are accurate to
/// `bits`: the smallest term of those expansions is about e^(-2x).
double bessel_asymptotic_threshold(Bits bits);

/// Falling-factorial weight (offset + step*k)(offset + step*k - 1)...
/// (order factors) applied to the k-th term of a series; order 0 is 1.
struct TermWeight {
  long offset = 0;
  long step = 0;
  long order = 0;
};

struct SeriesSum {
  XReal value;
  /// Sum of the absolute values of the terms; log2(magnitude/|value|) is
  /// the number of bits lost to cancellation.
  XReal magnitude;
  /// Rigorous bound on the neglected tail.
  XReal truncation_bound;
  long terms = 0;
};

/// Sum of sum_k w(k) prod_i (a_i)_k / prod_j (b_j)_k * x^k / k! at working
/// precision `bits` (no automatic guard bits, no cancellation retry).
SeriesSum hypergeometric_sum(std::span<const XReal> numerators,
                             std::span<const XReal> denominators, const XReal& x,
                             Bits bits, TermWeight weight = {});

/// Exact rational parameter num/den (den > 0).
struct Rational {
  long num = 0;
  long den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  XReal to_xreal(Bits bits) const { return XReal(num, bits) / den; }
};

/// Sums of sum_k ff(offset + step*k, j) prod (a_i)_k / prod (b_j)_k x^k / k!
/// for every weight order j = 0..max_order in one pass. Rational parameters
/// keep the per-term cost at one full-precision multiplication.
std::vector<SeriesSum> hypergeometric_sums(std::span<const Rational> numerators,
                                           std::span<const Rational> denominators,
                                           const XReal& x, Bits bits, long offset, long step,
                                           int max_order);

/// Generalized hypergeometric function pFq(numerators; denominators; x).
/// Guard bits are raised automatically until cancellation is covered.
XReal genhyp(std::span<const XReal> numerators, std::span<const XReal> denominators,
             const XReal& x, Bits p);

// ---------------------------------------------------------------------------
// Quadrature

/// Envelope |f(r)| <= C r^s exp(-rate r^kappa) for r >= r_min, used to
/// bound the neglected tail of a semi-infinite integral.
struct Decay {
  double rate = 1.0;
  double kappa = 2.0;
  double log_scale = 0.0;  // log C
  double power = 0.0;      // s
  double r_min = 0.0;

  static Decay gaussian(double a, double scale = 1.0, double power = 0.0);
  static Decay exponential(double a, double scale = 1.0, double power = 0.0);
  static Decay stretched(double rate, double kappa, double scale = 1.0, double power = 0.0);

  /// log of the bound on int_R^inf C r^s exp(-rate r^kappa) dr.
  double log_tail(double r) const;
  /// log of the bound on int_0^inf C r^s exp(-rate r^kappa) dr.
  double log_total() const;
  /// Smallest R >= r_min with log_tail(R) <= log_target.
  double radius_for(double log_target) const;
};

template <typename T>
struct QuadratureResult {
  T value;
  XReal error_estimate;
  long nodes_used = 0;
};

/// Gauss-Legendre nodes and weights on [-1, 1]; cached per (n, bits).
struct GaussLegendreRule {
  std::vector<XReal> nodes;
  std::vector<XReal> weights;
};
const GaussLegendreRule& gauss_legendre(int n, Bits bits);

/// Vector-valued integrand: writes `out.size()` components at r.
using VectorIntegrand = std::function<void(const XReal& r, std::span<XReal> out)>;
using ScalarIntegrand = std::function<XReal(const XReal& r)>;

/// Adaptive panel Gauss-Legendre on [lo, hi]. Every component reaches
/// relative accuracy 2^-p unless cancellation against the integral of |f|
/// exceeds the guard bits, in which case error_estimate says so.
std::vector<QuadratureResult<XReal>> quad_interval_batch(const VectorIntegrand& f,
                                                         std::size_t components,
                                                         const XReal& lo, const XReal& hi,
                                                         Bits p);
QuadratureResult<XReal> quad_interval(const ScalarIntegrand& f, const XReal& lo,
                                      const XReal& hi, Bits p);

/// Tanh-sinh rule on [lo, hi], tolerant of integrable endpoint
/// singularities such as log or fractional powers; the step is halved until
/// successive levels agree to 2^-p.
std::vector<QuadratureResult<XReal>> quad_tanh_sinh_batch(const VectorIntegrand& f,
                                                          std::size_t components,
                                                          const XReal& lo, const XReal& hi,
                                                          Bits p);

/// int_0^inf f: tanh-sinh on [0, r0] (absorbing a singular endpoint at
/// 0), adaptive Gauss-Legendre on [r0, R], plus the analytic tail bound from
/// `decay`. R is grown until the tail is below 2^(-p-16) of every value.
/// With several components, `decay` must bound all of them.
std::vector<QuadratureResult<XReal>> quad_semiinf_batch(const VectorIntegrand& f,
                                                        std::size_t components,
                                                        const Decay& decay, Bits p);
QuadratureResult<XReal> quad_semiinf(const ScalarIntegrand& f, const Decay& decay, Bits p);

}  // namespace opoly::numerics
