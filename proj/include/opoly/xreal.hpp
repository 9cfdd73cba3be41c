#pragma once

// Extended-precision real and complex scalars backed by MPFR.
//
// Every XReal carries its own precision in bits. Binary operations round the
// result to the smaller of the two operand precisions; operations with
// built-in integers or doubles keep the precision of the XReal operand.
// Default-constructed values, and values converted from built-in numbers,
// take the thread's working precision (see PrecisionGuard).

#include <complex>
#include <concepts>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <mpfr.h>

namespace opoly {

using Bits = long;

inline constexpr Bits default_precision_bits = 256;
inline constexpr Bits special_function_guard_bits = 32;

/// Working precision of the calling thread.
Bits working_precision();

/// Sets the thread working precision for the lifetime of the guard.
class PrecisionGuard {
public:
  explicit PrecisionGuard(Bits bits);
  ~PrecisionGuard();
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

private:
  Bits saved_;
};

class XReal {
public:
  XReal();
  XReal(int v);
  XReal(long v);
  XReal(long long v);
  XReal(unsigned long v);
  XReal(double v);

  XReal(long v, Bits bits);
  XReal(double v, Bits bits);
  /// Parses a decimal (or "p/q" rational) literal, correctly rounded.
  XReal(std::string_view text, Bits bits);

  XReal(const XReal& other);
  XReal(XReal&& other) noexcept;
  XReal& operator=(const XReal& other);
  XReal& operator=(XReal&& other) noexcept;
  ~XReal();

  Bits precision() const { return mpfr_get_prec(v_); }
  /// Copy rounded (or exactly widened) to the given precision.
  XReal with_precision(Bits bits) const;

  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDZ); }
  /// log2|x| as a double, -inf for zero; exact for huge or tiny values.
  double log2_abs() const;
  /// Decimal rendering with the given number of significant digits.
  std::string to_string(int digits) const;
  /// Significant decimal digits carried by the current precision.
  int decimal_digits() const;

  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_integer() const { return mpfr_integer_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_nan() const { return mpfr_nan_p(v_) != 0; }

  static XReal pi(Bits bits);
  static XReal euler_gamma(Bits bits);
  static XReal ln2(Bits bits);
  /// 2^e at the given precision.
  static XReal pow2(long e, Bits bits);
  /// Machine epsilon 2^(1-bits).
  static XReal epsilon(Bits bits);

  XReal operator-() const;

  XReal& operator+=(const XReal& o);
  XReal& operator-=(const XReal& o);
  XReal& operator*=(const XReal& o);
  XReal& operator/=(const XReal& o);

  template <std::integral I>
  XReal& operator+=(I o) { mpfr_add_si(v_, v_, static_cast<long>(o), MPFR_RNDN); return *this; }
  template <std::integral I>
  XReal& operator-=(I o) { mpfr_sub_si(v_, v_, static_cast<long>(o), MPFR_RNDN); return *this; }
  template <std::integral I>
  XReal& operator*=(I o) { mpfr_mul_si(v_, v_, static_cast<long>(o), MPFR_RNDN); return *this; }
  template <std::integral I>
  XReal& operator/=(I o) { mpfr_div_si(v_, v_, static_cast<long>(o), MPFR_RNDN); return *this; }
  XReal& operator+=(double o) { mpfr_add_d(v_, v_, o, MPFR_RNDN); return *this; }
  XReal& operator-=(double o) { mpfr_sub_d(v_, v_, o, MPFR_RNDN); return *this; }
  XReal& operator*=(double o) { mpfr_mul_d(v_, v_, o, MPFR_RNDN); return *this; }
  XReal& operator/=(double o) { mpfr_div_d(v_, v_, o, MPFR_RNDN); return *this; }

  explicit operator double() const { return to_double(); }

private:
  struct Uninit {};
  XReal(Uninit, Bits bits);
  void ensure_live(Bits bits);
  friend XReal make_result(Bits bits);

  mpfr_t v_;
};

/// Uninitialised value of the given precision, for use as an MPFR output.
XReal make_result(Bits bits);

XReal operator+(const XReal& a, const XReal& b);
XReal operator-(const XReal& a, const XReal& b);
XReal operator*(const XReal& a, const XReal& b);
XReal operator/(const XReal& a, const XReal& b);

template <std::integral I>
XReal operator+(const XReal& a, I b) { XReal r(a); r += b; return r; }
template <std::integral I>
XReal operator+(I a, const XReal& b) { XReal r(b); r += a; return r; }
template <std::integral I>
XReal operator-(const XReal& a, I b) { XReal r(a); r -= b; return r; }
template <std::integral I>
XReal operator-(I a, const XReal& b) {
  XReal r = make_result(b.precision());
  mpfr_si_sub(r.get(), static_cast<long>(a), b.get(), MPFR_RNDN);
  return r;
}
template <std::integral I>
XReal operator*(const XReal& a, I b) { XReal r(a); r *= b; return r; }
template <std::integral I>
XReal operator*(I a, const XReal& b) { XReal r(b); r *= a; return r; }
template <std::integral I>
XReal operator/(const XReal& a, I b) { XReal r(a); r /= b; return r; }
template <std::integral I>
XReal operator/(I a, const XReal& b) {
  XReal r = make_result(b.precision());
  mpfr_si_div(r.get(), static_cast<long>(a), b.get(), MPFR_RNDN);
  return r;
}

XReal operator+(const XReal& a, double b);
XReal operator+(double a, const XReal& b);
XReal operator-(const XReal& a, double b);
XReal operator-(double a, const XReal& b);
XReal operator*(const XReal& a, double b);
XReal operator*(double a, const XReal& b);
XReal operator/(const XReal& a, double b);
XReal operator/(double a, const XReal& b);

inline bool operator==(const XReal& a, const XReal& b) { return mpfr_equal_p(a.get(), b.get()) != 0; }
inline bool operator!=(const XReal& a, const XReal& b) { return !(a == b); }
inline bool operator<(const XReal& a, const XReal& b) { return mpfr_less_p(a.get(), b.get()) != 0; }
inline bool operator>(const XReal& a, const XReal& b) { return mpfr_greater_p(a.get(), b.get()) != 0; }
inline bool operator<=(const XReal& a, const XReal& b) { return mpfr_lessequal_p(a.get(), b.get()) != 0; }
inline bool operator>=(const XReal& a, const XReal& b) { return mpfr_greaterequal_p(a.get(), b.get()) != 0; }

template <std::integral I>
bool operator==(const XReal& a, I b) { return mpfr_cmp_si(a.get(), static_cast<long>(b)) == 0; }
template <std::integral I>
bool operator!=(const XReal& a, I b) { return mpfr_cmp_si(a.get(), static_cast<long>(b)) != 0; }
template <std::integral I>
bool operator<(const XReal& a, I b) { return mpfr_cmp_si(a.get(), static_cast<long>(b)) < 0; }
template <std::integral I>
bool operator>(const XReal& a, I b) { return mpfr_cmp_si(a.get(), static_cast<long>(b)) > 0; }
template <std::integral I>
bool operator<=(const XReal& a, I b) { return mpfr_cmp_si(a.get(), static_cast<long>(b)) <= 0; }
template <std::integral I>
bool operator>=(const XReal& a, I b) { return mpfr_cmp_si(a.get(), static_cast<long>(b)) >= 0; }
inline bool operator<(const XReal& a, double b) { return mpfr_cmp_d(a.get(), b) < 0; }
inline bool operator>(const XReal& a, double b) { return mpfr_cmp_d(a.get(), b) > 0; }
inline bool operator<=(const XReal& a, double b) { return mpfr_cmp_d(a.get(), b) <= 0; }
inline bool operator>=(const XReal& a, double b) { return mpfr_cmp_d(a.get(), b) >= 0; }

std::ostream& operator<<(std::ostream& os, const XReal& x);

// Elementary functions; the result has the precision of the argument.
XReal abs(const XReal& x);
XReal fabs(const XReal& x);
XReal sqrt(const XReal& x);
XReal cbrt(const XReal& x);
XReal exp(const XReal& x);
XReal expm1(const XReal& x);
XReal log(const XReal& x);
XReal log1p(const XReal& x);
XReal log2(const XReal& x);
XReal sin(const XReal& x);
XReal cos(const XReal& x);
XReal tan(const XReal& x);
XReal atan(const XReal& x);
XReal atan2(const XReal& y, const XReal& x);
XReal sinh(const XReal& x);
XReal cosh(const XReal& x);
XReal floor(const XReal& x);
XReal ceil(const XReal& x);
XReal round(const XReal& x);
XReal pow(const XReal& x, const XReal& y);
XReal pow(const XReal& x, long n);
XReal pow(const XReal& x, int n);
XReal ldexp(const XReal& x, long e);
XReal hypot(const XReal& x, const XReal& y);
XReal min(const XReal& a, const XReal& b);
XReal max(const XReal& a, const XReal& b);
/// sin(pi x) and cos(pi x), exact at integers and half-integers.
XReal sin_pi(const XReal& x);
XReal cos_pi(const XReal& x);
bool isfinite(const XReal& x);
bool isnan(const XReal& x);
bool isinf(const XReal& x);

// Identity helpers so generic code can treat real and complex alike.
inline const XReal& conj(const XReal& x) { return x; }
inline const XReal& real(const XReal& x) { return x; }
inline XReal imag(const XReal& x) { return XReal(0L, x.precision()); }
inline XReal abs2(const XReal& x) { return x * x; }

using XComplex = std::complex<XReal>;

/// i^k for integer k.
XComplex i_pow(long k, Bits bits);
/// Complex value at the given precision.
XComplex make_complex(const XReal& re, const XReal& im);
Bits precision_of(const XComplex& z);
XComplex with_precision(const XComplex& z, Bits bits);
/// max(|re|, |im|); cheaper than abs and adequate for error bounds.
XReal max_abs(const XComplex& z);

}  // namespace opoly
