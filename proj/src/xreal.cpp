#include "opoly/xreal.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <utility>

namespace opoly {

namespace {

thread_local Bits tls_working_precision = default_precision_bits;

Bits clamp_bits(Bits bits) {
  return std::max<Bits>(bits, MPFR_PREC_MIN);
}

}  // namespace

Bits working_precision() { return tls_working_precision; }

PrecisionGuard::PrecisionGuard(Bits bits) : saved_(tls_working_precision) {
  tls_working_precision = clamp_bits(bits);
}

PrecisionGuard::~PrecisionGuard() { tls_working_precision = saved_; }

XReal::XReal(Uninit, Bits bits) { mpfr_init2(v_, clamp_bits(bits)); }

XReal make_result(Bits bits) { return XReal(XReal::Uninit{}, bits); }

XReal::XReal() : XReal(Uninit{}, tls_working_precision) { mpfr_set_zero(v_, 1); }
XReal::XReal(int v) : XReal(Uninit{}, tls_working_precision) { mpfr_set_si(v_, v, MPFR_RNDN); }
XReal::XReal(long v) : XReal(Uninit{}, tls_working_precision) { mpfr_set_si(v_, v, MPFR_RNDN); }
XReal::XReal(long long v) : XReal(Uninit{}, tls_working_precision) {
  mpfr_set_si(v_, static_cast<long>(v), MPFR_RNDN);
}
XReal::XReal(unsigned long v) : XReal(Uninit{}, tls_working_precision) { mpfr_set_ui(v_, v, MPFR_RNDN); }
XReal::XReal(double v) : XReal(Uninit{}, tls_working_precision) { mpfr_set_d(v_, v, MPFR_RNDN); }
XReal::XReal(long v, Bits bits) : XReal(Uninit{}, bits) { mpfr_set_si(v_, v, MPFR_RNDN); }
XReal::XReal(double v, Bits bits) : XReal(Uninit{}, bits) { mpfr_set_d(v_, v, MPFR_RNDN); }

XReal::XReal(std::string_view text, Bits bits) : XReal(Uninit{}, bits) {
  auto parse = [](mpfr_ptr out, std::string_view s) {
    std::string buf(s);
    // Leading/trailing blanks are not numbers.
    if (buf.empty() || mpfr_set_str(out, buf.c_str(), 10, MPFR_RNDN) != 0) {
      throw std::invalid_argument("not a decimal number: '" + buf + "'");
    }
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    parse(v_, text);
    return;
  }
  XReal num = make_result(bits + 32);
  XReal den = make_result(bits + 32);
  parse(num.get(), text.substr(0, slash));
  parse(den.get(), text.substr(slash + 1));
  if (den.is_zero()) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  mpfr_div(v_, num.get(), den.get(), MPFR_RNDN);
}

XReal::XReal(const XReal& other) : XReal(Uninit{}, other.precision()) {
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

XReal::XReal(XReal&& other) noexcept {
  v_[0] = other.v_[0];
  other.v_->_mpfr_d = nullptr;
}

void XReal::ensure_live(Bits bits) {
  if (v_->_mpfr_d == nullptr) {
    mpfr_init2(v_, clamp_bits(bits));
  } else if (precision() != bits) {
    mpfr_set_prec(v_, clamp_bits(bits));
  }
}

XReal& XReal::operator=(const XReal& other) {
  if (this == &other) return *this;
  ensure_live(other.precision());
  mpfr_set(v_, other.v_, MPFR_RNDN);
  return *this;
}

XReal& XReal::operator=(XReal&& other) noexcept {
  std::swap(v_[0], other.v_[0]);
  return *this;
}

XReal::~XReal() {
  if (v_->_mpfr_d != nullptr) mpfr_clear(v_);
}

XReal XReal::with_precision(Bits bits) const {
  XReal r = make_result(bits);
  mpfr_set(r.v_, v_, MPFR_RNDN);
  return r;
}

double XReal::log2_abs() const {
  if (is_zero()) return -INFINITY;
  if (!is_finite()) return INFINITY;
  long e = 0;
  double m = mpfr_get_d_2exp(&e, v_, MPFR_RNDN);
  return std::log2(std::fabs(m)) + static_cast<double>(e);
}

std::string XReal::to_string(int digits) const {
  digits = std::max(digits, 1);
  char* s = nullptr;
  mpfr_asprintf(&s, "%.*Re", digits - 1, v_);
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

int XReal::decimal_digits() const {
  return static_cast<int>(std::floor(static_cast<double>(precision() - 1) * 0.30102999566398120));
}

XReal XReal::pi(Bits bits) {
  XReal r = make_result(bits);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

XReal XReal::euler_gamma(Bits bits) {
  XReal r = make_result(bits);
  mpfr_const_euler(r.v_, MPFR_RNDN);
  return r;
}

XReal XReal::ln2(Bits bits) {
  XReal r = make_result(bits);
  mpfr_const_log2(r.v_, MPFR_RNDN);
  return r;
}

XReal XReal::pow2(long e, Bits bits) {
  XReal r = make_result(bits);
  mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
  return r;
}

XReal XReal::epsilon(Bits bits) { return pow2(1 - bits, bits); }

XReal XReal::operator-() const {
  XReal r = make_result(precision());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

namespace {

using BinaryOp = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

XReal binary(BinaryOp op, const XReal& a, const XReal& b) {
  XReal r = make_result(std::min(a.precision(), b.precision()));
  op(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

void binary_in_place(BinaryOp op, XReal& a, const XReal& b) {
  if (b.precision() >= a.precision()) {
    op(a.get(), a.get(), b.get(), MPFR_RNDN);
  } else {
    a = binary(op, a, b);
  }
}

using UnaryOp = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);

XReal unary(UnaryOp op, const XReal& x) {
  XReal r = make_result(x.precision());
  op(r.get(), x.get(), MPFR_RNDN);
  return r;
}

}  // namespace

XReal& XReal::operator+=(const XReal& o) { binary_in_place(mpfr_add, *this, o); return *this; }
XReal& XReal::operator-=(const XReal& o) { binary_in_place(mpfr_sub, *this, o); return *this; }
XReal& XReal::operator*=(const XReal& o) { binary_in_place(mpfr_mul, *this, o); return *this; }
XReal& XReal::operator/=(const XReal& o) { binary_in_place(mpfr_div, *this, o); return *this; }

XReal operator+(const XReal& a, const XReal& b) { return binary(mpfr_add, a, b); }
XReal operator-(const XReal& a, const XReal& b) { return binary(mpfr_sub, a, b); }
XReal operator*(const XReal& a, const XReal& b) { return binary(mpfr_mul, a, b); }
XReal operator/(const XReal& a, const XReal& b) { return binary(mpfr_div, a, b); }

XReal operator+(const XReal& a, double b) { XReal r(a); r += b; return r; }
XReal operator+(double a, const XReal& b) { XReal r(b); r += a; return r; }
XReal operator-(const XReal& a, double b) { XReal r(a); r -= b; return r; }
XReal operator-(double a, const XReal& b) {
  XReal r = make_result(b.precision());
  mpfr_d_sub(r.get(), a, b.get(), MPFR_RNDN);
  return r;
}
XReal operator*(const XReal& a, double b) { XReal r(a); r *= b; return r; }
XReal operator*(double a, const XReal& b) { XReal r(b); r *= a; return r; }
XReal operator/(const XReal& a, double b) { XReal r(a); r /= b; return r; }
XReal operator/(double a, const XReal& b) {
  XReal r = make_result(b.precision());
  mpfr_d_div(r.get(), a, b.get(), MPFR_RNDN);
  return r;
}

std::ostream& operator<<(std::ostream& os, const XReal& x) {
  auto digits = static_cast<int>(os.precision());
  if (digits <= 6) digits = std::min(x.decimal_digits(), 40);
  return os << x.to_string(digits);
}

XReal abs(const XReal& x) { return unary(mpfr_abs, x); }
XReal fabs(const XReal& x) { return unary(mpfr_abs, x); }
XReal sqrt(const XReal& x) { return unary(mpfr_sqrt, x); }
XReal cbrt(const XReal& x) { return unary(mpfr_cbrt, x); }
XReal exp(const XReal& x) { return unary(mpfr_exp, x); }
XReal expm1(const XReal& x) { return unary(mpfr_expm1, x); }
XReal log(const XReal& x) { return unary(mpfr_log, x); }
XReal log1p(const XReal& x) { return unary(mpfr_log1p, x); }
XReal log2(const XReal& x) { return unary(mpfr_log2, x); }
XReal sin(const XReal& x) { return unary(mpfr_sin, x); }
XReal cos(const XReal& x) { return unary(mpfr_cos, x); }
XReal tan(const XReal& x) { return unary(mpfr_tan, x); }
XReal atan(const XReal& x) { return unary(mpfr_atan, x); }
XReal sinh(const XReal& x) { return unary(mpfr_sinh, x); }
XReal cosh(const XReal& x) { return unary(mpfr_cosh, x); }
XReal atan2(const XReal& y, const XReal& x) { return binary(mpfr_atan2, y, x); }
XReal pow(const XReal& x, const XReal& y) { return binary(mpfr_pow, x, y); }
XReal hypot(const XReal& x, const XReal& y) { return binary(mpfr_hypot, x, y); }
XReal min(const XReal& a, const XReal& b) { return b < a ? b : a; }
XReal max(const XReal& a, const XReal& b) { return a < b ? b : a; }

XReal floor(const XReal& x) {
  XReal r = make_result(x.precision());
  mpfr_floor(r.get(), x.get());
  return r;
}

XReal ceil(const XReal& x) {
  XReal r = make_result(x.precision());
  mpfr_ceil(r.get(), x.get());
  return r;
}

XReal round(const XReal& x) {
  XReal r = make_result(x.precision());
  mpfr_round(r.get(), x.get());
  return r;
}

XReal pow(const XReal& x, long n) {
  XReal r = make_result(x.precision());
  mpfr_pow_si(r.get(), x.get(), n, MPFR_RNDN);
  return r;
}

XReal pow(const XReal& x, int n) { return pow(x, static_cast<long>(n)); }

XReal ldexp(const XReal& x, long e) {
  XReal r = make_result(x.precision());
  mpfr_mul_2si(r.get(), x.get(), e, MPFR_RNDN);
  return r;
}

namespace {

// x reduced to [0, 2); exact because both terms are multiples of ulp(x).
XReal reduce_mod2(const XReal& x) {
  XReal half = ldexp(x, -1);
  return x - ldexp(floor(half), 1);
}

}  // namespace

XReal sin_pi(const XReal& x) {
  Bits p = x.precision();
  XReal f = reduce_mod2(x);
  if (f.is_integer()) return XReal(0L, p);
  XReal twice = ldexp(f, 1);
  if (twice.is_integer()) return XReal(twice == 1 ? 1L : -1L, p);
  return sin(XReal::pi(p + 16) * f.with_precision(p + 16)).with_precision(p);
}

XReal cos_pi(const XReal& x) {
  Bits p = x.precision();
  XReal f = reduce_mod2(x);
  if (f.is_integer()) return XReal(f == 0 ? 1L : -1L, p);
  XReal twice = ldexp(f, 1);
  if (twice.is_integer()) return XReal(0L, p);
  return cos(XReal::pi(p + 16) * f.with_precision(p + 16)).with_precision(p);
}

bool isfinite(const XReal& x) { return x.is_finite(); }
bool isnan(const XReal& x) { return x.is_nan(); }
bool isinf(const XReal& x) { return mpfr_inf_p(x.get()) != 0; }

XComplex i_pow(long k, Bits bits) {
  long r = ((k % 4) + 4) % 4;
  XReal zero(0L, bits);
  XReal one(1L, bits);
  XReal minus_one(-1L, bits);
  switch (r) {
    case 0: return {one, zero};
    case 1: return {zero, one};
    case 2: return {minus_one, zero};
    default: return {zero, minus_one};
  }
}

XComplex make_complex(const XReal& re, const XReal& im) { return {re, im}; }

Bits precision_of(const XComplex& z) {
  return std::min(z.real().precision(), z.imag().precision());
}

XComplex with_precision(const XComplex& z, Bits bits) {
  return {z.real().with_precision(bits), z.imag().with_precision(bits)};
}

XReal max_abs(const XComplex& z) { return max(abs(z.real()), abs(z.imag())); }

}  // namespace opoly
