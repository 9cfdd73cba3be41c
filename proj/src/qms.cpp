#include "opoly/qms.hpp"

#include <string>

#include "opoly/errors.hpp"

namespace opoly::qms {

namespace {

XMatrix power(const XMatrix& m, int k, Bits bits) {
  XMatrix out = XMatrix::Identity(m.rows(), m.cols());
  for (long i = 0; i < out.rows(); ++i) {
    for (long j = 0; j < out.cols(); ++j) out(i, j) = out(i, j).with_precision(bits);
  }
  for (int i = 0; i < k; ++i) out = out * m;
  return out;
}

XCMatrix complexify(const XMatrix& re, const XMatrix& im, const XReal& scale) {
  XCMatrix out(re.rows(), re.cols());
  for (long i = 0; i < re.rows(); ++i) {
    for (long j = 0; j < re.cols(); ++j) out(i, j) = XComplex(scale * re(i, j), scale * im(i, j));
  }
  return out;
}

void check_size(long N, int d, const char* who) {
  if (N < 2 * d) throw DomainError(std::string(who) + ": need N >= 2d");
}

}  // namespace

Operators build_operators(const painleve::RecurrenceTrace& trace, long N) {
  const int d = trace.d();
  if (d <= 2) throw DomainError("build_operators: d must be at least 3");
  if (N < 1) throw DomainError("build_operators: N must be positive");
  if (trace.validated_to < N) {
    throw PrecisionError("build_operators: recurrence validated only to n = " +
                         std::to_string(trace.validated_to));
  }
  const Bits p = trace.precision;
  const Bits w = p + special_function_guard_bits;
  PrecisionGuard guard(w);
  Operators out;
  OperatorTruncation& op = out.op;
  op.N = N;
  op.d = d;
  op.precision = p;
  op.a = trace.spec.a.with_precision(w);
  op.epsilon = pow(op.a, XReal(-static_cast<long>(d), w) / (d - 2));
  op.W = XMatrix::Constant(N + 1, N + 1, XReal(0L, w));
  for (long n = 0; n < N; ++n) {
    XReal v = trace.v(n).with_precision(w);
    if (!(v > 0)) throw SignError("build_operators: v_" + std::to_string(n) + " is not positive");
    op.w.push_back(sqrt(v));
    op.W(n + 1, n) = op.w.back();
  }
  op.Wdag = op.W.transpose();

  XMatrix wd_pow = power(op.Wdag, d - 1, w);
  XMatrix w_pow = power(op.W, d - 1, w);
  XReal m_scale = pow(op.a, XReal(1L, w) / (d - 2));
  XReal l_scale = pow(op.a, XReal(static_cast<long>(d - 1), w) / (d - 2));
  out.M = complexify(op.W, wd_pow, m_scale);
  out.L = complexify(op.Wdag, w_pow, l_scale);
  return out;
}

XReal qms_residual(const OperatorTruncation& op, int d) {
  check_size(op.N, d, "qms_residual");
  const Bits w = op.precision + special_function_guard_bits;
  PrecisionGuard guard(w);
  XMatrix w_pow = power(op.W, d - 1, w);
  XMatrix wd_pow = power(op.Wdag, d - 1, w);
  XMatrix c = op.Wdag * op.W - op.W * op.Wdag + wd_pow * w_pow - w_pow * wd_pow;
  XReal eps = op.epsilon.with_precision(w);
  XReal worst(0L, w);
  const long interior = op.N - d;
  for (long i = 0; i <= interior; ++i) {
    for (long j = 0; j <= interior; ++j) {
      XReal e = i == j ? c(i, j) - eps : c(i, j);
      worst = max(worst, abs(e));
    }
  }
  return worst.with_precision(op.precision);
}

XReal lm_commutator_residual(const OperatorTruncation& op, const XCMatrix& M, const XCMatrix& L) {
  check_size(op.N, op.d, "lm_commutator_residual");
  const Bits w = op.precision + special_function_guard_bits;
  PrecisionGuard guard(w);
  XCMatrix c = L * M - M * L;
  XReal worst(0L, w);
  const long interior = op.N - op.d;
  for (long i = 0; i <= interior; ++i) {
    for (long j = 0; j <= interior; ++j) {
      XComplex e = c(i, j);
      if (i == j) e -= XComplex(XReal(1L, w), XReal(0L, w));
      worst = max(worst, hypot(e.real(), e.imag()));
    }
  }
  return worst.with_precision(op.precision);
}

}  // namespace opoly::qms
