#include <doctest.h>

#include "opoly/density.hpp"
#include "opoly/orthopoly.hpp"
#include "opoly/qms.hpp"
#include "test_util.hpp"

using namespace opoly;
using namespace opoly::qms;
using opoly::testing::close_rel;
using opoly::testing::modulus;
using opoly::testing::x_of;

namespace {

Operators operators(int d, const XReal& a, long N, Bits p) {
  return build_operators(painleve::run(d, a, N, p), N);
}

XReal cdist(const XComplex& x, const XComplex& y) {
  return modulus(XComplex(x.real() - y.real(), x.imag() - y.imag()));
}

// (f, g) for dense coefficient vectors against a Gram matrix.
XComplex pairing(const std::vector<XComplex>& f, const std::vector<XComplex>& g,
                 const density::GramMatrix& G) {
  Bits bits = G.precision;
  XComplex sum(XReal(0L, bits), XReal(0L, bits));
  for (std::size_t j = 0; j < f.size(); ++j) {
    for (std::size_t l = 0; l < g.size(); ++l) {
      XComplex cg(g[l].real(), -g[l].imag());
      sum += f[j] * cg * G.entries(static_cast<long>(j), static_cast<long>(l));
    }
  }
  return sum;
}

}  // namespace

TEST_CASE("ladder structure for d = 3, N = 3") {
  const Bits p = 128;
  XReal a = x_of("1.5", p);
  auto trace = painleve::run(3, a, 3, p);
  auto ops = build_operators(trace, 3);
  const auto& op = ops.op;
  REQUIRE(op.W.rows() == 4);
  REQUIRE(op.w.size() == 3);
  for (long i = 0; i < 4; ++i) {
    for (long j = 0; j < 4; ++j) {
      if (i == j + 1) {
        CHECK(close_rel(op.W(i, j), sqrt(trace.v(j)), p - 4));
        CHECK(op.W(i, j) > 0);
      } else {
        CHECK(op.W(i, j).is_zero());
      }
      CHECK(op.Wdag(i, j) == op.W(j, i));
    }
    CHECK(op.Wdag(i, 0).is_zero());
  }
  CHECK(close_rel(op.epsilon, pow(a, XReal(-3L, p)), p - 4));
}

TEST_CASE("commutation relations on the interior block") {
  const Bits p = 256;
  for (int d : {3, 4}) {
    for (const char* as : {"1", "2"}) {
      CAPTURE(d);
      CAPTURE(as);
      XReal a = x_of(as, p);
      auto ops = operators(d, a, 30, p);
      XReal qms = qms_residual(ops.op, d);
      XReal lm = lm_commutator_residual(ops.op, ops.M, ops.L);
      CHECK(qms < 1e-10);
      CHECK(lm < 1e-10);
      // [L, M] = a^(d/(d-2)) times the ladder commutator.
      XReal factor = pow(a, XReal(static_cast<long>(d), p) / (d - 2));
      CHECK(abs(lm - factor * qms) <= XReal::pow2(8 - p, p) + XReal::pow2(-8, p) * lm);
    }
  }
}

TEST_CASE("truncation corrupts only the boundary rows") {
  const Bits p = 128;
  auto ops = operators(3, XReal(1L, p), 12, p);
  const auto& op = ops.op;
  XMatrix w2 = op.W * op.W;
  XMatrix wd2 = op.Wdag * op.Wdag;
  XMatrix c = op.Wdag * op.W - op.W * op.Wdag + wd2 * w2 - w2 * wd2;
  XReal boundary = abs(c(12, 12) - op.epsilon);
  CHECK(boundary > 1);
}

TEST_CASE("M is multiplication by z in the normalized basis") {
  const Bits p = 192;
  for (int d : {3, 4}) {
    CAPTURE(d);
    XReal a = x_of("1.5", p);
    const long N = 8;
    auto trace = painleve::run(d, a, N + 1, p);
    auto ops = build_operators(trace, N);
    auto basis = ortho::build(trace, N + 1);
    auto G = density::gram(density::PotentialSpec::canonical(d, a), N + 1, p);
    for (long n = 0; n < N; ++n) {
      auto zp = basis.polys[n].dense();
      zp.insert(zp.begin(), XComplex(XReal(0L, p), XReal(0L, p)));
      for (long m = 0; m <= N; ++m) {
        CAPTURE(n);
        CAPTURE(m);
        XComplex s = pairing(zp, basis.polys[m].dense(), G);
        XReal norm = basis.signs[m] / sqrt(basis.h[n] * basis.h[m]);
        XComplex expected(s.real() * norm, s.imag() * norm);
        CHECK(cdist(ops.M(m, n), expected) < 1e-30);
      }
    }
  }
}

TEST_CASE("L reproduces the lowering relation in the normalized basis") {
  const Bits p = 192;
  for (int d : {3, 5}) {
    CAPTURE(d);
    XReal a = x_of("0.8", p);
    const long N = 12;
    auto trace = painleve::run(d, a, N, p);
    auto ops = build_operators(trace, N);
    // L |n> = i sqrt(V_n ... V_{n+d-2}) |n+d-1> + a sqrt(V_{n-1}) |n-1>
    for (long n = 0; n <= N; ++n) {
      for (long m = 0; m <= N; ++m) {
        XComplex expected(XReal(0L, p), XReal(0L, p));
        if (m == n + d - 1) {
          XReal product(1L, p);
          for (long k = n; k <= n + d - 2; ++k) product *= trace.V[k];
          expected = XComplex(XReal(0L, p), sqrt(product));
        } else if (m == n - 1) {
          expected = XComplex(a * sqrt(trace.V[n - 1]), XReal(0L, p));
        }
        CAPTURE(n);
        CAPTURE(m);
        CHECK(cdist(ops.L(m, n), expected) < XReal::pow2(16 - p, p));
      }
    }
  }
}

TEST_CASE("residuals are unchanged by the strength rescaling") {
  const Bits p = 192;
  // (a, t) = (0.5, 0.1) for d = 3 maps to the canonical a lambda^2.
  XReal a = x_of("0.5", p);
  XReal t = x_of("0.1", p);
  auto r = density::rescale(a, t, 3);
  auto ops = operators(3, r.a_canonical, 20, p);
  XCMatrix M = ops.M;
  XCMatrix L = ops.L;
  for (long i = 0; i < M.rows(); ++i) {
    for (long j = 0; j < M.cols(); ++j) {
      M(i, j) = XComplex(M(i, j).real() * r.lambda, M(i, j).imag() * r.lambda);
      L(i, j) = XComplex(L(i, j).real() / r.lambda, L(i, j).imag() / r.lambda);
    }
  }
  XReal base = lm_commutator_residual(ops.op, ops.M, ops.L);
  XReal scaled = lm_commutator_residual(ops.op, M, L);
  CHECK(base < 1e-10);
  CHECK(abs(scaled - base) < XReal::pow2(16 - p, p));
}

TEST_CASE("domain checks") {
  const Bits p = 64;
  CHECK_THROWS_AS(operators(2, XReal(1L, p), 10, p), DomainError);
  CHECK_THROWS_AS(operators(1, XReal(1L, p), 10, p), DomainError);
  auto ops = operators(3, XReal(1L, p), 5, p);
  CHECK_THROWS_AS(qms_residual(ops.op, 3), DomainError);
  CHECK_THROWS_AS(lm_commutator_residual(ops.op, ops.M, ops.L), DomainError);
  auto trace = painleve::run(3, XReal(1L, p), 400, p);
  CHECK_THROWS_AS(build_operators(trace, trace.validated_to + 1), PrecisionError);
}
