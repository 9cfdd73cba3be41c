#include <doctest.h>

#include "opoly/density.hpp"
#include "opoly/orthopoly.hpp"
#include "opoly/painleve.hpp"
#include "test_util.hpp"

using namespace opoly;
using namespace opoly::ortho;
using opoly::testing::close_rel;
using opoly::testing::modulus;
using opoly::testing::x_of;

namespace {

XComplex cx(const XReal& re, const XReal& im) { return XComplex(re, im); }

XComplex cmul(const XComplex& x, const XComplex& y) {
  return cx(x.real() * y.real() - x.imag() * y.imag(), x.real() * y.imag() + x.imag() * y.real());
}

XReal cdist(const XComplex& x, const XComplex& y) {
  return modulus(cx(x.real() - y.real(), x.imag() - y.imag()));
}

OrthoBasis recurrence_basis(int d, const XReal& a, long N, Bits p) {
  return build(painleve::run(d, a, N, p), N);
}

// Physicists' Hermite coefficients H_0..H_n, each indexed by degree.
std::vector<std::vector<XReal>> hermite(long n, Bits p) {
  std::vector<std::vector<XReal>> H{{XReal(1L, p)}, {XReal(0L, p), XReal(2L, p)}};
  for (long k = 1; k < n; ++k) {
    std::vector<XReal> next(static_cast<std::size_t>(k + 2), XReal(0L, p));
    for (long j = 0; j <= k; ++j) next[j + 1] += 2 * H[k][j];
    for (long j = 0; j <= k - 1; ++j) next[j] -= 2 * k * H[k - 1][j];
    H.push_back(next);
  }
  return H;
}

}  // namespace

TEST_CASE("d = 1: P_n = (z - i/a)^n") {
  const Bits p = 192;
  XReal a = x_of("0.75", p);
  auto basis = recurrence_basis(1, a, 20, p);
  // Binomial expansion of (z + c)^n with c = -i/a.
  XComplex c = cx(XReal(0L, p), -1 / a);
  for (long n = 0; n <= 20; ++n) {
    XComplex power = cx(XReal(1L, p), XReal(0L, p));
    XReal binom(1L, p);
    auto dense = basis.polys[n].dense();
    for (long j = 0; j <= n; ++j) {
      // coefficient of z^(n-j) is C(n, j) c^j
      XComplex expected = cx(power.real() * binom, power.imag() * binom);
      CHECK(cdist(dense[n - j], expected) <= XReal::pow2(16 - p, p) * (modulus(expected) + 1));
      power = cmul(power, c);
      binom = binom * (n - j) / (j + 1);
    }
  }
}

TEST_CASE("d = 2: P_2 and the Hermite identity") {
  const Bits p = 192;
  for (const char* as : {"0.5", "1", "3"}) {
    CAPTURE(as);
    XReal a = x_of(as, p);
    auto basis = recurrence_basis(2, a, 10, p);
    XComplex c0 = basis.polys[2].coefficient(0);
    CHECK(c0.real().is_zero());
    CHECK(close_rel(c0.imag(), -1 / (a * a + 1), p - 8));
    // Coefficient of z^(n-2j) is 2^-n H_n[n-2j] (2i/(a^2+1))^j.
    auto H = hermite(10, p);
    XComplex q = cx(XReal(0L, p), 2 / (a * a + 1));
    for (long n = 0; n <= 10; ++n) {
      XComplex qj = cx(XReal(1L, p), XReal(0L, p));
      for (long j = 0; 2 * j <= n; ++j) {
        XReal scale = H[n][n - 2 * j] * XReal::pow2(-n, p);
        XComplex expected = cx(qj.real() * scale, qj.imag() * scale);
        CHECK(cdist(basis.polys[n].coefficient(n - 2 * j), expected) <=
              XReal::pow2(16 - p, p) * (modulus(expected) + 1));
        CHECK(basis.polys[n].coefficient(n - 2 * j - 1).real().is_zero());
        qj = cmul(qj, q);
      }
    }
  }
}

TEST_CASE("d = 3: P_3 and its pairing with 1") {
  const Bits p = 192;
  XReal a = x_of("1.3", p);
  auto trace = painleve::run(3, a, 4, p);
  auto basis = build(trace, 4);
  XComplex c0 = basis.polys[3].coefficient(0);
  CHECK(c0.real().is_zero());
  CHECK(close_rel(c0.imag(), -trace.V[1] * trace.V[0] / a, p - 8));
  auto spec = density::PotentialSpec::canonical(3, a);
  XComplex m30 = density::moment(spec, 3, 0, p);
  XComplex m00 = density::moment(spec, 0, 0, p);
  XComplex pairing = cx(m30.real() + cmul(c0, m00).real(), m30.imag() + cmul(c0, m00).imag());
  CHECK(modulus(pairing) < XReal::pow2(-p / 2, p) * modulus(m00));
}

TEST_CASE("weight sparsity and the first d polynomials") {
  const Bits p = 128;
  for (int d = 2; d <= 5; ++d) {
    CAPTURE(d);
    auto basis = recurrence_basis(d, XReal(1L, p), 14, p);
    for (long n = 0; n <= 14; ++n) {
      const auto& P = basis.polys[n];
      CHECK(P.degree == n);
      CHECK(P.stride == d);
      CHECK(P.coeffs.front() == XComplex(XReal(1L, p), XReal(0L, p)));
      CHECK(static_cast<long>(P.coeffs.size()) == n / d + 1);
      auto dense = P.dense();
      for (long k = 0; k <= n; ++k) {
        if ((n - k) % d != 0) CHECK(modulus(dense[k]).is_zero());
      }
      if (n < d) CHECK(P.coeffs.size() == 1);
      CHECK(basis.signs[n] == density::rho(d, n));
    }
  }
}

TEST_CASE("orthogonality against quadrature moments") {
  const Bits p = 256;
  {
    auto basis = recurrence_basis(2, XReal(1L, p), 4, p);
    XMatrix R = orthogonality_residual(basis, p);
    for (long n = 0; n <= 4; ++n) {
      for (long m = 0; m <= 4; ++m) CHECK(abs(R(n, m)) < 1e-20);
    }
  }
  auto basis = recurrence_basis(3, XReal(1L, p), 10, p);
  XMatrix R = orthogonality_residual(basis, p);
  for (long n = 0; n <= 10; ++n) {
    for (long m = 0; m <= 10; ++m) {
      CAPTURE(n);
      CAPTURE(m);
      CHECK(abs(R(n, m)) < 1e-10);
    }
  }
}

TEST_CASE("recurrence and Gram-Schmidt constructions agree") {
  const Bits p = 192;
  for (int d : {3, 4}) {
    for (const char* as : {"0.5", "2"}) {
      CAPTURE(d);
      CAPTURE(as);
      XReal a = x_of(as, p);
      auto rec = recurrence_basis(d, a, 8, p);
      auto gs = gram_schmidt_oracle(density::PotentialSpec::canonical(d, a), 8, p);
      for (long n = 0; n <= 8; ++n) {
        CHECK(rec.polys[n].coeffs.size() == gs.polys[n].coeffs.size());
        CHECK(gs.signs[n] == density::rho(d, n));
        CHECK(close_rel(gs.h[n], rec.h[n], p / 2));
        for (std::size_t j = 0; j < gs.polys[n].coeffs.size(); ++j) {
          XReal bound = rec.coeff_errors[n][j] + gs.coeff_errors[n][j];
          CHECK(cdist(rec.polys[n].coeffs[j], gs.polys[n].coeffs[j]) <= bound);
        }
      }
    }
  }
}

TEST_CASE("Gram-Schmidt signs follow rho") {
  const Bits p = 128;
  for (int d = 1; d <= 5; ++d) {
    for (const char* as : {"0.5", "5"}) {
      CAPTURE(d);
      CAPTURE(as);
      auto gs = gram_schmidt_oracle(density::PotentialSpec::canonical(d, x_of(as, p)), 8, p);
      for (long n = 0; n <= 8; ++n) CHECK(gs.signs[n] == density::rho(d, n));
      for (const auto& pivot : gs.pivots) CHECK(pivot > XReal::pow2(-p / 2, p));
    }
  }
}

TEST_CASE("t = 0: monomials and the Gaussian partition function") {
  const Bits p = 128;
  XReal a = x_of("1.5", p);
  auto gs = gram_schmidt_oracle(density::PotentialSpec::with_strength(3, a, XReal(0L, p)), 6, p);
  XReal expected(1L, p);
  XReal factorial(1L, p);
  int sign = 1;
  for (long n = 0; n <= 6; ++n) {
    for (std::size_t j = 1; j < gs.polys[n].coeffs.size(); ++j) {
      CHECK(modulus(gs.polys[n].coeffs[j]).is_zero());
    }
    if (n > 0) factorial *= n;
    expected *= XReal::pi(p) * factorial / pow(a, XReal(n + 1, p));
    sign *= density::rho(3, n);
    auto Z = partition_function(gs, n);
    CHECK(close_rel(Z.magnitude, expected, p - 32));
    CHECK(Z.sign == sign);
  }
}

TEST_CASE("partition function against the Gram determinant") {
  const Bits p = 192;
  XReal a(2L, p);
  auto spec = density::PotentialSpec::canonical(3, a);
  auto basis = recurrence_basis(3, a, 5, p);
  auto Z0 = partition_function(basis, 0);
  CHECK(Z0.sign == 1);
  CHECK(close_rel(Z0.magnitude, basis.h[0], p - 4));
  auto Z = partition_function(basis, 5);
  XComplex det = gram_determinant(density::gram(spec, 5, p));
  XReal signed_z = Z.sign * Z.magnitude;
  CHECK(abs(det.real() - signed_z) < XReal::pow2(-p / 4, p) * Z.magnitude);
  CHECK(abs(det.imag()) < XReal::pow2(-p / 4, p) * Z.magnitude);
  CHECK_THROWS(partition_function(basis, 6));
}

TEST_CASE("action of L = d/dz + i z^(d-1)") {
  const Bits p = 256;
  for (int d = 2; d <= 5; ++d) {
    CAPTURE(d);
    XReal a = x_of("1.5", p);
    auto trace = painleve::run(d, a, 12, p);
    auto basis = build(trace, 12);
    // L z = 1 + i z^d forces V_0 (1 + V_1 ... V_{d-2} / a^2) = 1/a.
    XReal product(1L, p);
    for (int k = 1; k <= d - 2; ++k) product *= trace.V[k];
    if (d >= 3) CHECK(close_rel(trace.V[0] * (1 + product / (a * a)), 1 / a, p - 16));
    for (long n = 1; n + d - 1 <= 12; ++n) {
      CAPTURE(n);
      CHECK(l_action_residual(basis, n, p) < XReal::pow2(32 - p, p));
    }
  }
}

TEST_CASE("build needs a validated trace") {
  const Bits p = 64;
  auto trace = painleve::run(3, XReal(1L, p), 500, p);
  REQUIRE(trace.precision_exhausted);
  CHECK_THROWS_AS(build(trace, trace.validated_to + 2), PrecisionError);
  CHECK_NOTHROW(build(trace, trace.validated_to + 1));
}
