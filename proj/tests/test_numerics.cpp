#include <doctest.h>

#include <random>

#include "opoly/numerics.hpp"

using namespace opoly;
using namespace opoly::numerics;

namespace {

// |a - b| <= 2^-bits * max(|b|, 1e-300)
bool close_rel(const XReal& a, const XReal& b, long bits) {
  XReal scale = max(abs(b), XReal(1e-300, b.precision()));
  return abs(a - b) <= XReal::pow2(-bits, b.precision()) * scale;
}

XReal x_of(const char* text, Bits bits) { return XReal(std::string_view(text), bits); }

}  // namespace

TEST_CASE("gamma at half integers and poles") {
  const Bits p = 256;
  XReal half = x_of("0.5", p);
  CHECK(close_rel(gamma(half, p), sqrt(XReal::pi(p)), p - 4));
  CHECK(close_rel(gamma(XReal(6L, p), p), XReal(120L, p), p - 4));
  CHECK_THROWS_AS(gamma(XReal(-3L, p), p), PoleError);
  CHECK(rgamma(XReal(-3L, p), p).is_zero());
}

TEST_CASE("gamma recurrence and reflection on random rationals") {
  const Bits p = 200;
  std::mt19937 rng(20240611);
  std::uniform_int_distribution<long> num(-400, 400);
  std::uniform_int_distribution<long> den(1, 37);
  int tested = 0;
  while (tested < 100) {
    XReal x = XReal(num(rng), p) / den(rng);
    if (x.is_integer() && x <= 0) continue;
    if ((x + 1).is_integer() && x + 1 <= 0) continue;
    CHECK(close_rel(gamma(x + 1, p), x * gamma(x, p), p - 8));
    if (!x.is_integer()) {
      XReal lhs = gamma(x, p) * gamma(1 - x, p);
      XReal rhs = XReal::pi(p) / sin_pi(x);
      CHECK(close_rel(lhs, rhs, p - 10));
    }
    ++tested;
  }
}

TEST_CASE("half-integer Bessel functions in closed form") {
  const Bits p = 256;
  XReal nu = x_of("0.5", p);
  XReal nu3 = x_of("1.5", p);
  for (const char* xs : {"0.3", "5", "37.5", "150", "400"}) {
    CAPTURE(xs);
    XReal x = x_of(xs, p);
    XReal pi = XReal::pi(p);
    XReal s = sqrt(2 / (pi * x));
    CHECK(close_rel(bessel_j(nu, x, p), s * sin(x), p - 12));
    CHECK(close_rel(bessel_i(nu, x, p), s * sinh(x), p - 12));
    XReal k = sqrt(pi / (2 * x)) * exp(-x);
    CHECK(close_rel(bessel_k(nu, x, p), k, p - 12));
    CHECK(close_rel(bessel_k(nu3, x, p), k * (1 + 1 / x), p - 12));
    CHECK(close_rel(bessel_k(-nu3, x, p), k * (1 + 1 / x), p - 12));
  }
}

TEST_CASE("Wronskian I_nu K_{nu+1} + I_{nu+1} K_nu = 1/x") {
  const Bits p = 192;
  for (const char* nus : {"0", "1/3", "2", "4.25"}) {
    for (const char* xs : {"0.01", "1.5", "12", "90"}) {
      CAPTURE(nus);
      CAPTURE(xs);
      XReal nu = x_of(nus, p);
      XReal x = x_of(xs, p);
      XReal w = bessel_i(nu, x, p) * bessel_k(nu + 1, x, p) +
                bessel_i(nu + 1, x, p) * bessel_k(nu, x, p);
      CHECK(close_rel(w, 1 / x, p - 16));
    }
  }
}

TEST_CASE("K_nu against its integral representation") {
  const Bits p = 128;
  for (const char* nus : {"0", "1", "2/3", "3"}) {
    for (const char* xs : {"0.25", "3", "25"}) {
      CAPTURE(nus);
      CAPTURE(xs);
      XReal nu = x_of(nus, p);
      XReal x = x_of(xs, p);
      double xd = x.to_double();
      double nud = nu.to_double();
      // e^{-x cosh u} cosh(nu u) <= e^{-x + nu^2/x} e^{-x u^2 / 4}
      Decay decay = Decay::gaussian(xd / 4, std::exp(-xd + nud * nud / xd));
      // Integrands must not round the abscissa below the quadrature precision.
      XReal xw = x.with_precision(2 * p);
      XReal nuw = nu.with_precision(2 * p);
      auto r = quad_semiinf([&](const XReal& u) { return exp(-xw * cosh(u)) * cosh(nuw * u); },
                            decay, p);
      CHECK(close_rel(bessel_k(nu, x, p), r.value, p - 12));
    }
  }
}

TEST_CASE("J_n against Bessel's integral") {
  const Bits p = 160;
  for (long n : {0L, 1L, 5L}) {
    for (const char* xs : {"0.7", "10", "130"}) {
      CAPTURE(n);
      CAPTURE(xs);
      XReal x = x_of(xs, p);
      XReal pi = XReal::pi(p);
      XReal xw = x.with_precision(2 * p);
      auto r = quad_interval([&](const XReal& t) { return cos(n * t - xw * sin(t)); },
                             XReal(0L, p), pi, p);
      XReal expected = r.value / pi;
      XReal got = bessel_j(XReal(n, p), x, p);
      CHECK(abs(got - expected) < XReal::pow2(-p + 12, p));
    }
  }
}

TEST_CASE("asymptotic and series branches agree near the crossover") {
  const Bits p = 256;
  double threshold = bessel_asymptotic_threshold(p + special_function_guard_bits);
  XReal below(threshold - 0.25, p);
  XReal above(threshold + 2.5, p);
  XReal nu(2L, p);
  // Recurrence K_{nu+1} = K_{nu-1} + (2 nu / x) K_nu ties the branches together.
  for (const XReal& x : {below, above}) {
    XReal lhs = bessel_k(nu + 1, x, p);
    XReal rhs = bessel_k(nu - 1, x, p) + 2 * nu / x * bessel_k(nu, x, p);
    CHECK(close_rel(lhs, rhs, p - 12));
    XReal jl = bessel_j(nu + 1, x, p) + bessel_j(nu - 1, x, p);
    CHECK(abs(jl - 2 * nu / x * bessel_j(nu, x, p)) < XReal::pow2(-p + 12, p));
  }
}

TEST_CASE("genhyp reproduces elementary functions") {
  const Bits p = 192;
  XReal one(1L, p);
  XReal two(2L, p);
  XReal x = x_of("0.375", p);
  std::vector<XReal> a1{one};
  std::vector<XReal> b1{one};
  CHECK(close_rel(genhyp(a1, b1, x, p), exp(x), p - 8));
  CHECK(close_rel(genhyp(a1, b1, XReal(-50L, p), p), exp(XReal(-50L, p)), p - 8));

  std::vector<XReal> a2{one, one};
  std::vector<XReal> b2{two};
  CHECK(close_rel(genhyp(a2, b2, x, p), -log1p(-x) / x, p - 8));

  XReal z = x_of("7.5", p);
  std::vector<XReal> none;
  std::vector<XReal> b3{x_of("1.5", p)};
  CHECK(close_rel(genhyp(none, b3, -z * z / 4, p), sin(z) / z, p - 8));
}

TEST_CASE("genhyp parameter and convergence errors") {
  const Bits p = 128;
  XReal one(1L, p);
  std::vector<XReal> bad_den{XReal(-2L, p)};
  std::vector<XReal> nums{one};
  CHECK_THROWS_AS(genhyp(nums, bad_den, one, p), ParameterError);
  std::vector<XReal> three{one, one, one};
  std::vector<XReal> den{one};
  CHECK_THROWS_AS(genhyp(three, den, x_of("0.1", p), p), ConvergenceError);
  std::vector<XReal> two{one, one};
  CHECK_THROWS_AS(genhyp(two, den, XReal(2L, p), p), ConvergenceError);
  // Terminating series are fine anywhere: 2F1(-3, 1; 1; x) = (1 - x)^3.
  std::vector<XReal> term{XReal(-3L, p), one};
  XReal x(5L, p);
  CHECK(close_rel(genhyp(term, den, x, p), pow(1 - x, 3L), p - 4));
}

TEST_CASE("falling-factorial weights differentiate a series") {
  const Bits p = 160;
  // d^2/dx^2 of x^3 e^x via sum_k (3+k)(2+k) x^{k+1} / k!
  XReal one(1L, p);
  std::vector<XReal> a{one};
  std::vector<XReal> b{one};
  XReal x = x_of("1.25", p);
  SeriesSum s = hypergeometric_sum(a, b, x, p + 32, TermWeight{3, 1, 2});
  XReal got = s.value * x;
  XReal expected = exp(x) * x * (6 + 6 * x + x * x);
  CHECK(close_rel(got, expected, p - 8));
}

TEST_CASE("Gauss-Legendre rule integrates polynomials exactly") {
  const Bits p = 200;
  const auto& rule = gauss_legendre(20, p);
  XReal total(0L, p);
  XReal moment(0L, p);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    total += rule.weights[i];
    moment += rule.weights[i] * pow(rule.nodes[i], 38L);
  }
  CHECK(close_rel(total, XReal(2L, p), p - 8));
  CHECK(close_rel(moment, XReal(2L, p) / 39, p - 8));
}

TEST_CASE("semi-infinite Gaussian integrals") {
  const Bits p = 256;
  auto r = quad_semiinf([&](const XReal& t) { return exp(-t * t); }, Decay::gaussian(1.0), p);
  CHECK(close_rel(r.value, sqrt(XReal::pi(p)) / 2, p - 8));
  CHECK(r.error_estimate < XReal::pow2(-p + 4, p));
  // int_0^inf r^5 e^{-3 r^2} = Gamma(3) / (2 * 27)
  auto r5 = quad_semiinf([&](const XReal& t) { return pow(t, 5L) * exp(-3 * t * t); },
                         Decay::gaussian(3.0, 1.0, 5.0), p);
  CHECK(close_rel(r5.value, XReal(1L, p) / 27, p - 8));
}

TEST_CASE("tanh-sinh absorbs endpoint singularities") {
  const Bits p = 256;
  auto r = quad_tanh_sinh_batch(
      [](const XReal& x, std::span<XReal> out) {
        out[0] = log(x);
        out[1] = sqrt(x);
      },
      2, XReal(0L, p), XReal(1L, p), p);
  CHECK(close_rel(r[0].value, XReal(-1L, p), p - 8));
  CHECK(close_rel(r[1].value, XReal(2L, p) / 3, p - 8));
}

TEST_CASE("semi-infinite integral with a logarithmic endpoint") {
  const Bits p = 192;
  // int_0^inf K_0(r) dr = pi / 2, with K_0(r) <= sqrt(pi / 2r) e^-r.
  Decay decay = Decay::exponential(1.0, std::sqrt(M_PI / 2), -0.5);
  XReal zero(0L, 2 * p);
  auto r = quad_semiinf([&](const XReal& x) { return bessel_k(zero, x, p + 32); }, decay, p);
  CHECK(close_rel(r.value, XReal::pi(p) / 2, p - 12));
  CHECK(abs(r.value - XReal::pi(p) / 2) <= r.error_estimate + XReal::pow2(-p, p));
}

TEST_CASE("rational-parameter sums match the generic evaluator") {
  const Bits p = 256;
  std::vector<Rational> a{{1, 3}};
  std::vector<Rational> b{{2, 3}, {5, 4}};
  XReal x = x_of("-7.25", p);
  auto sums = hypergeometric_sums(a, b, x, p + 32, 2, 3, 2);
  std::vector<XReal> ax{x_of("1/3", p + 32)};
  std::vector<XReal> bx{x_of("2/3", p + 32), x_of("5/4", p + 32)};
  for (long order = 0; order <= 2; ++order) {
    SeriesSum ref = hypergeometric_sum(ax, bx, x, p + 32, TermWeight{2, 3, order});
    CHECK(close_rel(sums[order].value, ref.value, p - 8));
  }
}
