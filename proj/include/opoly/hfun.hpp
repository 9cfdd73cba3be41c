#pragma once

// h(a) = (1, 1) = int exp(-a|z|^2 + (i/d)(z^d + conj(z)^d)) dx dy and its
// a-derivatives.
//
// For d >= 3, h is a combination of the entire functions
//   phi_m(a) = a^m 1F(d-2)((m+1)/d; {(m+2)/d..(d-1)/d} u {(d+1)/d..(m+d)/d}; X a^d)
// with X = (-1)^(d+1) d^(2-d), which span the solutions of
//   (-1)^(d-1) h^(d-1) = a h + a^2 h'.

#include <vector>

#include "opoly/numerics.hpp"
#include "opoly/xreal.hpp"

namespace opoly::hfun {

struct HEval {
  int d = 0;
  XReal a;
  /// h(a), h'(a), ..., h^(d-2)(a); just h(a) for d <= 2.
  std::vector<XReal> values;
  /// Absolute error bound for each entry of `values`.
  std::vector<XReal> errors;
  /// Largest relative error over `values`.
  XReal error;
  Bits precision = default_precision_bits;
};

/// k-th derivative of phi_m at a (d >= 3, 0 <= m <= d-2, k >= 0).
XReal phi(int d, int m, const XReal& a, int k, Bits p);

/// h, h', ..., h^(max_order) at a. For d <= 2, max_order <= 1.
/// `errors`, if given, receives absolute error bounds.
std::vector<XReal> h_derivatives(int d, const XReal& a, int max_order, Bits p,
                                 std::vector<XReal>* errors = nullptr);

HEval h_eval(int d, const XReal& a, Bits p);

/// Closed forms: d=1 (pi/a) e^(-1/a); d=2 pi/sqrt(a^2+1);
/// d=3 e^(a^3/6) sqrt(pi a/3) K_{1/6}(a^3/6);
/// d=4 (pi^2 a/4)(J_{-1/4}^2 - sqrt2 J_{-1/4} J_{1/4} + J_{1/4}^2) at a^2/4.
XReal h_closed(int d, const XReal& a, Bits p);

/// pi int_0^inf e^(-a t) J_0(2 t^(d/2) / d) dt by quadrature. For d >= 3 the
/// contour is turned by pi/d, giving
///   2 int_0^inf K_0((2/d) u^(d/2)) e^(-a u cos(pi/d)) sin(pi/d - a u sin(pi/d)) du.
numerics::QuadratureResult<XReal> h_laplace(int d, const XReal& a, Bits p);

/// V_j = -h^(j+1)(a) / h^(j)(a) for j = 0..d-3 (empty for d <= 2).
/// SignError unless (-1)^j h^(j)(a) > 0 for all j <= d-2.
std::vector<XReal> initial_conditions(int d, const XReal& a, Bits p);

/// |(-1)^(d-1) h^(d-1) - a h - a^2 h'| / |a h|.
XReal ode_residual(int d, const XReal& a, Bits p);

}  // namespace opoly::hfun
