#pragma once

// The indefinite hermitian pairing (f, g) = int f(z) conj(sigma g)(z) rho(z)
// with rho(z) = exp(-a|z|^2 + i t (z^d + conj(z)^d)), its sign bookkeeping,
// moments and Gram matrices.

#include <optional>
#include <vector>

#include "opoly/eigen_support.hpp"
#include "opoly/numerics.hpp"
#include "opoly/xreal.hpp"

namespace opoly::density {

struct PotentialSpec {
  int d = 3;
  XReal a;
  /// Strength t; nullopt means the canonical value 1/d, which is then
  /// materialized exactly at whatever precision a computation needs.
  std::optional<XReal> t;

  static PotentialSpec canonical(int d, const XReal& a) { return {d, a, std::nullopt}; }
  static PotentialSpec with_strength(int d, const XReal& a, const XReal& t) { return {d, a, t}; }

  bool is_canonical() const { return !t.has_value(); }
  XReal strength(Bits bits) const;
  void validate() const;
};

/// Roots of unity are represented by exponents of omega = exp(i pi / d), so
/// that every sign computation is exact.
struct SignData {
  int d = 1;
  /// epsilon = omega^epsilon_exponent (odd, so that epsilon^d = -1).
  int epsilon_exponent = 1;
  XComplex epsilon;
  std::vector<int> chi;  // chi[l] in [0, 2d) for l in [0, d)
  std::vector<int> tau;  // +-1

  /// Exponent E (mod 2d) with sign_factor(m) = omega^E.
  int sign_factor_exponent(long m) const;
  /// conj((-eps)^(-chi(m mod d)) eps^m); always +-1.
  XComplex sign_factor(long m, Bits bits) const;
  int rho(long n) const;
  int tau_of(long m) const { return tau[static_cast<std::size_t>(((m % d) + d) % d)]; }
};

/// Canonical sign data (epsilon = exp(i pi/d)); other odd exponents select the
/// other solutions of epsilon^d = -1.
SignData sign_data(int d, int epsilon_exponent = 1);

/// rho(n) = (-1)^(n mod d + floor(n/d)).
int rho(int d, long n);

struct Moment {
  XComplex value;
  XReal error;
};

/// (z^n, z^m); exact zero when n and m differ mod d.
Moment moment_with_error(const PotentialSpec& spec, long n, long m, Bits p);
XComplex moment(const PotentialSpec& spec, long n, long m, Bits p);

struct GramMatrix {
  long N = 0;
  XCMatrix entries;
  /// Bound on the absolute error of each entry.
  XMatrix errors;
  Bits precision = default_precision_bits;
};

/// G[n][m] = (z^n, z^m) for n, m <= N, assembled only on n = m mod d.
GramMatrix gram(const PotentialSpec& spec, long N, Bits p);

/// Radial integral int_0^inf r^alpha e^(-a r^2) J_q(c r^d) dr along the real
/// axis, for each alpha in `alphas`. This is the direct route; it is used for
/// d <= 2 and kept as a cross-check for the rotated route.
std::vector<numerics::QuadratureResult<XReal>> radial_integrals_real_axis(
    int d, const XReal& a, const XReal& c, long q, const std::vector<long>& alphas, Bits p);

/// The same integrals with the contour turned by pi/(2d) (d >= 2), where the
/// kernel becomes K_q(c s^d) and decays instead of oscillating:
///   (2/pi) int_0^inf s^alpha e^(-a cos(pi/d) s^2) K_q(c s^d) cos(Phi(s)) ds,
///   Phi(s) = (alpha+1) pi/(2d) - (q+1) pi/2 - a sin(pi/d) s^2.
std::vector<numerics::QuadratureResult<XReal>> radial_integrals_rotated(
    int d, const XReal& a, const XReal& c, long q, const std::vector<long>& alphas, Bits p);

struct RescaleResult {
  XReal a_canonical;
  XReal lambda;
};

/// z -> lambda z maps (a, t) to (a lambda^2, 1/d) with lambda = (d t)^(-1/d);
/// moments pick up lambda^(n+m+2). DomainError for t <= 0; negative t is
/// the complex conjugate model.
RescaleResult rescale(const XReal& a, const XReal& t, int d);

}  // namespace opoly::density
