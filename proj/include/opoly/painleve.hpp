#pragma once

// The positive solution V_0, V_1, ... of
//   V_n + a^-2 sum_{j=0}^{d-2} prod_{k=0}^{d-2} V_{n+j-k} = (n+1)/a,
// with V_m = 0 for m < 0, V_n = h_{n+1}/h_n.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "opoly/density.hpp"
#include "opoly/errors.hpp"
#include "opoly/xreal.hpp"

namespace opoly::painleve {

struct RecurrenceTrace {
  density::PotentialSpec spec;  // canonical t = 1/d
  long requested = 0;           // N asked for
  /// V_0..V_validated_to; entries past the validated prefix are never stored.
  std::vector<XReal> V;
  /// Estimated absolute error of each stored V_n: the distance between the
  /// two precision runs, or one unit in the last place for closed forms.
  std::vector<XReal> V_errors;
  long validated_to = -1;
  Bits precision = default_precision_bits;
  /// a^(-d/(d-2)); absent for d = 2.
  std::optional<XReal> epsilon_std;
  /// Set when validated_to < requested.
  bool precision_exhausted = false;

  int d() const { return spec.d; }
  /// Standard form v_n = a^(-2/(d-2)) V_n (d != 2).
  XReal v(long n) const;
};

/// One step of the recurrence at index n. For d >= 3, `window` holds
/// V_{n-d+2}..V_{n+d-3} (zeros at negative indices) and the result is
/// V_{n+d-2}. For d <= 2 the relation fixes V_n directly and `window` is
/// ignored. PositivityLost if the divisor vanishes or the result is not
/// positive.
template <typename Scalar>
Scalar step(int d, const Scalar& a, std::span<const Scalar> window, long n) {
  if (d == 1) return Scalar(n + 1) / a;
  if (d == 2) return Scalar(n + 1) * a / (a * a + Scalar(1));
  const long base = n - d + 2;
  auto V = [&](long i) -> const Scalar& { return window[static_cast<std::size_t>(i - base)]; };
  Scalar numerator = a * a * (Scalar(n + 1) / a - V(n));
  for (long j = 0; j <= d - 3; ++j) {
    Scalar product = V(n + j);
    for (long k = 1; k <= d - 2; ++k) product *= V(n + j - k);
    numerator -= product;
  }
  Scalar divisor = V(n + d - 3);
  for (long k = 2; k <= d - 2; ++k) divisor *= V(n + d - 2 - k);
  const long target = n + d - 2;
  if (divisor == Scalar(0)) {
    throw PositivityLost("step: vanishing divisor producing V_" + std::to_string(target), target);
  }
  Scalar next = numerator / divisor;
  if (!(next > Scalar(0))) {
    throw PositivityLost("step: V_" + std::to_string(target) + " is not positive", target);
  }
  return next;
}

/// Forward iteration at precisions p and 2p from the hfun initial data;
/// validated_to is the last n up to which the runs agree to 2^(-p/4).
RecurrenceTrace run(int d, const XReal& a, long N, Bits p);

/// h_n = h(a) prod_{k<n} V_k for n = 0..validated_to+1.
std::vector<XReal> h_sequence(const RecurrenceTrace& trace, Bits p);

/// Relative residual of the relation at every index n whose window lies in
/// the validated prefix.
std::vector<XReal> window_residuals(const RecurrenceTrace& trace);

/// Residual of v_n + sum_j prod_k v_{n+j-k} = (n+1) epsilon_std, relative to
/// the right-hand side (d >= 3).
std::vector<XReal> standard_form_residuals(const RecurrenceTrace& trace);

/// |dh_n/da - (-h_{n+1} + h_n^2 / (a^2 h_{n-d+1}))| / |h_{n+1}| with the
/// derivative by a central difference of step 2^(-p/3). The second term is
/// dropped when n - d + 1 < 0.
XReal dh_residual(int d, const XReal& a, long n, Bits p);

}  // namespace opoly::painleve
