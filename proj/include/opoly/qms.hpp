#pragma once

// Truncated ladder operators on the normalized states |n> = P_n / sqrt(h_n):
//   W |n> = w_n |n+1>,  W^T |n+1> = w_n |n>,  w_n = sqrt(v_n).

#include "opoly/eigen_support.hpp"
#include "opoly/painleve.hpp"
#include "opoly/xreal.hpp"

namespace opoly::qms {

struct OperatorTruncation {
  long N = 0;
  int d = 3;
  XReal a;
  std::vector<XReal> w;  // w_0..w_{N-1}
  XMatrix W;             // (N+1) x (N+1), first subdiagonal only
  XMatrix Wdag;          // transpose of W
  XReal epsilon;         // a^(-d/(d-2))
  Bits precision = default_precision_bits;
};

struct Operators {
  OperatorTruncation op;
  /// a^(1/(d-2)) (W + i Wdag^(d-1)): multiplication by z.
  XCMatrix M;
  /// a^((d-1)/(d-2)) (i W^(d-1) + Wdag): the operator d/dz + i z^(d-1).
  XCMatrix L;
};

/// DomainError for d <= 2; PrecisionError if the trace is not validated up to N.
Operators build_operators(const painleve::RecurrenceTrace& trace, long N);

/// Max-norm of [Wdag, W] + [Wdag^(d-1), W^(d-1)] - epsilon I over the
/// interior block 0..N-d.
XReal qms_residual(const OperatorTruncation& op, int d);

/// Max-norm of [L, M] - I over the interior block 0..N-d.
XReal lm_commutator_residual(const OperatorTruncation& op, const XCMatrix& M, const XCMatrix& L);

}  // namespace opoly::qms
