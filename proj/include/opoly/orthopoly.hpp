#pragma once

// Monic orthogonal polynomials for the indefinite pairing, built either from
// the recurrence coefficients or directly from the Gram matrix.

#include <vector>

#include "opoly/density.hpp"
#include "opoly/eigen_support.hpp"
#include "opoly/painleve.hpp"
#include "opoly/xreal.hpp"

namespace opoly::ortho {

/// Polynomial supported on degrees degree, degree - stride, degree - 2 stride, ...
struct SparsePoly {
  long degree = 0;
  int stride = 1;
  /// coeffs[j] multiplies z^(degree - j * stride).
  std::vector<XComplex> coeffs;

  XComplex coefficient(long k) const;
  /// Coefficients of z^0..z^degree.
  std::vector<XComplex> dense() const;
};

struct OrthoBasis {
  density::PotentialSpec spec;
  long N = 0;
  std::vector<SparsePoly> polys;
  /// Absolute error bound per coefficient, laid out like polys[n].coeffs.
  std::vector<std::vector<XReal>> coeff_errors;
  std::vector<XReal> h;
  std::vector<int> signs;
  /// |D_n| / |G[n][n]| for every degree (Gram-Schmidt construction only).
  std::vector<XReal> pivots;
  Bits precision = default_precision_bits;
};

/// P_0..P_N from P_{n+1} = z P_n - (i/a) (prod_{j=1}^{d-1} V_{n-j}) P_{n-d+1}.
OrthoBasis build(const painleve::RecurrenceTrace& trace, long N);

/// R[n][m] = |(P_n, P_m)| / sqrt(h_n h_m) off the diagonal and
/// (P_n, P_n) / (rho(n) h_n) - 1 on it, with pairings taken from moments.
XMatrix orthogonality_residual(const OrthoBasis& basis, Bits p);

/// Same, against a Gram matrix already at hand.
XMatrix orthogonality_residual(const OrthoBasis& basis, const density::GramMatrix& gram);

/// Coefficient-wise relative residual of
///   L P_n = i P_{n+d-1} + a (h_n / h_{n-1}) P_{n-1},  L = d/dz + i z^(d-1).
XReal l_action_residual(const OrthoBasis& basis, long n, Bits p);

/// Monic orthogonal polynomials by LDL^H factorization of each weight block
/// of the Gram matrix. SingularGram if a relative pivot drops below 2^(-p/2).
OrthoBasis gram_schmidt_oracle(const density::PotentialSpec& spec, long N, Bits p);
OrthoBasis gram_schmidt(const density::GramMatrix& gram, const density::PotentialSpec& spec);

struct PartitionFunction {
  XReal magnitude;  // prod h_n
  int sign = 1;     // prod rho(n)
};
PartitionFunction partition_function(const OrthoBasis& basis, long N);

/// det G by pivoted LU on the full matrix (no use of the weight structure).
XComplex gram_determinant(const density::GramMatrix& gram);

}  // namespace opoly::ortho
