#include "opoly/orthopoly.hpp"

#include <algorithm>
#include <string>

#include <Eigen/LU>

namespace opoly::ortho {

namespace {

XComplex zero_complex(Bits bits) { return XComplex(XReal(0L, bits), XReal(0L, bits)); }

XComplex times_i(const XComplex& z) { return XComplex(-z.imag(), z.real()); }

XComplex scaled(const XComplex& z, const XReal& s) { return XComplex(z.real() * s, z.imag() * s); }

XReal modulus(const XComplex& z) { return hypot(z.real(), z.imag()); }

}  // namespace

XComplex SparsePoly::coefficient(long k) const {
  Bits bits = coeffs.empty() ? working_precision() : precision_of(coeffs.front());
  long gap = degree - k;
  if (k < 0 || gap < 0 || gap % stride != 0) return zero_complex(bits);
  auto j = static_cast<std::size_t>(gap / stride);
  return j < coeffs.size() ? coeffs[j] : zero_complex(bits);
}

std::vector<XComplex> SparsePoly::dense() const {
  Bits bits = coeffs.empty() ? working_precision() : precision_of(coeffs.front());
  std::vector<XComplex> out(static_cast<std::size_t>(degree + 1), zero_complex(bits));
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    out[static_cast<std::size_t>(degree - static_cast<long>(j) * stride)] = coeffs[j];
  }
  return out;
}

OrthoBasis build(const painleve::RecurrenceTrace& trace, long N) {
  if (N < 0) throw DomainError("build: N must be non-negative");
  if (trace.validated_to < N - 1) {
    throw PrecisionError("build: recurrence validated only to n = " +
                         std::to_string(trace.validated_to) + ", need " + std::to_string(N - 1));
  }
  const int d = trace.d();
  const Bits p = trace.precision;
  const Bits w = p + special_function_guard_bits;
  PrecisionGuard guard(w);
  XReal a = trace.spec.a.with_precision(w);
  XReal unit = XReal::pow2(-p, w);

  OrthoBasis basis;
  basis.spec = trace.spec;
  basis.N = N;
  basis.precision = p;
  std::vector<XReal> hs = painleve::h_sequence(trace, p);
  basis.h.assign(hs.begin(), hs.begin() + N + 1);
  for (long n = 0; n <= N; ++n) basis.signs.push_back(density::rho(d, n));

  std::vector<std::vector<XComplex>> coeffs{{XComplex(XReal(1L, w), XReal(0L, w))}};
  std::vector<std::vector<XReal>> errors{{XReal(0L, w)}};
  for (long n = 0; n < N; ++n) {
    std::vector<XComplex> next = coeffs[static_cast<std::size_t>(n)];
    std::vector<XReal> err = errors[static_cast<std::size_t>(n)];
    long back = n - d + 1;
    XReal mult(1L, w);
    bool present = back >= 0;
    for (long j = 1; j <= d - 1 && present; ++j) {
      if (n - j < 0) {
        present = false;
      } else {
        mult *= trace.V[static_cast<std::size_t>(n - j)].with_precision(w);
      }
    }
    if (present) {
      XReal factor = mult / a;
      const auto& lower = coeffs[static_cast<std::size_t>(back)];
      const auto& lower_err = errors[static_cast<std::size_t>(back)];
      if (next.size() < lower.size() + 1) {
        next.resize(lower.size() + 1, zero_complex(w));
        err.resize(lower.size() + 1, XReal(0L, w));
      }
      XReal factor_error = factor * unit * (4 * d);
      for (std::size_t j = 0; j < lower.size(); ++j) {
        next[j + 1] -= scaled(times_i(lower[j]), factor);
        err[j + 1] += factor * lower_err[j] + factor_error * modulus(lower[j]);
      }
    }
    for (std::size_t j = 0; j < next.size(); ++j) err[j] += unit * modulus(next[j]);
    coeffs.push_back(std::move(next));
    errors.push_back(std::move(err));
  }
  for (long n = 0; n <= N; ++n) {
    SparsePoly poly{n, d, {}};
    std::vector<XReal> err;
    for (std::size_t j = 0; j < coeffs[static_cast<std::size_t>(n)].size(); ++j) {
      poly.coeffs.push_back(with_precision(coeffs[static_cast<std::size_t>(n)][j], p));
      err.push_back(errors[static_cast<std::size_t>(n)][j].with_precision(p));
    }
    basis.polys.push_back(std::move(poly));
    basis.coeff_errors.push_back(std::move(err));
  }
  return basis;
}

XMatrix orthogonality_residual(const OrthoBasis& basis, const density::GramMatrix& gram) {
  if (gram.N < basis.N) throw DomainError("orthogonality_residual: Gram matrix too small");
  const int d = basis.spec.d;
  const long N = basis.N;
  const Bits w = basis.precision + special_function_guard_bits;
  PrecisionGuard guard(w);
  XMatrix r = XMatrix::Constant(N + 1, N + 1, XReal(0L, w));
  for (long n = 0; n <= N; ++n) {
    const SparsePoly& pn = basis.polys[static_cast<std::size_t>(n)];
    for (long m = 0; m <= N; ++m) {
      if ((n - m) % d != 0) continue;
      const SparsePoly& pm = basis.polys[static_cast<std::size_t>(m)];
      XComplex sum = zero_complex(w);
      for (std::size_t j = 0; j < pn.coeffs.size(); ++j) {
        long k = pn.degree - static_cast<long>(j) * d;
        XComplex row = zero_complex(w);
        for (std::size_t l = 0; l < pm.coeffs.size(); ++l) {
          long col = pm.degree - static_cast<long>(l) * d;
          row += std::conj(pm.coeffs[l]) * gram.entries(k, col);
        }
        sum += pn.coeffs[j] * row;
      }
      const XReal& hn = basis.h[static_cast<std::size_t>(n)];
      const XReal& hm = basis.h[static_cast<std::size_t>(m)];
      if (n == m) {
        r(n, m) = sum.real() / (density::rho(d, n) * hn) - 1;
      } else {
        r(n, m) = modulus(sum) / sqrt(hn * hm);
      }
    }
  }
  return r;
}

XMatrix orthogonality_residual(const OrthoBasis& basis, Bits p) {
  density::GramMatrix g = density::gram(basis.spec, basis.N, p);
  return orthogonality_residual(basis, g);
}

XReal l_action_residual(const OrthoBasis& basis, long n, Bits p) {
  const int d = basis.spec.d;
  if (n < 1 || n + d - 1 > basis.N) {
    throw DomainError("l_action_residual: need 1 <= n <= N - d + 1");
  }
  const Bits w = p + special_function_guard_bits;
  PrecisionGuard guard(w);
  XReal a = basis.spec.a.with_precision(w);
  XReal strength = basis.spec.strength(w) * d;  // i t d z^(d-1), t d = 1 canonically
  const long top = n + d - 1;
  std::vector<XComplex> lhs(static_cast<std::size_t>(top + 1), zero_complex(w));
  std::vector<XComplex> pn = basis.polys[static_cast<std::size_t>(n)].dense();
  for (long k = 0; k <= n; ++k) {
    const XComplex& c = pn[static_cast<std::size_t>(k)];
    if (k >= 1) lhs[static_cast<std::size_t>(k - 1)] += scaled(c, XReal(k, w));
    lhs[static_cast<std::size_t>(k + d - 1)] += scaled(times_i(c), strength);
  }
  std::vector<XComplex> rhs(static_cast<std::size_t>(top + 1), zero_complex(w));
  std::vector<XComplex> up = basis.polys[static_cast<std::size_t>(top)].dense();
  std::vector<XComplex> down = basis.polys[static_cast<std::size_t>(n - 1)].dense();
  XReal ratio = a * basis.h[static_cast<std::size_t>(n)].with_precision(w) /
                basis.h[static_cast<std::size_t>(n - 1)].with_precision(w);
  for (long k = 0; k <= top; ++k) rhs[static_cast<std::size_t>(k)] += times_i(up[static_cast<std::size_t>(k)]);
  for (long k = 0; k <= n - 1; ++k) {
    rhs[static_cast<std::size_t>(k)] += scaled(down[static_cast<std::size_t>(k)], ratio);
  }
  XReal diff(0L, w);
  XReal scale(0L, w);
  for (long k = 0; k <= top; ++k) {
    diff = max(diff, modulus(lhs[static_cast<std::size_t>(k)] - rhs[static_cast<std::size_t>(k)]));
    scale = max(scale, modulus(lhs[static_cast<std::size_t>(k)]));
  }
  return (diff / scale).with_precision(p);
}

OrthoBasis gram_schmidt(const density::GramMatrix& gram, const density::PotentialSpec& spec) {
  const int d = spec.d;
  const long N = gram.N;
  const Bits p = gram.precision;
  const Bits w = p + special_function_guard_bits;
  PrecisionGuard guard(w);
  XReal threshold = XReal::pow2(-p / 2, w);

  OrthoBasis basis;
  basis.spec = spec;
  basis.N = N;
  basis.precision = p;
  basis.polys.resize(static_cast<std::size_t>(N + 1));
  basis.coeff_errors.resize(static_cast<std::size_t>(N + 1));
  basis.h.resize(static_cast<std::size_t>(N + 1));
  basis.signs.resize(static_cast<std::size_t>(N + 1));
  basis.pivots.resize(static_cast<std::size_t>(N + 1));

  for (int ell = 0; ell < d && ell <= N; ++ell) {
    std::vector<long> idx;
    for (long k = ell; k <= N; k += d) idx.push_back(k);
    const long size = static_cast<long>(idx.size());
    XCMatrix B(size, size);
    XMatrix E(size, size);
    for (long i = 0; i < size; ++i) {
      for (long j = 0; j < size; ++j) {
        B(i, j) = with_precision(gram.entries(idx[i], idx[j]), w);
        E(i, j) = gram.errors(idx[i], idx[j]).with_precision(w);
      }
    }
    // B = L D L^H, unpivoted; C = L^-1 holds the monic polynomials as rows.
    XCMatrix L = XCMatrix::Identity(size, size);
    std::vector<XComplex> D(static_cast<std::size_t>(size), zero_complex(w));
    for (long j = 0; j < size; ++j) {
      XComplex pivot = B(j, j);
      for (long k = 0; k < j; ++k) pivot -= L(j, k) * D[k] * std::conj(L(j, k));
      XReal relative = modulus(pivot) / modulus(B(j, j));
      basis.pivots[static_cast<std::size_t>(idx[j])] = relative.with_precision(p);
      if (relative < threshold) {
        throw SingularGram("gram_schmidt: relative pivot " + relative.to_string(6) +
                               " at degree " + std::to_string(idx[j]),
                           idx[j], relative.to_double());
      }
      D[j] = pivot;
      for (long i = j + 1; i < size; ++i) {
        XComplex s = B(i, j);
        for (long k = 0; k < j; ++k) s -= L(i, k) * D[k] * std::conj(L(j, k));
        L(i, j) = s / pivot;
      }
    }
    XCMatrix C = XCMatrix::Identity(size, size);
    for (long j = 0; j < size; ++j) {
      for (long c = 0; c < j; ++c) {
        XComplex s = zero_complex(w);
        for (long k = c; k < j; ++k) s -= L(j, k) * C(k, c);
        C(j, c) = s;
      }
    }
    // First-order perturbation bound for x = C(j, <j), which solves
    // x B_<j = -B(j, <j):  |dx| <= (E(j, <j) + |x| E_<j) |B_<j^-1|, and
    // B_<j^-1 = C_<j^H D^-1 C_<j.
    for (long j = 0; j < size; ++j) {
      std::vector<XReal> bound(static_cast<std::size_t>(j), XReal(0L, w));
      if (j > 0) {
        std::vector<XReal> lhs(static_cast<std::size_t>(j), XReal(0L, w));
        for (long c = 0; c < j; ++c) {
          XReal s = E(j, c);
          for (long k = 0; k < j; ++k) s += modulus(C(j, k)) * E(k, c);
          lhs[c] = s;
        }
        for (long c = 0; c < j; ++c) {
          for (long r = 0; r < j; ++r) {
            XComplex inv = zero_complex(w);
            for (long k = std::max(r, c); k < j; ++k) {
              inv += std::conj(C(k, r)) * C(k, c) / D[k];
            }
            bound[c] += lhs[r] * modulus(inv);
          }
        }
      }
      long n = idx[j];
      SparsePoly poly{n, d, {}};
      std::vector<XReal> err;
      for (long c = j; c >= 0; --c) {
        poly.coeffs.push_back(with_precision(C(j, c), p));
        XReal e = modulus(C(j, c)) * XReal::pow2(8 - p, w);
        if (c < j) e += bound[c];
        err.push_back(e.with_precision(p));
      }
      basis.polys[static_cast<std::size_t>(n)] = std::move(poly);
      basis.coeff_errors[static_cast<std::size_t>(n)] = std::move(err);
      basis.h[static_cast<std::size_t>(n)] = modulus(D[j]).with_precision(p);
      basis.signs[static_cast<std::size_t>(n)] = D[j].real().sign() >= 0 ? 1 : -1;
    }
  }
  return basis;
}

OrthoBasis gram_schmidt_oracle(const density::PotentialSpec& spec, long N, Bits p) {
  return gram_schmidt(density::gram(spec, N, p), spec);
}

PartitionFunction partition_function(const OrthoBasis& basis, long N) {
  if (N < 0 || N > basis.N) throw DomainError("partition_function: N outside the basis");
  PartitionFunction z{XReal(1L, basis.precision), 1};
  for (long n = 0; n <= N; ++n) {
    z.magnitude *= basis.h[static_cast<std::size_t>(n)];
    z.sign *= basis.signs[static_cast<std::size_t>(n)];
  }
  return z;
}

XComplex gram_determinant(const density::GramMatrix& gram) {
  const Bits w = gram.precision + special_function_guard_bits;
  PrecisionGuard guard(w);
  XCMatrix m = gram.entries;
  for (long i = 0; i < m.rows(); ++i) {
    for (long j = 0; j < m.cols(); ++j) m(i, j) = with_precision(m(i, j), w);
  }
  Eigen::PartialPivLU<XCMatrix> lu(m);
  return with_precision(lu.determinant(), gram.precision);
}

}  // namespace opoly::ortho
