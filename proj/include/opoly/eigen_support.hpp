#pragma once

// Eigen traits for XReal so that dense Eigen containers and decompositions
// accept extended-precision scalars (and std::complex<XReal>).

#include <Eigen/Core>
#include <Eigen/LU>

#include "opoly/xreal.hpp"

namespace Eigen {

template <>
struct NumTraits<opoly::XReal> : GenericNumTraits<opoly::XReal> {
  using Real = opoly::XReal;
  using NonInteger = opoly::XReal;
  using Nested = opoly::XReal;
  using Literal = opoly::XReal;

  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = HugeCost,
    AddCost = HugeCost,
    MulCost = HugeCost
  };

  static inline Real epsilon() { return opoly::XReal::epsilon(opoly::working_precision()); }
  static inline Real dummy_precision() {
    return opoly::XReal::pow2(-(opoly::working_precision() * 7) / 8, opoly::working_precision());
  }
  static inline Real highest() {
    opoly::XReal r = opoly::make_result(opoly::working_precision());
    mpfr_set_inf(r.get(), 1);
    mpfr_nextbelow(r.get());
    return r;
  }
  static inline Real lowest() { return -highest(); }
  static inline int digits10() {
    return static_cast<int>(static_cast<double>(opoly::working_precision()) * 0.30103);
  }
  static inline int digits() { return static_cast<int>(opoly::working_precision()); }
};

}  // namespace Eigen

namespace opoly {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using XMatrix = MatrixX<XReal>;
using XCMatrix = MatrixX<XComplex>;
using XVector = VectorX<XReal>;
using XCVector = VectorX<XComplex>;

}  // namespace opoly
