#pragma once

#include "opoly/xreal.hpp"

namespace opoly::testing {

// |a - b| <= 2^-bits * max(|b|, 1e-300)
inline bool close_rel(const XReal& a, const XReal& b, long bits) {
  XReal scale = max(abs(b), XReal(1e-300, b.precision()));
  return abs(a - b) <= XReal::pow2(-bits, b.precision()) * scale;
}

inline XReal x_of(const char* text, Bits bits) { return XReal(std::string_view(text), bits); }

inline XReal modulus(const XComplex& z) { return hypot(z.real(), z.imag()); }

inline double rel_diff(const XReal& a, const XReal& b) { return (abs(a - b) / abs(b)).to_double(); }

}  // namespace opoly::testing
