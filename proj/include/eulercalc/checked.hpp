#pragma once

#include <cstdint>

#include "eulercalc/error.hpp"

namespace eulercalc {

/// Exact integer type for counts, coefficients and integrals.
using Count = std::int64_t;

inline Count checked_add(Count a, Count b) {
  Count r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError();
  return r;
}

inline Count checked_sub(Count a, Count b) {
  Count r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError();
  return r;
}

inline Count checked_mul(Count a, Count b) {
  Count r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError();
  return r;
}

/// (-1)^n
constexpr Count parity_sign(std::size_t n) noexcept { return (n % 2 == 0) ? 1 : -1; }

/// Adds sign * value, where sign is +1 or -1.
inline Count signed_accumulate(Count acc, Count sign, Count value) {
  return sign > 0 ? checked_add(acc, value) : checked_sub(acc, value);
}

}  // namespace eulercalc
