#pragma once

#include <cstdint>

#include <gmpxx.h>

namespace hecke {

// d < 0 and d = 0 or 1 (mod 4)
bool is_valid_discriminant(std::int64_t d);

// Count of SL2(Z)-reduced primitive positive-definite binary quadratic forms
// (a,b,c) with b^2 - 4ac = d: |b| <= a <= c, gcd(a,b,c) = 1, and b >= 0
// whenever |b| = a or a = c. Memoized; throws on invalid d.
std::uint64_t class_number(std::int64_t d);

// class_number, divided by 2 at d = -4 and by 3 at d = -3.
mpq_class weighted_class_number(std::int64_t d);

}  // namespace hecke
