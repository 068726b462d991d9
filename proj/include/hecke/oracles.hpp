#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "hecke/ntheory.hpp"

namespace hecke::oracles {

// Coefficients of Delta = q * prod_{n>=1} (1-q^n)^24 up to q^order;
// entry [n] is tau(n), entry [0] is 0.
std::vector<mpz_class> delta_coefficients(unsigned order);

// dim S_k(Gamma0(N)) for even k >= 2, from the genus / elliptic-point counts
// of X_0(N). Independent of the trace machinery.
std::uint64_t dimension_formula(const FactoredInteger& n, unsigned k);

// Literal definitional enumerations, no algebraic shortcuts.
std::uint64_t brute_mu(std::int64_t t, std::uint64_t n, std::uint64_t m, std::uint64_t level);
std::int64_t brute_sigma(std::uint64_t level, std::uint64_t m, std::uint64_t d);
std::uint64_t brute_class_number(std::int64_t d);
std::vector<std::uint64_t> brute_roots(std::int64_t t, std::int64_t m, std::uint64_t modulus);

}  // namespace hecke::oracles
