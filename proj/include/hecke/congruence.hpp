#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "hecke/ntheory.hpp"

namespace hecke {

// Square roots of a modulo an odd prime p: the pair {r, p-r} with r <= p-r
// (equal only for a = 0), or nullopt when a is a non-residue.
std::optional<std::pair<std::uint64_t, std::uint64_t>> sqrt_mod_prime(std::uint64_t a,
                                                                      std::uint64_t p);

// All x in [0, p^e) with x^2 - t x + m = 0 (mod p^e), ascending.
// Non-singular roots lift by Newton steps; roots with 2x = t (mod p) are
// lifted exhaustively level by level (such p must divide t^2 - 4m).
std::vector<std::uint64_t> roots_mod_prime_power(std::int64_t t, std::int64_t m,
                                                 std::uint64_t p, unsigned e);

// All roots of x^2 - t x + m modulo the factored modulus, via CRT.
std::vector<std::uint64_t> roots_mod(std::int64_t t, std::int64_t m,
                                     const FactoredInteger& modulus);

// Elliptic-term weight for the trivial character: with N_n = gcd(N, n),
// counts residues c mod N coprime to N that lift to roots of
// c^2 - t c + m (mod N*N_n), scaled by psi(N)/psi(N/N_n).
std::uint64_t mu(std::int64_t t, std::uint64_t n, std::uint64_t m,
                 const FactoredInteger& level);

}  // namespace hecke
