#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <gmpxx.h>

namespace hecke {

struct PrimePower {
  std::uint64_t p;
  std::uint32_t e;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// A positive integer together with its prime factorization.
// Invariants: product of p^e equals value, primes strictly increasing,
// every exponent >= 1, and value == 1 iff factors is empty.
struct FactoredInteger {
  std::uint64_t value = 1;
  std::vector<PrimePower> factors;
  friend bool operator==(const FactoredInteger&, const FactoredInteger&) = default;
};

// Primes below 2^16, built once; safe to read from any thread.
const std::vector<std::uint32_t>& small_primes();

// Trial division against the prime table, falling back to Miller-Rabin and
// Pollard rho for cofactors above 2^32. Rejects n == 0.
FactoredInteger factorize(std::uint64_t n);

std::uint64_t psi(const FactoredInteger& n);  // [SL2(Z) : Gamma0(n)]
unsigned omega(const FactoredInteger& n);     // number of distinct primes
std::uint64_t euler_phi(const FactoredInteger& n);
std::uint64_t sigma1(const FactoredInteger& n);
std::vector<std::uint64_t> divisors(const FactoredInteger& n);  // ascending

FactoredInteger mul_factored(const FactoredInteger& a, const FactoredInteger& b);
// Requires b | a.
FactoredInteger div_exact_factored(const FactoredInteger& a, const FactoredInteger& b);

struct CrtResult {
  std::uint64_t residue;
  std::uint64_t modulus;  // lcm of the two input moduli
};
// Simultaneous solution of x = a (mod ma), x = b (mod mb); nullopt when the
// residues are incompatible modulo gcd(ma, mb).
std::optional<CrtResult> crt(std::int64_t a, std::uint64_t ma,
                             std::int64_t b, std::uint64_t mb);

// Lucas sequence of the first kind: U_0 = 0, U_1 = 1,
// U_j = t*U_{j-1} - m*U_{j-2}.
mpz_class lucas_u(std::uint64_t index, std::int64_t t, std::int64_t m);

// Incremental (U_j, U_{j+1}) state for consecutive-index sweeps.
class LucasIterator {
 public:
  LucasIterator(std::int64_t t, std::int64_t m) : t_(t), m_(m) {}
  std::uint64_t index() const { return j_; }
  const mpz_class& value() const { return u_; }  // U_j
  void step();
  void advance_to(std::uint64_t j);

 private:
  std::int64_t t_, m_;
  std::uint64_t j_ = 0;
  mpz_class u_ = 0;     // U_j
  mpz_class next_ = 1;  // U_{j+1}
  mpz_class scratch_;
};

// Segmented scans over [lo, hi] in ascending order. Both require hi < 2^32
// (the prime table covers divisors up to 2^16).
void psi_omega_scan(
    std::uint64_t lo, std::uint64_t hi,
    const std::function<void(std::uint64_t n, std::uint64_t psi, unsigned omega)>& fn);
void factorize_range(std::uint64_t lo, std::uint64_t hi,
                     const std::function<void(const FactoredInteger&)>& fn);

std::uint64_t isqrt_u64(std::uint64_t n);
bool is_perfect_square(std::uint64_t n);

}  // namespace hecke
