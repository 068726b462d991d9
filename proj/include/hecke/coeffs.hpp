#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include <gmpxx.h>

#include "hecke/trace.hpp"

namespace hecke {

enum class Sign { Negative, Zero, Positive };
char sign_char(Sign s);
Sign sign_of(const mpz_class& v);

// Row type of the exceptional-pair tables.
struct SignReport {
  std::uint64_t m;
  std::uint64_t level;
  unsigned weight;
  std::uint64_t dim;
  mpz_class a2;
  Sign sign;
  friend bool operator==(const SignReport&, const SignReport&) = default;
};

// First coefficient of the Hecke polynomial: Tr T_m(N, k).
mpz_class a1_coefficient(std::uint64_t m, const FactoredInteger& level, unsigned weight);

// Second coefficient. Requires gcd(N, m) = 1 and even k; equals
// ((Tr T_m)^2 - sum_{d|m} d^{k-1} Tr T_{m^2/d^2}) / 2, the bracket being even.
mpz_class a2_coefficient(std::uint64_t m, const FactoredInteger& level, unsigned weight);

// dim S_k(Gamma0(N)) computed as Tr T_1(N, k).
std::uint64_t dimension(const FactoredInteger& level, unsigned weight);

SignReport sign_report(std::uint64_t m, const FactoredInteger& level, unsigned weight);

// a2 and dim for fixed (m, N) across an ascending even-k sweep.
class A2Sweep {
 public:
  A2Sweep(std::uint64_t m, const FactoredInteger& level, unsigned k_start);
  unsigned weight() const { return k_; }
  const mpz_class& a2() const { return a2_; }
  std::uint64_t dim() const { return dim_; }
  void advance();

 private:
  void recompute();

  std::uint64_t m_;
  unsigned k_;
  std::map<std::uint64_t, std::unique_ptr<TraceSweep>> traces_;  // by Hecke index
  struct Weighted {
    std::uint64_t d;
    std::uint64_t target;  // m^2 / d^2
    mpz_class pow;         // d^(k-1)
  };
  std::vector<Weighted> weights_;
  mpz_class a2_;
  std::uint64_t dim_ = 0;
};

}  // namespace hecke
