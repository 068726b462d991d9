#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "hecke/ntheory.hpp"

namespace hecke {

struct TraceInput {
  std::uint64_t m;        // Hecke index, >= 1
  FactoredInteger level;  // N
  unsigned weight;        // k, even, >= 2 (trivial character forces even k)
};

// Tr T_m(N, k) = a1 - a2 - a3 + a4, with an integral total.
struct TraceBreakdown {
  mpq_class a1, a2, a3, a4;
  mpz_class total;
};

// One |t| value of the elliptic sum together with its admissible n-levels:
// n^2 | (t^2 - 4m) and (t^2 - 4m)/n^2 = 0,1 (mod 4).
struct A2Level {
  std::uint32_t n;
  mpq_class hw;  // weighted class number of (t^2-4m)/n^2
};
struct A2Orbit {
  std::int64_t t;  // t >= 0; a positive t stands for the pair +-t
  std::vector<A2Level> levels;
};
const std::vector<A2Orbit>& a2_orbits(std::uint64_t m);

mpq_class term_a1(const TraceInput& in);
mpq_class term_a2(const TraceInput& in);
// Reference evaluation summing both signs of t separately (no merge).
mpq_class term_a2_two_sided(const TraceInput& in);
// Sum over tau | N with gcd(tau, N/tau) | (d - m/d) of phi(gcd(tau, N/tau)),
// restricted to tau whose CRT residue y_tau is a unit mod N.
std::int64_t sigma_term(const FactoredInteger& level, std::uint64_t m, std::uint64_t d);
mpq_class term_a3(const TraceInput& in);
mpq_class term_a4(const TraceInput& in);

TraceBreakdown trace(const TraceInput& in);
mpz_class trace_total(std::uint64_t m, const FactoredInteger& level, unsigned weight);

// Fixed (m, N), weight ascending in steps of 2. Reuses the per-level mu
// values, incremental Lucas states, and running powers, so a full k-sweep
// costs O(1) big-number updates per step.
class TraceSweep {
 public:
  TraceSweep(std::uint64_t m, const FactoredInteger& level, unsigned k_start);
  unsigned weight() const { return k_; }
  const mpz_class& total() const { return total_; }
  void advance();

 private:
  void recompute();

  std::uint64_t m_;
  unsigned k_;
  std::uint64_t psi_;
  bool a1_active_ = false;
  mpz_class m_half_pow_;  // m^(k/2 - 1)
  struct Orbit {
    mpq_class coeff;  // (1/2 at t=0) * sum_n hw * mu
    LucasIterator lucas;
  };
  std::vector<Orbit> orbits_;
  struct Hyper {
    std::uint64_t base;  // min(d, m/d)
    std::int64_t sigma;
    mpz_class pow;  // base^(k-1)
  };
  std::vector<Hyper> hyper_;
  std::uint64_t a4_at_k2_ = 0;
  mpz_class total_;
  mpq_class acc_;  // scratch
};

}  // namespace hecke
