#include "hecke/oracles.hpp"

#include <numeric>
#include <set>
#include <stdexcept>

namespace hecke::oracles {

namespace {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

}  // namespace

std::vector<mpz_class> delta_coefficients(unsigned order) {
  if (order == 0) throw std::invalid_argument("delta_coefficients: order must be >= 1");
  // prod (1 - q^n)^24 truncated at q^(order-1), then shifted by q
  std::vector<mpz_class> series(order, 0);
  series[0] = 1;
  for (unsigned n = 1; n < order; ++n) {
    for (int rep = 0; rep < 24; ++rep) {
      for (unsigned i = order - 1; i >= n; --i) series[i] -= series[i - n];
    }
  }
  std::vector<mpz_class> tau(order + 1, 0);
  for (unsigned i = 0; i < order; ++i) tau[i + 1] = series[i];
  return tau;
}

std::uint64_t dimension_formula(const FactoredInteger& n, unsigned k) {
  if (k < 2 || k % 2 != 0) throw std::invalid_argument("dimension_formula: k must be even, >= 2");
  u64 index = psi(n);
  // elliptic points of order 2 and 3
  u64 e2 = 1, e3 = 1;
  if (n.value % 4 == 0) {
    e2 = 0;
  } else {
    for (const auto& [p, e] : n.factors) {
      if (p == 2) continue;
      e2 *= p % 4 == 1 ? 2 : 0;
    }
  }
  if (n.value % 9 == 0) {
    e3 = 0;
  } else {
    for (const auto& [p, e] : n.factors) {
      if (p == 3) continue;
      e3 *= p % 3 == 1 ? 2 : 0;
    }
  }
  // cusps
  u64 einf = 0;
  for (u64 d : divisors(n)) einf += euler_phi(factorize(std::gcd(d, n.value / d)));

  mpq_class genus_q = 1 + mpq_class(index) / 12 - mpq_class(e2) / 4 - mpq_class(e3) / 3 -
                      mpq_class(einf) / 2;
  if (genus_q.get_den() != 1) throw std::logic_error("dimension_formula: genus not integral");
  mpz_class genus_z = genus_q.get_num();
  i64 g = genus_z.get_si();
  if (k == 2) return static_cast<u64>(g);
  i64 dim = (static_cast<i64>(k) - 1) * (g - 1) + static_cast<i64>(k / 4) * static_cast<i64>(e2) +
            static_cast<i64>(k / 3) * static_cast<i64>(e3) +
            (static_cast<i64>(k) / 2 - 1) * static_cast<i64>(einf);
  if (dim < 0) throw std::logic_error("dimension_formula: negative dimension");
  return static_cast<u64>(dim);
}

std::uint64_t brute_mu(std::int64_t t, std::uint64_t n, std::uint64_t m, std::uint64_t level) {
  u64 nn = std::gcd(level, n);
  u64 big = level * nn;
  std::set<u64> residues;
  for (u64 c = 0; c < big; ++c) {
    u128 val = (u128)c * c + m;
    u128 tc = (u128)((t % (i64)big + (i64)big) % (i64)big) * c;
    if ((val + (u128)big * big - tc) % big == 0) residues.insert(c % level);
  }
  u64 units = 0;
  for (u64 r : residues) {
    if (std::gcd(r, level) == 1) ++units;
  }
  // psi(level) / psi(level / gcd(level, n)), both from the definition
  auto psi_of = [](u64 v) {
    u64 r = v;
    for (u64 p = 2; p * p <= v; ++p) {
      if (v % p == 0) {
        r += r / p;
        while (v % p == 0) v /= p;
      }
    }
    if (v > 1) r += r / v;
    return r;
  };
  u64 psi_level = psi_of(level);
  u64 psi_small = psi_of(level / nn);
  return units * (psi_level / psi_small);
}

std::int64_t brute_sigma(std::uint64_t level, std::uint64_t m, std::uint64_t d) {
  i64 h = static_cast<i64>(d) - static_cast<i64>(m / d);
  i64 total = 0;
  for (u64 tau = 1; tau <= level; ++tau) {
    if (level % tau != 0) continue;
    u64 g = std::gcd(tau, level / tau);
    if (h != 0 && (h % static_cast<i64>(g)) != 0) continue;
    // y = d (mod tau), y = m/d (mod level/tau), unique modulo lcm
    u64 other = level / tau;
    u64 l = tau / std::gcd(tau, other) * other;
    bool found = false;
    u64 y = 0;
    for (u64 cand = 0; cand < l; ++cand) {
      if (cand % tau == d % tau && cand % other == (m / d) % other) {
        y = cand;
        found = true;
        break;
      }
    }
    if (!found) continue;
    if (std::gcd(y, level) != 1) continue;
    u64 phi_g = 0;
    for (u64 j = 1; j <= g; ++j) {
      if (std::gcd(j, g) == 1) ++phi_g;
    }
    total += static_cast<i64>(phi_g);
  }
  return total;
}

std::uint64_t brute_class_number(std::int64_t d) {
  if (d >= 0 || ((d % 4) + 4) % 4 > 1)
    throw std::invalid_argument("brute_class_number: invalid discriminant");
  i64 ad = -d;
  u64 count = 0;
  for (i64 a = 1; a <= ad; ++a) {
    for (i64 c = a; c <= ad; ++c) {
      for (i64 b = -a; b <= a; ++b) {
        if (b * b - 4 * a * c != d) continue;
        if ((b == -a || a == c) && b < 0) continue;
        if (std::gcd(std::gcd(a, b < 0 ? -b : b), c) != 1) continue;
        ++count;
      }
    }
  }
  return count;
}

std::vector<std::uint64_t> brute_roots(std::int64_t t, std::int64_t m, std::uint64_t modulus) {
  std::vector<u64> roots;
  u64 tm = static_cast<u64>((t % (i64)modulus + (i64)modulus) % (i64)modulus);
  u64 mm = static_cast<u64>((m % (i64)modulus + (i64)modulus) % (i64)modulus);
  for (u64 x = 0; x < modulus; ++x) {
    u128 val = (u128)x * x + mm + (u128)modulus * modulus - (u128)tm * x;
    if (val % modulus == 0) roots.push_back(x);
  }
  return roots;
}

}  // namespace hecke::oracles
