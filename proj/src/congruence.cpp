#include "hecke/congruence.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "hecke/errors.hpp"

namespace hecke {

namespace {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 powmod(u64 base, u64 exp, u64 mod) {
  if (mod == 1) return 0;
  u64 r = 1;
  base %= mod;
  while (exp) {
    if (exp & 1) r = mulmod(r, base, mod);
    base = mulmod(base, base, mod);
    exp >>= 1;
  }
  return r;
}

u64 reduce_mod(i64 v, u64 m) {
  i64 r = v % static_cast<i64>(m);
  if (r < 0) r += static_cast<i64>(m);
  return static_cast<u64>(r);
}

// x^2 - t x + m mod `mod`, all inputs already reduced
u64 eval_f(u64 x, u64 t, u64 m, u64 mod) {
  u64 x2 = mulmod(x, x, mod);
  u64 tx = mulmod(t, x, mod);
  return (x2 + mod - tx + m % mod) % mod;
}

u64 inverse_mod(u64 a, u64 m) {
  if (m == 1) return 0;
  i64 t = 0, newt = 1;
  i64 r = static_cast<i64>(m), newr = static_cast<i64>(a % m);
  while (newr != 0) {
    i64 q = r / newr;
    t = std::exchange(newt, t - q * newt);
    r = std::exchange(newr, r - q * newr);
  }
  if (r != 1) throw internal_error("congruence: inverse of non-unit");
  return static_cast<u64>(t < 0 ? t + static_cast<i64>(m) : t);
}

}  // namespace

std::optional<std::pair<std::uint64_t, std::uint64_t>> sqrt_mod_prime(std::uint64_t a,
                                                                      std::uint64_t p) {
  if (p < 3 || p % 2 == 0) throw std::invalid_argument("sqrt_mod_prime: p must be an odd prime");
  a %= p;
  if (a == 0) return std::make_pair(u64(0), u64(0));
  if (powmod(a, (p - 1) / 2, p) != 1) return std::nullopt;
  u64 r;
  if (p % 4 == 3) {
    r = powmod(a, (p + 1) / 4, p);
  } else {
    // Tonelli-Shanks
    u64 q = p - 1;
    unsigned s = 0;
    while ((q & 1) == 0) {
      q >>= 1;
      ++s;
    }
    u64 z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    u64 c = powmod(z, q, p);
    r = powmod(a, (q + 1) / 2, p);
    u64 t = powmod(a, q, p);
    unsigned m = s;
    while (t != 1) {
      u64 tt = t;
      unsigned i = 0;
      while (tt != 1) {
        tt = mulmod(tt, tt, p);
        ++i;
      }
      u64 b = c;
      for (unsigned j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
      r = mulmod(r, b, p);
      c = mulmod(b, b, p);
      t = mulmod(t, c, p);
      m = i;
    }
  }
  u64 other = p - r;
  return std::make_pair(std::min(r, other), std::max(r, other));
}

std::vector<std::uint64_t> roots_mod_prime_power(std::int64_t t, std::int64_t m,
                                                 std::uint64_t p, unsigned e) {
  if (e == 0) throw std::invalid_argument("roots_mod_prime_power: e must be >= 1");
  std::vector<u64> roots;
  u64 tp = reduce_mod(t, p);
  u64 mp = reduce_mod(m, p);
  if (p == 2) {
    for (u64 x : {u64(0), u64(1)}) {
      if (eval_f(x, tp, mp, 2) == 0) roots.push_back(x);
    }
  } else {
    // complete the square: (2x - t)^2 = t^2 - 4m
    u64 disc = reduce_mod(t * t - 4 * m, p);
    auto sq = sqrt_mod_prime(disc, p);
    if (!sq) return {};
    u64 inv2 = inverse_mod(2, p);
    roots.push_back(mulmod((tp + sq->first) % p, inv2, p));
    if (sq->second != sq->first) roots.push_back(mulmod((tp + sq->second) % p, inv2, p));
  }
  u64 mod = p;
  for (unsigned level = 1; level < e; ++level) {
    u64 next_mod = mod * p;
    u64 tn = reduce_mod(t, next_mod);
    u64 mn = reduce_mod(m, next_mod);
    std::vector<u64> lifted;
    for (u64 r : roots) {
      u64 deriv = (2 * r % p + p - tp) % p;  // f'(r) mod p
      if (deriv != 0) {
        u64 fr = eval_f(r % next_mod, tn, mn, next_mod);
        u64 d2 = (2 * (r % next_mod) % next_mod + next_mod - tn) % next_mod;
        u64 corr = mulmod(fr, inverse_mod(d2, next_mod), next_mod);
        lifted.push_back((r % next_mod + next_mod - corr) % next_mod);
      } else {
        // singular root: every extension must be tested (p | t^2 - 4m here)
        for (u64 i = 0; i < p; ++i) {
          u64 cand = r + i * mod;
          if (eval_f(cand, tn, mn, next_mod) == 0) lifted.push_back(cand);
        }
      }
    }
    roots = std::move(lifted);
    if (roots.empty()) return {};
    mod = next_mod;
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

std::vector<std::uint64_t> roots_mod(std::int64_t t, std::int64_t m,
                                     const FactoredInteger& modulus) {
  std::vector<u64> result{0};
  u64 mod_so_far = 1;
  for (const auto& [p, e] : modulus.factors) {
    u64 pe = p;
    for (std::uint32_t i = 1; i < e; ++i) pe *= p;
    std::vector<u64> local = roots_mod_prime_power(t, m, p, e);
    if (local.empty()) return {};
    std::vector<u64> combined;
    combined.reserve(result.size() * local.size());
    for (u64 r : result) {
      for (u64 s : local) {
        auto merged = crt(static_cast<i64>(r), mod_so_far, static_cast<i64>(s), pe);
        if (!merged) throw internal_error("roots_mod: coprime CRT failed");
        combined.push_back(merged->residue);
      }
    }
    result = std::move(combined);
    mod_so_far *= pe;
  }
  std::sort(result.begin(), result.end());
  return result;
}

std::uint64_t mu(std::int64_t t, std::uint64_t n, std::uint64_t m,
                 const FactoredInteger& level) {
  u64 N = level.value;
  u64 nn = std::gcd(N, n);
  FactoredInteger nn_f = factorize(nn);
  FactoredInteger big = mul_factored(level, nn_f);
  std::vector<u64> lifted = roots_mod(t, static_cast<i64>(m), big);
  std::vector<u64> reduced;
  reduced.reserve(lifted.size());
  for (u64 r : lifted) reduced.push_back(r % N);
  std::sort(reduced.begin(), reduced.end());
  reduced.erase(std::unique(reduced.begin(), reduced.end()), reduced.end());
  u64 units = 0;
  for (u64 r : reduced) {
    if (std::gcd(r, N) == 1) ++units;
  }
  u64 psi_n = psi(level);
  u64 psi_quot = psi(div_exact_factored(level, nn_f));
  if (psi_n % psi_quot != 0) throw internal_error("mu: psi ratio not integral");
  return units * (psi_n / psi_quot);
}

}  // namespace hecke
