#include "hecke/ntheory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "hecke/errors.hpp"

namespace hecke {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using i64 = std::int64_t;
using i128 = __int128;

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

// Deterministic for all 64-bit inputs with this base set.
bool miller_rabin(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 0; i < s - 1; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

u64 pollard_rho(u64 n) {
  if ((n & 1) == 0) return 2;
  for (u64 c = 1;; ++c) {
    auto f = [n, c](u64 x) { return (static_cast<u64>(u128(x) * x % n) + c) % n; };
    u64 x = 2, y = 2, d = 1;
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = std::gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

}  // namespace

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    constexpr std::uint32_t limit = 1u << 16;
    std::vector<bool> composite(limit, false);
    std::vector<std::uint32_t> ps;
    for (std::uint32_t i = 2; i < limit; ++i) {
      if (composite[i]) continue;
      ps.push_back(i);
      for (u64 j = u64(i) * i; j < limit; j += i) composite[j] = true;
    }
    return ps;
  }();
  return primes;
}

FactoredInteger factorize(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("factorize: n must be positive");
  FactoredInteger f;
  f.value = n;
  for (std::uint32_t p : small_primes()) {
    if (u64(p) * p > n) break;
    if (n % p == 0) {
      std::uint32_t e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      f.factors.push_back({p, e});
    }
  }
  if (n > 1) {
    // No divisor below 2^16 remains: a cofactor under 2^32 is prime.
    std::vector<u64> pending{n};
    std::vector<u64> primes;
    while (!pending.empty()) {
      u64 v = pending.back();
      pending.pop_back();
      if (v < (1ull << 32) || miller_rabin(v)) {
        primes.push_back(v);
      } else {
        u64 d = pollard_rho(v);
        pending.push_back(d);
        pending.push_back(v / d);
      }
    }
    std::sort(primes.begin(), primes.end());
    for (std::size_t i = 0; i < primes.size();) {
      std::size_t j = i;
      while (j < primes.size() && primes[j] == primes[i]) ++j;
      f.factors.push_back({primes[i], static_cast<std::uint32_t>(j - i)});
      i = j;
    }
  }
  return f;
}

std::uint64_t psi(const FactoredInteger& n) {
  u64 r = 1;
  for (const auto& [p, e] : n.factors) {
    u64 pe = p;
    for (std::uint32_t i = 1; i < e; ++i) pe *= p;
    r *= pe + pe / p;
  }
  return r;
}

unsigned omega(const FactoredInteger& n) { return static_cast<unsigned>(n.factors.size()); }

std::uint64_t euler_phi(const FactoredInteger& n) {
  u64 r = 1;
  for (const auto& [p, e] : n.factors) {
    u64 pe = 1;
    for (std::uint32_t i = 1; i < e; ++i) pe *= p;
    r *= pe * (p - 1);
  }
  return r;
}

std::uint64_t sigma1(const FactoredInteger& n) {
  u64 r = 1;
  for (const auto& [p, e] : n.factors) {
    u64 s = 1, pe = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
      pe *= p;
      s += pe;
    }
    r *= s;
  }
  return r;
}

std::vector<std::uint64_t> divisors(const FactoredInteger& n) {
  std::vector<u64> ds{1};
  for (const auto& [p, e] : n.factors) {
    std::size_t count = ds.size();
    u64 pe = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
      pe *= p;
      for (std::size_t j = 0; j < count; ++j) ds.push_back(ds[j] * pe);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

FactoredInteger mul_factored(const FactoredInteger& a, const FactoredInteger& b) {
  FactoredInteger r;
  u128 v = u128(a.value) * b.value;
  if (v > ~u64(0)) throw std::overflow_error("mul_factored: product exceeds 64 bits");
  r.value = static_cast<u64>(v);
  std::size_t i = 0, j = 0;
  while (i < a.factors.size() || j < b.factors.size()) {
    if (j == b.factors.size() || (i < a.factors.size() && a.factors[i].p < b.factors[j].p)) {
      r.factors.push_back(a.factors[i++]);
    } else if (i == a.factors.size() || b.factors[j].p < a.factors[i].p) {
      r.factors.push_back(b.factors[j++]);
    } else {
      r.factors.push_back({a.factors[i].p, a.factors[i].e + b.factors[j].e});
      ++i;
      ++j;
    }
  }
  return r;
}

FactoredInteger div_exact_factored(const FactoredInteger& a, const FactoredInteger& b) {
  FactoredInteger r;
  if (a.value % b.value != 0) throw internal_error("div_exact_factored: not a divisor");
  r.value = a.value / b.value;
  std::size_t j = 0;
  for (const auto& pp : a.factors) {
    if (j < b.factors.size() && b.factors[j].p == pp.p) {
      if (b.factors[j].e > pp.e) throw internal_error("div_exact_factored: exponent underflow");
      if (b.factors[j].e < pp.e) r.factors.push_back({pp.p, pp.e - b.factors[j].e});
      ++j;
    } else {
      r.factors.push_back(pp);
    }
  }
  if (j != b.factors.size()) throw internal_error("div_exact_factored: not a divisor");
  return r;
}

namespace {

u64 inverse_mod(u64 a, u64 m) {
  if (m == 1) return 0;
  i64 t = 0, newt = 1;
  i64 r = static_cast<i64>(m), newr = static_cast<i64>(a % m);
  while (newr != 0) {
    i64 q = r / newr;
    t = std::exchange(newt, t - q * newt);
    r = std::exchange(newr, r - q * newr);
  }
  if (r != 1) throw internal_error("inverse_mod: not invertible");
  return static_cast<u64>(t < 0 ? t + static_cast<i64>(m) : t);
}

}  // namespace

std::optional<CrtResult> crt(std::int64_t a, std::uint64_t ma,
                             std::int64_t b, std::uint64_t mb) {
  if (ma == 0 || mb == 0) throw std::invalid_argument("crt: moduli must be positive");
  u64 ua = static_cast<u64>(((a % static_cast<i64>(ma)) + static_cast<i64>(ma)) % static_cast<i64>(ma));
  u64 ub = static_cast<u64>(((b % static_cast<i64>(mb)) + static_cast<i64>(mb)) % static_cast<i64>(mb));
  u64 g = std::gcd(ma, mb);
  if (ua % g != ub % g) return std::nullopt;
  u64 mg = mb / g;
  u128 l128 = u128(ma) * mg;
  if (l128 > ~u64(0)) throw std::overflow_error("crt: lcm exceeds 64 bits");
  u64 l = static_cast<u64>(l128);
  u64 t = 0;
  if (mg > 1) {
    u64 diff = (ub % mb + mb - ua % mb) % mb;  // == ub - ua (mod mb), divisible by g
    t = mulmod((diff / g) % mg, inverse_mod((ma / g) % mg, mg), mg);
  }
  u64 x = static_cast<u64>((ua + u128(ma) * t) % l);
  return CrtResult{x, l};
}

mpz_class lucas_u(std::uint64_t index, std::int64_t t, std::int64_t m) {
  LucasIterator it(t, m);
  it.advance_to(index);
  return it.value();
}

void LucasIterator::step() {
  // scratch = t*next - m*u
  scratch_ = next_;
  scratch_ *= t_;
  u_ *= m_;
  scratch_ -= u_;
  u_ = std::move(next_);
  next_ = std::move(scratch_);
  scratch_ = mpz_class();
  ++j_;
}

void LucasIterator::advance_to(std::uint64_t j) {
  while (j_ < j) step();
}

namespace {

constexpr u64 kSegment = 1u << 20;

}  // namespace

void psi_omega_scan(
    std::uint64_t lo, std::uint64_t hi,
    const std::function<void(std::uint64_t, std::uint64_t, unsigned)>& fn) {
  if (lo < 1) lo = 1;
  if (lo > hi) return;
  if (hi >= (u64(1) << 32)) throw std::invalid_argument("psi_omega_scan: range limited to n < 2^32");
  const auto& ps = small_primes();
  u64 len_cap = std::min<u64>(kSegment, hi - lo + 1);
  std::vector<u64> rem(len_cap), psiv(len_cap);
  std::vector<std::uint8_t> om(len_cap);
  for (u64 base = lo; base <= hi; base += kSegment) {
    u64 end = std::min(hi, base + kSegment - 1);
    u64 len = end - base + 1;
    for (u64 i = 0; i < len; ++i) {
      rem[i] = base + i;
      psiv[i] = 1;
      om[i] = 0;
    }
    for (std::uint32_t p : ps) {
      if (u64(p) * p > end) break;
      u64 start = ((base + p - 1) / p) * p;
      for (u64 v = start; v <= end; v += p) {
        u64 i = v - base;
        u64 q = 1;
        while (rem[i] % p == 0) {
          rem[i] /= p;
          q *= p;
        }
        psiv[i] *= q + q / p;
        om[i] += 1;
      }
    }
    for (u64 i = 0; i < len; ++i) {
      u64 p_ = psiv[i];
      unsigned o = om[i];
      if (rem[i] > 1) {
        p_ *= rem[i] + 1;
        o += 1;
      }
      fn(base + i, p_, o);
    }
  }
}

void factorize_range(std::uint64_t lo, std::uint64_t hi,
                     const std::function<void(const FactoredInteger&)>& fn) {
  if (lo < 1) lo = 1;
  if (lo > hi) return;
  if (hi >= (u64(1) << 32)) throw std::invalid_argument("factorize_range: range limited to n < 2^32");
  const auto& ps = small_primes();
  u64 len_cap = std::min<u64>(kSegment, hi - lo + 1);
  std::vector<u64> rem(len_cap);
  std::vector<FactoredInteger> out(len_cap);
  for (u64 base = lo; base <= hi; base += kSegment) {
    u64 end = std::min(hi, base + kSegment - 1);
    u64 len = end - base + 1;
    for (u64 i = 0; i < len; ++i) {
      rem[i] = base + i;
      out[i].value = base + i;
      out[i].factors.clear();
    }
    for (std::uint32_t p : ps) {
      if (u64(p) * p > end) break;
      u64 start = ((base + p - 1) / p) * p;
      for (u64 v = start; v <= end; v += p) {
        u64 i = v - base;
        std::uint32_t e = 0;
        while (rem[i] % p == 0) {
          rem[i] /= p;
          ++e;
        }
        out[i].factors.push_back({p, e});
      }
    }
    for (u64 i = 0; i < len; ++i) {
      if (rem[i] > 1) out[i].factors.push_back({rem[i], 1});
      fn(out[i]);
    }
  }
}

std::uint64_t isqrt_u64(std::uint64_t n) {
  if (n == 0) return 0;
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && u128(r) * r > n) --r;
  while (u128(r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_perfect_square(std::uint64_t n) {
  u64 r = isqrt_u64(n);
  return r * r == n;
}

}  // namespace hecke
