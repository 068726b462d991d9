#include <doctest.h>

#include <numeric>
#include <random>

#include "hecke/ntheory.hpp"

using namespace hecke;

namespace {

// exact arithmetic in Q(sqrt(D)): value = x + y*sqrt(D)
struct Surd {
  mpq_class x, y;
  mpq_class d;
  Surd mul(const Surd& o) const {
    return {x * o.x + y * o.y * d, x * o.y + y * o.x, d};
  }
};

// U_j(t, m) = 2 * (coefficient of sqrt(D) in rho^j), rho = (t + sqrt(D))/2
mpz_class lucas_via_surd(unsigned j, std::int64_t t, std::int64_t m) {
  mpq_class d(t * t - 4 * m);
  Surd rho{mpq_class(t) / 2, mpq_class(1) / 2, d};
  Surd acc{1, 0, d};
  for (unsigned i = 0; i < j; ++i) acc = acc.mul(rho);
  mpq_class u = 2 * acc.y;
  REQUIRE(u.get_den() == 1);
  return u.get_num();
}

}  // namespace

TEST_CASE("factorize basic shapes") {
  CHECK(factorize(1).factors.empty());
  CHECK(factorize(1).value == 1);

  auto f12 = factorize(12);
  CHECK(f12.factors == std::vector<PrimePower>{{2, 2}, {3, 1}});

  auto p9 = factorize(223092870);
  CHECK(p9.factors == std::vector<PrimePower>{{2, 1}, {3, 1}, {5, 1}, {7, 1}, {11, 1},
                                              {13, 1}, {17, 1}, {19, 1}, {23, 1}});
  CHECK(omega(p9) == 9);

  CHECK_THROWS_AS(factorize(0), std::invalid_argument);

  // a semiprime with both factors above the trial-division table
  auto big = factorize(4295229443ull);  // 65537 * 65539
  CHECK(big.value == 4295229443ull);
  CHECK(big.factors == std::vector<PrimePower>{{65537, 1}, {65539, 1}});
  std::uint64_t back = 1;
  for (auto [p, e] : big.factors)
    for (std::uint32_t i = 0; i < e; ++i) back *= p;
  CHECK(back == 4295229443ull);
}

TEST_CASE("multiplicative functions on pinned inputs") {
  CHECK(psi(factorize(1)) == 1);
  CHECK(psi(factorize(12)) == 24);
  CHECK(psi(factorize(43)) == 44);

  CHECK(omega(factorize(1)) == 0);
  CHECK(omega(factorize(12)) == 2);

  CHECK(euler_phi(factorize(1)) == 1);
  CHECK(euler_phi(factorize(9)) == 6);
  CHECK(euler_phi(factorize(140)) == 48);

  CHECK(sigma1(factorize(1)) == 1);
  CHECK(sigma1(factorize(3)) == 4);
  CHECK(sigma1(factorize(16)) == 31);

  CHECK(divisors(factorize(1)) == std::vector<std::uint64_t>{1});
  CHECK(divisors(factorize(9)) == std::vector<std::uint64_t>{1, 3, 9});
  CHECK(divisors(factorize(22)) == std::vector<std::uint64_t>{1, 2, 11, 22});
}

TEST_CASE("multiplicativity on random coprime pairs") {
  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<std::uint64_t> dist(1, 1000);
  for (int i = 0; i < 400; ++i) {
    std::uint64_t a = dist(rng), b = dist(rng);
    if (std::gcd(a, b) != 1) continue;
    REQUIRE(a * b <= 1000000);
    auto fa = factorize(a), fb = factorize(b), fab = factorize(a * b);
    CHECK(psi(fab) == psi(fa) * psi(fb));
    CHECK(euler_phi(fab) == euler_phi(fa) * euler_phi(fb));
    CHECK(sigma1(fab) == sigma1(fa) * sigma1(fb));
  }
}

TEST_CASE("psi and omega growth bounds up to 10^6") {
  bool psi_ok = true, omega_ok = true;
  psi_omega_scan(1, 1000000, [&](std::uint64_t n, std::uint64_t psi_n, unsigned om) {
    if (psi_n < n) psi_ok = false;
    // 2^omega <= 16 N^(1/3), cubed: 8^omega <= 4096 N
    unsigned __int128 lhs = 1;
    for (unsigned i = 0; i < om; ++i) lhs *= 8;
    if (lhs > (unsigned __int128)4096 * n) omega_ok = false;
  });
  CHECK(psi_ok);
  CHECK(omega_ok);
}

TEST_CASE("totient divisor sum identity") {
  for (std::uint64_t h = 1; h <= 10000; ++h) {
    auto fh = factorize(h);
    std::uint64_t sum = 0;
    for (std::uint64_t d : divisors(fh)) sum += euler_phi(factorize(d));
    REQUIRE(sum == h);
  }
}

TEST_CASE("crt") {
  auto r = crt(1, 2, 3, 11);
  REQUIRE(r.has_value());
  CHECK(r->residue == 3);
  CHECK(r->modulus == 22);

  auto r2 = crt(0, 1, 5, 7);
  REQUIRE(r2.has_value());
  CHECK(r2->residue == 5);
  CHECK(r2->modulus == 7);

  CHECK_FALSE(crt(1, 4, 3, 4).has_value());

  // non-coprime but compatible moduli
  auto r3 = crt(2, 6, 8, 9);
  REQUIRE(r3.has_value());
  CHECK(r3->residue == 8);
  CHECK(r3->modulus == 18);
}

TEST_CASE("lucas sequence values") {
  for (std::int64_t t : {-3, 0, 2, 7})
    for (std::int64_t m : {1, 3, 16}) CHECK(lucas_u(1, t, m) == 1);
  CHECK(lucas_u(0, 5, 7) == 0);
  CHECK(lucas_u(3, 0, 3) == -3);
  CHECK(lucas_u(11, 2, 3) == -263);
  CHECK(lucas_u(11, 2, 3) == lucas_via_surd(11, 2, 3));
  CHECK(lucas_u(20, 1, 5) == lucas_via_surd(20, 1, 5));
  CHECK(lucas_u(15, -4, 7) == lucas_via_surd(15, -4, 7));
}

TEST_CASE("lucas parity symmetry") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 60; ++i) {
    unsigned j = 1 + static_cast<unsigned>(rng() % 50);
    std::int64_t t = static_cast<std::int64_t>(rng() % 21) - 10;
    std::int64_t m = 1 + static_cast<std::int64_t>(rng() % 20);
    mpz_class lhs = lucas_u(j, -t, m);
    mpz_class rhs = lucas_u(j, t, m);
    if (j % 2 == 0) rhs = -rhs;
    CHECK(lhs == rhs);
  }
}

TEST_CASE("lucas iterator matches direct evaluation") {
  LucasIterator it(2, 3);
  for (unsigned j = 0; j <= 25; ++j) {
    CHECK(it.value() == lucas_u(j, 2, 3));
    it.step();
  }
}

TEST_CASE("segmented scans agree with single factorization") {
  std::uint64_t n_expect = 100;
  factorize_range(100, 400, [&](const FactoredInteger& f) {
    REQUIRE(f.value == n_expect);
    CHECK(f == factorize(f.value));
    ++n_expect;
  });
  CHECK(n_expect == 401);

  n_expect = 999990;
  psi_omega_scan(999990, 1000010, [&](std::uint64_t n, std::uint64_t psi_n, unsigned om) {
    REQUIRE(n == n_expect);
    auto f = factorize(n);
    CHECK(psi_n == psi(f));
    CHECK(om == omega(f));
    ++n_expect;
  });
}

TEST_CASE("isqrt and square detection") {
  CHECK(isqrt_u64(0) == 0);
  CHECK(isqrt_u64(15) == 3);
  CHECK(isqrt_u64(16) == 4);
  CHECK(is_perfect_square(1));
  CHECK(is_perfect_square(9));
  CHECK_FALSE(is_perfect_square(8));
  CHECK(isqrt_u64(~std::uint64_t(0)) == 4294967295ull);
}

TEST_CASE("factored multiply and exact divide") {
  auto a = factorize(12), b = factorize(18);
  auto ab = mul_factored(a, b);
  CHECK(ab == factorize(216));
  CHECK(div_exact_factored(ab, b) == a);
}
