#include <doctest.h>

#include <numeric>

#include "hecke/coeffs.hpp"
#include "hecke/trace.hpp"

using namespace hecke;

TEST_CASE("first coefficient is the trace") {
  CHECK(a1_coefficient(2, factorize(1), 12) == -24);
  CHECK(a1_coefficient(3, factorize(1), 12) == 252);
  for (std::uint64_t n : {1, 11, 35}) {
    auto f = factorize(n);
    CHECK(a1_coefficient(1, f, 12) == mpz_class(dimension(f, 12)));
  }
}

TEST_CASE("second coefficient pinned values") {
  CHECK(a2_coefficient(3, factorize(2), 12) == 63504);
  CHECK(a2_coefficient(3, factorize(4), 8) == 144);
  CHECK(a2_coefficient(7, factorize(12), 4) == 0);
  CHECK(a2_coefficient(2, factorize(37), 2) == 0);
  CHECK(a2_coefficient(3, factorize(5), 2) == 0);  // dim 0 forces a2 = 0
}

TEST_CASE("second coefficient input validation") {
  CHECK_THROWS_AS(a2_coefficient(3, factorize(6), 4), std::invalid_argument);
  CHECK_THROWS_AS(a2_coefficient(2, factorize(4), 4), std::invalid_argument);
  CHECK_THROWS_AS(a2_coefficient(3, factorize(5), 5), std::invalid_argument);
  CHECK_THROWS_AS(a2_coefficient(0, factorize(5), 4), std::invalid_argument);
}

TEST_CASE("dimension pinned values") {
  CHECK(dimension(factorize(22), 2) == 2);
  CHECK(dimension(factorize(140), 2) == 19);
  CHECK(dimension(factorize(1), 12) == 1);
}

TEST_CASE("sign reports") {
  SignReport zero = sign_report(3, factorize(34), 2);
  CHECK(zero.sign == Sign::Zero);
  CHECK(zero.dim == 3);
  CHECK(zero.a2 == 0);

  SignReport pos = sign_report(3, factorize(22), 2);
  CHECK(pos.sign == Sign::Positive);
  CHECK(pos.a2 == 1);
  CHECK(pos.dim == 2);

  // dim S_12(1) = 1, so the degree-1 characteristic polynomial has a2 = 0
  SignReport triv = sign_report(4, factorize(1), 12);
  CHECK(triv.dim == 1);
  CHECK(triv.sign == Sign::Zero);

  SignReport neg = sign_report(2, factorize(11), 4);
  CHECK(neg.sign == sign_of(neg.a2));
}

TEST_CASE("specialization identities for m = 3 and m = 4") {
  for (std::uint64_t n = 1; n <= 300; ++n) {
    auto f = factorize(n);
    for (unsigned k : {2u, 8u, 14u}) {
      if (std::gcd<std::uint64_t>(n, 3) == 1) {
        mpz_class t3 = trace_total(3, f, k);
        mpz_class t9 = trace_total(9, f, k);
        mpz_class t1 = trace_total(1, f, k);
        mpz_class p3;
        mpz_ui_pow_ui(p3.get_mpz_t(), 3, k - 1);
        mpz_class bracket = t3 * t3 - t9 - p3 * t1;
        REQUIRE(bracket % 2 == 0);
        REQUIRE(a2_coefficient(3, f, k) == bracket / 2);
      }
      if (n % 2 == 1) {
        mpz_class t4 = trace_total(4, f, k);
        mpz_class t16 = trace_total(16, f, k);
        mpz_class t1 = trace_total(1, f, k);
        mpz_class p2, p4;
        mpz_ui_pow_ui(p2.get_mpz_t(), 2, k - 1);
        mpz_ui_pow_ui(p4.get_mpz_t(), 4, k - 1);
        mpz_class bracket = t4 * t4 - t16 - p2 * t4 - p4 * t1;
        REQUIRE(bracket % 2 == 0);
        REQUIRE(a2_coefficient(4, f, k) == bracket / 2);
      }
    }
  }
}

TEST_CASE("identity operator reduces to the binomial count") {
  for (std::uint64_t n = 1; n <= 300; n += 7) {
    auto f = factorize(n);
    for (unsigned k = 2; k <= 16; k += 2) {
      mpz_class d(dimension(f, k));
      REQUIRE(a2_coefficient(1, f, k) == d * (d - 1) / 2);
    }
  }
}

TEST_CASE("sweep matches one-shot a2") {
  for (std::uint64_t m : {1, 2, 3, 4, 7}) {
    for (std::uint64_t n : {1, 5, 11, 25, 143}) {
      if (std::gcd(m, n) != 1) continue;
      auto f = factorize(n);
      A2Sweep sweep(m, f, 2);
      for (unsigned k = 2; k <= 20; k += 2) {
        CAPTURE(m);
        CAPTURE(n);
        CAPTURE(k);
        REQUIRE(sweep.a2() == a2_coefficient(m, f, k));
        REQUIRE(sweep.dim() == dimension(f, k));
        sweep.advance();
      }
    }
  }
}
