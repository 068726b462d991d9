#include <doctest.h>

#include <numeric>

#include "hecke/errors.hpp"
#include "hecke/oracles.hpp"
#include "hecke/trace.hpp"
#include "lemma_checks.hpp"

using namespace hecke;

TEST_CASE("input validation") {
  CHECK_THROWS_AS(trace({0, factorize(1), 12}), std::invalid_argument);
  CHECK_THROWS_AS(trace({2, factorize(1), 11}), std::invalid_argument);
  CHECK_THROWS_AS(trace({2, factorize(1), 0}), std::invalid_argument);
}

TEST_CASE("identity term") {
  CHECK(term_a1({3, factorize(10), 8}) == 0);
  CHECK(term_a1({9, factorize(1), 4}) == mpq_class(9) / 4);
  // square index with root sharing a factor with the level
  CHECK(term_a1({9, factorize(6), 4}) == 0);
  // 16 = 4^2: (k-1)/12 psi 16^(k/2-1) equals (k-1)/192 psi 4^k
  mpq_class direct = term_a1({16, factorize(5), 4});
  mpq_class folded = mpq_class(4 - 1) / 192 * 6 * 256;
  CHECK(direct == folded);
  CHECK(direct == 24);
}

TEST_CASE("elliptic orbit tables match the published expansions") {
  const auto& o3 = a2_orbits(3);
  REQUIRE(o3.size() == 4);
  CHECK(o3[0].t == 0);
  REQUIRE(o3[0].levels.size() == 2);
  CHECK(o3[0].levels[0].n == 1);
  CHECK(o3[0].levels[0].hw == 1);  // h_w(-12)
  CHECK(o3[0].levels[1].n == 2);
  CHECK(o3[0].levels[1].hw == mpq_class(1) / 3);  // h_w(-3)
  CHECK(o3[1].levels.size() == 1);                // -11
  CHECK(o3[2].levels.size() == 1);                // -8
  CHECK(o3[3].levels.size() == 1);                // -3
  CHECK(o3[3].levels[0].hw == mpq_class(1) / 3);

  const auto& o9 = a2_orbits(9);
  REQUIRE(o9.size() == 6);
  // t = 0: 2 mu(0,1,9) + 1/2 mu(0,3,9)
  REQUIRE(o9[0].levels.size() == 2);
  CHECK(o9[0].levels[0].hw == 2);
  CHECK(o9[0].levels[1].n == 3);
  CHECK(o9[0].levels[1].hw == mpq_class(1) / 2);
  // t = 3: mu(3,1,9) + 1/3 mu(3,3,9)
  REQUIRE(o9[3].levels.size() == 2);
  CHECK(o9[3].levels[0].hw == 1);
  CHECK(o9[3].levels[1].n == 3);
  CHECK(o9[3].levels[1].hw == mpq_class(1) / 3);

  const auto& o16 = a2_orbits(16);
  REQUIRE(o16.size() == 8);
  // t = 0: 2 mu(0,1,16) + mu(0,2,16) + 1/2 mu(0,4,16)
  REQUIRE(o16[0].levels.size() == 3);
  CHECK(o16[0].levels[0].hw == 2);
  CHECK(o16[0].levels[1].hw == 1);
  CHECK(o16[0].levels[2].n == 4);
  CHECK(o16[0].levels[2].hw == mpq_class(1) / 2);
  // t = 1: 4 mu(1,1,16) + mu(1,3,16)
  REQUIRE(o16[1].levels.size() == 2);
  CHECK(o16[1].levels[0].hw == 4);
  CHECK(o16[1].levels[1].n == 3);
  // t = 4: 2 mu(4,1,16) + mu(4,2,16) + 1/3 mu(4,4,16)
  REQUIRE(o16[4].levels.size() == 3);
  CHECK(o16[4].levels[2].hw == mpq_class(1) / 3);
}

TEST_CASE("elliptic term pinned value") {
  // level 1, weight 12, m = 1: (1/2)(1/2)U_11(0,1) + (1/3)U_11(1,1) = -7/12
  CHECK(term_a2({1, factorize(1), 12}) == mpq_class(-7) / 12);
}

TEST_CASE("hyperbolic inner sums") {
  CHECK(sigma_term(factorize(1), 3, 1) == 1);
  CHECK(sigma_term(factorize(7), 3, 1) == 2);
  CHECK(sigma_term(factorize(9), 4, 2) == 4);
  CHECK(sigma_term(factorize(9), 4, 2) == oracles::brute_sigma(9, 4, 2));
  for (std::uint64_t n : {1, 6, 12, 35, 90, 98, 144}) {
    auto f = factorize(n);
    for (std::uint64_t m : {2, 3, 4, 9, 16}) {
      for (std::uint64_t d : divisors(factorize(m))) {
        CAPTURE(n);
        CAPTURE(m);
        CAPTURE(d);
        CHECK(sigma_term(f, m, d) == oracles::brute_sigma(n, m, d));
      }
    }
  }
}

TEST_CASE("hyperbolic term folds to the published shapes") {
  for (std::uint64_t n : {1, 2, 5, 7, 22, 35, 143}) {
    auto f = factorize(n);
    for (unsigned k : {2u, 6u, 12u}) {
      // m = 3: the halves cancel across d = 1, 3
      CHECK(term_a3({3, f, k}) == sigma_term(f, 3, 1));
      // m = 4: Sigma(N,4,1) + 2^(k-1)/2 Sigma(N,4,2)
      mpz_class p2;
      mpz_ui_pow_ui(p2.get_mpz_t(), 2, k - 1);
      CHECK(term_a3({4, f, k}) ==
            mpq_class(sigma_term(f, 4, 1)) + mpq_class(p2 * sigma_term(f, 4, 2)) / 2);
      // m = 9: Sigma(N,9,1) + 3^(k-1)/2 Sigma(N,9,3)
      mpz_class p3;
      mpz_ui_pow_ui(p3.get_mpz_t(), 3, k - 1);
      CHECK(term_a3({9, f, k}) ==
            mpq_class(sigma_term(f, 9, 1)) + mpq_class(p3 * sigma_term(f, 9, 3)) / 2);
    }
  }
}

TEST_CASE("weight-two correction term") {
  CHECK(term_a4({3, factorize(22), 2}) == 4);
  CHECK(term_a4({9, factorize(2), 2}) == 13);
  CHECK(term_a4({9, factorize(2), 4}) == 0);
  CHECK(term_a4({5, factorize(10), 2}) == 5);  // c=1 blocked by gcd(10,5), c=5 counts
}

TEST_CASE("trace pinned totals") {
  CHECK(trace_total(1, factorize(11), 2) == 1);
  CHECK(trace_total(2, factorize(1), 12) == -24);
  CHECK(trace_total(3, factorize(1), 12) == 252);
}

TEST_CASE("breakdown total equals the alternating sum") {
  TraceBreakdown tb = trace({3, factorize(7), 4});
  mpq_class combined = tb.a1 - tb.a2 - tb.a3 + tb.a4;
  CHECK(combined.get_den() == 1);
  CHECK(combined.get_num() == tb.total);
}

TEST_CASE("one-sided elliptic sum equals the two-sided sum") {
  for (std::uint64_t m : {2, 3, 4, 9, 16}) {
    for (std::uint64_t n : {1, 5, 12, 49, 91}) {
      auto f = factorize(n);
      for (unsigned k : {2u, 8u, 14u}) {
        CAPTURE(m);
        CAPTURE(n);
        CAPTURE(k);
        CHECK(term_a2({m, f, k}) == term_a2_two_sided({m, f, k}));
      }
    }
  }
}

TEST_CASE("trace of T_1 equals the dimension oracle") {
  for (std::uint64_t n = 1; n <= 200; ++n) {
    auto f = factorize(n);
    for (unsigned k = 2; k <= 24; k += 2) {
      CAPTURE(n);
      CAPTURE(k);
      REQUIRE(trace_total(1, f, k) == mpz_class(oracles::dimension_formula(f, k)));
    }
  }
}

TEST_CASE("sweep agrees with one-shot evaluation, including gcd(N,m) > 1") {
  for (std::uint64_t m = 1; m <= 16; ++m) {
    for (std::uint64_t n : {1, 2, 9, 20, 27, 44, 100}) {
      auto f = factorize(n);
      TraceSweep sweep(m, f, 2);
      for (unsigned k = 2; k <= 20; k += 2) {
        CAPTURE(m);
        CAPTURE(n);
        CAPTURE(k);
        REQUIRE(sweep.total() == trace_total(m, f, k));
        sweep.advance();
      }
    }
  }
}

TEST_CASE("integrality sweep over the full stated grid") {
  // every sweep step asserts the total is an integer
  for (std::uint64_t m = 1; m <= 16; ++m) {
    for (std::uint64_t n = 1; n <= 500; ++n) {
      TraceSweep sweep(m, factorize(n), 2);
      for (unsigned k = 2; k <= 24; k += 2) sweep.advance();
    }
  }
  CHECK(true);
}

TEST_CASE("elliptic termwise bound, sampled") {
  CHECK(lemmacheck::check_elliptic_termwise(16, 300, 20).empty());
}

TEST_CASE("hyperbolic sum bounds, sampled") {
  CHECK(lemmacheck::check_sigma_bounds(400, 16).empty());
}

TEST_CASE("tau-set cardinality bound up to 5000") {
  CHECK(lemmacheck::check_tau_cardinality(5000).empty());
}

TEST_CASE("unit fact for coprime level and index, sampled") {
  CHECK(lemmacheck::check_unit_fact(400).empty());
}
