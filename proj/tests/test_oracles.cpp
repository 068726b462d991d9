#include <doctest.h>

#include <numeric>

#include "hecke/oracles.hpp"
#include "hecke/trace.hpp"

using namespace hecke;
using namespace hecke::oracles;

TEST_CASE("delta expansion pinned coefficients") {
  auto tau = delta_coefficients(30);
  CHECK(tau[1] == 1);
  CHECK(tau[2] == -24);
  CHECK(tau[3] == 252);
  CHECK(tau[4] == -1472);
  CHECK(tau[5] == 4830);
  CHECK(tau[6] == -6048);
  CHECK(tau[6] == tau[2] * tau[3]);
  CHECK(tau[7] == -16744);
}

TEST_CASE("delta expansion satisfies the Hecke relations") {
  auto tau = delta_coefficients(30);
  for (unsigned a = 2; a <= 30; ++a) {
    for (unsigned b = a + 1; a * b <= 30; ++b) {
      if (std::gcd(a, b) != 1) continue;
      CHECK(tau[a * b] == tau[a] * tau[b]);
    }
  }
  mpz_class p11;
  for (unsigned p : {2, 3, 5}) {
    mpz_ui_pow_ui(p11.get_mpz_t(), p, 11);
    CHECK(tau[p * p] == tau[p] * tau[p] - p11);
  }
}

TEST_CASE("dimension formula pinned values") {
  CHECK(dimension_formula(factorize(1), 12) == 1);
  CHECK(dimension_formula(factorize(1), 16) == 1);
  CHECK(dimension_formula(factorize(1), 2) == 0);
  CHECK(dimension_formula(factorize(11), 2) == 1);
  CHECK(dimension_formula(factorize(22), 2) == 2);
  CHECK(dimension_formula(factorize(37), 2) == 2);
  CHECK(dimension_formula(factorize(33), 2) == 3);
  CHECK(dimension_formula(factorize(57), 2) == 5);
  CHECK(dimension_formula(factorize(140), 2) == 19);
  CHECK(dimension_formula(factorize(280), 2) == 41);
  CHECK(dimension_formula(factorize(11), 4) == 2);
  CHECK_THROWS_AS(dimension_formula(factorize(5), 3), std::invalid_argument);
}

TEST_CASE("brute oracles self-check") {
  CHECK(brute_mu(0, 1, 3, 7) == 2);
  CHECK(brute_class_number(-23) == 3);
  CHECK(brute_sigma(1, 3, 1) == 1);
  CHECK(brute_sigma(7, 3, 1) == 2);
  CHECK(brute_sigma(9, 4, 2) == 4);
  CHECK(brute_roots(0, 3, 7) == std::vector<std::uint64_t>{2, 5});
}

TEST_CASE("trace at level one matches the delta eigenvalues") {
  auto tau = delta_coefficients(20);
  auto one = factorize(1);
  for (unsigned m = 1; m <= 20; ++m) {
    CAPTURE(m);
    CHECK(trace_total(m, one, 12) == tau[m]);
  }
}
