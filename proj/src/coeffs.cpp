#include "hecke/coeffs.hpp"

#include <numeric>
#include <stdexcept>

#include "hecke/errors.hpp"

namespace hecke {

namespace {

using u64 = std::uint64_t;

void validate_a2_input(u64 m, const FactoredInteger& level, unsigned weight) {
  if (m == 0) throw std::invalid_argument("a2: m must be >= 1");
  if (std::gcd(m, level.value) != 1) throw std::invalid_argument("a2: requires gcd(N, m) = 1");
  if (weight < 2 || weight % 2 != 0) throw std::invalid_argument("a2: weight must be even, >= 2");
}

}  // namespace

char sign_char(Sign s) {
  switch (s) {
    case Sign::Negative: return '-';
    case Sign::Zero: return '0';
    case Sign::Positive: return '+';
  }
  return '?';
}

Sign sign_of(const mpz_class& v) {
  int s = sgn(v);
  if (s < 0) return Sign::Negative;
  if (s > 0) return Sign::Positive;
  return Sign::Zero;
}

mpz_class a1_coefficient(std::uint64_t m, const FactoredInteger& level, unsigned weight) {
  return trace_total(m, level, weight);
}

mpz_class a2_coefficient(std::uint64_t m, const FactoredInteger& level, unsigned weight) {
  validate_a2_input(m, level, weight);
  mpz_class tm = trace_total(m, level, weight);
  mpz_class bracket = tm * tm;
  for (u64 d : divisors(factorize(m))) {
    mpz_class pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), d, weight - 1);
    bracket -= pw * trace_total((m / d) * (m / d), level, weight);
  }
  if (bracket % 2 != 0) throw internal_error("a2: odd bracket");
  return bracket / 2;
}

std::uint64_t dimension(const FactoredInteger& level, unsigned weight) {
  mpz_class d = trace_total(1, level, weight);
  if (d < 0 || !d.fits_ulong_p()) throw internal_error("dimension: out of range");
  return d.get_ui();
}

SignReport sign_report(std::uint64_t m, const FactoredInteger& level, unsigned weight) {
  SignReport r;
  r.m = m;
  r.level = level.value;
  r.weight = weight;
  r.dim = dimension(level, weight);
  r.a2 = a2_coefficient(m, level, weight);
  r.sign = sign_of(r.a2);
  return r;
}

A2Sweep::A2Sweep(std::uint64_t m, const FactoredInteger& level, unsigned k_start)
    : m_(m), k_(k_start) {
  validate_a2_input(m, level, k_start);
  auto ensure = [&](u64 idx) {
    if (!traces_.contains(idx))
      traces_.emplace(idx, std::make_unique<TraceSweep>(idx, level, k_start));
  };
  ensure(m_);
  for (u64 d : divisors(factorize(m_))) {
    u64 q = m_ / d;
    Weighted w{d, q * q, {}};
    mpz_ui_pow_ui(w.pow.get_mpz_t(), d, k_ - 1);
    ensure(w.target);
    weights_.push_back(std::move(w));
  }
  recompute();
}

void A2Sweep::advance() {
  k_ += 2;
  for (auto& [idx, sweep] : traces_) sweep->advance();
  for (auto& w : weights_) w.pow *= w.d * w.d;
  recompute();
}

void A2Sweep::recompute() {
  const mpz_class& tm = traces_.at(m_)->total();
  mpz_class bracket = tm * tm;
  for (const auto& w : weights_) bracket -= w.pow * traces_.at(w.target)->total();
  if (bracket % 2 != 0) throw internal_error("A2Sweep: odd bracket");
  a2_ = bracket / 2;
  const mpz_class& t1 = traces_.at(1)->total();
  if (t1 < 0 || !t1.fits_ulong_p()) throw internal_error("A2Sweep: dimension out of range");
  dim_ = t1.get_ui();
}

}  // namespace hecke
