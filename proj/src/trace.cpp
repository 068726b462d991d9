#include "hecke/trace.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include "hecke/classnum.hpp"
#include "hecke/congruence.hpp"
#include "hecke/errors.hpp"

namespace hecke {

namespace {

using u64 = std::uint64_t;
using i64 = std::int64_t;

void validate(const TraceInput& in) {
  if (in.m == 0) throw std::invalid_argument("trace: m must be >= 1");
  if (in.weight < 2 || in.weight % 2 != 0)
    throw std::invalid_argument("trace: weight must be even and >= 2");
}

std::vector<A2Orbit> build_orbits(u64 m) {
  std::vector<A2Orbit> orbits;
  for (i64 t = 0; static_cast<u64>(t) * t < 4 * m; ++t) {
    i64 disc = t * t - 4 * static_cast<i64>(m);
    A2Orbit orbit{t, {}};
    for (u64 n = 1; static_cast<i64>(n * n) <= -disc; ++n) {
      if (disc % static_cast<i64>(n * n) != 0) continue;
      i64 d = disc / static_cast<i64>(n * n);
      i64 r = ((d % 4) + 4) % 4;
      if (r != 0 && r != 1) continue;
      orbit.levels.push_back({static_cast<std::uint32_t>(n), weighted_class_number(d)});
    }
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

}  // namespace

const std::vector<A2Orbit>& a2_orbits(std::uint64_t m) {
  static std::mutex mtx;
  static std::map<u64, std::vector<A2Orbit>> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(m);
  if (it == cache.end()) it = cache.emplace(m, build_orbits(m)).first;
  return it->second;
}

mpq_class term_a1(const TraceInput& in) {
  validate(in);
  u64 root = isqrt_u64(in.m);
  if (root * root != in.m) return 0;
  if (std::gcd(root, in.level.value) != 1) return 0;
  mpz_class pw;
  mpz_ui_pow_ui(pw.get_mpz_t(), in.m, in.weight / 2 - 1);
  mpq_class r(in.weight - 1);
  r /= 12;
  r *= psi(in.level);
  r *= pw;
  return r;
}

mpq_class term_a2(const TraceInput& in) {
  validate(in);
  mpq_class sum = 0;
  for (const auto& orbit : a2_orbits(in.m)) {
    mpq_class coeff = 0;
    for (const auto& lvl : orbit.levels) {
      u64 w = mu(orbit.t, lvl.n, in.m, in.level);
      if (w != 0) coeff += lvl.hw * static_cast<unsigned long>(w);
    }
    if (coeff == 0) continue;
    if (orbit.t == 0) coeff /= 2;
    mpz_class u = lucas_u(in.weight - 1, orbit.t, static_cast<i64>(in.m));
    sum += coeff * mpq_class(u);
  }
  return sum;
}

mpq_class term_a2_two_sided(const TraceInput& in) {
  validate(in);
  mpq_class sum = 0;
  for (const auto& orbit : a2_orbits(in.m)) {
    for (i64 sgn : {+1, -1}) {
      if (orbit.t == 0 && sgn < 0) continue;
      i64 t = sgn * orbit.t;
      mpq_class coeff = 0;
      for (const auto& lvl : orbit.levels) {
        u64 w = mu(t, lvl.n, in.m, in.level);
        if (w != 0) coeff += lvl.hw * static_cast<unsigned long>(w);
      }
      if (coeff == 0) continue;
      mpz_class u = lucas_u(in.weight - 1, t, static_cast<i64>(in.m));
      sum += coeff * mpq_class(u) / 2;
    }
  }
  return sum;
}

std::int64_t sigma_term(const FactoredInteger& level, std::uint64_t m, std::uint64_t d) {
  if (m == 0 || d == 0 || m % d != 0) throw std::invalid_argument("sigma_term: d must divide m");
  u64 n = level.value;
  i64 h = static_cast<i64>(d) - static_cast<i64>(m / d);
  i64 total = 0;
  for (u64 tau : divisors(level)) {
    u64 g = std::gcd(tau, n / tau);
    if (h != 0 && (h % static_cast<i64>(g)) != 0) continue;
    auto y = crt(static_cast<i64>(d % tau), tau, static_cast<i64>((m / d) % (n / tau)), n / tau);
    if (!y) throw internal_error("sigma_term: incompatible y_tau congruences");
    if (std::gcd(y->residue, n) != 1) continue;
    total += static_cast<i64>(euler_phi(factorize(g)));
  }
  return total;
}

mpq_class term_a3(const TraceInput& in) {
  validate(in);
  mpq_class sum = 0;
  for (u64 d : divisors(factorize(in.m))) {
    i64 s = sigma_term(in.level, in.m, d);
    if (s == 0) continue;
    mpz_class pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), std::min(d, in.m / d), in.weight - 1);
    sum += mpq_class(pw * s) / 2;
  }
  return sum;
}

mpq_class term_a4(const TraceInput& in) {
  validate(in);
  if (in.weight > 2) return 0;
  u64 total = 0;
  for (u64 c : divisors(factorize(in.m))) {
    if (std::gcd(in.level.value, in.m / c) == 1) total += c;
  }
  return mpq_class(static_cast<unsigned long>(total));
}

TraceBreakdown trace(const TraceInput& in) {
  validate(in);
  TraceBreakdown out;
  out.a1 = term_a1(in);
  out.a2 = term_a2(in);
  out.a3 = term_a3(in);
  out.a4 = term_a4(in);
  mpq_class total = out.a1 - out.a2 - out.a3 + out.a4;
  if (total.get_den() != 1)
    throw internal_error("trace: non-integral total at m=" + std::to_string(in.m) +
                         " N=" + std::to_string(in.level.value) +
                         " k=" + std::to_string(in.weight));
  out.total = total.get_num();
  return out;
}

mpz_class trace_total(std::uint64_t m, const FactoredInteger& level, unsigned weight) {
  return trace(TraceInput{m, level, weight}).total;
}

TraceSweep::TraceSweep(std::uint64_t m, const FactoredInteger& level, unsigned k_start)
    : m_(m), k_(k_start), psi_(psi(level)) {
  validate(TraceInput{m, level, k_start});
  u64 root = isqrt_u64(m_);
  a1_active_ = root * root == m_ && std::gcd(root, level.value) == 1;
  if (a1_active_) mpz_ui_pow_ui(m_half_pow_.get_mpz_t(), m_, k_ / 2 - 1);
  for (const auto& orbit : a2_orbits(m_)) {
    mpq_class coeff = 0;
    for (const auto& lvl : orbit.levels) {
      u64 w = mu(orbit.t, lvl.n, m_, level);
      if (w != 0) coeff += lvl.hw * static_cast<unsigned long>(w);
    }
    if (coeff == 0) continue;
    if (orbit.t == 0) coeff /= 2;
    LucasIterator it(orbit.t, static_cast<i64>(m_));
    it.advance_to(k_ - 1);
    orbits_.push_back({std::move(coeff), std::move(it)});
  }
  for (u64 d : divisors(factorize(m_))) {
    i64 s = sigma_term(level, m_, d);
    if (s == 0) continue;
    Hyper h{std::min(d, m_ / d), s, {}};
    mpz_ui_pow_ui(h.pow.get_mpz_t(), h.base, k_ - 1);
    hyper_.push_back(std::move(h));
  }
  for (u64 c : divisors(factorize(m_))) {
    if (std::gcd(level.value, m_ / c) == 1) a4_at_k2_ += c;
  }
  recompute();
}

void TraceSweep::advance() {
  k_ += 2;
  if (a1_active_) m_half_pow_ *= m_;
  for (auto& o : orbits_) {
    o.lucas.step();
    o.lucas.step();
  }
  for (auto& h : hyper_) h.pow *= h.base * h.base;
  recompute();
}

void TraceSweep::recompute() {
  acc_ = 0;
  if (a1_active_) {
    mpq_class a1(k_ - 1);
    a1 /= 12;
    a1 *= psi_;
    a1 *= m_half_pow_;
    acc_ += a1;
  }
  for (const auto& o : orbits_) acc_ -= o.coeff * mpq_class(o.lucas.value());
  for (const auto& h : hyper_) acc_ -= mpq_class(h.pow * h.sigma) / 2;
  if (k_ == 2) acc_ += static_cast<unsigned long>(a4_at_k2_);
  if (acc_.get_den() != 1) throw internal_error("TraceSweep: non-integral total");
  total_ = acc_.get_num();
}

}  // namespace hecke
