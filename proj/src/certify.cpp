#include "hecke/certify.hpp"

#include <atomic>
#include <chrono>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "hecke/errors.hpp"
#include "hecke/qformat.hpp"

namespace hecke {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// rational upper bounds on sqrt(2), sqrt(3), correct to 16 significant digits
const mpq_class& sqrt2_upper() {
  static const mpq_class v(mpz_class("14142135623730951"), mpz_class("10000000000000000"));
  return v;
}
const mpq_class& sqrt3_upper() {
  static const mpq_class v(mpz_class("17320508075688773"), mpz_class("10000000000000000"));
  return v;
}

constexpr u64 kAnalyticHandoff = 584000000;  // scans beyond this are covered analytically
constexpr u64 kPrimorial9 = 223092870;

mpq_class pow4_omega(unsigned om) {
  mpz_class v;
  mpz_ui_pow_ui(v.get_mpz_t(), 4, om);
  return mpq_class(v);
}

mpq_class pow2_omega(unsigned om) {
  mpz_class v;
  mpz_ui_pow_ui(v.get_mpz_t(), 2, om);
  return mpq_class(v);
}

}  // namespace

ThetaProfile theta_profile_raw(std::uint64_t n, std::uint64_t psi_n, unsigned om) {
  ThetaProfile p;
  p.n = n;
  mpq_class psi_q(static_cast<unsigned long>(psi_n));
  p.theta1_sq = pow4_omega(om) * static_cast<unsigned long>(n) / (psi_q * psi_q);
  p.theta2 = pow4_omega(om) / psi_q;
  p.theta3 = pow2_omega(om) / psi_q;
  return p;
}

ThetaProfile theta_profile(const FactoredInteger& n) {
  return theta_profile_raw(n.value, psi(n), omega(n));
}

mpq_class theta1_upper_bound(const ThetaProfile& p) {
  // smallest s with (s / 10^12)^2 >= theta1^2
  static const mpz_class scale("1000000000000");
  mpz_class num = p.theta1_sq.get_num() * scale * scale;
  mpz_class den = p.theta1_sq.get_den();
  mpz_class q = num / den;
  mpz_class s;
  mpz_sqrt(s.get_mpz_t(), q.get_mpz_t());
  while (s * s * den < num) ++s;
  mpq_class r(s, scale);
  r.canonicalize();
  return r;
}

const char* decision_name(Decision d) {
  switch (d) {
    case Decision::CertifiedNegative: return "certified-negative";
    case Decision::CertifiedPositive: return "certified-positive";
    case Decision::Undecided: return "undecided";
  }
  return "?";
}

mpq_class error_envelope(std::uint64_t m, const ThetaProfile& profile) {
  mpq_class t1 = theta1_upper_bound(profile);
  switch (m) {
    case 2:
      return (41 + 24 * sqrt2_upper()) / 4 * profile.theta2 + mpq_class(28) / 3 * profile.theta3 +
             t1 / 2;
    case 3:
      return (448 + 160 * sqrt3_upper()) / 27 * profile.theta2 +
             mpq_class(205) / 18 * profile.theta3 + t1 / 3;
    case 4:
      return mpq_class(7) / 24 * profile.theta3 + t1 / 96 +
             mpq_class(1729) / 64 / static_cast<unsigned long>(profile.n);
    default:
      throw std::invalid_argument("error_envelope: m must be 2, 3 or 4");
  }
}

mpq_class error_envelope(std::uint64_t m, const FactoredInteger& level) {
  if (m < 2 || m > 4) throw std::invalid_argument("error_envelope: m must be 2, 3 or 4");
  if (std::gcd(level.value, m) != 1)
    throw std::invalid_argument("error_envelope: requires gcd(N, m) = 1");
  return error_envelope(m, theta_profile(level));
}

namespace {

mpq_class main_term_for(u64 m, unsigned k) {
  switch (m) {
    case 2: return mpq_class(k - 1) / 16;
    case 3: return mpq_class(k - 1) / 27;
    case 4: return mpq_class(k - 1) / 2304;
    default: throw std::invalid_argument("certify: m must be 2, 3 or 4");
  }
}

bool side_condition_m4(const ThetaProfile& profile, unsigned k) {
  // (k-1)/48 >= 7*theta3 + theta1/4, with theta1 over-approximated
  return mpq_class(k - 1) / 48 >= 7 * profile.theta3 + theta1_upper_bound(profile) / 4;
}

}  // namespace

Certificate certify_point(std::uint64_t m, const FactoredInteger& level, unsigned weight) {
  if (m < 2 || m > 4) throw std::invalid_argument("certify_point: m must be 2, 3 or 4");
  if (std::gcd(level.value, m) != 1)
    throw std::invalid_argument("certify_point: requires gcd(N, m) = 1");
  if (weight < 2 || weight % 2 != 0)
    throw std::invalid_argument("certify_point: weight must be even, >= 2");
  ThetaProfile profile = theta_profile(level);
  Certificate cert;
  cert.m = m;
  cert.level = level.value;
  cert.weight = weight;
  cert.main_term = main_term_for(m, weight);
  cert.error_bound = error_envelope(m, profile);
  cert.decision = Decision::Undecided;
  if (m == 4) {
    if (side_condition_m4(profile, weight) && cert.main_term > cert.error_bound)
      cert.decision = Decision::CertifiedPositive;
  } else {
    if (cert.main_term > cert.error_bound) cert.decision = Decision::CertifiedNegative;
  }
  return cert;
}

unsigned certified_weight_threshold(std::uint64_t m, const ThetaProfile& profile) {
  mpq_class env = error_envelope(m, profile);
  u64 denom = m == 4 ? 2304 : (m == 3 ? 27 : 16);
  // smallest k with (k-1)/denom > env
  mpq_class x = env * static_cast<unsigned long>(denom);
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  if (!fl.fits_ulong_p()) throw internal_error("certified_weight_threshold: overflow");
  u64 k = fl.get_ui() + 2;
  if (m == 4) {
    // side condition: (k-1)/48 >= 7*theta3 + theta1/4
    mpq_class y = (7 * profile.theta3 + theta1_upper_bound(profile) / 4) * 48;
    mpz_class cl;
    mpz_cdiv_q(cl.get_mpz_t(), y.get_num().get_mpz_t(), y.get_den().get_mpz_t());
    if (!cl.fits_ulong_p()) throw internal_error("certified_weight_threshold: overflow");
    k = std::max<u64>(k, cl.get_ui() + 1);
  }
  k = std::max<u64>(k, 2);
  if (k % 2 != 0) ++k;
  return static_cast<unsigned>(k);
}

unsigned certified_weight_threshold(std::uint64_t m, const FactoredInteger& level) {
  if (std::gcd(level.value, m) != 1)
    throw std::invalid_argument("certified_weight_threshold: requires gcd(N, m) = 1");
  return certified_weight_threshold(m, theta_profile(level));
}

const std::vector<StaircaseRow>& staircase(std::uint64_t m) {
  static const std::vector<StaircaseRow> m2{
      {2700000, 2}, {150000, 6}, {8800, 16}, {571, 50}, {43, 148}, {1, 562}};
  static const std::vector<StaircaseRow> m3{
      {63000000, 2}, {2700000, 4}, {150000, 10}, {8800, 34}, {571, 116}, {43, 346}, {1, 1290}};
  static const std::vector<StaircaseRow> m4{
      {2700000, 2}, {150000, 4}, {8800, 14}, {571, 124}, {43, 1498}, {1, 62942}};
  switch (m) {
    case 2: return m2;
    case 3: return m3;
    case 4: return m4;
    default: throw std::invalid_argument("staircase: m must be 2, 3 or 4");
  }
}

bool staircase_covers(const std::vector<StaircaseRow>& rows, std::uint64_t n, unsigned k) {
  for (const auto& row : rows) {
    if (n >= row.n_threshold && k >= row.k_threshold) return true;
  }
  return false;
}

unsigned frontier_weight(const std::vector<StaircaseRow>& rows, std::uint64_t n) {
  unsigned best = 0;
  for (const auto& row : rows) {
    if (n >= row.n_threshold && (best == 0 || row.k_threshold < best)) best = row.k_threshold;
  }
  return best;
}

const std::vector<ThetaTableRow>& theta_reference_table() {
  static const std::vector<ThetaTableRow> table = [] {
    auto row = [](u64 n, const char* b1, const char* b2, const char* b3) {
      return ThetaTableRow{n,
                           {mpq_from_decimal(b1), mpq_from_decimal(b2), mpq_from_decimal(b3)}};
    };
    return std::vector<ThetaTableRow>{
        row(1, "1.00", "1.34", "1.00"),
        row(43, "0.465", "0.445", "0.0556"),
        row(571, "0.257", "0.149", "0.00926"),
        row(8800, "0.133", "0.0424", "0.00133"),
        row(150000, "0.0607", "0.00941", "0.000147"),
        row(2700000, "0.0265", "0.00189", "0.000015"),
        row(63000000, "0.0106", "0.000314", "0.000015"),
    };
  }();
  return table;
}

namespace {

// running exact maxima of the three decay functions over a scanned range
struct ThetaMax {
  u64 n1 = 0, p1 = 1;  // theta1^2 = (4^om * n) / psi^2 as n1 / p1
  u64 arg1 = 0;
  u64 n2 = 0, p2 = 1;  // theta2 = 4^om / psi
  u64 arg2 = 0;
  u64 n3 = 0, p3 = 1;  // theta3 = 2^om / psi
  u64 arg3 = 0;

  void take(u64 n, u64 psi_n, unsigned om) {
    u64 two_om = u64(1) << om;
    u64 four_om = two_om * two_om;
    u64 t1n = four_om * n;
    u64 t1p = psi_n * psi_n;
    if (u128(t1n) * p1 > u128(n1) * t1p) {
      n1 = t1n;
      p1 = t1p;
      arg1 = n;
    }
    if (u128(four_om) * p2 > u128(n2) * psi_n) {
      n2 = four_om;
      p2 = psi_n;
      arg2 = n;
    }
    if (u128(two_om) * p3 > u128(n3) * psi_n) {
      n3 = two_om;
      p3 = psi_n;
      arg3 = n;
    }
  }

  void merge(const ThetaMax& o) {
    if (u128(o.n1) * p1 > u128(n1) * o.p1) {
      n1 = o.n1;
      p1 = o.p1;
      arg1 = o.arg1;
    }
    if (u128(o.n2) * p2 > u128(n2) * o.p2) {
      n2 = o.n2;
      p2 = o.p2;
      arg2 = o.arg2;
    }
    if (u128(o.n3) * p3 > u128(n3) * o.p3) {
      n3 = o.n3;
      p3 = o.p3;
      arg3 = o.arg3;
    }
  }
};

}  // namespace

ThetaRowResult theta_row_verify(std::uint64_t threshold, std::uint64_t cap,
                                const std::array<mpq_class, 3>& bounds, unsigned threads) {
  ThetaRowResult res;
  res.n_threshold = threshold;
  if (threshold > cap) {
    res.scanned = false;
    res.pass = true;  // nothing to scan; vacuous prefix
    return res;
  }
  res.scanned = true;
  res.scan_lo = threshold;
  res.scan_hi = cap;

  constexpr u64 kChunk = 1u << 21;
  std::atomic<u64> next{threshold};
  unsigned workers = std::max(1u, threads);
  std::vector<ThetaMax> partial(workers);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (;;) {
        u64 lo = next.fetch_add(kChunk);
        if (lo > cap) break;
        u64 hi = std::min(cap, lo + kChunk - 1);
        psi_omega_scan(lo, hi, [&](u64 n, u64 psi_n, unsigned om) {
          partial[w].take(n, psi_n, om);
        });
      }
    });
  }
  for (auto& t : pool) t.join();
  ThetaMax total;
  for (const auto& p : partial) total.merge(p);

  res.max_theta1_sq = mpq_class(static_cast<unsigned long>(total.n1),
                                static_cast<unsigned long>(total.p1));
  res.max_theta1_sq.canonicalize();
  res.max_theta2 =
      mpq_class(static_cast<unsigned long>(total.n2), static_cast<unsigned long>(total.p2));
  res.max_theta2.canonicalize();
  res.max_theta3 =
      mpq_class(static_cast<unsigned long>(total.n3), static_cast<unsigned long>(total.p3));
  res.max_theta3.canonicalize();
  res.arg1 = total.arg1;
  res.arg2 = total.arg2;
  res.arg3 = total.arg3;
  res.pass = res.max_theta1_sq <= bounds[0] * bounds[0] && res.max_theta2 <= bounds[1] &&
             res.max_theta3 <= bounds[2];
  return res;
}

ThetaTailReport theta_tail_verify() {
  ThetaTailReport rep;
  const auto& last = theta_reference_table().back();
  ThetaProfile p9 = theta_profile(factorize(kPrimorial9));
  rep.p9_theta1_sq = p9.theta1_sq;
  rep.p9_theta2 = p9.theta2;
  rep.p9_theta3 = p9.theta3;
  rep.primorial_pass = p9.theta1_sq <= last.bounds[0] * last.bounds[0] &&
                       p9.theta2 <= last.bounds[1] && p9.theta3 <= last.bounds[2];
  // For omega(N) <= 8 and N >= 584,000,000: theta1 <= 2^8/sqrt(N),
  // theta2 <= 2^16/N, theta3 <= 2^8/N, all decreasing in N.
  mpq_class n0(static_cast<unsigned long>(kAnalyticHandoff));
  rep.closed_form_pass = mpq_class(65536) / n0 <= last.bounds[0] * last.bounds[0] &&
                         mpq_class(65536) / n0 <= last.bounds[1] &&
                         mpq_class(256) / n0 <= last.bounds[2];
  return rep;
}

ThetaTableReport theta_table_verify_all(std::uint64_t cap, unsigned threads) {
  auto start = std::chrono::steady_clock::now();
  ThetaTableReport report;
  report.cap = cap;
  report.complete = cap >= kAnalyticHandoff;
  report.pass = true;
  u64 scan_cap = std::min(cap, kAnalyticHandoff);
  for (const auto& row : theta_reference_table()) {
    ThetaRowResult r = theta_row_verify(row.n_threshold, scan_cap, row.bounds, threads);
    report.pass = report.pass && r.pass;
    report.rows.push_back(std::move(r));
  }
  report.tail = theta_tail_verify();
  report.pass = report.pass && report.tail.primorial_pass && report.tail.closed_form_pass;
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace hecke
