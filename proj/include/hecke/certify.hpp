#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "hecke/ntheory.hpp"

namespace hecke {

// Decay profile controlling every explicit error bound. theta1 is kept
// squared so all three stay rational:
//   theta1^2 = 4^omega * N / psi^2, theta2 = 4^omega / psi, theta3 = 2^omega / psi.
struct ThetaProfile {
  std::uint64_t n;
  mpq_class theta1_sq;
  mpq_class theta2;
  mpq_class theta3;
};

ThetaProfile theta_profile(const FactoredInteger& n);
ThetaProfile theta_profile_raw(std::uint64_t n, std::uint64_t psi, unsigned omega);

// Least multiple of 10^-12 at or above theta1(N); keeps envelopes rational
// while staying an over-approximation.
mpq_class theta1_upper_bound(const ThetaProfile& p);

enum class Decision { CertifiedNegative, CertifiedPositive, Undecided };
const char* decision_name(Decision d);

struct Certificate {
  std::uint64_t m;
  std::uint64_t level;
  unsigned weight;
  Decision decision;
  mpq_class main_term;    // (k-1)/16, (k-1)/27 or (k-1)/2304
  mpq_class error_bound;  // k-independent envelope
};

// k-independent rational upper bound on |E(N,k)| for m in {2,3,4}.
// Requires gcd(N, m) = 1.
mpq_class error_envelope(std::uint64_t m, const FactoredInteger& level);
mpq_class error_envelope(std::uint64_t m, const ThetaProfile& profile);

Certificate certify_point(std::uint64_t m, const FactoredInteger& level, unsigned weight);

// Smallest even k at which certify_point succeeds for this level; the
// decision is monotone in k since the envelope does not depend on k.
unsigned certified_weight_threshold(std::uint64_t m, const ThetaProfile& profile);
unsigned certified_weight_threshold(std::uint64_t m, const FactoredInteger& level);

// Region frontiers from the sign theorems: for N >= n_threshold and
// k >= k_threshold the generic sign is guaranteed.
struct StaircaseRow {
  std::uint64_t n_threshold;
  unsigned k_threshold;
  friend bool operator==(const StaircaseRow&, const StaircaseRow&) = default;
};
const std::vector<StaircaseRow>& staircase(std::uint64_t m);
bool staircase_covers(const std::vector<StaircaseRow>& rows, std::uint64_t n, unsigned k);
// Smallest covered k for this n (all staircases end at n_threshold = 1).
unsigned frontier_weight(const std::vector<StaircaseRow>& rows, std::uint64_t n);

// Reference table of theta decay bounds by N-threshold; decimals held exact.
struct ThetaTableRow {
  std::uint64_t n_threshold;
  std::array<mpq_class, 3> bounds;  // theta1, theta2, theta3
};
const std::vector<ThetaTableRow>& theta_reference_table();

struct ThetaRowResult {
  std::uint64_t n_threshold = 0;
  bool scanned = false;  // false when threshold > cap
  bool pass = false;
  std::uint64_t scan_lo = 0, scan_hi = 0;
  mpq_class max_theta1_sq, max_theta2, max_theta3;
  std::uint64_t arg1 = 0, arg2 = 0, arg3 = 0;
};

// Scans [threshold, cap] confirming the three bounds (theta1 via squared
// comparison); the scan is chunked across `threads` workers with an exact
// max-reduce at the end.
ThetaRowResult theta_row_verify(std::uint64_t threshold, std::uint64_t cap,
                                const std::array<mpq_class, 3>& bounds, unsigned threads);

struct ThetaTailReport {
  bool primorial_pass = false;    // theta(P9) within the final-row bounds
  bool closed_form_pass = false;  // 2^8-based forms at N = 584,000,000
  mpq_class p9_theta1_sq, p9_theta2, p9_theta3;
};
ThetaTailReport theta_tail_verify();

struct ThetaTableReport {
  std::uint64_t cap = 0;
  bool complete = false;  // cap reached the analytic handoff at 584,000,000
  bool pass = false;
  double elapsed_seconds = 0;
  std::vector<ThetaRowResult> rows;
  ThetaTailReport tail;
};
ThetaTableReport theta_table_verify_all(std::uint64_t cap, unsigned threads);

}  // namespace hecke
