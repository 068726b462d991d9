#pragma once

#include <atomic>
#include <cstdint>
#include <string>
#include <vector>

#include "hecke/certify.hpp"
#include "hecke/coeffs.hpp"

namespace hecke {

enum class SearchMode { Exact, Hybrid };

struct SearchRegion {
  std::uint64_t m = 1;
  std::uint64_t n_lo = 1, n_hi = 1;  // inclusive; levels with gcd(N, m) > 1 are skipped
  unsigned k_lo = 2, k_hi = 2;       // inclusive, even
  bool frontier = false;             // restrict to the staircase residual region
};

struct SearchOptions {
  SearchMode mode = SearchMode::Exact;
  unsigned threads = 1;
  std::string checkpoint_path;     // empty: no checkpointing
  std::uint64_t point_budget = 0;  // stop scheduling once this many points were evaluated
  std::atomic<bool>* stop = nullptr;
};

struct SearchResult {
  SearchRegion region;
  std::vector<SignReport> exceptional;  // sorted by (N, k)
  std::uint64_t scanned = 0;            // exact a2 evaluations performed
  std::uint64_t certified_skips = 0;    // points dismissed by certificates
  bool complete = true;
  double elapsed_seconds = 0;
};

// Classifies a2 signs over the region, collecting the pairs that fail the
// generic sign (>= 0 for non-square m, <= 0 for square m). Exact mode
// evaluates every grid point; hybrid consults point certificates first and
// skips certified points. Requires m in {2,3,4} for hybrid/frontier.
SearchResult classify_region(const SearchRegion& region, const SearchOptions& options);

std::uint64_t region_hash(const SearchRegion& region, SearchMode mode);

std::string search_csv(const std::vector<SignReport>& rows);
std::vector<SignReport> parse_search_csv(const std::string& text);
std::string search_jsonl(const std::vector<SignReport>& rows);

// Staircase residual region (the finite set of pairs the theorems leave to
// a machine check) for m in {2,3,4}.
SearchRegion paper_region(std::uint64_t m);

}  // namespace hecke
