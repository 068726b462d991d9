#include "hecke/search.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "hecke/errors.hpp"

namespace hecke {

namespace {

using u64 = std::uint64_t;
using json = nlohmann::json;

struct ChunkOutcome {
  u64 n_lo = 0, n_hi = 0;
  std::vector<SignReport> exceptional;
  u64 scanned = 0;
  u64 skips = 0;
  bool done = false;
  bool from_checkpoint = false;
};

u64 fnv1a(const std::string& s) {
  u64 h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string mode_name(SearchMode m) { return m == SearchMode::Exact ? "exact" : "hybrid"; }

json report_to_json(const SignReport& r) {
  return json{{"N", r.level},
              {"k", r.weight},
              {"dim", r.dim},
              {"a2", r.a2.get_str()},
              {"sign", std::string(1, sign_char(r.sign))}};
}

SignReport report_from_json(const json& j) {
  SignReport r;
  r.level = j.at("N").get<u64>();
  r.weight = j.at("k").get<unsigned>();
  r.dim = j.at("dim").get<u64>();
  r.a2 = mpz_class(j.at("a2").get<std::string>(), 10);
  std::string s = j.at("sign").get<std::string>();
  if (s == "+") r.sign = Sign::Positive;
  else if (s == "-") r.sign = Sign::Negative;
  else if (s == "0") r.sign = Sign::Zero;
  else throw std::invalid_argument("bad sign field: " + s);
  return r;
}

}  // namespace

std::uint64_t region_hash(const SearchRegion& region, SearchMode mode) {
  std::ostringstream os;
  os << "m=" << region.m << ";n=" << region.n_lo << "-" << region.n_hi << ";k=" << region.k_lo
     << "-" << region.k_hi << ";frontier=" << (region.frontier ? 1 : 0)
     << ";mode=" << mode_name(mode) << ";v=1";
  return fnv1a(os.str());
}

std::string search_csv(const std::vector<SignReport>& rows) {
  std::ostringstream os;
  os << "N,k,dim,a2,sign\n";
  for (const auto& r : rows) {
    os << r.level << "," << r.weight << "," << r.dim << "," << r.a2.get_str() << ","
       << sign_char(r.sign) << "\n";
  }
  return os.str();
}

std::vector<SignReport> parse_search_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != "N,k,dim,a2,sign")
    throw std::invalid_argument("parse_search_csv: missing header");
  std::vector<SignReport> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string field;
    SignReport r;
    std::getline(ls, field, ',');
    r.level = std::stoull(field);
    std::getline(ls, field, ',');
    r.weight = static_cast<unsigned>(std::stoul(field));
    std::getline(ls, field, ',');
    r.dim = std::stoull(field);
    std::getline(ls, field, ',');
    r.a2 = mpz_class(field, 10);
    std::getline(ls, field, ',');
    if (field.size() != 1) throw std::invalid_argument("parse_search_csv: bad sign");
    r.sign = field[0] == '+' ? Sign::Positive : field[0] == '-' ? Sign::Negative : Sign::Zero;
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string search_jsonl(const std::vector<SignReport>& rows) {
  std::ostringstream os;
  for (const auto& r : rows) os << report_to_json(r).dump() << "\n";
  return os.str();
}

SearchRegion paper_region(std::uint64_t m) {
  const auto& rows = staircase(m);
  u64 n_max = 0;
  unsigned k_max = 0;
  for (const auto& r : rows) {
    n_max = std::max(n_max, r.n_threshold);
    k_max = std::max(k_max, r.k_threshold);
  }
  SearchRegion region;
  region.m = m;
  region.n_lo = 1;
  region.n_hi = n_max - 1;
  region.k_lo = 2;
  region.k_hi = k_max - 2;
  region.frontier = true;
  return region;
}

namespace {

struct CheckpointStore {
  std::string path;
  u64 hash = 0;
  std::mutex write_mutex;
  std::ofstream out;

  // maps chunk n_lo -> outcome loaded from an earlier run
  std::vector<ChunkOutcome> loaded;

  void load() {
    std::ifstream in(path);
    if (!in.good()) return;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      json j;
      try {
        j = json::parse(line);
      } catch (const json::exception& e) {
        throw std::invalid_argument("checkpoint " + path + ": corrupt line " +
                                    std::to_string(lineno) + ": " + e.what());
      }
      u64 h;
      try {
        h = std::stoull(j.at("region").get<std::string>(), nullptr, 16);
      } catch (...) {
        throw std::invalid_argument("checkpoint " + path + ": corrupt line " +
                                    std::to_string(lineno));
      }
      if (h != hash)
        throw std::invalid_argument("checkpoint " + path + ": region mismatch at line " +
                                    std::to_string(lineno));
      ChunkOutcome c;
      try {
        c.n_lo = j.at("n_lo").get<u64>();
        c.n_hi = j.at("n_hi").get<u64>();
        c.scanned = j.at("scanned").get<u64>();
        c.skips = j.at("skips").get<u64>();
        for (const auto& e : j.at("exceptional")) c.exceptional.push_back(report_from_json(e));
      } catch (const json::exception& e) {
        throw std::invalid_argument("checkpoint " + path + ": corrupt line " +
                                    std::to_string(lineno) + ": " + e.what());
      }
      c.done = true;
      c.from_checkpoint = true;
      loaded.push_back(std::move(c));
    }
  }

  void append(const ChunkOutcome& c, u64 m) {
    std::lock_guard<std::mutex> lock(write_mutex);
    if (!out.is_open()) out.open(path, std::ios::app);
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(hash));
    json j{{"region", std::string(hex)}, {"n_lo", c.n_lo},   {"n_hi", c.n_hi},
           {"m", m},                     {"scanned", c.scanned}, {"skips", c.skips}};
    j["exceptional"] = json::array();
    for (const auto& r : c.exceptional) j["exceptional"].push_back(report_to_json(r));
    out << j.dump() << "\n";
    out.flush();
  }
};

}  // namespace

SearchResult classify_region(const SearchRegion& region, const SearchOptions& options) {
  auto start = std::chrono::steady_clock::now();
  if (region.m == 0) throw std::invalid_argument("classify_region: m must be >= 1");
  if (region.n_lo == 0 || region.n_lo > region.n_hi)
    throw std::invalid_argument("classify_region: empty level range");
  unsigned k_lo = std::max(2u, region.k_lo + (region.k_lo % 2));
  unsigned k_hi = region.k_hi - (region.k_hi % 2);
  if (k_lo > k_hi) throw std::invalid_argument("classify_region: empty weight range");
  bool needs_certifier = options.mode == SearchMode::Hybrid || region.frontier;
  if (needs_certifier && (region.m < 2 || region.m > 4))
    throw std::invalid_argument("classify_region: hybrid/frontier requires m in {2,3,4}");

  const bool square_m = is_perfect_square(region.m);
  const std::vector<StaircaseRow>* frontier_rows =
      region.frontier ? &staircase(region.m) : nullptr;

  // fixed-width chunks so checkpoints from interrupted runs line up
  u64 range = region.n_hi - region.n_lo + 1;
  u64 chunk_len = std::max<u64>(64, (range + 65535) / 65536);
  u64 chunk_count = (range + chunk_len - 1) / chunk_len;
  std::vector<ChunkOutcome> outcomes(chunk_count);
  for (u64 c = 0; c < chunk_count; ++c) {
    outcomes[c].n_lo = region.n_lo + c * chunk_len;
    outcomes[c].n_hi = std::min(region.n_hi, outcomes[c].n_lo + chunk_len - 1);
  }

  CheckpointStore store;
  if (!options.checkpoint_path.empty()) {
    store.path = options.checkpoint_path;
    store.hash = region_hash(region, options.mode);
    store.load();
    for (const auto& c : store.loaded) {
      u64 idx = (c.n_lo - region.n_lo) / chunk_len;
      if (idx < chunk_count && outcomes[idx].n_lo == c.n_lo && outcomes[idx].n_hi == c.n_hi)
        outcomes[idx] = c;
    }
  }

  std::atomic<u64> next_chunk{0};
  std::atomic<u64> scanned_total{0};
  std::atomic<bool> budget_exhausted{false};
  auto stopped = [&] {
    if (options.stop && options.stop->load()) return true;
    return budget_exhausted.load();
  };

  auto run_chunk = [&](ChunkOutcome& chunk) {
    // one sieve pass decides, per level, how far the exact sweep must go;
    // only levels with residual work get factored
    struct Work {
      u64 n;
      unsigned hi;
    };
    std::vector<Work> work;
    psi_omega_scan(chunk.n_lo, chunk.n_hi, [&](u64 n, u64 psi_n, unsigned om) {
      if (std::gcd(n, region.m) != 1) return;
      unsigned hi = k_hi;
      if (frontier_rows) {
        unsigned f = frontier_weight(*frontier_rows, n);
        if (f != 0 && f <= hi) {
          if (f < k_lo + 2) return;  // nothing left below the frontier
          hi = f - 2;
        }
      }
      if (options.mode == SearchMode::Hybrid) {
        unsigned certified_from =
            certified_weight_threshold(region.m, theta_profile_raw(n, psi_n, om));
        if (certified_from <= hi) {
          unsigned lo_skipped = std::max(k_lo, certified_from);
          chunk.skips += (hi - lo_skipped) / 2 + 1;
          if (certified_from < k_lo + 2) return;
          hi = certified_from - 2;
        }
      }
      if (hi >= k_lo) work.push_back({n, hi});
    });
    for (const auto& [n, hi] : work) {
      FactoredInteger level = factorize(n);
      u64 points_here = 0;
      A2Sweep sweep(region.m, level, k_lo);
      for (unsigned k = k_lo;; k += 2) {
        bool exceptional = square_m ? sweep.a2() <= 0 : sweep.a2() >= 0;
        if (exceptional) {
          SignReport r;
          r.m = region.m;
          r.level = n;
          r.weight = k;
          r.dim = sweep.dim();
          r.a2 = sweep.a2();
          r.sign = sign_of(r.a2);
          chunk.exceptional.push_back(std::move(r));
        }
        ++points_here;
        if (k + 2 > hi) break;
        sweep.advance();
      }
      chunk.scanned += points_here;
      u64 total = scanned_total.fetch_add(points_here) + points_here;
      if (options.point_budget != 0 && total >= options.point_budget)
        budget_exhausted.store(true);
      if (stopped() && n < chunk.n_hi) return false;
    }
    return true;
  };

  unsigned workers = std::max(1u, options.threads);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        if (stopped()) return;
        u64 idx = next_chunk.fetch_add(1);
        if (idx >= chunk_count) return;
        ChunkOutcome& chunk = outcomes[idx];
        if (chunk.done) continue;  // restored from checkpoint
        ChunkOutcome fresh;
        fresh.n_lo = chunk.n_lo;
        fresh.n_hi = chunk.n_hi;
        if (run_chunk(fresh)) {
          fresh.done = true;
          chunk = std::move(fresh);
          if (!store.path.empty()) store.append(chunk, region.m);
        }
      }
    });
  }
  for (auto& t : pool) t.join();

  SearchResult result;
  result.region = region;
  result.region.k_lo = k_lo;
  result.region.k_hi = k_hi;
  result.complete = true;
  for (auto& chunk : outcomes) {
    if (!chunk.done) {
      result.complete = false;
      continue;
    }
    result.scanned += chunk.scanned;
    result.certified_skips += chunk.skips;
    result.exceptional.insert(result.exceptional.end(),
                              std::make_move_iterator(chunk.exceptional.begin()),
                              std::make_move_iterator(chunk.exceptional.end()));
  }
  for (auto& r : result.exceptional) r.m = region.m;
  std::sort(result.exceptional.begin(), result.exceptional.end(),
            [](const SignReport& a, const SignReport& b) {
              return a.level != b.level ? a.level < b.level : a.weight < b.weight;
            });
  result.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace hecke
