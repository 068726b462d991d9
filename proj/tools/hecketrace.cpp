#include <unistd.h>

#include <atomic>
#include <cmath>
#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "hecke/certify.hpp"
#include "hecke/classnum.hpp"
#include "hecke/coeffs.hpp"
#include "hecke/congruence.hpp"
#include "hecke/errors.hpp"
#include "hecke/oracles.hpp"
#include "hecke/qformat.hpp"
#include "hecke/search.hpp"
#include "hecke/trace.hpp"

namespace {

using json = nlohmann::json;
using namespace hecke;

std::atomic<bool> g_interrupted{false};

void handle_sigint(int) { g_interrupted.store(true); }

unsigned default_threads(unsigned flag_value) {
  if (flag_value != 0) return flag_value;
  if (const char* env = std::getenv("HECKETRACE_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

std::string fraction_and_approx(const mpq_class& q) {
  std::string s = to_fraction_string(q);
  if (q.get_den() != 1) {
    char buf[64];
    std::snprintf(buf, sizeof buf, " (~%.6g)", approx(q));
    s += buf;
  }
  return s;
}

json certificate_json(const Certificate& c) {
  return json{{"m", c.m},
              {"N", c.level},
              {"k", c.weight},
              {"decision", decision_name(c.decision)},
              {"main_term", to_fraction_string(c.main_term)},
              {"error_bound", to_fraction_string(c.error_bound)}};
}

json sign_report_json(const SignReport& r) {
  return json{{"m", r.m},
              {"N", r.level},
              {"k", r.weight},
              {"dim", r.dim},
              {"a2", r.a2.get_str()},
              {"sign", std::string(1, sign_char(r.sign))}};
}

int run_trace(std::uint64_t m, std::uint64_t n, unsigned k, bool breakdown, bool two_sided,
              bool as_json) {
  TraceInput in{m, factorize(n), k};
  TraceBreakdown tb = trace(in);
  if (two_sided && term_a2_two_sided(in) != tb.a2)
    throw internal_error("two-sided elliptic sum disagrees with the merged sum");
  if (as_json) {
    json j{{"m", m},
           {"N", n},
           {"k", k},
           {"trace", tb.total.get_str()},
           {"a1", to_fraction_string(tb.a1)},
           {"a2", to_fraction_string(tb.a2)},
           {"a3", to_fraction_string(tb.a3)},
           {"a4", to_fraction_string(tb.a4)}};
    std::cout << j.dump() << "\n";
    return 0;
  }
  std::cout << "Tr T_" << m << "(" << n << ", " << k << ") = " << tb.total.get_str() << "\n";
  if (breakdown) {
    std::cout << "  a1 = " << fraction_and_approx(tb.a1) << "\n";
    std::cout << "  a2 = " << fraction_and_approx(tb.a2) << "\n";
    std::cout << "  a3 = " << fraction_and_approx(tb.a3) << "\n";
    std::cout << "  a4 = " << fraction_and_approx(tb.a4) << "\n";
  }
  return 0;
}

int run_a2(std::uint64_t m, std::uint64_t n, unsigned k, bool as_json) {
  SignReport r = sign_report(m, factorize(n), k);
  if (as_json) {
    std::cout << sign_report_json(r).dump() << "\n";
    return 0;
  }
  std::cout << "a2(" << m << ", " << n << ", " << k << ") = " << r.a2.get_str() << "  [dim "
            << r.dim << ", sign " << sign_char(r.sign) << "]\n";
  return 0;
}

int run_certify(std::uint64_t m, std::uint64_t n, unsigned k, bool as_json) {
  Certificate c = certify_point(m, factorize(n), k);
  if (as_json) {
    std::cout << certificate_json(c).dump() << "\n";
    return 0;
  }
  std::cout << "certify(m=" << m << ", N=" << n << ", k=" << k
            << "): " << decision_name(c.decision) << "\n";
  std::cout << "  main term   = " << fraction_and_approx(c.main_term) << "\n";
  std::cout << "  error bound = " << fraction_and_approx(c.error_bound) << "\n";
  return 0;
}

int run_theta_point(std::uint64_t n, bool as_json) {
  ThetaProfile p = theta_profile(factorize(n));
  if (as_json) {
    json j{{"N", n},
           {"theta1_sq", to_fraction_string(p.theta1_sq)},
           {"theta2", to_fraction_string(p.theta2)},
           {"theta3", to_fraction_string(p.theta3)}};
    std::cout << j.dump() << "\n";
    return 0;
  }
  std::cout << "theta(" << n << "):\n";
  std::cout << "  theta1^2 = " << fraction_and_approx(p.theta1_sq) << "\n";
  std::cout << "  theta2   = " << fraction_and_approx(p.theta2) << "\n";
  std::cout << "  theta3   = " << fraction_and_approx(p.theta3) << "\n";
  return 0;
}

int run_theta_table(std::uint64_t cap, unsigned threads, bool as_json) {
  ThetaTableReport rep = theta_table_verify_all(cap, threads);
  if (as_json) {
    json rows = json::array();
    const auto& ref = theta_reference_table();
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
      const auto& r = rep.rows[i];
      rows.push_back(json{{"n_threshold", r.n_threshold},
                          {"theta1_bound", to_fraction_string(ref[i].bounds[0])},
                          {"theta2_bound", to_fraction_string(ref[i].bounds[1])},
                          {"theta3_bound", to_fraction_string(ref[i].bounds[2])},
                          {"status", r.pass ? "pass" : "fail"},
                          {"scanned", r.scanned},
                          {"scan_hi", r.scan_hi}});
    }
    json j{{"scan_cap", rep.cap},
           {"complete", rep.complete},
           {"elapsed_seconds", rep.elapsed_seconds},
           {"rows", rows},
           {"tail", json{{"primorial_pass", rep.tail.primorial_pass},
                         {"closed_form_pass", rep.tail.closed_form_pass}}},
           {"status", rep.pass ? "pass" : "fail"}};
    std::cout << j.dump() << "\n";
    return rep.pass ? 0 : 2;
  }
  std::cout << "theta table verification, cap " << rep.cap
            << (rep.complete ? " (complete)" : " (prefix)") << "\n";
  for (const auto& r : rep.rows) {
    std::cout << "  N >= " << r.n_threshold << ": " << (r.pass ? "pass" : "FAIL");
    if (r.scanned) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "  max theta1 ~%.6g at N=%llu, theta3 ~%.6g at N=%llu",
                    std::sqrt(approx(r.max_theta1_sq)), (unsigned long long)r.arg1,
                    approx(r.max_theta3), (unsigned long long)r.arg3);
      std::cout << buf;
    } else {
      std::cout << "  (beyond cap, not scanned)";
    }
    std::cout << "\n";
  }
  std::cout << "  primorial tail: " << (rep.tail.primorial_pass ? "pass" : "FAIL")
            << ", closed-form tail: " << (rep.tail.closed_form_pass ? "pass" : "FAIL") << "\n";
  std::printf("  elapsed %.2fs\n", rep.elapsed_seconds);
  return rep.pass ? 0 : 2;
}

int run_search(const SearchRegion& region, const SearchOptions& options, const std::string& out,
               std::string format) {
  SearchResult result = classify_region(region, options);
  if (format.empty()) format = isatty(fileno(stdout)) ? "table" : "csv";
  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!out.empty()) {
    file.open(out);
    if (!file.good()) {
      std::cerr << "cannot open output file " << out << "\n";
      return 1;
    }
    os = &file;
    if (format == "table") format = "csv";
  }
  if (format == "csv") {
    *os << search_csv(result.exceptional);
  } else if (format == "jsonl") {
    *os << search_jsonl(result.exceptional);
  } else {
    *os << "    N    k  dim sign  a2\n";
    for (const auto& r : result.exceptional) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%5llu %4u %4llu    %c  ", (unsigned long long)r.level,
                    r.weight, (unsigned long long)r.dim, sign_char(r.sign));
      *os << buf << r.a2.get_str() << "\n";
    }
  }
  std::cerr << "scanned " << result.scanned << " points, " << result.certified_skips
            << " certified skips, " << result.exceptional.size() << " exceptional pairs, "
            << (result.complete ? "complete" : "INCOMPLETE") << ", " << result.elapsed_seconds
            << "s\n";
  if (!result.complete) return 3;
  return 0;
}

struct SelftestFailure {
  std::string name;
};

void check(bool ok, const std::string& name) {
  if (!ok) throw SelftestFailure{name};
  std::cout << "ok " << name << "\n";
}

int run_selftest(bool quick) {
  using namespace hecke::oracles;
  try {
    {
      bool ok = true;
      const std::pair<int, const char*> table1[] = {
          {-3, "1/3"}, {-4, "1/2"}, {-7, "1"},  {-8, "1"},  {-11, "1"}, {-12, "1"},
          {-15, "2"},  {-16, "1"},  {-19, "1"}, {-20, "2"}, {-23, "3"}, {-24, "2"},
          {-27, "1"},  {-28, "1"},  {-31, "3"}, {-32, "2"}, {-35, "2"}, {-36, "2"},
          {-39, "4"},  {-40, "2"},  {-43, "1"}, {-44, "3"}, {-47, "5"}, {-48, "2"},
          {-51, "2"},  {-52, "2"},  {-55, "4"}, {-56, "4"}, {-59, "3"}, {-60, "2"},
          {-63, "4"},  {-64, "2"},  {-67, "1"}};
      for (const auto& [d, hw] : table1)
        ok = ok && weighted_class_number(d) == mpq_class(std::string(hw));
      check(ok, "weighted class numbers -3..-67");
    }
    {
      unsigned cap = quick ? 12 : 20;
      auto tau = delta_coefficients(cap);
      bool ok = true;
      auto one = factorize(1);
      for (unsigned m = 1; m <= cap; ++m) ok = ok && trace_total(m, one, 12) == tau[m];
      check(ok, "trace vs tau(m) at level 1, weight 12");
    }
    {
      bool ok = true;
      std::uint64_t ncap = quick ? 60 : 150;
      for (std::uint64_t n = 1; n <= ncap && ok; ++n) {
        auto f = factorize(n);
        for (unsigned k = 2; k <= 14; k += 2)
          ok = ok && trace_total(1, f, k) == mpz_class(dimension_formula(f, k));
      }
      check(ok, "trace of T_1 vs dimension formula");
    }
    {
      bool ok = true;
      std::uint64_t cap = quick ? 150 : 400;
      for (std::uint64_t mod = 1; mod <= cap && ok; ++mod) {
        auto f = factorize(mod);
        for (std::int64_t t = -4; t <= 4 && ok; ++t)
          for (std::int64_t m2 : {1, 2, 3, 4})
            ok = ok && roots_mod(t, m2, f) == brute_roots(t, m2, mod);
      }
      check(ok, "quadratic congruence roots vs exhaustive scan");
    }
    {
      bool ok = true;
      std::uint64_t cap = quick ? 100 : 250;
      using Triple = std::tuple<std::int64_t, std::uint64_t, std::uint64_t>;
      const Triple cases[] = {{0, 1, 3}, {0, 2, 3}, {1, 1, 3}, {0, 2, 4}, {2, 2, 16}};
      for (std::uint64_t n = 1; n <= cap && ok; ++n) {
        auto f = factorize(n);
        for (const auto& [t, nn, mm] : cases) ok = ok && mu(t, nn, mm, f) == brute_mu(t, nn, mm, n);
      }
      check(ok, "mu vs definitional enumeration");
    }
    {
      bool ok = true;
      std::uint64_t cap = quick ? 100 : 200;
      for (std::uint64_t n = 1; n <= cap && ok; ++n) {
        auto f = factorize(n);
        for (std::uint64_t m2 : {3, 4, 9})
          for (std::uint64_t d = 1; d <= m2; ++d)
            if (m2 % d == 0) ok = ok && sigma_term(f, m2, d) == brute_sigma(n, m2, d);
      }
      check(ok, "sigma term vs definitional enumeration");
    }
    {
      for (std::uint64_t m2 = 1; m2 <= (quick ? 6u : 10u); ++m2)
        for (std::uint64_t n = 1; n <= (quick ? 40u : 80u); ++n) {
          auto f = factorize(n);
          for (unsigned k = 2; k <= 16; k += 2) trace_total(m2, f, k);  // throws on fault
        }
      check(true, "trace integrality sweep");
    }
  } catch (const SelftestFailure& f) {
    std::cout << "FAIL " << f.name << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cout << "FAIL with exception: " << e.what() << "\n";
    return 2;
  }
  std::cout << "selftest passed\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Hecke traces, second coefficients, and certified sign searches"};
  app.require_subcommand(1);

  std::uint64_t m = 0, n = 0;
  unsigned k = 0;
  bool breakdown = false, two_sided = false, as_json = false, quick = false;

  auto* cmd_trace = app.add_subcommand("trace", "Tr T_m(N, k) via the trace formula");
  cmd_trace->add_option("m", m, "Hecke index")->required();
  cmd_trace->add_option("N", n, "level")->required();
  cmd_trace->add_option("k", k, "weight (even)")->required();
  cmd_trace->add_flag("--breakdown", breakdown, "print the four summands");
  cmd_trace->add_flag("--two-sided", two_sided,
                      "debug: recompute the elliptic sum without the t/-t merge and compare");
  cmd_trace->add_flag("--json", as_json, "JSON output");

  auto* cmd_a2 = app.add_subcommand("a2", "second Hecke-polynomial coefficient");
  cmd_a2->add_option("m", m, "Hecke index")->required();
  cmd_a2->add_option("N", n, "level, coprime to m")->required();
  cmd_a2->add_option("k", k, "weight (even)")->required();
  cmd_a2->add_flag("--json", as_json, "JSON output");

  auto* cmd_certify = app.add_subcommand("certify", "explicit-bound sign certificate");
  cmd_certify->add_option("m", m, "Hecke index (2, 3 or 4)")->required();
  cmd_certify->add_option("N", n, "level, coprime to m")->required();
  cmd_certify->add_option("k", k, "weight (even)")->required();
  cmd_certify->add_flag("--json", as_json, "JSON output");

  std::uint64_t cap = 1000000;
  unsigned threads_flag = 0;
  bool verify_table = false;
  auto* cmd_theta = app.add_subcommand("theta", "decay profile / bound-table verification");
  cmd_theta->add_option("N", n, "level (omit with --verify-table)");
  cmd_theta->add_flag("--verify-table", verify_table, "scan the bound table");
  cmd_theta->add_option("--cap", cap, "scan cap (default 1000000; 584000000 for a full check)");
  cmd_theta->add_option("--threads", threads_flag, "worker threads");
  cmd_theta->add_flag("--json", as_json, "JSON output");

  std::uint64_t nmin = 1, nmax = 0;
  unsigned kmin = 2, kmax = 0;
  bool paper_region_flag = false;
  std::string mode_str = "exact", out_path, format, checkpoint_path;
  auto* cmd_search = app.add_subcommand("search", "classify a2 signs over a region");
  cmd_search->add_option("m", m, "Hecke index")->required();
  cmd_search->add_option("--nmin", nmin, "level range start (default 1)");
  cmd_search->add_option("--nmax", nmax, "level range end");
  cmd_search->add_option("--kmin", kmin, "weight range start (default 2)");
  cmd_search->add_option("--kmax", kmax, "weight range end");
  cmd_search->add_flag("--paper-region", paper_region_flag,
                       "scan the staircase residual region (long run)");
  cmd_search->add_option("--mode", mode_str, "exact | hybrid")
      ->check(CLI::IsMember({"exact", "hybrid"}));
  cmd_search->add_option("--out", out_path, "output file");
  cmd_search->add_option("--format", format, "table | csv | jsonl")
      ->check(CLI::IsMember({"table", "csv", "jsonl"}));
  cmd_search->add_option("--checkpoint", checkpoint_path, "JSONL checkpoint path");
  cmd_search->add_option("--threads", threads_flag, "worker threads");

  auto* cmd_selftest = app.add_subcommand("selftest", "run the oracle cross-check suite");
  cmd_selftest->add_flag("--quick", quick, "smaller sample sizes");

  CLI11_PARSE(app, argc, argv);

  std::signal(SIGINT, handle_sigint);

  try {
    if (cmd_trace->parsed()) return run_trace(m, n, k, breakdown, two_sided, as_json);
    if (cmd_a2->parsed()) return run_a2(m, n, k, as_json);
    if (cmd_certify->parsed()) return run_certify(m, n, k, as_json);
    if (cmd_theta->parsed()) {
      if (verify_table) return run_theta_table(cap, default_threads(threads_flag), as_json);
      if (n == 0) {
        std::cerr << "theta: give a level or --verify-table\n";
        return 1;
      }
      return run_theta_point(n, as_json);
    }
    if (cmd_search->parsed()) {
      SearchRegion region;
      if (paper_region_flag) {
        region = paper_region(m);
        if (nmax != 0) region.n_hi = std::min(region.n_hi, nmax);
        if (kmax != 0) region.k_hi = std::min(region.k_hi, kmax);
      } else {
        if (nmax == 0 || kmax == 0) {
          std::cerr << "search: --nmax and --kmax are required without --paper-region\n";
          return 1;
        }
        region.m = m;
        region.n_lo = nmin;
        region.n_hi = nmax;
        region.k_lo = kmin;
        region.k_hi = kmax;
      }
      SearchOptions options;
      options.mode = mode_str == "hybrid" ? SearchMode::Hybrid : SearchMode::Exact;
      options.threads = default_threads(threads_flag);
      options.checkpoint_path = checkpoint_path;
      options.stop = &g_interrupted;
      return run_search(region, options, out_path, format);
    }
    if (cmd_selftest->parsed()) return run_selftest(quick);
  } catch (const hecke::internal_error& e) {
    std::cerr << "computational fault: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
