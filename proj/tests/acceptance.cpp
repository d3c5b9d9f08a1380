// Acceptance gate: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "rnacci/bounds.hpp"
#include "rnacci/identities.hpp"
#include "rnacci/solver.hpp"
#include "rnacci/valuation.hpp"

using namespace rnacci;

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

// Published m-bounds for 2 <= k <= 5 (rows) and 1 <= d <= 10 (columns).
const std::int64_t kPublishedTable[4][10] = {
    {11, 19, 27, 35, 43, 51, 59, 67, 75, 84},
    {13, 22, 31, 40, 50, 59, 68, 77, 87, 96},
    {11, 19, 28, 36, 44, 52, 60, 68, 76, 84},
    {14, 25, 35, 46, 56, 67, 77, 88, 98, 109},
};

Outcome bound_table() {
  const auto start = std::chrono::steady_clock::now();
  const auto rows = bounds_table(2, 5, 1, 10);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream detail;
  bool ok = rows.size() == 40;
  int exact = 0;
  for (const auto& row : rows) {
    const auto expected = kPublishedTable[row.k - 2][row.d - 1];
    if (row.m_max == expected) {
      ++exact;
      continue;
    }
    detail << " cell(k=" << row.k << ",d=" << row.d << ") published=" << expected << " computed=" << row.m_max;
    if (std::llabs(row.m_max - expected) > 1) ok = false;
  }
  ok = ok && secs < 1.0;
  detail << " " << exact << "/40 exact, " << secs << " s (limit 1 s)";
  return {ok, detail.str()};
}

Outcome diophantine() {
  const auto start = std::chrono::steady_clock::now();
  const auto grid = solve_grid(2, 5, 1, 10, 0);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream detail;
  std::size_t found = 0;
  bool expected_seen = false;
  for (const auto& cell : grid) {
    for (const auto& s : cell.solutions) {
      ++found;
      detail << " (k=" << cell.k << ",d=" << cell.d << ",m=" << s.m << ",indices=[";
      for (std::size_t i = 0; i < s.indices.size(); ++i) detail << (i ? "," : "") << s.indices[i];
      detail << "])";
      if (cell.k == 2 && cell.d == 1 && s.m == 3 && s.indices == std::vector<Index>{5}) expected_seen = true;
    }
  }
  const bool ok = found == 1 && expected_seen && secs < 600.0;
  detail << " " << found << " solution(s), " << secs << " s (limit 600 s)";
  return {ok, detail.str()};
}

Outcome oracle_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  std::size_t comparisons = 0;
  std::size_t mismatches = 0;
  std::string first;
  for (int k = 2; k <= 8; ++k) {
    const auto params = even_params(k);
    for (Index n = 1; n <= 20000; ++n) {
      ++comparisons;
      const auto closed = nu2_closed_form(params, n);
      const auto oracle = nu2_oracle(params, n);
      if (closed != oracle && mismatches++ == 0)
        first = " first mismatch k=" + std::to_string(k) + " n=" + std::to_string(n) + " closed=" +
                closed.to_string() + " oracle=" + oracle.to_string();
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream detail;
  detail << " " << comparisons << " comparisons, " << mismatches << " mismatches, " << secs << " s (limit 120 s)"
         << first;
  return {comparisons == 140000 && mismatches == 0 && secs < 120.0, detail.str()};
}

Outcome identity_suite() {
  const std::vector<int> ks{2, 3, 4, 5, 6};
  auto reports = run_suite(ks, SuiteLimits{}, SuiteSelection::all, 0);
  for (int k : {7, 8}) {
    reports.push_back(verify_det_b0_odd(even_params(k)));
    reports.push_back(verify_companion_power(even_params(k)));
  }
  std::ostringstream detail;
  std::size_t failed = 0;
  for (const auto& r : reports) {
    if (r.passed) continue;
    ++failed;
    detail << " FAIL " << r.check << " (" << r.range << ")";
    if (r.counterexample)
      detail << " at " << r.counterexample->input << ": expected " << r.counterexample->expected << " got "
             << r.counterexample->actual;
  }
  detail << " " << reports.size() - failed << "/" << reports.size() << " checks passed";
  return {failed == 0, detail.str()};
}

Outcome legendre_sandwich() {
  std::ostringstream detail;
  for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul}) {
    for (std::uint64_t m = 1; m <= 100000; ++m) {
      const auto b = legendre_bounds(p, m);
      if (!(b.lower <= b.exact && b.exact <= b.upper)) {
        detail << " violated at p=" << p << " m=" << m;
        return {false, detail.str()};
      }
    }
  }
  for (std::uint64_t m = 6; m <= 100000; ++m) {
    const auto middle = static_cast<std::int64_t>(m) - static_cast<std::int64_t>(floor_log(2, m)) - 1;
    if (2 * middle < static_cast<std::int64_t>(m)) {
      detail << " m/2 <= m - floor(log2 m) - 1 fails at m=" << m;
      return {false, detail.str()};
    }
  }
  detail << " 500000 sandwiches and 99995 halving checks hold";
  return {true, detail.str()};
}

Outcome growth_bound() {
  std::ostringstream detail;
  for (int r : {4, 6, 8, 10}) {
    const auto phi = phi_root(r);
    mpz_class two_r;
    mpz_ui_pow_ui(two_r.get_mpz_t(), 2, static_cast<unsigned long>(r));
    const mpq_class floor_bound = 2 - mpq_class(mpz_class(2), two_r);
    if (!(phi.lo > floor_bound && phi.hi < 2)) {
      detail << " bracket for r=" << r << " leaves (2(1-2^-r), 2)";
      return {false, detail.str()};
    }
    const double log_phi = std::log(phi.lo.get_d());
    const auto t = oracle::rnacci(r, 5001);
    for (std::size_t n = 1; n <= 5000; ++n) {
      long exp2 = 0;
      const double mant = mpz_get_d_2exp(&exp2, t[n].get_mpz_t());
      const double log_t = std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
      if (log_t < (static_cast<double>(n) - r - 1) * log_phi) {
        detail << " fails at r=" << r << " n=" << n;
        return {false, detail.str()};
      }
    }
  }
  detail << " 20000 terms above phi_lo^(n-r-1); brackets inside (2(1-2^-r), 2)";
  return {true, detail.str()};
}

Outcome solver_completeness() {
  constexpr Index n_cap = 40;
  constexpr std::int64_t m_cap = 15;
  std::ostringstream detail;
  std::size_t cells = 0;
  for (int k = 2; k <= 5; ++k) {
    const auto params = even_params(k);
    for (int d = 1; d <= 3; ++d) {
      const SearchConfig cfg{m_cap, static_cast<std::uint64_t>(d) * n_cap, d, n_cap};
      const auto pruned = solve(params, cfg);
      const auto brute = brute_force_solve(params, d, n_cap, m_cap);
      ++cells;
      if (pruned != brute) {
        detail << " mismatch at k=" << k << " d=" << d << ": pruned " << pruned.size() << " vs brute "
               << brute.size();
        return {false, detail.str()};
      }
    }
  }
  detail << " " << cells << " cells agree (n_cap=" << n_cap << ", m_cap=" << m_cap << ")";
  return {true, detail.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 bound table reproduction", bound_table},
      {"2 diophantine reproduction", diophantine},
      {"3 closed-form vs oracle valuation", oracle_equivalence},
      {"4 identity suite", identity_suite},
      {"5 legendre sandwich", legendre_sandwich},
      {"6 growth bound", growth_bound},
      {"7 solver completeness oracle", solver_completeness},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome outcome;
    try {
      outcome = check();
    } catch (const std::exception& e) {
      outcome = {false, std::string(" threw: ") + e.what()};
    }
    std::printf("[%s] %s:%s\n", outcome.passed ? "PASS" : "FAIL", name.c_str(), outcome.detail.c_str());
    std::fflush(stdout);
    failures += outcome.passed ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
