#pragma once

// Nontrivial solutions of m! = t_{n_1} t_{n_2} ... t_{n_d} for r = 2k.
//
// "Nontrivial" means every factor exceeds 1, i.e. every n_i >= r. Index tuples
// are reported nondecreasing, so each multiset appears once.

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

#include "rnacci/sequence.hpp"

namespace rnacci {

struct Solution {
  std::int64_t m = 0;
  std::vector<Index> indices;  // nondecreasing, each >= r

  friend bool operator==(const Solution&, const Solution&) = default;
  friend auto operator<=>(const Solution&, const Solution&) = default;
};

struct SearchConfig {
  std::int64_t m_cap = 0;      // largest m considered
  std::uint64_t n_sum_cap = 0; // bound on n_1 + ... + n_d
  int d = 1;
  Index index_cap = 0;         // largest single index; 0 means n_sum_cap
};

/// m with m! = x, or nullopt. is_factorial(1) == 1. Throws std::domain_error for x < 1.
std::optional<std::int64_t> is_factorial(const BigInt& x);

/// Caps from the bounds module: m_cap = m_upper_bound, n_sum_cap = n_sum_upper_bound(m_cap).
SearchConfig default_search_config(const SequenceParams& params, int d);

/// Every solution with 2 <= m <= m_cap, indices in [r, index_cap] and index sum <= n_sum_cap,
/// sorted by (m, indices).
///
/// For each m the search is a depth-first factorization of m! into d factors
/// drawn from the r-nacci terms that divide m_cap!. A branch is cut as soon as
/// the next factor does not divide the remaining quotient or its power already
/// exceeds it.
std::vector<Solution> solve(const SequenceParams& params, const SearchConfig& config);

std::vector<Solution> solve(const SequenceParams& params, int d);

struct GridCell {
  int k = 0;
  int d = 0;
  std::vector<Solution> solutions;
};

/// solve() over a (k, d) grid, k-major. Throws std::domain_error on empty ranges, k_lo < 2 or d_lo < 1.
std::vector<GridCell> solve_grid(int k_lo, int k_hi, int d_lo, int d_hi, unsigned threads = 1);

/// Unpruned reference: all d-multisets over [r, n_cap], each product compared
/// with every m! for 2 <= m <= m_cap. Intended for small caps.
std::vector<Solution> brute_force_solve(const SequenceParams& params, int d, Index n_cap,
                                        std::int64_t m_cap);

}  // namespace rnacci
