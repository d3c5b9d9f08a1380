#pragma once

// Effective search limits for m! = t_{n_1} ... t_{n_d}.
//
// The dominant root phi of x^r = x^{r-1} + ... + 1 is bracketed by bisection
// on exact rationals. The m-bound scans the inequality
//
//   m - log2 m - 1 - d (nu2(k-1) + 2)  <  d log2( m (log2 m - 1) / (d log2 phi) + 2k - 1 )
//
// upward from m = 6 and keeps the last m for which it holds. log2 m is the
// real logarithm; m - log2 m - 1 <= m - floor(log2 m) - 1 <= nu2(m!) so the
// bound stays valid.

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "rnacci/sequence.hpp"

namespace rnacci {

struct PhiApprox {
  int r = 0;
  mpq_class lo;
  mpq_class hi;

  mpq_class width() const { return hi - lo; }
  double midpoint() const;
};

/// 10^-25.
mpq_class default_phi_tolerance();

/// Bracket of the unique root of x^r - x^{r-1} - ... - 1 in (2(1 - 2^-r), 2),
/// bisected until hi - lo <= tol. Throws std::domain_error for r < 2 or tol <= 0.
PhiApprox phi_root(int r, const mpq_class& tol = default_phi_tolerance());

/// x^r - x^{r-1} - ... - x - 1, exactly.
mpq_class phi_polynomial(int r, const mpq_class& x);

/// Constants that make the generic finiteness argument concrete for r = 2k:
///   nu2(t_n) <= k1 * n^exponent  and  log2 t_n >= k2 * n   for n >= n0.
struct FinitenessConstants {
  std::uint64_t n0 = 0;
  mpq_class exponent{1, 2};
  mpq_class k1{1};
  double k2 = 0.0;  // (1/2) log2(phi lower bracket), a certified underestimate
};

FinitenessConstants finiteness_constants(const SequenceParams& params);

/// Signed gap rhs - lhs of the m-bound inequality in double precision.
/// Positive means the inequality holds at m.
double m_bound_gap(const SequenceParams& params, int d, std::int64_t m);

/// Whether the m-bound inequality holds at m. Comparisons inside 1e-6 of the
/// boundary are redone in 50-digit decimal arithmetic.
bool m_bound_holds(const SequenceParams& params, int d, std::int64_t m);

/// Largest m >= 6 satisfying the inequality, scanning until 64 consecutive
/// failures. Throws std::domain_error for d < 1 or if no m >= 6 qualifies.
std::int64_t m_upper_bound(const SequenceParams& params, int d);

/// floor(m (log2 m - 1) / log2 phi_lo) + d (2k - 1). Throws std::domain_error for m < 6.
std::int64_t n_sum_upper_bound(const SequenceParams& params, int d, std::int64_t m);

struct BoundRow {
  int k = 0;
  int d = 0;
  std::int64_t m_max = 0;
  std::int64_t n_sum_max = 0;

  friend bool operator==(const BoundRow&, const BoundRow&) = default;
};

/// One row per (k, d), k-major. Throws std::domain_error on empty ranges or k_lo < 2, d_lo < 1.
std::vector<BoundRow> bounds_table(int k_lo, int k_hi, int d_lo, int d_hi, unsigned threads = 1);

}  // namespace rnacci
