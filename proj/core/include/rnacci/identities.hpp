#pragma once

// Executable checks of the structural identities satisfied by even-order
// r-nacci sequences (r = 2k, k >= 2): oddness of det B_0, the adjugate form of
// the reduction formula t_{n+w} = T_n^T B_0^{-1} T_w, the closed form of
// C^{2k+1}, two binomial sums, and the 2-power congruences on T_{m(2k+1)}.
//
// A failing check is data, not an error: every verify_* returns a report that
// carries the first counterexample found. Domain errors (odd r, k < 2, bad
// ranges) still throw std::domain_error.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rnacci/sequence.hpp"

namespace rnacci {

struct Counterexample {
  std::string input;
  std::string expected;
  std::string actual;
};

struct VerificationReport {
  std::string check;
  std::string range;
  bool passed = true;
  std::optional<Counterexample> counterexample;  // present iff !passed

  static VerificationReport pass(std::string check, std::string range);
  static VerificationReport fail(std::string check, std::string range, Counterexample cx);
};

struct BinomialSides {
  BigInt lhs;
  BigInt rhs;
};

/// sum_{i=0}^{w} C(m+i, m)  vs  C(m+w+1, m+1)
BinomialSides binom_identity_a(unsigned m, unsigned w);

/// sum_{i=0}^{w} C(m+i, m) 2^i  vs  (-1)^{m+1} + 2^{w+1} sum_{j=0}^{m} C(m+w+1, m-j) (-2)^j
BinomialSides binom_identity_b(unsigned m, unsigned w);

/// All-ones column of length 2k.
std::vector<BigInt> ones_vector(const SequenceParams& params);

/// v_m with entry i equal to C(m+i, m) * 2^i, 0 <= i < 2k.
std::vector<BigInt> binomial_vector(const SequenceParams& params, unsigned m);

VerificationReport verify_det_b0_odd(const SequenceParams& params);

/// Same check against an arbitrary window, e.g. a deliberately corrupted B_0.
VerificationReport verify_det_odd(const HankelWindow& window);

/// det(B_0) t_{n+w} == T_n^T adj(B_0) T_w, in integers. n, w >= 1.
VerificationReport verify_reduction_formula(const SequenceParams& params, Index n, Index w);

/// The same identity on `samples` pseudo-random pairs 1 <= n, w <= max_index.
VerificationReport verify_reduction_formula_random(const SequenceParams& params, unsigned samples,
                                                   Index max_index, std::uint64_t seed);

/// 2 * (row i constant 2^i)  -  (lower triangle with entry 2^{i-j}).
Matrix companion_power_closed_form(const SequenceParams& params);

/// C^{2k+1} by exact matrix power against companion_power_closed_form.
VerificationReport verify_companion_power(const SequenceParams& params);

/// C^{2k+1} against a caller-supplied claim.
VerificationReport verify_companion_power(const SequenceParams& params, const Matrix& claimed);

/// T_{m(2k+1)} == w + (-1)^{m+1} 4(k-1) sum_{i<m} v_i + (-1)^{m+1} v_{m-1}  (mod 2^{2k+1}).
VerificationReport verify_whole_push(const SequenceParams& params, unsigned m);

/// verify_whole_push for every 1 <= m <= m_max.
VerificationReport verify_whole_push_range(const SequenceParams& params, unsigned m_max);

struct CongruenceWitness {
  unsigned l0 = 0;           // nu2(k-1) + 2
  std::vector<BigInt> a;     // reduced mod 2^{nu2(k-1)+2}
};

/// Derives A from T_{2^{l0}(2k+1)} - T_0. Throws std::runtime_error if the
/// difference is not divisible by 2^{l0+1}.
CongruenceWitness congruence_witness(const SequenceParams& params);

/// (i)  T_{2^l(2k+1)} == T_0                 (mod 2^{l+1+extra_bits}),  0 <= l <= l_max
/// (ii) T_{s 2^l(2k+1)} == s 2^{l+1} A + T_0  (mod 2^{l+nu2(k-1)+3}),   l0 <= l <= l_max, odd s <= s_max
/// extra_bits > 0 tightens (i) beyond what holds and exists to probe strictness.
/// Throws std::domain_error if l_max < l0 or s_max < 1.
VerificationReport verify_congruence_tower(const SequenceParams& params, unsigned l_max,
                                           unsigned s_max, unsigned extra_bits = 0);

/// t_{m(2k+1)} == 1 + (-1)^{m+1} 4m(k-1) + (-1)^{m+1}  (mod 2^{2 nu2(k-1) + 5}), 1 <= m <= m_max.
VerificationReport verify_super_formula(const SequenceParams& params, unsigned m_max);

enum class SuiteSelection {
  all,
  determinant_and_reduction,
  congruence_tower,
  companion_power,
  binomial,
  block_push,
  first_entry,
};

struct SuiteLimits {
  unsigned reduction_samples = 200;
  Index reduction_max_index = 300;
  unsigned binomial_max = 40;
  unsigned whole_push_m_max = 50;
  unsigned tower_l_max = 10;  // raised to l0 for k where l0 exceeds it
  unsigned tower_s_max = 9;
  unsigned super_m_max = 200;
  std::uint64_t seed = 20170419;
};

/// Every selected check for every k in ks, plus the k-independent binomial
/// identities once. Reports come back in a fixed order regardless of `threads`.
/// Throws std::domain_error if ks is empty or contains k < 2.
std::vector<VerificationReport> run_suite(std::span<const int> ks, const SuiteLimits& limits = {},
                                          SuiteSelection selection = SuiteSelection::all,
                                          unsigned threads = 1);

bool all_passed(std::span<const VerificationReport> reports);

}  // namespace rnacci
