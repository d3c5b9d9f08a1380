#pragma once

// Generalized Fibonacci (r-nacci) sequences.
//
//   t_0 = 0,  t_1 = ... = t_{r-1} = 1,  t_n = t_{n-1} + ... + t_{n-r}  (n >= r)
//
// Exact terms are produced by a sliding window of the last r values. Isolated
// residues modulo 2^w come from companion-matrix powers with every product
// reduced mod 2^w, so the full-size term never exists.

#include <cstdint>
#include <optional>
#include <vector>

#include "rnacci/matrix.hpp"

namespace rnacci {

using Index = std::uint64_t;

/// Order of the recurrence. Immutable once built; only make_params() creates one.
class SequenceParams {
 public:
  int order() const { return r_; }

  /// k = r/2 when r is even.
  std::optional<int> half_order() const {
    return r_ % 2 == 0 ? std::optional<int>(r_ / 2) : std::nullopt;
  }

  /// k for even-order operations. Throws std::domain_error unless r = 2k with k >= 2.
  int k() const;

  friend bool operator==(const SequenceParams&, const SequenceParams&) = default;

 private:
  friend SequenceParams make_params(int r);
  explicit SequenceParams(int r) : r_(r) {}
  int r_;
};

/// Throws std::domain_error for r < 2.
SequenceParams make_params(int r);

/// Shorthand for make_params(2k) followed by the k >= 2 check.
SequenceParams even_params(int k);

/// Throws std::domain_error unless r is even and k >= 2.
void require_even_order(const SequenceParams& params);

BigInt term(const SequenceParams& params, Index n);

/// t_0 ... t_{count-1}.
std::vector<BigInt> terms(const SequenceParams& params, std::size_t count);

/// Largest residue width accepted by term_mod_pow2 and state_vector_mod_pow2.
inline constexpr unsigned kMaxResidueWidth = 1u << 16;

/// t_n mod 2^width, 1 <= width <= kMaxResidueWidth.
BigInt term_mod_pow2(const SequenceParams& params, Index n, unsigned width);

/// [t_n, ..., t_{n+r-1}] mod 2^width.
std::vector<BigInt> state_vector_mod_pow2(const SequenceParams& params, Index n,
                                          unsigned width);

struct StateVector {
  Index base_index = 0;
  std::vector<BigInt> entries;  // t_n ... t_{n+2k-1}
};

struct HankelWindow {
  Index base_index = 0;
  Matrix entries;  // (i, j) -> t_{n+i+j}
};

struct CompanionMatrix {
  Matrix entries;
};

// The three structured views below are even-order only (r = 2k, k >= 2).
StateVector state_vector(const SequenceParams& params, Index n);
HankelWindow hankel_window(const SequenceParams& params, Index n);
CompanionMatrix companion(const SequenceParams& params);

}  // namespace rnacci
