#pragma once

// p-adic valuations of integers and factorials, and the 2-adic valuation of
// even-order r-nacci terms (closed form plus an independent residue oracle).

#include <cstdint>
#include <string>

#include "rnacci/sequence.hpp"

namespace rnacci {

/// nu_p(x): a finite exponent, or Infinity for x = 0.
class Valuation {
 public:
  static Valuation finite(std::uint64_t v) { return Valuation(v, false); }
  static Valuation infinity() { return Valuation(0, true); }

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }

  /// The exponent. Throws std::logic_error on Infinity.
  std::uint64_t value() const;

  /// "inf" or the decimal exponent.
  std::string to_string() const;

  friend bool operator==(const Valuation&, const Valuation&) = default;

  // nu(xy) = nu(x) + nu(y); Infinity absorbs.
  friend Valuation operator+(const Valuation& a, const Valuation& b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return finite(a.value_ + b.value_);
  }

 private:
  Valuation(std::uint64_t v, bool inf) : value_(v), infinite_(inf) {}
  std::uint64_t value_;
  bool infinite_;
};

/// Throws std::domain_error for p < 2. Primality of p is the caller's business.
Valuation nu(unsigned long p, const BigInt& x);

/// nu_p(m!) by Legendre's formula, sum of floor(m / p^i).
std::uint64_t legendre_factorial(unsigned long p, std::uint64_t m);

/// Rational sandwich around nu_p(m!):
///   m/(p-1) - floor(log_p m) - 1  <=  nu_p(m!)  <=  (m-1)/(p-1)
struct LegendreBounds {
  mpq_class lower;
  mpq_class upper;
  std::uint64_t exact = 0;
};

/// Throws std::domain_error for m < 1 or p < 2.
LegendreBounds legendre_bounds(unsigned long p, std::uint64_t m);

/// floor(log_p m) computed in integers. m >= 1.
std::uint64_t floor_log(unsigned long p, std::uint64_t m);

/// Closed form for nu_2(t_n) when r = 2k, k >= 2:
///   0                          n not divisible by 2k+1
///   1                          n = 2k+1 mod 2(2k+1)
///   nu2(n) + nu2(k-1) + 2      n = 0 mod 2(2k+1)   (Infinity at n = 0)
Valuation nu2_closed_form(const SequenceParams& params, Index n);

/// nu_2(t_n) read off t_n mod 2^W. W starts at ceil(log2(n+1)) + nu2(k-1) + 4 and
/// doubles until the residue is nonzero. Never consults the closed form.
/// Throws std::domain_error for n = 0.
Valuation nu2_oracle(const SequenceParams& params, Index n);

/// nu_2 of a machine integer; x > 0.
unsigned nu2(std::uint64_t x);

}  // namespace rnacci
