#include "rnacci/valuation.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace rnacci {

std::uint64_t Valuation::value() const {
  if (infinite_) throw std::logic_error("value() of an infinite valuation");
  return value_;
}

std::string Valuation::to_string() const {
  return infinite_ ? std::string("inf") : std::to_string(value_);
}

unsigned nu2(std::uint64_t x) {
  if (x == 0) throw std::domain_error("nu2 of zero is infinite");
  return static_cast<unsigned>(std::countr_zero(x));
}

Valuation nu(unsigned long p, const BigInt& x) {
  if (p < 2) throw std::domain_error("valuation base must be at least 2, got " + std::to_string(p));
  if (sgn(x) == 0) return Valuation::infinity();
  if (p == 2) return Valuation::finite(mpz_scan1(x.get_mpz_t(), 0));
  BigInt rest;
  BigInt base = p;
  const auto v = mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), base.get_mpz_t());
  return Valuation::finite(v);
}

std::uint64_t legendre_factorial(unsigned long p, std::uint64_t m) {
  if (p < 2) throw std::domain_error("valuation base must be at least 2");
  std::uint64_t total = 0;
  for (std::uint64_t q = m / p; q != 0; q /= p) total += q;
  return total;
}

std::uint64_t floor_log(unsigned long p, std::uint64_t m) {
  if (m < 1) throw std::domain_error("floor_log needs m >= 1");
  std::uint64_t e = 0;
  for (std::uint64_t q = m / p; q != 0; q /= p) ++e;
  return e;
}

LegendreBounds legendre_bounds(unsigned long p, std::uint64_t m) {
  if (p < 2) throw std::domain_error("valuation base must be at least 2");
  if (m < 1) throw std::domain_error("Legendre bounds need m >= 1");
  const mpz_class pm1 = p - 1;
  const mpz_class mz = static_cast<unsigned long>(m);
  LegendreBounds b;
  b.lower = mpq_class(mz, pm1) - mpz_class(static_cast<unsigned long>(floor_log(p, m))) - 1;
  b.lower.canonicalize();
  b.upper = mpq_class(mz - 1, pm1);
  b.upper.canonicalize();
  b.exact = legendre_factorial(p, m);
  return b;
}

Valuation nu2_closed_form(const SequenceParams& params, Index n) {
  const auto k = static_cast<std::uint64_t>(params.k());
  const std::uint64_t period = 2 * k + 1;
  if (n % period != 0) return Valuation::finite(0);
  if (n % (2 * period) == period) return Valuation::finite(1);
  if (n == 0) return Valuation::infinity();
  return Valuation::finite(nu2(n) + nu2(k - 1) + 2);
}

Valuation nu2_oracle(const SequenceParams& params, Index n) {
  const auto k = static_cast<std::uint64_t>(params.k());
  if (n == 0) throw std::domain_error("nu2_oracle: t_0 = 0 has infinite valuation");
  // ceil(log2(n+1)) = bit width of n
  unsigned width = static_cast<unsigned>(std::bit_width(n)) + nu2(k - 1) + 4;
  for (;;) {
    const BigInt residue = term_mod_pow2(params, n, width);
    if (sgn(residue) != 0) return Valuation::finite(mpz_scan1(residue.get_mpz_t(), 0));
    if (width >= kMaxResidueWidth)
      throw std::runtime_error("nu2_oracle: residue still zero at the maximum width");
    width = std::min(2 * width, kMaxResidueWidth);
  }
}

}  // namespace rnacci
