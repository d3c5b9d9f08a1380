#include "rnacci/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "rnacci/parallel.hpp"
#include "rnacci/valuation.hpp"

namespace rnacci {

namespace {

using Decimal50 = boost::multiprecision::cpp_dec_float_50;

constexpr double kDecisionMargin = 1e-6;
constexpr int kScanPatience = 64;

Decimal50 to_decimal(const mpq_class& q) {
  return Decimal50(q.get_num().get_str()) / Decimal50(q.get_den().get_str());
}

// Everything the m-bound predicate needs for one (k, d), evaluated once.
class MBoundPredicate {
 public:
  MBoundPredicate(const SequenceParams& params, int d) : k_(params.k()), d_(d) {
    if (d < 1) throw std::domain_error("d must be >= 1, got " + std::to_string(d));
    const PhiApprox phi = phi_root(params.order());
    log2_phi_ = std::log2(phi.lo.get_d());
    log2_phi_precise_ = boost::multiprecision::log(to_decimal(phi.lo)) / boost::multiprecision::log(Decimal50(2));
    nu_term_ = static_cast<int>(nu2(static_cast<std::uint64_t>(k_ - 1))) + 2;
  }

  double gap(std::int64_t m) const { return evaluate<double>(m, log2_phi_); }

  bool holds(std::int64_t m) const {
    const double g = gap(m);
    if (std::abs(g) >= kDecisionMargin) return g > 0;
    return evaluate<Decimal50>(m, log2_phi_precise_) > 0;
  }

 private:
  template <typename Real>
  Real evaluate(std::int64_t m, const Real& log2_phi) const {
    using std::log;
    using boost::multiprecision::log;
    const Real mr = Real(m);
    const Real ln2 = log(Real(2));
    const Real log2_m = log(mr) / ln2;
    const Real dr = Real(d_);
    const Real lhs = mr - log2_m - 1 - dr * Real(nu_term_);
    const Real inner = mr * (log2_m - 1) / (dr * log2_phi) + Real(2 * k_ - 1);
    const Real rhs = dr * (log(inner) / ln2);
    return Real(rhs - lhs);
  }

  int k_;
  int d_;
  int nu_term_;
  double log2_phi_;
  Decimal50 log2_phi_precise_;
};

}  // namespace

double PhiApprox::midpoint() const {
  mpq_class mid = (lo + hi) / 2;
  return mid.get_d();
}

mpq_class default_phi_tolerance() {
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, 25);
  return mpq_class(mpz_class(1), den);
}

mpq_class phi_polynomial(int r, const mpq_class& x) {
  // Horner on x^r - (x^{r-1} + ... + 1)
  mpq_class acc = 1;
  for (int i = 0; i < r; ++i) acc = acc * x - 1;
  return acc;
}

PhiApprox phi_root(int r, const mpq_class& tol) {
  if (r < 2) throw std::domain_error("phi_root needs r >= 2, got " + std::to_string(r));
  if (sgn(tol) <= 0) throw std::domain_error("phi_root needs a positive tolerance");

  mpz_class two_pow_r;
  mpz_ui_pow_ui(two_pow_r.get_mpz_t(), 2, static_cast<unsigned long>(r));
  PhiApprox out;
  out.r = r;
  out.lo = 2 - mpq_class(mpz_class(2), two_pow_r);
  out.lo.canonicalize();
  out.hi = 2;

  if (sgn(phi_polynomial(r, out.lo)) >= 0 || sgn(phi_polynomial(r, out.hi)) <= 0)
    throw std::logic_error("phi_root: initial bracket does not straddle the root");

  while (out.width() > tol) {
    mpq_class mid = (out.lo + out.hi) / 2;
    const int s = sgn(phi_polynomial(r, mid));
    // the polynomial is monic with constant term -1, so its only rational candidates are +-1
    if (s == 0) throw std::logic_error("phi_root: rational root encountered");
    (s < 0 ? out.lo : out.hi) = std::move(mid);
  }
  return out;
}

FinitenessConstants finiteness_constants(const SequenceParams& params) {
  const auto k = static_cast<std::uint64_t>(params.k());
  const auto nu_k = nu2(k - 1);
  FinitenessConstants c;
  const std::uint64_t power_part = std::uint64_t{1} << (2 * std::max(2u, nu_k));
  c.n0 = std::max<std::uint64_t>(2 * (2 * k + 1), power_part);
  c.k2 = 0.5 * std::log2(phi_root(params.order()).lo.get_d());
  return c;
}

double m_bound_gap(const SequenceParams& params, int d, std::int64_t m) {
  return MBoundPredicate(params, d).gap(m);
}

bool m_bound_holds(const SequenceParams& params, int d, std::int64_t m) {
  return MBoundPredicate(params, d).holds(m);
}

std::int64_t m_upper_bound(const SequenceParams& params, int d) {
  const MBoundPredicate predicate(params, d);
  std::int64_t best = -1;
  int failures = 0;
  for (std::int64_t m = 6; failures < kScanPatience; ++m) {
    if (predicate.holds(m)) {
      best = m;
      failures = 0;
    } else {
      ++failures;
    }
  }
  if (best < 0) throw std::domain_error("m_upper_bound: no m >= 6 satisfies the inequality");
  return best;
}

std::int64_t n_sum_upper_bound(const SequenceParams& params, int d, std::int64_t m) {
  const int k = params.k();
  if (m < 6) throw std::domain_error("n_sum_upper_bound needs m >= 6, got " + std::to_string(m));
  if (d < 1) throw std::domain_error("d must be >= 1");
  const double log2_phi = std::log2(phi_root(params.order()).lo.get_d());
  const double md = static_cast<double>(m);
  const auto main_part = static_cast<std::int64_t>(std::floor(md * (std::log2(md) - 1) / log2_phi));
  return main_part + static_cast<std::int64_t>(d) * (2 * k - 1);
}

std::vector<BoundRow> bounds_table(int k_lo, int k_hi, int d_lo, int d_hi, unsigned threads) {
  if (k_lo < 2) throw std::domain_error("bounds_table needs k >= 2");
  if (d_lo < 1) throw std::domain_error("bounds_table needs d >= 1");
  if (k_hi < k_lo || d_hi < d_lo) throw std::domain_error("bounds_table: empty range");

  const auto d_count = static_cast<std::size_t>(d_hi - d_lo + 1);
  const auto cells = static_cast<std::size_t>(k_hi - k_lo + 1) * d_count;
  std::vector<BoundRow> rows(cells);
  parallel_for_index(cells, threads, [&](std::size_t i) {
    const int k = k_lo + static_cast<int>(i / d_count);
    const int d = d_lo + static_cast<int>(i % d_count);
    const SequenceParams params = even_params(k);
    const std::int64_t m_max = m_upper_bound(params, d);
    rows[i] = {k, d, m_max, n_sum_upper_bound(params, d, m_max)};
  });
  return rows;
}

}  // namespace rnacci
