#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "rnacci/bounds.hpp"
#include "rnacci/valuation.hpp"

using namespace rnacci;

namespace {

// Newton iteration in long double, independent of the bisection.
long double newton_phi(int r) {
  long double x = 2.0L;
  for (int it = 0; it < 200; ++it) {
    long double p = 1, dp = 0;  // Horner for x^r - x^{r-1} - ... - 1 and its derivative
    for (int i = 0; i < r; ++i) {
      dp = dp * x + p;
      p = p * x - 1;
    }
    x -= p / dp;
  }
  return x;
}

mpq_class tol(double x) { return mpq_class(x); }

}  // namespace

TEST_CASE("phi_root examples") {
  const auto p4 = phi_root(4, tol(1e-6));
  CHECK(p4.width() <= tol(1e-6));
  CHECK(p4.midpoint() == doctest::Approx(1.927562).epsilon(1e-6));
  CHECK(phi_root(2, tol(1e-6)).midpoint() == doctest::Approx(1.618034).epsilon(1e-6));
  CHECK(phi_root(6, tol(1e-6)).midpoint() == doctest::Approx(1.983583).epsilon(1e-6));
  CHECK_THROWS_AS(phi_root(4, mpq_class(0)), std::domain_error);
  CHECK_THROWS_AS(phi_root(4, mpq_class(-1)), std::domain_error);
  CHECK_THROWS_AS(phi_root(1, tol(1e-6)), std::domain_error);
}

TEST_CASE("phi brackets straddle the root and sit inside (2(1-2^-r), 2)") {
  for (int r = 2; r <= 12; ++r) {
    const auto phi = phi_root(r);
    CHECK(phi.width() <= default_phi_tolerance());
    CHECK(sgn(phi_polynomial(r, phi.lo)) < 0);
    CHECK(sgn(phi_polynomial(r, phi.hi)) > 0);
    mpz_class two_r;
    mpz_ui_pow_ui(two_r.get_mpz_t(), 2, static_cast<unsigned long>(r));
    const mpq_class floor_bound = 2 - mpq_class(mpz_class(2), two_r);
    CHECK(phi.lo > floor_bound);
    CHECK(phi.hi < 2);
    const long double newton = newton_phi(r);
    CHECK(static_cast<long double>(phi.lo.get_d()) <= newton + 1e-15L);
    CHECK(static_cast<long double>(phi.hi.get_d()) >= newton - 1e-15L);
  }
}

TEST_CASE("finiteness constants") {
  CHECK(finiteness_constants(even_params(2)).n0 == 16);
  CHECK(finiteness_constants(even_params(3)).n0 == 16);
  CHECK(finiteness_constants(even_params(9)).n0 == 64);
  CHECK(finiteness_constants(even_params(8)).n0 == 34);
  const auto c = finiteness_constants(even_params(2));
  CHECK(c.exponent == mpq_class(1, 2));
  CHECK(c.k1 == 1);
  CHECK(c.k2 > 0);
  CHECK(c.k2 == doctest::Approx(0.5 * std::log2(1.9275619754829254)));
  CHECK_THROWS_AS(finiteness_constants(make_params(5)), std::domain_error);
}

TEST_CASE("beyond n0: nu2 below log2 n + nu2(k-1) + 2, and linear growth") {
  for (int k = 2; k <= 5; ++k) {
    const auto p = even_params(k);
    const auto c = finiteness_constants(p);
    const auto t = oracle::rnacci(2 * k, 3000);
    for (std::size_t n = c.n0; n < t.size(); ++n) {
      const double v = static_cast<double>(nu2_closed_form(p, n).value());
      REQUIRE(v <= std::log2(static_cast<double>(n)) + nu2(static_cast<std::uint64_t>(k - 1)) + 2);
      REQUIRE(static_cast<double>(mpz_sizeinbase(t[n].get_mpz_t(), 2)) >= c.k2 * static_cast<double>(n));
    }
  }
}

TEST_CASE("the sqrt(n) valuation envelope does not yet hold at n0") {
  // k = 5: n0 = 22 and nu2(t_22) = 5 > sqrt(22); the envelope only matters asymptotically
  const auto p = even_params(5);
  CHECK(finiteness_constants(p).n0 == 22);
  CHECK(nu2_closed_form(p, 22) == Valuation::finite(5));
}

TEST_CASE("m_upper_bound examples") {
  CHECK(m_upper_bound(even_params(2), 1) == 11);
  CHECK(m_upper_bound(even_params(3), 1) == 13);
  CHECK(m_upper_bound(even_params(5), 10) == 109);
  CHECK_THROWS_AS(m_upper_bound(even_params(2), 0), std::domain_error);
  CHECK_THROWS_AS(m_upper_bound(make_params(7), 1), std::domain_error);
}

TEST_CASE("n_sum_upper_bound examples") {
  CHECK(n_sum_upper_bound(even_params(2), 1, 11) == 31);
  CHECK(n_sum_upper_bound(even_params(2), 2, 19) == 71);
  CHECK(n_sum_upper_bound(even_params(3), 1, 13) == 40);
  CHECK_THROWS_AS(n_sum_upper_bound(even_params(2), 1, 5), std::domain_error);
}

TEST_CASE("bounds_table small cases") {
  const auto one = bounds_table(2, 2, 1, 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == BoundRow{2, 1, 11, 31});
  const auto cell = bounds_table(4, 4, 3, 3);
  REQUIRE(cell.size() == 1);
  CHECK(cell[0].m_max == 28);
  CHECK_THROWS_AS(bounds_table(3, 2, 1, 1), std::domain_error);
  CHECK_THROWS_AS(bounds_table(2, 3, 2, 1), std::domain_error);
  CHECK_THROWS_AS(bounds_table(1, 3, 1, 1), std::domain_error);
}

TEST_CASE("bound rows are monotone in d and respect their invariants") {
  const auto rows = bounds_table(2, 6, 1, 10, 3);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    CHECK(row.m_max >= 6);
    CHECK(row.n_sum_max >= row.d * (2 * row.k - 1));
    if (i > 0 && rows[i - 1].k == row.k) CHECK(rows[i - 1].m_max <= row.m_max);
  }
}

TEST_CASE("the scan stops for good: no m in (m_max, m_max + 1000] qualifies") {
  for (int k = 2; k <= 5; ++k) {
    const auto p = even_params(k);
    for (int d = 1; d <= 10; ++d) {
      const auto m_max = m_upper_bound(p, d);
      CHECK(m_bound_holds(p, d, m_max));
      for (std::int64_t m = m_max + 1; m <= m_max + 1000; ++m) REQUIRE_FALSE(m_bound_holds(p, d, m));
    }
  }
}

TEST_CASE("table boundaries are decided outside the double-precision margin") {
  for (int k = 2; k <= 5; ++k) {
    const auto p = even_params(k);
    for (int d = 1; d <= 10; ++d) {
      const auto m_max = m_upper_bound(p, d);
      CHECK(std::abs(m_bound_gap(p, d, m_max)) > 1e-6);
      CHECK(std::abs(m_bound_gap(p, d, m_max + 1)) > 1e-6);
    }
  }
}

TEST_CASE("growth bound log t_n >= (n - r - 1) log phi_lo") {
  for (int r : {4, 6, 8, 10}) {
    const double log_phi = std::log(phi_root(r).lo.get_d());
    const auto t = oracle::rnacci(r, 5001);
    for (std::size_t n = 1; n <= 5000; ++n) {
      long exp2 = 0;
      const double mant = mpz_get_d_2exp(&exp2, t[n].get_mpz_t());
      const double log_t = std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
      REQUIRE(log_t >= (static_cast<double>(n) - r - 1) * log_phi);
    }
  }
}

TEST_CASE("m! < (m/2)^m from m = 6, and not at m = 5") {
  mpz_class fact = 120;
  CHECK(fact * 32 > mpz_class(5 * 5 * 5 * 5 * 5));  // 5! vs (5/2)^5, scaled by 2^5
  for (unsigned long m = 6; m <= 10000; ++m) {
    fact *= m;
    mpz_class lhs = fact << m;  // m! * 2^m
    mpz_class rhs;
    mpz_ui_pow_ui(rhs.get_mpz_t(), m, m);
    REQUIRE(lhs < rhs);
  }
}
