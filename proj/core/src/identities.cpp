#include "rnacci/identities.hpp"

#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "rnacci/parallel.hpp"
#include "rnacci/valuation.hpp"

namespace rnacci {

namespace {

BigInt binomial(unsigned long n, unsigned long k) {
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

BigInt pow2(unsigned long e) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), 2, e);
  return out;
}

BigInt mod_pow2(const BigInt& x, unsigned long bits) {
  BigInt out;
  mpz_fdiv_r_2exp(out.get_mpz_t(), x.get_mpz_t(), bits);
  return out;
}

std::vector<BigInt> mod_pow2(std::span<const BigInt> v, unsigned long bits) {
  std::vector<BigInt> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(mod_pow2(x, bits));
  return out;
}

std::string k_label(const SequenceParams& params) { return "k=" + std::to_string(params.k()); }

std::vector<BigInt> slice(const std::vector<BigInt>& all, Index start, std::size_t len) {
  const auto first = all.begin() + static_cast<std::ptrdiff_t>(start);
  return {first, first + static_cast<std::ptrdiff_t>(len)};
}

struct ReductionContext {
  std::size_t dim;
  BigInt det;
  Matrix adj;
  std::vector<BigInt> t;  // enough terms for every T_n, T_w, t_{n+w} requested

  ReductionContext(const SequenceParams& params, Index max_index)
      : dim(static_cast<std::size_t>(params.order())) {
    const HankelWindow b0 = hankel_window(params, 0);
    det = determinant(b0.entries);
    adj = adjugate(b0.entries);
    t = terms(params, static_cast<std::size_t>(2 * max_index) + dim);
  }

  std::optional<Counterexample> check(Index n, Index w) const {
    const auto tn = slice(t, n, dim);
    const auto tw = slice(t, w, dim);
    const BigInt lhs = det * t[n + w];
    const BigInt rhs = dot(tn, adj * std::span<const BigInt>(tw));
    if (lhs == rhs) return std::nullopt;
    return Counterexample{"n=" + std::to_string(n) + ", w=" + std::to_string(w),
                          lhs.get_str(), rhs.get_str()};
  }
};

std::vector<BigInt> whole_push_rhs(const SequenceParams& params, unsigned m,
                                   std::span<const BigInt> v_sum, std::span<const BigInt> v_last) {
  const int k = params.k();
  const unsigned long bits = 2 * static_cast<unsigned long>(k) + 1;
  const BigInt sign = (m % 2 == 1) ? 1 : -1;  // (-1)^{m+1}
  const BigInt coeff = sign * 4 * (k - 1);
  std::vector<BigInt> rhs(v_sum.size());
  for (std::size_t i = 0; i < rhs.size(); ++i)
    rhs[i] = mod_pow2(1 + coeff * v_sum[i] + sign * v_last[i], bits);
  return rhs;
}

VerificationReport whole_push_between(const SequenceParams& params, unsigned m_lo, unsigned m_hi,
                                      const std::string& range) {
  const int k = params.k();
  const std::string name = "block_push_congruence";
  const auto dim = static_cast<std::size_t>(2 * k);
  const unsigned long bits = 2 * static_cast<unsigned long>(k) + 1;
  const Index period = 2 * static_cast<Index>(k) + 1;
  const auto t = terms(params, static_cast<std::size_t>(m_hi * period) + dim);

  std::vector<BigInt> v_sum(dim, BigInt(0));  // sum_{i<m} v_i
  for (unsigned m = 1; m <= m_hi; ++m) {
    const auto v_last = binomial_vector(params, m - 1);
    for (std::size_t i = 0; i < dim; ++i) v_sum[i] += v_last[i];
    if (m < m_lo) continue;
    const auto expected = whole_push_rhs(params, m, v_sum, v_last);
    const auto actual = mod_pow2(slice(t, m * period, dim), bits);
    if (expected != actual)
      return VerificationReport::fail(name, range,
                                      {"m=" + std::to_string(m), to_string(expected), to_string(actual)});
  }
  return VerificationReport::pass(name, range);
}

}  // namespace

VerificationReport VerificationReport::pass(std::string check, std::string range) {
  return {std::move(check), std::move(range), true, std::nullopt};
}

VerificationReport VerificationReport::fail(std::string check, std::string range, Counterexample cx) {
  return {std::move(check), std::move(range), false, std::move(cx)};
}

BinomialSides binom_identity_a(unsigned m, unsigned w) {
  BinomialSides s{0, binomial(m + w + 1, m + 1)};
  for (unsigned i = 0; i <= w; ++i) s.lhs += binomial(m + i, m);
  return s;
}

BinomialSides binom_identity_b(unsigned m, unsigned w) {
  BinomialSides s;
  s.lhs = 0;
  for (unsigned i = 0; i <= w; ++i) s.lhs += binomial(m + i, m) * pow2(i);

  BigInt inner = 0;
  BigInt minus_two_pow = 1;  // (-2)^j
  for (unsigned j = 0; j <= m; ++j) {
    inner += binomial(m + w + 1, m - j) * minus_two_pow;
    minus_two_pow *= -2;
  }
  s.rhs = BigInt(m % 2 == 1 ? 1 : -1) + pow2(w + 1) * inner;
  return s;
}

std::vector<BigInt> ones_vector(const SequenceParams& params) {
  return std::vector<BigInt>(static_cast<std::size_t>(2 * params.k()), BigInt(1));
}

std::vector<BigInt> binomial_vector(const SequenceParams& params, unsigned m) {
  const auto len = static_cast<unsigned>(2 * params.k());
  std::vector<BigInt> v(len);
  for (unsigned i = 0; i < len; ++i) v[i] = binomial(m + i, m) * pow2(i);
  return v;
}

VerificationReport verify_det_odd(const HankelWindow& window) {
  const std::string name = "det_b0_odd";
  const std::string range = std::to_string(window.entries.rows()) + "x" +
                            std::to_string(window.entries.cols()) + " window at n=" +
                            std::to_string(window.base_index);
  const BigInt det = determinant(window.entries);
  if (mpz_odd_p(det.get_mpz_t())) return VerificationReport::pass(name, range);
  return VerificationReport::fail(name, range, {"det=" + det.get_str(), "odd", "even"});
}

VerificationReport verify_det_b0_odd(const SequenceParams& params) {
  auto report = verify_det_odd(hankel_window(params, 0));
  report.range = k_label(params);
  return report;
}

VerificationReport verify_reduction_formula(const SequenceParams& params, Index n, Index w) {
  require_even_order(params);
  if (n < 1 || w < 1) throw std::domain_error("reduction formula needs n, w >= 1");
  const std::string name = "reduction_formula";
  const std::string range = k_label(params) + ", n=" + std::to_string(n) + ", w=" + std::to_string(w);
  const ReductionContext ctx(params, std::max(n, w));
  if (auto cx = ctx.check(n, w)) return VerificationReport::fail(name, range, std::move(*cx));
  return VerificationReport::pass(name, range);
}

VerificationReport verify_reduction_formula_random(const SequenceParams& params, unsigned samples,
                                                   Index max_index, std::uint64_t seed) {
  require_even_order(params);
  if (max_index < 1) throw std::domain_error("reduction formula needs max_index >= 1");
  const std::string name = "reduction_formula";
  const std::string range = k_label(params) + ", " + std::to_string(samples) +
                            " random pairs 1<=n,w<=" + std::to_string(max_index);
  const ReductionContext ctx(params, max_index);
  std::mt19937_64 rng(seed + static_cast<std::uint64_t>(params.k()));
  std::uniform_int_distribution<Index> pick(1, max_index);
  for (unsigned i = 0; i < samples; ++i) {
    const Index n = pick(rng);
    const Index w = pick(rng);
    if (auto cx = ctx.check(n, w)) return VerificationReport::fail(name, range, std::move(*cx));
  }
  return VerificationReport::pass(name, range);
}

Matrix companion_power_closed_form(const SequenceParams& params) {
  const auto dim = static_cast<std::size_t>(2 * params.k());
  Matrix rank_one(dim, dim);
  Matrix lower(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const BigInt row_value = pow2(i);
    for (std::size_t j = 0; j < dim; ++j) {
      rank_one(i, j) = row_value;
      if (j <= i) lower(i, j) = pow2(i - j);
    }
  }
  return BigInt(2) * rank_one - lower;
}

VerificationReport verify_companion_power(const SequenceParams& params) {
  return verify_companion_power(params, companion_power_closed_form(params));
}

VerificationReport verify_companion_power(const SequenceParams& params, const Matrix& claimed) {
  const int k = params.k();
  const std::string name = "companion_power";
  const std::string range = k_label(params) + ", exponent " + std::to_string(2 * k + 1);
  const Matrix actual = power(companion(params).entries, static_cast<std::uint64_t>(2 * k + 1));
  if (claimed.rows() != actual.rows() || claimed.cols() != actual.cols())
    return VerificationReport::fail(name, range, {"shape", to_string(claimed), to_string(actual)});
  for (std::size_t i = 0; i < actual.rows(); ++i) {
    for (std::size_t j = 0; j < actual.cols(); ++j) {
      if (claimed(i, j) != actual(i, j)) {
        return VerificationReport::fail(
            name, range,
            {"entry (" + std::to_string(i) + "," + std::to_string(j) + ")", claimed(i, j).get_str(),
             actual(i, j).get_str()});
      }
    }
  }
  return VerificationReport::pass(name, range);
}

VerificationReport verify_whole_push(const SequenceParams& params, unsigned m) {
  if (m < 1) throw std::domain_error("block push congruence needs m >= 1");
  return whole_push_between(params, m, m, k_label(params) + ", m=" + std::to_string(m));
}

VerificationReport verify_whole_push_range(const SequenceParams& params, unsigned m_max) {
  if (m_max < 1) throw std::domain_error("block push congruence needs m_max >= 1");
  return whole_push_between(params, 1, m_max, k_label(params) + ", 1<=m<=" + std::to_string(m_max));
}

CongruenceWitness congruence_witness(const SequenceParams& params) {
  const auto k = static_cast<std::uint64_t>(params.k());
  const unsigned nu_k = nu2(k - 1);
  CongruenceWitness witness;
  witness.l0 = nu_k + 2;
  const unsigned width = witness.l0 + nu_k + 3;
  const Index n = (Index{1} << witness.l0) * (2 * k + 1);
  const auto tn = state_vector_mod_pow2(params, n, width);
  const auto t0 = state_vector_mod_pow2(params, 0, width);
  for (std::size_t i = 0; i < tn.size(); ++i) {
    const BigInt diff = mod_pow2(tn[i] - t0[i], width);
    if (!mpz_divisible_2exp_p(diff.get_mpz_t(), witness.l0 + 1))
      throw std::runtime_error("congruence witness: difference not divisible by 2^(l0+1)");
    BigInt a;
    mpz_fdiv_q_2exp(a.get_mpz_t(), diff.get_mpz_t(), witness.l0 + 1);
    witness.a.push_back(mod_pow2(a, nu_k + 2));
  }
  return witness;
}

VerificationReport verify_congruence_tower(const SequenceParams& params, unsigned l_max,
                                           unsigned s_max, unsigned extra_bits) {
  const auto k = static_cast<std::uint64_t>(params.k());
  const unsigned nu_k = nu2(k - 1);
  const unsigned l0 = nu_k + 2;
  if (l_max < l0)
    throw std::domain_error("congruence tower needs l_max >= l0 = " + std::to_string(l0));
  if (s_max < 1) throw std::domain_error("congruence tower needs s_max >= 1");

  const std::string name = "congruence_tower";
  const std::string range = k_label(params) + ", 0<=l<=" + std::to_string(l_max) +
                            ", odd s<=" + std::to_string(s_max);
  const Index period = 2 * k + 1;

  for (unsigned l = 0; l <= l_max; ++l) {
    const unsigned width = l + 1 + extra_bits;
    const auto lhs = state_vector_mod_pow2(params, (Index{1} << l) * period, width);
    const auto rhs = state_vector_mod_pow2(params, 0, width);
    if (lhs != rhs)
      return VerificationReport::fail(
          name, range, {"l=" + std::to_string(l) + " modulus 2^" + std::to_string(width),
                        to_string(rhs), to_string(lhs)});
  }

  CongruenceWitness witness;
  try {
    witness = congruence_witness(params);
  } catch (const std::runtime_error& e) {
    return VerificationReport::fail(name, range, {"witness at l0=" + std::to_string(l0), "divisible", e.what()});
  }

  for (unsigned l = l0; l <= l_max; ++l) {
    const unsigned width = l + nu_k + 3;
    const auto t0 = state_vector_mod_pow2(params, 0, width);
    for (unsigned s = 1; s <= s_max; s += 2) {
      const auto actual = state_vector_mod_pow2(params, s * (Index{1} << l) * period, width);
      std::vector<BigInt> expected(actual.size());
      for (std::size_t i = 0; i < expected.size(); ++i)
        expected[i] = mod_pow2(BigInt(s) * pow2(l + 1) * witness.a[i] + t0[i], width);
      if (expected != actual)
        return VerificationReport::fail(
            name, range,
            {"l=" + std::to_string(l) + ", s=" + std::to_string(s), to_string(expected), to_string(actual)});
    }
  }
  return VerificationReport::pass(name, range);
}

VerificationReport verify_super_formula(const SequenceParams& params, unsigned m_max) {
  const auto k = static_cast<std::uint64_t>(params.k());
  if (m_max < 1) throw std::domain_error("first-entry congruence needs m_max >= 1");
  const std::string name = "first_entry_congruence";
  const std::string range = k_label(params) + ", 1<=m<=" + std::to_string(m_max);
  const unsigned long bits = 2 * nu2(k - 1) + 5;
  const Index period = 2 * k + 1;
  const auto t = terms(params, static_cast<std::size_t>(m_max * period) + 1);
  for (unsigned m = 1; m <= m_max; ++m) {
    const BigInt sign = (m % 2 == 1) ? 1 : -1;
    const BigInt expected = mod_pow2(1 + sign * 4 * BigInt(static_cast<unsigned long>(m * (k - 1))) + sign, bits);
    const BigInt actual = mod_pow2(t[m * period], bits);
    if (expected != actual)
      return VerificationReport::fail(name, range,
                                      {"m=" + std::to_string(m), expected.get_str(), actual.get_str()});
  }
  return VerificationReport::pass(name, range);
}

std::vector<VerificationReport> run_suite(std::span<const int> ks, const SuiteLimits& limits,
                                          SuiteSelection selection, unsigned threads) {
  if (ks.empty()) throw std::domain_error("run_suite: empty k range");
  for (int k : ks)
    if (k < 2) throw std::domain_error("run_suite: every k must be >= 2, got " + std::to_string(k));

  const auto selected = [&](SuiteSelection s) {
    return selection == SuiteSelection::all || selection == s;
  };

  std::vector<std::function<VerificationReport()>> tasks;
  if (selected(SuiteSelection::binomial)) {
    const unsigned top = limits.binomial_max;
    const std::string range = "0<=m,w<=" + std::to_string(top);
    tasks.emplace_back([top, range] {
      for (unsigned m = 0; m <= top; ++m)
        for (unsigned w = 0; w <= top; ++w)
          if (auto s = binom_identity_a(m, w); s.lhs != s.rhs)
            return VerificationReport::fail("binomial_sum", range,
                                            {"m=" + std::to_string(m) + ", w=" + std::to_string(w),
                                             s.rhs.get_str(), s.lhs.get_str()});
      return VerificationReport::pass("binomial_sum", range);
    });
    tasks.emplace_back([top, range] {
      for (unsigned m = 0; m <= top; ++m)
        for (unsigned w = 0; w <= top; ++w)
          if (auto s = binom_identity_b(m, w); s.lhs != s.rhs)
            return VerificationReport::fail("binomial_weighted_sum", range,
                                            {"m=" + std::to_string(m) + ", w=" + std::to_string(w),
                                             s.rhs.get_str(), s.lhs.get_str()});
      return VerificationReport::pass("binomial_weighted_sum", range);
    });
  }

  for (int k : ks) {
    const SequenceParams params = even_params(k);
    if (selected(SuiteSelection::determinant_and_reduction)) {
      tasks.emplace_back([params] { return verify_det_b0_odd(params); });
      tasks.emplace_back([params, limits] {
        return verify_reduction_formula_random(params, limits.reduction_samples,
                                               limits.reduction_max_index, limits.seed);
      });
    }
    if (selected(SuiteSelection::congruence_tower)) {
      const unsigned l0 = nu2(static_cast<std::uint64_t>(k - 1)) + 2;
      tasks.emplace_back([params, limits, l0] {
        return verify_congruence_tower(params, std::max(limits.tower_l_max, l0), limits.tower_s_max);
      });
    }
    if (selected(SuiteSelection::companion_power))
      tasks.emplace_back([params] { return verify_companion_power(params); });
    if (selected(SuiteSelection::block_push))
      tasks.emplace_back([params, limits] { return verify_whole_push_range(params, limits.whole_push_m_max); });
    if (selected(SuiteSelection::first_entry))
      tasks.emplace_back([params, limits] { return verify_super_formula(params, limits.super_m_max); });
  }

  std::vector<VerificationReport> reports(tasks.size());
  parallel_for_index(tasks.size(), threads, [&](std::size_t i) { reports[i] = tasks[i](); });
  return reports;
}

bool all_passed(std::span<const VerificationReport> reports) {
  for (const auto& r : reports)
    if (!r.passed) return false;
  return true;
}

}  // namespace rnacci
