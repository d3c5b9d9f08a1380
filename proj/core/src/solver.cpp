#include "rnacci/solver.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "rnacci/bounds.hpp"
#include "rnacci/parallel.hpp"

namespace rnacci {

namespace {

BigInt factorial(std::int64_t m) {
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(m));
  return out;
}

// true iff base^exponent > bound, without forming huge powers
bool power_exceeds(const BigInt& base, int exponent, const BigInt& bound) {
  BigInt acc = 1;
  for (int i = 0; i < exponent; ++i) {
    acc *= base;
    if (acc > bound) return true;
  }
  return false;
}

struct Candidate {
  Index n;
  BigInt value;
};

class FactorizationSearch {
 public:
  FactorizationSearch(std::vector<Candidate> candidates, std::uint64_t n_sum_cap)
      : candidates_(std::move(candidates)), n_sum_cap_(n_sum_cap) {}

  void run(std::int64_t m, int d, std::vector<Solution>& out) {
    m_ = m;
    out_ = &out;
    chosen_.clear();
    descend(factorial(m), d, 0, 0);
  }

 private:
  void descend(const BigInt& quotient, int remaining, std::size_t first, std::uint64_t index_sum) {
    if (remaining == 0) {
      if (quotient == 1) out_->push_back({m_, chosen_});
      return;
    }
    BigInt next;
    for (std::size_t c = first; c < candidates_.size(); ++c) {
      const Candidate& cand = candidates_[c];
      // every later index is >= cand.n, and candidate values increase with n
      if (index_sum + static_cast<std::uint64_t>(remaining) * cand.n > n_sum_cap_) break;
      if (power_exceeds(cand.value, remaining, quotient)) break;
      if (!mpz_divisible_p(quotient.get_mpz_t(), cand.value.get_mpz_t())) continue;
      mpz_divexact(next.get_mpz_t(), quotient.get_mpz_t(), cand.value.get_mpz_t());
      chosen_.push_back(cand.n);
      descend(next, remaining - 1, c, index_sum + cand.n);
      chosen_.pop_back();
    }
  }

  std::vector<Candidate> candidates_;
  std::uint64_t n_sum_cap_;
  std::int64_t m_ = 0;
  std::vector<Index> chosen_;
  std::vector<Solution>* out_ = nullptr;
};

}  // namespace

std::optional<std::int64_t> is_factorial(const BigInt& x) {
  if (x < 1) throw std::domain_error("is_factorial needs x >= 1");
  if (x == 1) return 1;
  BigInt q = x;
  for (unsigned long i = 2;; ++i) {
    if (!mpz_divisible_ui_p(q.get_mpz_t(), i)) return std::nullopt;
    mpz_divexact_ui(q.get_mpz_t(), q.get_mpz_t(), i);
    if (q == 1) return static_cast<std::int64_t>(i);
  }
}

SearchConfig default_search_config(const SequenceParams& params, int d) {
  const std::int64_t m_cap = m_upper_bound(params, d);
  const auto n_sum_cap = static_cast<std::uint64_t>(n_sum_upper_bound(params, d, m_cap));
  return {m_cap, n_sum_cap, d, 0};
}

std::vector<Solution> solve(const SequenceParams& params, const SearchConfig& config) {
  require_even_order(params);
  if (config.d < 1) throw std::domain_error("solve needs d >= 1");
  std::vector<Solution> out;
  if (config.m_cap < 2) return out;

  const auto r = static_cast<Index>(params.order());
  const auto d = static_cast<std::uint64_t>(config.d);
  if (config.n_sum_cap < d * r) return out;
  Index index_cap = config.index_cap != 0 ? config.index_cap : config.n_sum_cap;
  index_cap = std::min<Index>(index_cap, config.n_sum_cap - (d - 1) * r);

  const BigInt cap_factorial = factorial(config.m_cap);
  const auto t = terms(params, static_cast<std::size_t>(index_cap) + 1);
  std::vector<Candidate> candidates;
  for (Index n = r; n <= index_cap; ++n) {
    if (t[n] > cap_factorial) break;  // increasing from n = r on
    if (mpz_divisible_p(cap_factorial.get_mpz_t(), t[n].get_mpz_t())) candidates.push_back({n, t[n]});
  }

  FactorizationSearch search(std::move(candidates), config.n_sum_cap);
  for (std::int64_t m = 2; m <= config.m_cap; ++m) search.run(m, config.d, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Solution> solve(const SequenceParams& params, int d) {
  require_even_order(params);
  return solve(params, default_search_config(params, d));
}

std::vector<GridCell> solve_grid(int k_lo, int k_hi, int d_lo, int d_hi, unsigned threads) {
  if (k_lo < 2) throw std::domain_error("solve_grid needs k >= 2");
  if (d_lo < 1) throw std::domain_error("solve_grid needs d >= 1");
  if (k_hi < k_lo || d_hi < d_lo) throw std::domain_error("solve_grid: empty range");

  const auto d_count = static_cast<std::size_t>(d_hi - d_lo + 1);
  const auto cells = static_cast<std::size_t>(k_hi - k_lo + 1) * d_count;
  std::vector<GridCell> grid(cells);
  parallel_for_index(cells, threads, [&](std::size_t i) {
    const int k = k_lo + static_cast<int>(i / d_count);
    const int d = d_lo + static_cast<int>(i % d_count);
    grid[i] = {k, d, solve(even_params(k), d)};
  });
  return grid;
}

std::vector<Solution> brute_force_solve(const SequenceParams& params, int d, Index n_cap,
                                        std::int64_t m_cap) {
  require_even_order(params);
  if (d < 1) throw std::domain_error("brute_force_solve needs d >= 1");
  const auto r = static_cast<Index>(params.order());
  std::vector<Solution> out;
  if (n_cap < r || m_cap < 2) return out;

  std::vector<BigInt> factorials;  // factorials[i] = (i + 2)!
  for (std::int64_t m = 2; m <= m_cap; ++m) factorials.push_back(factorial(m));
  const auto t = terms(params, static_cast<std::size_t>(n_cap) + 1);

  std::vector<Index> idx(static_cast<std::size_t>(d), r);
  for (;;) {
    BigInt product = 1;
    for (Index n : idx) product *= t[n];
    for (std::size_t i = 0; i < factorials.size(); ++i)
      if (factorials[i] == product) out.push_back({static_cast<std::int64_t>(i) + 2, idx});

    // next nondecreasing tuple
    std::size_t pos = idx.size();
    while (pos > 0 && idx[pos - 1] == n_cap) --pos;
    if (pos == 0) break;
    const Index bumped = idx[pos - 1] + 1;
    for (std::size_t j = pos - 1; j < idx.size(); ++j) idx[j] = bumped;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace rnacci
