#include "rnacci/sequence.hpp"

#include <stdexcept>
#include <string>

namespace rnacci {

namespace {

// Residue arithmetic modulo 2^w. Both rings expose the same three operations
// so the companion-power loop below is written once.

struct Word64Ring {
  using Value = std::uint64_t;
  unsigned width;

  Value zero() const { return 0; }
  Value one() const { return 1; }
  // Wrapping uint64 arithmetic is exact mod 2^64; the final mask gives mod 2^w.
  void add_mul(Value& acc, const Value& x, const Value& y) const { acc += x * y; }
  BigInt to_big(Value v) const {
    if (width < 64) v &= (std::uint64_t{1} << width) - 1;
    BigInt out;
    mpz_import(out.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
    return out;
  }
};

struct BigRing {
  using Value = BigInt;
  unsigned width;

  Value zero() const { return 0; }
  Value one() const { return 1; }
  void add_mul(Value& acc, const Value& x, const Value& y) const {
    mpz_addmul(acc.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    mpz_fdiv_r_2exp(acc.get_mpz_t(), acc.get_mpz_t(), width);
  }
  BigInt to_big(const Value& v) const { return v; }
};

template <typename Ring>
std::vector<BigInt> state_vector_residues(const Ring& ring, int r, Index n) {
  using Value = typename Ring::Value;
  const auto dim = static_cast<std::size_t>(r);

  std::vector<Value> state(dim, ring.one());
  state[0] = ring.zero();

  // companion matrix: superdiagonal of ones, bottom row of ones
  std::vector<Value> base(dim * dim, ring.zero());
  for (std::size_t i = 0; i + 1 < dim; ++i) base[i * dim + i + 1] = ring.one();
  for (std::size_t j = 0; j < dim; ++j) base[(dim - 1) * dim + j] = ring.one();

  std::vector<Value> scratch_vec(dim);
  std::vector<Value> scratch_mat(dim * dim);
  while (n != 0) {
    if (n & 1u) {
      for (std::size_t i = 0; i < dim; ++i) {
        Value acc = ring.zero();
        for (std::size_t j = 0; j < dim; ++j) ring.add_mul(acc, base[i * dim + j], state[j]);
        scratch_vec[i] = std::move(acc);
      }
      state.swap(scratch_vec);
    }
    n >>= 1;
    if (n == 0) break;
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        Value acc = ring.zero();
        for (std::size_t l = 0; l < dim; ++l) ring.add_mul(acc, base[i * dim + l], base[l * dim + j]);
        scratch_mat[i * dim + j] = std::move(acc);
      }
    }
    base.swap(scratch_mat);
  }

  std::vector<BigInt> out;
  out.reserve(dim);
  for (const auto& v : state) out.push_back(ring.to_big(v));
  return out;
}

void check_width(unsigned width) {
  if (width < 1 || width > kMaxResidueWidth)
    throw std::domain_error("residue width must lie in [1, " + std::to_string(kMaxResidueWidth) +
                            "], got " + std::to_string(width));
}

}  // namespace

int SequenceParams::k() const {
  require_even_order(*this);
  return r_ / 2;
}

SequenceParams make_params(int r) {
  if (r < 2) throw std::domain_error("recurrence order must be at least 2, got " + std::to_string(r));
  return SequenceParams(r);
}

SequenceParams even_params(int k) {
  if (k < 2) throw std::domain_error("even-order operations need k >= 2, got k = " + std::to_string(k));
  return make_params(2 * k);
}

void require_even_order(const SequenceParams& params) {
  const int r = params.order();
  if (r % 2 != 0 || r < 4)
    throw std::domain_error("operation requires even order r = 2k with k >= 2, got r = " +
                            std::to_string(r));
}

std::vector<BigInt> terms(const SequenceParams& params, std::size_t count) {
  const auto r = static_cast<std::size_t>(params.order());
  std::vector<BigInt> out;
  out.reserve(count);
  BigInt window_sum = 0;  // t_{n-1} + ... + t_{n-r}
  for (std::size_t n = 0; n < count; ++n) {
    BigInt t;
    if (n == 0) t = 0;
    else if (n < r) t = 1;
    else t = window_sum;
    window_sum += t;
    if (n + 1 > r) window_sum -= out[n - r];
    out.push_back(std::move(t));
  }
  return out;
}

BigInt term(const SequenceParams& params, Index n) {
  const auto r = static_cast<Index>(params.order());
  if (n == 0) return 0;
  if (n < r) return 1;
  // ring buffer of the last r terms plus their running sum
  std::vector<BigInt> window(r, BigInt(1));
  window[0] = 0;
  BigInt sum = static_cast<unsigned long>(r - 1);
  for (Index i = r; i <= n; ++i) {
    BigInt& oldest = window[i % r];
    BigInt next = sum;
    sum -= oldest;
    sum += next;
    oldest = std::move(next);
  }
  return window[n % r];
}

std::vector<BigInt> state_vector_mod_pow2(const SequenceParams& params, Index n, unsigned width) {
  check_width(width);
  if (width <= 64) return state_vector_residues(Word64Ring{width}, params.order(), n);
  return state_vector_residues(BigRing{width}, params.order(), n);
}

BigInt term_mod_pow2(const SequenceParams& params, Index n, unsigned width) {
  return state_vector_mod_pow2(params, n, width).front();
}

StateVector state_vector(const SequenceParams& params, Index n) {
  require_even_order(params);
  const auto len = static_cast<std::size_t>(params.order());
  std::vector<BigInt> all = terms(params, static_cast<std::size_t>(n) + len);
  return {n, std::vector<BigInt>(all.begin() + static_cast<std::ptrdiff_t>(n), all.end())};
}

HankelWindow hankel_window(const SequenceParams& params, Index n) {
  require_even_order(params);
  const auto dim = static_cast<std::size_t>(params.order());
  std::vector<BigInt> all = terms(params, static_cast<std::size_t>(n) + 2 * dim - 1);
  HankelWindow window{n, Matrix(dim, dim)};
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) window.entries(i, j) = all[static_cast<std::size_t>(n) + i + j];
  return window;
}

CompanionMatrix companion(const SequenceParams& params) {
  require_even_order(params);
  const auto dim = static_cast<std::size_t>(params.order());
  Matrix c(dim, dim);
  for (std::size_t i = 0; i + 1 < dim; ++i) c(i, i + 1) = 1;
  for (std::size_t j = 0; j < dim; ++j) c(dim - 1, j) = 1;
  return {std::move(c)};
}

}  // namespace rnacci
