#include "cwpos/schur_calculus.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include <boost/multiprecision/cpp_int.hpp>

#include "cwpos/determinant.hpp"
#include "cwpos/errors.hpp"

namespace cwpos {

using BigRational = boost::multiprecision::cpp_rational;

bool is_partition(const IntSequence& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] < 0 || (i > 0 && s[i] > s[i - 1])) return false;
  }
  return true;
}

int weight(const IntSequence& s) { return std::accumulate(s.begin(), s.end(), 0); }

IntSequence trim_zeros(IntSequence s) {
  while (!s.empty() && s.back() == 0) s.pop_back();
  return s;
}

namespace {

void require_partition(const IntSequence& s) {
  if (!is_partition(s)) throw InvalidArgument("not a partition (must be weakly decreasing and nonnegative)");
}

void fill_partitions(int remaining, int max_part, int slots, IntSequence& prefix, std::vector<IntSequence>& out) {
  if (slots == 0) {
    if (remaining == 0) out.push_back(prefix);
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 0; --part) {
    // the remaining slots can absorb at most part * (slots - 1)
    if (remaining - part > part * (slots - 1)) break;
    prefix.push_back(part);
    fill_partitions(remaining - part, part, slots - 1, prefix, out);
    prefix.pop_back();
  }
}

SymPoly sign_times(int sign, SymPoly p) { return sign < 0 ? -p : p; }

template <class EntryFn>
SymPoly jacobi_trudi(Alphabet alphabet, const IntSequence& sigma, EntryFn entry) {
  const int k = static_cast<int>(sigma.size());
  if (k == 0) return SymPoly::constant(alphabet, 1);
  SparseMatrix<SymPoly> m(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) m[static_cast<std::size_t>(i)].push_back(entry(sigma[static_cast<std::size_t>(i)] + j - i));
  auto d = determinant(m, [](const SymPoly& a, const SymPoly& b) { return a * b; });
  return d ? *d : SymPoly(alphabet);
}

}  // namespace

std::vector<IntSequence> enumerate_partitions(int k, int r) {
  if (k < 0 || r < 0) throw InvalidArgument("enumerate_partitions needs k, r >= 0");
  std::vector<IntSequence> out;
  IntSequence prefix;
  fill_partitions(k, r, k, prefix, out);
  return out;
}

IntSequence conjugate_partition(const IntSequence& sigma) {
  require_partition(sigma);
  const int top = sigma.empty() ? 0 : sigma.front();
  IntSequence out;
  for (int j = 1; j <= top; ++j) {
    out.push_back(static_cast<int>(std::count_if(sigma.begin(), sigma.end(), [j](int x) { return x >= j; })));
  }
  return out;
}

// ---------------------------------------------------------------------------

FlagType::FlagType(std::vector<int> rho) : rho_(std::move(rho)) {
  if (rho_.size() < 2 || rho_.front() != 0) throw InvalidArgument("flag type must start at 0 and have m >= 1");
  for (std::size_t i = 1; i < rho_.size(); ++i) {
    if (rho_[i] <= rho_[i - 1]) throw InvalidArgument("flag type must be strictly increasing");
  }
}

FlagType FlagType::complete(int r) {
  if (r < 1) throw InvalidArgument("rank must be positive");
  std::vector<int> rho(static_cast<std::size_t>(r) + 1);
  std::iota(rho.begin(), rho.end(), 0);
  return FlagType(std::move(rho));
}

int FlagType::relative_dimension() const {
  const int r = rank();
  int squares = 0;
  for (std::size_t i = 1; i < rho_.size(); ++i) squares += (rho_[i] - rho_[i - 1]) * (rho_[i] - rho_[i - 1]);
  return (r * r - squares) / 2;
}

std::vector<std::vector<int>> FlagType::root_blocks() const {
  const int m = length();
  const int r = rank();
  std::vector<std::vector<int>> blocks;
  for (int j = 1; j <= m; ++j) {
    const int lo = r - rho_[static_cast<std::size_t>(m - j + 1)];
    const int hi = r - rho_[static_cast<std::size_t>(m - j)];
    std::vector<int> block;
    for (int i = lo + 1; i <= hi; ++i) block.push_back(i);
    blocks.push_back(std::move(block));
  }
  return blocks;
}

// ---------------------------------------------------------------------------

SymPoly schur_in_chern(const IntSequence& sigma, int r) {
  require_partition(sigma);
  if (r < 0) throw InvalidArgument("negative rank");
  return jacobi_trudi(Alphabet::Chern, sigma, [r](int l) -> std::optional<SymPoly> {
    if (l < 0 || l > r) return std::nullopt;
    if (l == 0) return SymPoly::constant(Alphabet::Chern, 1);
    return SymPoly::variable(Alphabet::Chern, l);
  });
}

SymPoly gschur_in_segre(const IntSequence& sigma, std::optional<int> n_max) {
  return jacobi_trudi(Alphabet::Segre, sigma, [n_max](int l) -> std::optional<SymPoly> {
    if (l < 0 || (n_max && l > *n_max)) return std::nullopt;
    if (l == 0) return SymPoly::constant(Alphabet::Segre, 1);
    return SymPoly::variable(Alphabet::Segre, l);
  });
}

namespace {

std::vector<SymPoly> segre_table(int k_max, int r) {
  std::vector<SymPoly> s{SymPoly::constant(Alphabet::Chern, 1)};
  for (int k = 1; k <= k_max; ++k) {
    SymPoly next(Alphabet::Chern);
    for (int j = 1; j <= std::min(k, r); ++j) next -= SymPoly::variable(Alphabet::Chern, j) * s[static_cast<std::size_t>(k - j)];
    s.push_back(std::move(next));
  }
  return s;
}

}  // namespace

SymPoly segre_in_chern(int k, int r) {
  if (k < 0 || r < 0) throw InvalidArgument("segre_in_chern needs k, r >= 0");
  return segre_table(k, r).back();
}

SymPoly segre_to_chern(const SymPoly& q, int r) {
  if (q.alphabet() != Alphabet::Segre) throw InvalidArgument("segre_to_chern expects Segre variables");
  const auto table = segre_table(q.variable_count(), r);
  return q.substitute(Alphabet::Chern, [&](int i) { return table[static_cast<std::size_t>(i)]; });
}

bool jacobi_trudi_check(const IntSequence& sigma, int r) {
  require_partition(sigma);
  const SymPoly lhs = segre_to_chern(gschur_in_segre(sigma), r);
  const int sign = weight(sigma) % 2 == 0 ? 1 : -1;
  return lhs == sign_times(sign, schur_in_chern(conjugate_partition(sigma), r));
}

// ---------------------------------------------------------------------------

IntSequence dp_nu(const FlagType& rho) {
  const int r = rho.rank();
  const auto& p = rho.rho();
  IntSequence nu(static_cast<std::size_t>(r), 0);
  for (int s = 1; s <= rho.length(); ++s) {
    for (int i = r - p[static_cast<std::size_t>(s)] + 1; i <= r - p[static_cast<std::size_t>(s - 1)]; ++i) {
      nu[static_cast<std::size_t>(i - 1)] = r - p[static_cast<std::size_t>(s)];
    }
  }
  return nu;
}

SymPoly dp_pushforward(const SymPoly& p, const FlagType& rho) {
  if (p.alphabet() != Alphabet::Xi) throw InvalidArgument("dp_pushforward expects a polynomial in xi");
  const int r = rho.rank();
  if (p.variable_count() > r) throw InvalidArgument("polynomial uses more than r roots");
  for (const auto& block : rho.root_blocks()) {
    for (std::size_t t = 0; t + 1 < block.size(); ++t) {
      std::vector<int> swap(static_cast<std::size_t>(r));
      std::iota(swap.begin(), swap.end(), 1);
      std::swap(swap[static_cast<std::size_t>(block[t] - 1)], swap[static_cast<std::size_t>(block[t + 1] - 1)]);
      if (!(p.permute(swap) == p)) {
        throw InvalidArgument("polynomial is not symmetric in the roots " + std::to_string(block[t]) + " and " +
                              std::to_string(block[t + 1]));
      }
    }
  }
  const IntSequence nu = dp_nu(rho);
  std::map<IntSequence, SymPoly> cache;
  SymPoly out(Alphabet::Segre);
  for (const auto& [e, c] : p.terms()) {
    IntSequence sigma(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) {
      const int lambda = static_cast<std::size_t>(i) < e.size() ? e[static_cast<std::size_t>(i)] : 0;
      // reversal: sigma_{r-i} = lambda_i - nu_i (0-based)
      sigma[static_cast<std::size_t>(r - 1 - i)] = lambda - nu[static_cast<std::size_t>(i)];
    }
    auto it = cache.find(sigma);
    if (it == cache.end()) it = cache.emplace(sigma, gschur_in_segre(sigma)).first;
    out += c * it->second;
  }
  return out;
}

int forms_sign_adjust(int f_degree, const FlagType& rho, int k) {
  if (!rho.is_complete()) throw InvalidArgument("forms_sign_adjust is defined for complete flags only");
  if (k < 0 || f_degree != rho.relative_dimension() + k) {
    throw InvalidArgument("degree of F must equal d_rho + k");
  }
  return f_degree % 2 == 0 ? 1 : -1;
}

// ---------------------------------------------------------------------------

SymPoly elementary_symmetric(int k, int r) {
  if (k < 0 || r < 0) throw InvalidArgument("elementary_symmetric needs k, r >= 0");
  SymPoly out(Alphabet::Root);
  if (k > r) return out;
  for (std::uint32_t mask = 0; mask < (1u << r); ++mask) {
    if (std::popcount(mask) != k) continue;
    SymPoly::Exponents e(static_cast<std::size_t>(r), 0);
    for (int i = 0; i < r; ++i) e[static_cast<std::size_t>(i)] = static_cast<int>((mask >> i) & 1u);
    out.add_term(std::move(e), 1);
  }
  return out;
}

SymPoly complete_symmetric(int k, int r) {
  if (k < 0 || r < 0) throw InvalidArgument("complete_symmetric needs k, r >= 0");
  SymPoly out(Alphabet::Root);
  SymPoly::Exponents e(static_cast<std::size_t>(r), 0);
  // all exponent vectors of total degree k
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == r - 1 || r == 0) {
      if (r == 0) {
        if (left == 0) out.add_term({}, 1);
        return;
      }
      e[static_cast<std::size_t>(i)] = left;
      out.add_term(e, 1);
      return;
    }
    for (int x = left; x >= 0; --x) {
      e[static_cast<std::size_t>(i)] = x;
      self(self, i + 1, left - x);
    }
  };
  rec(rec, 0, k);
  return out;
}

SymPoly expand_in_roots(const SymPoly& q, int r) {
  if (r < 0) throw InvalidArgument("negative rank");
  switch (q.alphabet()) {
    case Alphabet::Chern:
      return q.substitute(Alphabet::Root, [r](int k) {
        return sign_times(k % 2 == 0 ? 1 : -1, elementary_symmetric(k, r));
      });
    case Alphabet::Segre:
      return q.substitute(Alphabet::Root, [r](int k) { return complete_symmetric(k, r); });
    default:
      throw InvalidArgument("expand_in_roots expects Chern or Segre variables");
  }
}

SymPoly complete_flag_oracle(const SymPoly& p, int r) {
  if (p.alphabet() != Alphabet::Xi) throw InvalidArgument("complete_flag_oracle expects a polynomial in xi");
  if (r < 1 || r > 4) throw InvalidArgument("complete_flag_oracle supports 1 <= r <= 4");
  if (p.variable_count() > r) throw InvalidArgument("polynomial uses more than r roots");
  const SymPoly x = p.relabel(Alphabet::Root);
  std::vector<int> w(static_cast<std::size_t>(r));
  std::iota(w.begin(), w.end(), 1);
  SymPoly alternant(Alphabet::Root);
  do {
    int inversions = 0;
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j) inversions += w[static_cast<std::size_t>(i)] > w[static_cast<std::size_t>(j)];
    alternant += sign_times(inversions % 2 == 0 ? 1 : -1, x.permute(w));
  } while (std::next_permutation(w.begin(), w.end()));
  SymPoly vandermonde = SymPoly::constant(Alphabet::Root, 1);
  for (int i = 1; i <= r; ++i)
    for (int j = i + 1; j <= r; ++j)
      vandermonde = vandermonde * (SymPoly::variable(Alphabet::Root, j) - SymPoly::variable(Alphabet::Root, i));
  return alternant.exact_divide(vandermonde);
}

SymPoly projective_oracle(int k, int r) {
  if (k < 0 || r < 1) throw InvalidArgument("projective_oracle needs k >= 0 and r >= 1");
  return k == 0 ? SymPoly::constant(Alphabet::Segre, 1) : SymPoly::variable(Alphabet::Segre, k);
}

// ---------------------------------------------------------------------------

std::map<IntSequence, BigInt> schur_product_expand(const IntSequence& sigma, const IntSequence& tau, int r) {
  require_partition(sigma);
  require_partition(tau);
  const int total = weight(sigma) + weight(tau);
  const SymPoly product = schur_in_chern(sigma, r) * schur_in_chern(tau, r);
  const auto basis = enumerate_partitions(total, r);

  std::vector<SymPoly> columns;
  std::map<SymPoly::Exponents, std::size_t> row_of;
  auto index_rows = [&](const SymPoly& q) {
    for (const auto& [e, c] : q.terms()) row_of.try_emplace(e, row_of.size());
  };
  for (const auto& lambda : basis) {
    columns.push_back(schur_in_chern(lambda, r));
    index_rows(columns.back());
  }
  index_rows(product);

  const std::size_t rows = row_of.size();
  const std::size_t cols = columns.size();
  std::vector<std::vector<BigRational>> m(rows, std::vector<BigRational>(cols + 1));
  for (std::size_t c = 0; c < cols; ++c)
    for (const auto& [e, v] : columns[c].terms()) m[row_of.at(e)][c] = BigRational(v);
  for (const auto& [e, v] : product.terms()) m[row_of.at(e)][cols] = BigRational(v);

  // Gauss-Jordan elimination
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < rows; ++c) {
    std::size_t piv = row;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[row]);
    const BigRational lead = m[row][c];
    for (auto& x : m[row]) x /= lead;
    for (std::size_t o = 0; o < rows; ++o) {
      if (o == row || m[o][c] == 0) continue;
      const BigRational f = m[o][c];
      for (std::size_t t = c; t <= cols; ++t) m[o][t] -= f * m[row][t];
    }
    pivot_col.push_back(c);
    ++row;
  }
  if (pivot_col.size() != cols) throw InternalError("Schur polynomials are linearly dependent");
  for (std::size_t o = row; o < rows; ++o) {
    if (m[o][cols] != 0) throw InternalError("product is not in the span of the Schur basis");
  }
  std::map<IntSequence, BigInt> out;
  for (std::size_t t = 0; t < pivot_col.size(); ++t) {
    const BigRational& v = m[t][cols];
    if (v == 0) continue;
    if (boost::multiprecision::denominator(v) != 1) throw InternalError("non-integral Schur coefficient");
    out.emplace(trim_zeros(basis[pivot_col[t]]), boost::multiprecision::numerator(v));
  }
  return out;
}

}  // namespace cwpos
