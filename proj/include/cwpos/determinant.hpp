#pragma once

// Determinant over a commutative ring whose elements are not numbers
// (even-degree forms under wedge, exact polynomials). Zero entries are
// represented by std::nullopt so that callers never need a "zero of the right
// degree". Laplace expansion along rows with minors memoized by column set.

#include <cstdint>
#include <optional>
#include <vector>

namespace cwpos {

template <class T>
using SparseMatrix = std::vector<std::vector<std::optional<T>>>;

/// `mul(a, b)` must be commutative and associative on the values that occur.
/// Returns std::nullopt when every expansion term vanishes.
template <class T, class Mul>
std::optional<T> determinant(const SparseMatrix<T>& m, Mul mul) {
  const int k = static_cast<int>(m.size());
  if (k == 0) return std::nullopt;
  // memo[mask] = determinant of rows [k - popcount(mask), k) restricted to columns in mask
  std::vector<std::optional<std::optional<T>>> memo(std::size_t{1} << k);

  auto solve = [&](auto&& self, std::uint32_t mask, int row) -> std::optional<T> {
    auto& slot = memo[mask];
    if (slot) return *slot;
    std::optional<T> acc;
    int position = 0;
    for (int col = 0; col < k; ++col) {
      if (!((mask >> col) & 1u)) continue;
      const bool negative = (position++ % 2) == 1;
      const auto& entry = m[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
      if (!entry) continue;
      std::optional<T> term;
      if (row + 1 == k) {
        term = *entry;
      } else {
        auto minor = self(self, mask & ~(1u << col), row + 1);
        if (!minor) continue;
        term = mul(*entry, *minor);
      }
      if (!acc) {
        acc = negative ? -*term : *term;
      } else if (negative) {
        *acc = *acc - *term;
      } else {
        *acc = *acc + *term;
      }
    }
    slot = acc;
    return acc;
  };
  const std::uint32_t full = k >= 32 ? ~0u : ((1u << k) - 1u);
  return solve(solve, full, 0);
}

}  // namespace cwpos
