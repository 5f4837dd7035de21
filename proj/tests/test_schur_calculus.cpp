#include "doctest.h"

#include <numeric>

#include <set>

#include "cwpos/errors.hpp"
#include "cwpos/schur_calculus.hpp"
#include "cwpos/sym_poly.hpp"

using namespace cwpos;

namespace {

SymPoly c(int i, int p = 1) { return SymPoly::variable(Alphabet::Chern, i, p); }
SymPoly s(int i, int p = 1) { return SymPoly::variable(Alphabet::Segre, i, p); }
SymPoly x(int i, int p = 1) { return SymPoly::variable(Alphabet::Root, i, p); }
SymPoly xi(const std::vector<int>& e) { return SymPoly::monomial(Alphabet::Xi, e); }
SymPoly one(Alphabet a) { return SymPoly::constant(a, 1); }

// every length-k vector with entries in [0, r] summing to k, sorted decreasingly
std::set<IntSequence> brute_force_partitions(int k, int r) {
  std::set<IntSequence> out;
  if (k == 0) {
    out.insert(IntSequence{});
    return out;
  }
  IntSequence v(static_cast<std::size_t>(k), 0);
  for (;;) {
    int sum = 0;
    for (int e : v) sum += e;
    if (sum == k && std::is_sorted(v.rbegin(), v.rend())) out.insert(v);
    std::size_t i = 0;
    while (i < v.size() && v[i] == r) v[i++] = 0;
    if (i == v.size()) break;
    ++v[i];
  }
  return out;
}

// the substitutions c_k -> (-1)^k e_k(x), s_k -> h_k(x), expanded by brute force
SymPoly brute_e(int k, int r) {
  SymPoly out(Alphabet::Root);
  for (unsigned mask = 0; mask < (1u << r); ++mask) {
    if (std::popcount(mask) != k) continue;
    std::vector<int> e(static_cast<std::size_t>(r), 0);
    for (int i = 0; i < r; ++i) e[static_cast<std::size_t>(i)] = (mask >> i) & 1u;
    out += SymPoly::monomial(Alphabet::Root, e);
  }
  return out;
}

SymPoly brute_h(int k, int r) {
  SymPoly out(Alphabet::Root);
  std::vector<int> e(static_cast<std::size_t>(r), 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == r - 1) {
      e[static_cast<std::size_t>(i)] = left;
      out += SymPoly::monomial(Alphabet::Root, e);
      return;
    }
    for (int a = 0; a <= left; ++a) {
      e[static_cast<std::size_t>(i)] = a;
      rec(i + 1, left - a);
    }
  };
  if (r > 0) rec(0, k);
  return out;
}

// Schur polynomial s_lambda(x_1..x_r) as a ratio of alternants, by brute force
SymPoly schur_by_alternants(const IntSequence& lambda, int r) {
  std::vector<int> perm(static_cast<std::size_t>(r));
  std::iota(perm.begin(), perm.end(), 0);
  auto alternant = [&](const std::vector<int>& exps) {
    SymPoly a(Alphabet::Root);
    std::vector<int> p = perm;
    do {
      int inv = 0;
      for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) inv += p[static_cast<std::size_t>(i)] > p[static_cast<std::size_t>(j)];
      std::vector<int> e(static_cast<std::size_t>(r), 0);
      for (int i = 0; i < r; ++i) e[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])] = exps[static_cast<std::size_t>(i)];
      a += SymPoly::monomial(Alphabet::Root, e, inv % 2 ? -1 : 1);
    } while (std::next_permutation(p.begin(), p.end()));
    return a;
  };
  std::vector<int> delta(static_cast<std::size_t>(r)), top(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) {
    delta[static_cast<std::size_t>(i)] = r - 1 - i;
    const int li = i < static_cast<int>(lambda.size()) ? lambda[static_cast<std::size_t>(i)] : 0;
    top[static_cast<std::size_t>(i)] = li + r - 1 - i;
  }
  return alternant(top).exact_divide(alternant(delta));
}

}  // namespace

TEST_CASE("symbolic polynomial arithmetic") {
  const SymPoly p = c(1) * c(2) - c(3);
  CHECK(p.to_string() == "c1*c2 - c3");
  CHECK(p.degrees() == std::vector<int>{3});
  CHECK((p - p).is_zero());
  CHECK((c(1) + c(1)) == c(1) * BigInt(2));
  CHECK((x(1) + x(2)).pow(2) == x(1, 2) + x(1) * x(2) * BigInt(2) + x(2, 2));
  CHECK(((x(1, 2) - x(2, 2)).exact_divide(x(1) - x(2))) == x(1) + x(2));
  CHECK_THROWS_AS((x(1, 2) + x(2)).exact_divide(x(1) - x(2)), InternalError);
  CHECK_THROWS(c(1) + s(1));
  // Chern variables are weighted by their index
  CHECK((c(1) * c(2)).degrees() == std::vector<int>{3});
  // big coefficients stay exact
  const SymPoly big = (x(1) + x(2)).pow(70);
  // binomial(70, 35) is about 1.1e20
  CHECK(big.coefficient({35, 35}) > BigInt(std::numeric_limits<std::int64_t>::max()));
}

TEST_CASE("enumerate_partitions") {
  CHECK(enumerate_partitions(2, 2) == std::vector<IntSequence>{{2, 0}, {1, 1}});
  CHECK(enumerate_partitions(3, 3) == std::vector<IntSequence>{{3, 0, 0}, {2, 1, 0}, {1, 1, 1}});
  CHECK(enumerate_partitions(0, 3).size() == 1);
  for (int k = 0; k <= 6; ++k) {
    for (int r = 0; r <= 4; ++r) {
      const auto got = enumerate_partitions(k, r);
      const std::set<IntSequence> as_set(got.begin(), got.end());
      CHECK(as_set.size() == got.size());
      CHECK(as_set == brute_force_partitions(k, r));
    }
  }
}

TEST_CASE("conjugate partitions") {
  CHECK(conjugate_partition({2, 1, 0}) == IntSequence{2, 1});
  CHECK(conjugate_partition({1, 1, 1}) == IntSequence{3});
  CHECK_THROWS_AS(conjugate_partition({1, 2}), InvalidArgument);
  for (int k = 0; k <= 6; ++k)
    for (int r = 1; r <= 4; ++r)
      for (const auto& sigma : enumerate_partitions(k, r)) {
        CHECK(conjugate_partition(conjugate_partition(sigma)) == trim_zeros(sigma));
        CHECK(weight(conjugate_partition(sigma)) == k);
      }
}

TEST_CASE("schur_in_chern") {
  CHECK(schur_in_chern({2, 1, 0}, 3) == c(1) * c(2) - c(3));
  CHECK(schur_in_chern({1, 1}, 2) == c(1, 2) - c(2));
  CHECK(schur_in_chern({1, 1}, 5) == c(1, 2) - c(2));
  for (int k = 1; k <= 4; ++k) {
    IntSequence row(static_cast<std::size_t>(k), 0);
    row[0] = k;
    CHECK(schur_in_chern(row, 4) == c(k));
  }
  CHECK(schur_in_chern({}, 3) == one(Alphabet::Chern));
  CHECK_THROWS_AS(schur_in_chern({1, 2}, 3), InvalidArgument);
}

TEST_CASE("schur_in_chern matches alternant Schur polynomials in the roots") {
  // c_k = e_k(-x), so S_sigma(c) = (-1)^{|sigma|} s_{sigma'}(x)
  for (int r = 1; r <= 3; ++r)
    for (int k = 0; k <= 4; ++k)
      for (const auto& sigma : enumerate_partitions(k, r)) {
        const IntSequence conj = conjugate_partition(sigma);
        if (static_cast<int>(conj.size()) > r) {
          CHECK(expand_in_roots(schur_in_chern(sigma, r), r).is_zero());
          continue;
        }
        SymPoly expected = schur_by_alternants(conj, r);
        if (k % 2) expected = -expected;
        CHECK(expand_in_roots(schur_in_chern(sigma, r), r) == expected);
      }
}

TEST_CASE("gschur_in_segre") {
  for (int k = 0; k <= 5; ++k) CHECK(gschur_in_segre({k}) == (k == 0 ? one(Alphabet::Segre) : s(k)));
  CHECK(gschur_in_segre({-1}).is_zero());
  CHECK(gschur_in_segre({-2, 1, 4}) == s(3) - s(1) * s(2));
  CHECK(segre_to_chern(gschur_in_segre({-2, 1, 4}), 3) == c(1) * c(2) - c(3));
  CHECK(gschur_in_segre({1, 4}) == s(1) * s(4) - s(2) * s(3));
  CHECK(segre_to_chern(gschur_in_segre({1, 4}), 2) == c(1) * c(2, 2));
  CHECK(gschur_in_segre({1, 1}) == s(1, 2) - s(2));
  CHECK(gschur_in_segre({6}, 5).is_zero());
}

TEST_CASE("segre_in_chern") {
  CHECK(segre_in_chern(1, 3) == -c(1));
  CHECK(segre_in_chern(2, 3) == c(1, 2) - c(2));
  CHECK(segre_in_chern(3, 3) == -c(1, 3) + c(1) * c(2) * BigInt(2) - c(3));
  CHECK(segre_in_chern(3, 1) == -c(1, 3));
}

TEST_CASE("jacobi_trudi_check") {
  CHECK(jacobi_trudi_check({1}, 1));
  CHECK(jacobi_trudi_check({1, 1}, 2));
  // hand expansion: s_(1,1) = s1^2 - s2 = c2
  CHECK(segre_to_chern(gschur_in_segre({1, 1}), 2) == c(2));
  for (int r = 1; r <= 4; ++r)
    for (int k = 0; k <= 6; ++k)
      for (const auto& sigma : enumerate_partitions(k, r)) CHECK(jacobi_trudi_check(sigma, r));
}

TEST_CASE("flag types and dp_nu") {
  CHECK(dp_nu(FlagType::complete(3)) == IntSequence{0, 1, 2});
  CHECK(dp_nu(FlagType({0, 1, 3})) == IntSequence{0, 0, 2});
  CHECK(dp_nu(FlagType({0, 4})) == IntSequence{0, 0, 0, 0});
  CHECK(FlagType::complete(3).relative_dimension() == 3);
  CHECK(FlagType({0, 1, 3}).relative_dimension() == 2);
  CHECK(FlagType({0, 2, 4}).relative_dimension() == 4);
  CHECK_THROWS_AS(FlagType({0, 2, 2}), InvalidArgument);
  CHECK_THROWS_AS(FlagType({1, 3}), InvalidArgument);
}

TEST_CASE("dp_pushforward examples") {
  CHECK(dp_pushforward(xi({4, 2, 0}), FlagType::complete(3)) == gschur_in_segre({-2, 1, 4}));
  CHECK(dp_pushforward(xi({4, 2}), FlagType::complete(2)) == gschur_in_segre({1, 4}));
  CHECK(dp_pushforward(xi({1, 0}), FlagType::complete(2)) == -one(Alphabet::Segre));
  CHECK(dp_pushforward(xi({0, 1}), FlagType::complete(2)) == one(Alphabet::Segre));
  // degree below the fiber dimension pushes forward to zero
  CHECK(dp_pushforward(xi({1, 1, 0}), FlagType::complete(3)).is_zero());
  // block symmetry is required on incomplete flags
  CHECK_THROWS_AS(dp_pushforward(xi({1, 0, 2}), FlagType({0, 1, 3})), InvalidArgument);
  CHECK_NOTHROW(dp_pushforward(xi({1, 0, 2}) + xi({0, 1, 2}), FlagType({0, 1, 3})));
}

TEST_CASE("forms_sign_adjust") {
  CHECK(forms_sign_adjust(6, FlagType::complete(3), 3) == 1);
  CHECK(forms_sign_adjust(1, FlagType::complete(2), 0) == -1);
  CHECK(forms_sign_adjust(2, FlagType::complete(2), 1) == 1);
  CHECK_THROWS_AS(forms_sign_adjust(5, FlagType::complete(3), 3), InvalidArgument);
}

TEST_CASE("root expansion") {
  CHECK(expand_in_roots(s(1), 3) == x(1) + x(2) + x(3));
  CHECK(expand_in_roots(c(1), 3) == -(x(1) + x(2) + x(3)));
  for (int r = 1; r <= 4; ++r)
    for (int k = 0; k <= 4; ++k) {
      CHECK(elementary_symmetric(k, r) == brute_e(k, r));
      CHECK(complete_symmetric(k, r) == brute_h(k, r));
    }
  // c1c2 - c3 = -s_(2,1)(x) in rank 3
  CHECK(expand_in_roots(c(1) * c(2) - c(3), 3) == -schur_by_alternants({2, 1}, 3));
}

TEST_CASE("complete_flag_oracle examples") {
  CHECK(complete_flag_oracle(xi({1, 0}), 2) == -one(Alphabet::Root));
  CHECK(complete_flag_oracle(xi({1, 1}), 2).is_zero());
  CHECK(complete_flag_oracle(xi({4, 2, 0}), 3) == expand_in_roots(gschur_in_segre({-2, 1, 4}), 3));
  CHECK_THROWS_AS(complete_flag_oracle(xi({1, 0, 0, 0, 0}), 5), InvalidArgument);
}

TEST_CASE("projective oracle") {
  CHECK(projective_oracle(0, 3) == one(Alphabet::Segre));
  CHECK(projective_oracle(1, 3) == s(1));
  CHECK(projective_oracle(2, 3) == s(2));
  for (int k = 0; k <= 3; ++k) {
    CHECK(dp_pushforward(xi({0, 0, 2 + k}), FlagType({0, 1, 3})) == projective_oracle(k, 3));
    CHECK(complete_flag_oracle(xi({0, 1, k + 2}), 3) == expand_in_roots(projective_oracle(k, 3), 3));
  }
}

TEST_CASE("schur_product_expand") {
  const auto p = schur_product_expand({1}, {1}, 2);
  CHECK(p.size() == 2);
  CHECK(p.at(IntSequence{2}) == 1);
  CHECK(p.at(IntSequence{1, 1}) == 1);
  // r = 1: only c1 survives, S_(1) S_(k) = S_(k+1) is c1^{k+1} with c_{>1} = 0
  const auto q = schur_product_expand({1}, {1}, 1);
  CHECK(q.size() == 1);
  CHECK(q.at(IntSequence{1, 1}) == 1);
  // Pieri: S_(1) S_(2,1) = S_(3,1) + S_(2,2) + S_(2,1,1) for r = 3
  const auto pieri = schur_product_expand({1}, {2, 1}, 3);
  CHECK(pieri.at(IntSequence{2, 1, 1}) == 1);
  CHECK(pieri.at(IntSequence{2, 2}) == 1);
  CHECK(pieri.at(IntSequence{3, 1}) == 1);
  for (int r = 1; r <= 4; ++r)
    for (int a = 0; a <= 3; ++a)
      for (int b = 0; a + b <= 6; ++b)
        for (const auto& sigma : enumerate_partitions(a, r))
          for (const auto& tau : enumerate_partitions(b, r))
            for (const auto& [lambda, coeff] : schur_product_expand(sigma, tau, r)) CHECK(coeff >= 0);
}
