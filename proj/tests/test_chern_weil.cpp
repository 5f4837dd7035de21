#include "doctest.h"

#include <cmath>

#include "cwpos/chern_weil.hpp"
#include "cwpos/errors.hpp"
#include "cwpos/generators.hpp"
#include "cwpos/schur_calculus.hpp"
#include "support.hpp"

using namespace cwpos;
using testutil::rel_dev;

namespace {

const Complex I(0.0, 1.0);
const double kTwoPi = 2.0 * M_PI;

ExteriorForm e_ebar(int n, int j, int k) {
  return ExteriorForm::monomial(n, MultiIndex{j}, MultiIndex{k});
}

CurvaturePoint block_sum(const CurvaturePoint& a, const CurvaturePoint& b) {
  const int n = a.dim();
  CurvaturePoint c(n, a.rank() + b.rank());
  for (int x = 0; x < a.rank(); ++x)
    for (int y = 0; y < a.rank(); ++y) c.set_entry(x, y, a.entry(x, y));
  for (int x = 0; x < b.rank(); ++x)
    for (int y = 0; y < b.rank(); ++y) c.set_entry(a.rank() + x, a.rank() + y, b.entry(x, y));
  return c;
}

}  // namespace

TEST_CASE("validate") {
  CurvaturePoint ok(2, 2);
  ok.set_entry(0, 0, e_ebar(2, 1, 1) + e_ebar(2, 2, 2));
  CHECK(validate(ok).empty());

  CurvaturePoint bad(2, 2);
  bad.set_entry(0, 1, e_ebar(2, 1, 1));
  const auto v = validate(bad);
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == Violation::Kind::Hermitian);
  CHECK(v[0].alpha == 1);
  CHECK(v[0].beta == 2);
  CHECK(v[0].message().find("(1,2)") != std::string::npos);

  GeneratorSpec spec;
  for (std::uint64_t s = 0; s < 100; ++s) {
    spec.seed = s;
    spec.m = 1 + static_cast<int>(s % 4);
    CHECK(validate(dual_nakano_sample(spec)).empty());
  }
}

TEST_CASE("chern_form examples") {
  std::mt19937_64 rng(21);
  const CurvaturePoint line = testutil::random_curvature(rng, 3, 1);
  CHECK(rel_dev(chern_form(line, 1), (I / kTwoPi) * line.entry(0, 0)) <= 1e-14);
  CHECK(chern_form(line, 0) == ExteriorForm::scalar(3, 1.0));

  const CurvaturePoint c = testutil::random_curvature(rng, 3, 2);
  const ExteriorForm minor = wedge(c.entry(0, 0), c.entry(1, 1)) - wedge(c.entry(0, 1), c.entry(1, 0));
  CHECK(rel_dev(chern_form(c, 2), (-1.0 / (kTwoPi * kTwoPi)) * minor) <= 1e-13);
  CHECK(rel_dev(c2_minor_sum(c), chern_form(c, 2)) <= 1e-13);
  CHECK_THROWS_AS(chern_form(c, 3), InvalidArgument);
  CHECK_THROWS_AS(chern_form(c, -1), InvalidArgument);
}

TEST_CASE("chern_form agrees with the exterior-power oracle") {
  std::mt19937_64 rng(22);
  for (int r = 1; r <= 4; ++r) {
    for (int n = 1; n <= 4; ++n) {
      const CurvaturePoint c = testutil::random_curvature(rng, n, r);
      for (int k = 0; k <= r; ++k) {
        CHECK(rel_dev(chern_form(c, k), chern_form_oracle(c, k)) <= 1e-10);
        CHECK(is_real(chern_form(c, k)));
      }
    }
  }
}

TEST_CASE("split curvature: Chern forms are elementary symmetric in the line forms") {
  std::mt19937_64 rng(23);
  const int n = 4;
  std::vector<ExteriorForm> omegas;
  for (int a = 0; a < 3; ++a) omegas.push_back(random_kahler_form(n, rng));
  const CurvaturePoint c = line_sum(n, omegas);
  std::vector<ExteriorForm> w;
  for (const auto& o : omegas) w.push_back((1.0 / kTwoPi) * o);
  const ExteriorForm e1 = w[0] + w[1] + w[2];
  const ExteriorForm e2 = wedge(w[0], w[1]) + wedge(w[0], w[2]) + wedge(w[1], w[2]);
  const ExteriorForm e3 = wedge(wedge(w[0], w[1]), w[2]);
  CHECK(rel_dev(chern_form(c, 1), e1) <= 1e-13);
  CHECK(rel_dev(chern_form(c, 2), e2) <= 1e-13);
  CHECK(rel_dev(chern_form(c, 3), e3) <= 1e-13);

  // all omega equal to the standard form: c1 = (3 / 2 pi) omega
  const ExteriorForm std_omega = standard_kahler_form(3);
  const CurvaturePoint flat = line_sum(3, {std_omega, std_omega, std_omega});
  CHECK(rel_dev(chern_form(flat, 1), (3.0 / kTwoPi) * std_omega) <= 1e-14);
}

TEST_CASE("segre forms") {
  std::mt19937_64 rng(24);
  const CurvaturePoint c = testutil::random_curvature(rng, 4, 3);
  const CharacteristicForms f(c);
  CHECK(f.segre(0) == ExteriorForm::scalar(4, 1.0));
  CHECK(rel_dev(f.segre(1), -f.chern(1)) <= 1e-14);
  CHECK(rel_dev(f.segre(2), wedge(f.chern(1), f.chern(1)) - f.chern(2)) <= 1e-13);
  CHECK(rel_dev(segre_form(c, 3), f.segre(3)) <= 1e-14);
  CHECK_THROWS_AS(segre_form(c, 5), InvalidArgument);
  for (int k = 0; k <= 4; ++k) CHECK(is_real(f.segre(k)));
}

TEST_CASE("chern times segre is 1 up to degree n") {
  std::mt19937_64 rng(25);
  for (int r = 1; r <= 4; ++r) {
    for (int n = 1; n <= 5; ++n) {
      const CharacteristicForms f(testutil::random_curvature(rng, n, r));
      const auto pieces = f.chern_times_segre();
      REQUIRE(pieces.size() == static_cast<std::size_t>(n + 1));
      CHECK(pieces[0] == ExteriorForm::scalar(n, 1.0));
      double scale = 1.0;
      for (int k = 0; k <= n; ++k) scale = std::max(scale, f.segre(k).max_abs());
      for (int k = 1; k <= n; ++k) CHECK(pieces[static_cast<std::size_t>(k)].max_abs() <= 1e-10 * scale);
    }
  }
}

TEST_CASE("schur_form examples") {
  std::mt19937_64 rng(26);
  const CurvaturePoint c = testutil::random_curvature(rng, 4, 4);
  const CharacteristicForms f(c);
  for (int k = 1; k <= 4; ++k) {
    std::vector<int> row(static_cast<std::size_t>(k), 0);
    row[0] = k;
    CHECK(rel_dev(schur_form(f, row), f.chern(k)) <= 1e-12);
    std::vector<int> hook(static_cast<std::size_t>(k), 0);
    hook[0] = k - 1;
    if (k >= 2) {
      hook[1] = 1;
      CHECK(rel_dev(schur_form(f, hook), wedge(f.chern(1), f.chern(k - 1)) - f.chern(k)) <= 1e-12);
    }
    const std::vector<int> column(static_cast<std::size_t>(k), 1);
    const double sign = k % 2 ? -1.0 : 1.0;
    CHECK(rel_dev(schur_form(f, column), sign * f.segre(k)) <= 1e-12);
  }
  CHECK_THROWS_AS(schur_form(f, {1, 2}), InvalidArgument);
  // parts beyond the rank select c_k = 0
  CHECK(schur_form(f, {5}).is_zero());
  CHECK(schur_form(f, {5, 1}).is_zero());
}

TEST_CASE("generalized schur forms") {
  std::mt19937_64 rng(27);
  for (int n = 3; n <= 5; ++n) {
    const CharacteristicForms f(testutil::random_curvature(rng, n, 3));
    const ExteriorForm main = wedge(f.chern(1), f.chern(2)) - f.chern(3);
    CHECK(rel_dev(generalized_schur_form(f, {-2, 1, 4}), main) <= 1e-10);
    CHECK(rel_dev(schur_form(f, {2, 1, 0}), main) <= 1e-12);
    for (int k = 0; k <= n; ++k) CHECK(rel_dev(generalized_schur_form(f, {k}), f.segre(k)) <= 1e-14);
  }
}

TEST_CASE("generalized schur of a partition equals signed schur of its conjugate") {
  std::mt19937_64 rng(28);
  for (int r = 1; r <= 4; ++r) {
    const int n = 4;
    const CharacteristicForms f(testutil::random_curvature(rng, n, r));
    for (int k = 0; k <= 4; ++k) {
      for (const auto& sigma : enumerate_partitions(k, r)) {
        const auto conj = conjugate_partition(sigma);
        bool fits = true;
        for (int x : conj) fits = fits && x <= r;
        const ExteriorForm lhs = generalized_schur_form(f, sigma);
        const double sign = k % 2 ? -1.0 : 1.0;
        const ExteriorForm rhs = fits ? sign * schur_form(f, conj.empty() ? std::vector<int>{0} : conj)
                                      : ExteriorForm(n, k, k);
        INFO("r=", r, " sigma size=", sigma.size());
        CHECK((lhs - rhs).max_abs() <= 1e-10 * std::max(1.0, lhs.max_abs()));
        CHECK(is_real(lhs));
      }
    }
  }
}

TEST_CASE("Whitney formula for block-diagonal curvature") {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 10; ++t) {
    const int n = 2 + t % 3;
    const CurvaturePoint a = testutil::random_curvature(rng, n, 1 + t % 2);
    const CurvaturePoint b = testutil::random_curvature(rng, n, 1 + (t / 2) % 3);
    const CurvaturePoint sum = block_sum(a, b);
    REQUIRE(validate(sum).empty());
    const CharacteristicForms fa(a), fb(b), fs(sum);
    for (int k = 0; k <= std::min(n, sum.rank()); ++k) {
      ExteriorForm expected(n, k, k);
      for (int i = 0; i <= k; ++i) {
        if (i > a.rank() || k - i > b.rank()) continue;
        expected += wedge(fa.chern(i), fb.chern(k - i));
      }
      CHECK(rel_dev(fs.chern(k), expected) <= 1e-10);
    }
  }
}

TEST_CASE("griffiths_minimum examples") {
  SearchBudget budget;
  budget.random_starts = 8;
  const int n = 3, r = 2;
  const CurvaturePoint flat = psd_tensor(standard_kahler_form(n), Eigen::MatrixXcd::Identity(r, r));
  const GriffithsReport g = griffiths_minimum(flat, budget);
  CHECK(g.min_value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(g.certified == GriffithsReport::Certificate::SemipositiveUpTo);

  CurvaturePoint neg(n, r);
  // i Theta_11 = -i e1 ^ ebar1: the Griffiths form is -|v_1|^2 |tau_1|^2
  neg.set_entry(0, 0, -e_ebar(n, 1, 1));
  const GriffithsReport h = griffiths_minimum(neg, budget);
  CHECK(h.certified == GriffithsReport::Certificate::NegativeWitness);
  CHECK(h.min_value == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(std::abs(h.argmin_v(0)) == doctest::Approx(1.0));
  CHECK(std::abs(h.argmin_tau(0)) == doctest::Approx(1.0));
  CHECK(griffiths_value(neg, h.argmin_v, h.argmin_tau) < -budget.tol);

  CurvaturePoint invalid(2, 2);
  invalid.set_entry(0, 1, e_ebar(2, 1, 1));
  CHECK_THROWS_AS(griffiths_minimum(invalid, budget), InvalidArgument);
}

TEST_CASE("griffiths witnesses replay on random indefinite curvature") {
  std::mt19937_64 rng(30);
  SearchBudget budget;
  budget.random_starts = 8;
  int negatives = 0;
  for (int t = 0; t < 20; ++t) {
    const CurvaturePoint c = testutil::random_curvature(rng, 2 + t % 3, 1 + t % 3);
    const GriffithsReport g = griffiths_minimum(c, budget);
    if (g.certified == GriffithsReport::Certificate::NegativeWitness) {
      ++negatives;
      CHECK(griffiths_value(c, g.argmin_v, g.argmin_tau) < -budget.tol);
      CHECK(griffiths_value(c, g.argmin_v, g.argmin_tau) == doctest::Approx(g.min_value).epsilon(1e-9));
    }
  }
  CHECK(negatives > 0);
}
