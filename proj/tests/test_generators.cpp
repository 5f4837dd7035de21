#include "doctest.h"

#include "cwpos/errors.hpp"
#include "cwpos/generators.hpp"
#include "cwpos/positivity.hpp"
#include "cwpos/schur_calculus.hpp"
#include "support.hpp"

using namespace cwpos;
using testutil::rel_dev;

namespace {

SearchBudget budget(std::uint64_t seed = 0) {
  SearchBudget b;
  b.random_starts = 12;
  b.local_iters = 100;
  b.rng_seed = seed;
  return b;
}

}  // namespace

TEST_CASE("spec validation and kind names") {
  GeneratorSpec spec;
  spec.m = 0;
  CHECK_THROWS_AS(spec.validate(), InvalidArgument);
  spec.m = 1;
  spec.scale = 0.0;
  CHECK_THROWS_AS(spec.validate(), InvalidArgument);
  for (auto k : {GeneratorSpec::Kind::DualNakano, GeneratorSpec::Kind::LineSum, GeneratorSpec::Kind::PsdTensor,
                 GeneratorSpec::Kind::ConvexMix, GeneratorSpec::Kind::Indefinite}) {
    CHECK(parse_generator_kind(to_string(k)) == k);
  }
  CHECK_THROWS_AS(parse_generator_kind("nakano"), InvalidArgument);
}

TEST_CASE("dual Nakano examples") {
  // A = (e_1^v): Theta_11 = e_1^v ^ conj(e_1^v), G(v, tau) = |v|^2 |tau_1|^2
  const CurvaturePoint c = dual_nakano(1, 1, 1, {1.0});
  CHECK(c.entry(0, 0) == ExteriorForm::monomial(1, MultiIndex{1}, MultiIndex{1}));
  CHECK(griffiths_minimum(c, budget()).min_value == doctest::Approx(1.0));

  GeneratorSpec spec;
  spec.n = 3;
  spec.r = 3;
  spec.m = 4;
  for (std::uint64_t s = 0; s < 100; ++s) {
    spec.seed = s;
    const CurvaturePoint d = dual_nakano_sample(spec);
    const Eigen::MatrixXcd m = d.coefficient_matrix();
    CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(validate(d).empty());
    CHECK(griffiths_minimum(d, budget(s)).min_value >= -1e-9);
  }
  CHECK_THROWS_AS(dual_nakano(2, 1, 1, {1.0}), DimensionMismatch);
}

TEST_CASE("line_sum") {
  const ExteriorForm omega = standard_kahler_form(3);
  const CurvaturePoint c = line_sum(3, {omega, omega, omega});
  CHECK(validate(c).empty());
  CHECK(c.entry(0, 1).is_zero());
  CHECK(rel_dev(Complex(0.0, 1.0) * c.entry(2, 2), omega) <= 1e-15);
  CHECK_THROWS_AS(line_sum(3, {-1.0 * omega}), InvalidArgument);
  CHECK_THROWS_AS(line_sum(3, {ExteriorForm::monomial(3, MultiIndex{1}, MultiIndex{2})}), InvalidArgument);

  std::mt19937_64 rng(51);
  for (int t = 0; t < 4; ++t) {
    std::vector<ExteriorForm> omegas;
    for (int a = 0; a < 3; ++a) omegas.push_back(random_kahler_form(3, rng));
    const CharacteristicForms f(line_sum(3, omegas));
    for (int k = 0; k <= 3; ++k)
      for (const auto& sigma : enumerate_partitions(k, 3))
        CHECK(check_positive(schur_form(f, sigma), budget(t)).status == PositivityVerdict::Status::Certified);
  }
}

TEST_CASE("psd_tensor") {
  const int n = 3;
  const ExteriorForm omega = standard_kahler_form(n);
  const CurvaturePoint id = psd_tensor(omega, Eigen::MatrixXcd::Identity(2, 2));
  CHECK(validate(id).empty());
  CHECK(griffiths_minimum(id, budget()).min_value == doctest::Approx(1.0));

  Eigen::VectorXcd v(2);
  v << 1.0, Complex(0.0, 1.0);
  const CurvaturePoint rank1 = psd_tensor(omega, v * v.adjoint());
  const GriffithsReport g = griffiths_minimum(rank1, budget());
  CHECK(g.min_value == doctest::Approx(0.0).scale(1.0));
  CHECK(g.certified == GriffithsReport::Certificate::SemipositiveUpTo);

  const CurvaturePoint zero = psd_tensor(ExteriorForm(n, 1, 1), Eigen::MatrixXcd::Identity(2, 2));
  for (int k = 1; k <= 2; ++k) CHECK(chern_form(zero, k).is_zero());

  Eigen::MatrixXcd indefinite = Eigen::MatrixXcd::Identity(2, 2);
  indefinite(1, 1) = -1.0;
  CHECK_THROWS_AS(psd_tensor(omega, indefinite), InvalidArgument);
  CHECK_THROWS_AS(psd_tensor(-1.0 * omega, Eigen::MatrixXcd::Identity(2, 2)), InvalidArgument);
}

TEST_CASE("epsilon_perturb") {
  GeneratorSpec spec;
  spec.n = 3;
  spec.r = 2;
  spec.m = 1;
  spec.seed = 5;
  const CurvaturePoint c = dual_nakano_sample(spec);
  const ExteriorForm omega = standard_kahler_form(3);
  CHECK(epsilon_perturb(c, omega, 0.0).coefficient_matrix() == c.coefficient_matrix());
  CHECK_THROWS_AS(epsilon_perturb(c, omega, -1.0), InvalidArgument);

  const double base = griffiths_minimum(c, budget()).min_value;
  const double lifted = griffiths_minimum(epsilon_perturb(c, omega, 0.1), budget()).min_value;
  CHECK(lifted >= base + 0.1 - 1e-9);
  CHECK(lifted >= 0.1 - 1e-9);

  double previous = base;
  for (double eps : {1e-3, 1e-2, 1e-1, 1.0}) {
    const double g = griffiths_minimum(epsilon_perturb(c, omega, eps), budget()).min_value;
    CHECK(g > previous);
    previous = g;
  }

  // c_k depends polynomially on eps: the error shrinks linearly
  for (int k = 1; k <= 2; ++k) {
    const ExteriorForm ck = chern_form(c, k);
    double prev_err = 0.0;
    for (double eps : {1e-1, 1e-2, 1e-3}) {
      const double err = (chern_form(epsilon_perturb(c, omega, eps), k) - ck).max_abs();
      if (prev_err > 0.0) CHECK(err / prev_err == doctest::Approx(0.1).epsilon(0.1));
      prev_err = err;
    }
  }
}

TEST_CASE("convex_combine") {
  GeneratorSpec spec;
  spec.n = 3;
  spec.r = 2;
  spec.m = 2;
  const CurvaturePoint a = dual_nakano_sample(spec);
  CHECK(convex_combine({a}, {1.0}).coefficient_matrix() == a.coefficient_matrix());
  CHECK(convex_combine({a, a}, {0.0, 0.0}).coefficient_matrix().isZero());
  CHECK_THROWS_AS(convex_combine({a}, {-1.0}), InvalidArgument);
  CHECK_THROWS_AS(convex_combine({a, CurvaturePoint(3, 3)}, {0.5, 0.5}), DimensionMismatch);

  std::mt19937_64 rng(52);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    std::vector<CurvaturePoint> parts;
    std::vector<double> w;
    for (int s = 0; s < 3; ++s) {
      spec.seed = rng();
      spec.m = 1 + s;
      parts.push_back(dual_nakano_sample(spec));
      w.push_back(u(rng));
    }
    CHECK(griffiths_minimum(convex_combine(parts, w), budget(t)).min_value >= -1e-9);
  }
}

TEST_CASE("indefinite controls") {
  int refuted = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const CurvaturePoint c = indefinite_control(2, 2, s);
    CHECK(validate(c).empty());
    const GriffithsReport g = griffiths_minimum(c, budget(s));
    CHECK(g.certified == GriffithsReport::Certificate::NegativeWitness);
    Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(2);
    e1(0) = 1.0;
    // the planted direction v = e_1 is negative for every tau
    CHECK(griffiths_value(c, e1, e1) < 0.0);
    refuted += check_positive(chern_form(c, 2), budget(s)).status == PositivityVerdict::Status::Refuted;
  }
  MESSAGE("c2 refuted on ", refuted, " of 20 indefinite controls");
}

TEST_CASE("positive controls pass validation and the Griffiths search") {
  for (int n = 1; n <= 5; ++n) {
    for (int r = 1; r <= 4; ++r) {
      // indices cycle through the four kinds: 100 seeds of each
      for (std::size_t i = 0; i < 400; ++i) {
        const GeneratorSpec spec = positive_control_spec(i, n, r, 1000 * n + 10 * r + i);
        CHECK(spec.positive_control());
        const CurvaturePoint c = sample(spec);
        CHECK(validate(c).empty());
        CHECK(griffiths_minimum(c, budget(i)).certified != GriffithsReport::Certificate::NegativeWitness);
      }
    }
  }
}

TEST_CASE("sampling is deterministic") {
  for (std::size_t i = 0; i < 4; ++i) {
    const GeneratorSpec spec = positive_control_spec(i, 4, 3, 77);
    CHECK(sample(spec).coefficient_matrix() == sample(spec).coefficient_matrix());
  }
}
