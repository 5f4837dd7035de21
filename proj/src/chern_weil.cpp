#include "cwpos/chern_weil.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "cwpos/determinant.hpp"
#include "cwpos/errors.hpp"
#include "cwpos/linalg.hpp"

namespace cwpos {

void SearchBudget::validate() const {
  if (random_starts <= 0 || local_iters <= 0 || !(tol > 0.0)) {
    throw InvalidArgument("search budget needs positive starts, iterations and tolerance");
  }
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Zero form of total degree (k,k), clamped into [0, n].
ExteriorForm zero_form(int n, int k) {
  const int d = std::clamp(k, 0, n);
  return ExteriorForm(n, d, d);
}

auto wedge_mul = [](const ExteriorForm& a, const ExteriorForm& b) { return wedge(a, b); };

void require_partition(const std::vector<int>& sigma) {
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (sigma[i] < 0 || (i > 0 && sigma[i] > sigma[i - 1])) {
      throw InvalidArgument("not a partition (must be weakly decreasing and nonnegative)");
    }
  }
}

int weight(const std::vector<int>& sigma) {
  int s = 0;
  for (int x : sigma) s += x;
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------

CurvaturePoint::CurvaturePoint(int n, int r) : n_(n), r_(r) {
  if (n < 1 || n > kMaxDimension || r < 1) throw InvalidArgument("need n >= 1 and r >= 1");
  entries_.assign(static_cast<std::size_t>(r) * r, ExteriorForm(n, 1, 1));
}

CurvaturePoint::CurvaturePoint(int n, int r, std::vector<ExteriorForm> entries)
    : CurvaturePoint(n, r) {
  if (entries.size() != static_cast<std::size_t>(r) * r) {
    throw DimensionMismatch("expected r*r curvature entries");
  }
  for (int a = 0; a < r; ++a) {
    for (int b = 0; b < r; ++b) set_entry(a, b, std::move(entries[static_cast<std::size_t>(a * r + b)]));
  }
}

const ExteriorForm& CurvaturePoint::entry(int a, int b) const {
  return entries_.at(static_cast<std::size_t>(a * r_ + b));
}

void CurvaturePoint::set_entry(int a, int b, ExteriorForm form) {
  if (a < 0 || b < 0 || a >= r_ || b >= r_) throw InvalidArgument("curvature index out of range");
  if (form.dim() != n_) throw DimensionMismatch("curvature entry lives on the wrong C^n");
  if (form.is_zero() && (form.p() != 1 || form.q() != 1)) form = ExteriorForm(n_, 1, 1);
  if (form.p() != 1 || form.q() != 1) {
    throw InvalidArgument("curvature entry (" + std::to_string(a + 1) + "," +
                          std::to_string(b + 1) + ") is not a (1,1)-form");
  }
  entries_[static_cast<std::size_t>(a * r_ + b)] = std::move(form);
}

Complex CurvaturePoint::coefficient(int a, int b, int j, int k) const {
  return entry(a, b).coefficient(MultiIndex::from_mask(1u << j), MultiIndex::from_mask(1u << k));
}

void CurvaturePoint::add_coefficient(int a, int b, int j, int k, Complex value) {
  if (j < 0 || k < 0 || j >= n_ || k >= n_) throw InvalidArgument("coordinate index out of range");
  entries_.at(static_cast<std::size_t>(a * r_ + b))
      .add_term(MultiIndex::from_mask(1u << j), MultiIndex::from_mask(1u << k), value);
}

Eigen::MatrixXcd CurvaturePoint::coefficient_matrix() const {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(r_ * n_, r_ * n_);
  for (int a = 0; a < r_; ++a) {
    for (int b = 0; b < r_; ++b) {
      for (const auto& [key, c] : entry(a, b).terms()) {
        const int j = key.hol.max_entry() - 1;
        const int k = key.antihol.max_entry() - 1;
        m(a * n_ + j, b * n_ + k) = c;
      }
    }
  }
  return m;
}

CurvaturePoint CurvaturePoint::from_coefficient_matrix(int n, int r, const Eigen::MatrixXcd& m) {
  if (m.rows() != r * n || m.cols() != r * n) throw DimensionMismatch("expected an rn x rn matrix");
  CurvaturePoint c(n, r);
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) c.add_coefficient(a, b, j, k, m(a * n + j, b * n + k));
  return c;
}

CurvaturePoint& CurvaturePoint::operator+=(const CurvaturePoint& other) {
  if (other.n_ != n_ || other.r_ != r_) throw DimensionMismatch("curvature shapes differ");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

CurvaturePoint& CurvaturePoint::operator*=(double s) {
  for (auto& e : entries_) e *= s;
  return *this;
}

std::string Violation::message() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Bidegree: os << "entry (" << alpha << "," << beta << ") is not a (1,1)-form"; break;
    case Kind::Dimension: os << "entry (" << alpha << "," << beta << ") has the wrong ambient dimension"; break;
    case Kind::Hermitian:
      os << "Hermitian symmetry violated at (" << alpha << "," << beta << "): residual " << residual;
      break;
  }
  return os.str();
}

std::vector<Violation> validate(const CurvaturePoint& c, double tol) {
  std::vector<Violation> out;
  const int r = c.rank();
  for (int a = 0; a < r; ++a) {
    for (int b = 0; b < r; ++b) {
      const ExteriorForm& e = c.entry(a, b);
      if (e.dim() != c.dim()) out.push_back({Violation::Kind::Dimension, a + 1, b + 1, 0.0});
      if (e.p() != 1 || e.q() != 1) out.push_back({Violation::Kind::Bidegree, a + 1, b + 1, 0.0});
    }
  }
  if (!out.empty()) return out;
  // conj(Theta_ab) + Theta_ba == 0, reported once per unordered pair (a <= b)
  for (int a = 0; a < r; ++a) {
    for (int b = a; b < r; ++b) {
      const ExteriorForm diff = conjugate(c.entry(a, b)) + c.entry(b, a);
      const double residual = diff.max_abs();
      if (residual > tol) out.push_back({Violation::Kind::Hermitian, a + 1, b + 1, residual});
    }
  }
  return out;
}

std::vector<Violation> validate(const CurvaturePoint& c) {
  double m = 0.0;
  for (int a = 0; a < c.rank(); ++a)
    for (int b = 0; b < c.rank(); ++b) m = std::max(m, c.entry(a, b).max_abs());
  return validate(c, 1e-9 * m);
}

// ---------------------------------------------------------------------------

ExteriorForm chern_form(const CurvaturePoint& c, int k) {
  const int n = c.dim();
  const int r = c.rank();
  if (k < 0 || k > r) throw InvalidArgument("chern_form: k out of range [0, r]");
  if (k == 0) return ExteriorForm::scalar(n, 1.0);
  const Complex factor(0.0, 1.0 / kTwoPi);
  std::optional<ExteriorForm> total;
  for (const MultiIndex& s : subsets(r, k)) {
    const auto idx = s.indices();
    SparseMatrix<ExteriorForm> m(static_cast<std::size_t>(k));
    for (int x = 0; x < k; ++x) {
      for (int y = 0; y < k; ++y) {
        const ExteriorForm& e = c.entry(idx[static_cast<std::size_t>(x)] - 1, idx[static_cast<std::size_t>(y)] - 1);
        m[static_cast<std::size_t>(x)].push_back(e.is_zero() ? std::nullopt : std::optional(factor * e));
      }
    }
    auto d = determinant(m, wedge_mul);
    if (!d) continue;
    if (total) *total += *d; else total = std::move(d);
  }
  return total ? *total : zero_form(n, k);
}

ExteriorForm chern_form_oracle(const CurvaturePoint& c, int k) {
  const int n = c.dim();
  const int r = c.rank();
  if (k < 0 || k > r) throw InvalidArgument("chern_form_oracle: k out of range [0, r]");
  if (k == 0) return ExteriorForm::scalar(n, 1.0);
  const Complex factor(0.0, 1.0 / kTwoPi);
  // Lambda^k A (e_S) = A e_{s1} ^ ... ^ A e_{sk}; elements of Lambda^* E with form
  // coefficients are maps from a bit set of frame indices to a form.
  using Element = std::map<std::uint32_t, ExteriorForm>;
  ExteriorForm trace = zero_form(n, k);
  for (const MultiIndex& s : subsets(r, k)) {
    Element acc;
    acc.emplace(0u, ExteriorForm::scalar(n, 1.0));
    for (int col : s.indices()) {
      Element next;
      for (const auto& [mask, coeff] : acc) {
        for (int row = 0; row < r; ++row) {
          if ((mask >> row) & 1u) continue;
          const ExteriorForm& a = c.entry(row, col - 1);
          if (a.is_zero()) continue;
          // e_mask ^ e_row: move e_row left past the larger frame indices
          const int larger = std::popcount(mask >> (row + 1));
          const double sign = (larger % 2 == 0) ? 1.0 : -1.0;
          ExteriorForm term = (sign * factor) * wedge(coeff, a);
          const std::uint32_t key = mask | (1u << row);
          auto it = next.find(key);
          if (it == next.end()) next.emplace(key, std::move(term)); else it->second += term;
        }
      }
      acc = std::move(next);
    }
    auto diag = acc.find(s.mask());
    if (diag != acc.end()) trace += diag->second;
  }
  return trace;
}

ExteriorForm segre_form(const CurvaturePoint& c, int k) {
  if (k < 0 || k > c.dim()) throw InvalidArgument("segre_form: k out of range [0, n]");
  return CharacteristicForms(c).segre(k);
}

CharacteristicForms::CharacteristicForms(const CurvaturePoint& c)
    : n_(c.dim()), r_(c.rank()), chern_zero_(zero_form(c.dim(), c.rank() + 1)) {
  for (int k = 0; k <= r_; ++k) chern_.push_back(chern_form(c, k));
  segre_.push_back(ExteriorForm::scalar(n_, 1.0));
  for (int k = 1; k <= n_; ++k) {
    ExteriorForm s = zero_form(n_, k);
    for (int j = 1; j <= std::min(k, r_); ++j) s -= wedge(chern_[static_cast<std::size_t>(j)], segre_[static_cast<std::size_t>(k - j)]);
    segre_.push_back(std::move(s));
  }
}

const ExteriorForm& CharacteristicForms::chern(int k) const {
  if (k < 0) throw InvalidArgument("negative Chern degree");
  if (k <= r_) return chern_[static_cast<std::size_t>(k)];
  return chern_zero_;
}

const ExteriorForm& CharacteristicForms::segre(int k) const {
  if (k < 0 || k > n_) throw InvalidArgument("segre: k out of range [0, n]");
  return segre_[static_cast<std::size_t>(k)];
}

std::vector<ExteriorForm> CharacteristicForms::chern_times_segre() const {
  std::vector<ExteriorForm> out;
  for (int d = 0; d <= n_; ++d) {
    ExteriorForm t = zero_form(n_, d);
    for (int j = 0; j <= std::min(d, r_); ++j) t += wedge(chern_[static_cast<std::size_t>(j)], segre_[static_cast<std::size_t>(d - j)]);
    out.push_back(std::move(t));
  }
  return out;
}

namespace {

template <class EntryFn>
ExteriorForm jacobi_trudi_determinant(int n, const std::vector<int>& sigma, EntryFn entry) {
  const int k = static_cast<int>(sigma.size());
  if (k == 0) return ExteriorForm::scalar(n, 1.0);
  SparseMatrix<ExteriorForm> m(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      m[static_cast<std::size_t>(i)].push_back(entry(sigma[static_cast<std::size_t>(i)] + j - i));
    }
  }
  auto d = determinant(m, wedge_mul);
  return d ? *d : zero_form(n, weight(sigma));
}

}  // namespace

ExteriorForm schur_form(const CharacteristicForms& f, const std::vector<int>& sigma) {
  require_partition(sigma);
  return jacobi_trudi_determinant(f.dim(), sigma, [&](int l) -> std::optional<ExteriorForm> {
    if (l < 0 || l > f.rank()) return std::nullopt;
    const ExteriorForm& c = f.chern(l);
    if (c.is_zero()) return std::nullopt;
    return c;
  });
}

ExteriorForm schur_form(const CurvaturePoint& c, const std::vector<int>& sigma) {
  return schur_form(CharacteristicForms(c), sigma);
}

ExteriorForm generalized_schur_form(const CharacteristicForms& f, const std::vector<int>& sigma) {
  return jacobi_trudi_determinant(f.dim(), sigma, [&](int l) -> std::optional<ExteriorForm> {
    if (l < 0 || l > f.dim()) return std::nullopt;
    const ExteriorForm& s = f.segre(l);
    if (s.is_zero()) return std::nullopt;
    return s;
  });
}

ExteriorForm generalized_schur_form(const CurvaturePoint& c, const std::vector<int>& sigma) {
  return generalized_schur_form(CharacteristicForms(c), sigma);
}

ExteriorForm c2_minor_sum(const CurvaturePoint& c) {
  const int n = c.dim();
  ExteriorForm sum = zero_form(n, 2);
  for (int a = 0; a < c.rank(); ++a) {
    for (int b = a + 1; b < c.rank(); ++b) {
      sum += wedge(c.entry(a, a), c.entry(b, b)) - wedge(c.entry(a, b), c.entry(b, a));
    }
  }
  return (-1.0 / (4.0 * std::numbers::pi * std::numbers::pi)) * sum;
}

// ---------------------------------------------------------------------------

namespace {

// theta_{ab,jk} stored densely as the rn x rn coefficient matrix.
struct Biquadratic {
  int n;
  int r;
  Eigen::MatrixXcd m;

  Eigen::MatrixXcd tau_form(const Eigen::VectorXcd& v) const {
    Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(n, n);
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b) {
        const Complex w = v(a) * std::conj(v(b));
        if (w == Complex{}) continue;
        t += w * m.block(a * n, b * n, n, n);
      }
    return t;
  }

  Eigen::MatrixXcd v_form(const Eigen::VectorXcd& tau) const {
    Eigen::MatrixXcd out(r, r);
    const Eigen::MatrixXcd tt = tau * tau.adjoint();  // tt(j,k) = tau_j conj(tau_k)
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b) out(a, b) = (m.block(a * n, b * n, n, n).cwiseProduct(tt)).sum();
    return out;
  }

  double value(const Eigen::VectorXcd& v, const Eigen::VectorXcd& tau) const {
    const Eigen::MatrixXcd t = tau_form(v);
    return (tau.transpose() * t * tau.conjugate())(0, 0).real();
  }
};

}  // namespace

double griffiths_value(const CurvaturePoint& c, const Eigen::VectorXcd& v,
                       const Eigen::VectorXcd& tau) {
  if (v.size() != c.rank() || tau.size() != c.dim()) throw DimensionMismatch("griffiths_value: vector sizes");
  return Biquadratic{c.dim(), c.rank(), c.coefficient_matrix()}.value(v, tau);
}

GriffithsReport griffiths_minimum(const CurvaturePoint& c, const SearchBudget& budget) {
  budget.validate();
  if (const auto violations = validate(c); !violations.empty()) {
    throw InvalidArgument("invalid curvature: " + violations.front().message());
  }
  const Biquadratic g{c.dim(), c.rank(), c.coefficient_matrix()};
  GriffithsReport best;
  best.tol = budget.tol;
  best.min_value = std::numeric_limits<double>::infinity();
  bool any_converged = false;
  for (int start = 0; start < budget.random_starts; ++start) {
    std::mt19937_64 rng(split_seed(budget.rng_seed, static_cast<std::uint64_t>(start)));
    Eigen::VectorXcd v = random_unit_vector(rng, g.r);
    Eigen::VectorXcd tau(g.n);
    double value = std::numeric_limits<double>::infinity();
    bool converged = false;
    for (int it = 0; it < budget.local_iters; ++it) {
      // G = zeta^* T zeta with zeta = conj(tau); likewise for v.
      const MinEigenpair pt = min_eigenpair(g.tau_form(v));
      tau = pt.vector.conjugate();
      const MinEigenpair pv = min_eigenpair(g.v_form(tau));
      v = pv.vector.conjugate();
      const double next = pv.value;
      const bool stalled = value - next <= 1e-14 * std::max(1.0, std::abs(next));
      value = std::min(value, next);
      if (stalled) {
        converged = true;
        break;
      }
    }
    any_converged = any_converged || converged;
    if (value < best.min_value) {
      best.min_value = value;
      best.argmin_v = v;
      best.argmin_tau = tau;
    }
    if (best.min_value < -budget.tol) break;
  }
  // report the value actually attained at the stored point
  best.min_value = g.value(best.argmin_v, best.argmin_tau);
  if (best.min_value < -budget.tol) {
    best.certified = GriffithsReport::Certificate::NegativeWitness;
  } else if (any_converged) {
    best.certified = GriffithsReport::Certificate::SemipositiveUpTo;
  } else {
    best.certified = GriffithsReport::Certificate::Inconclusive;
  }
  return best;
}

std::string to_string(GriffithsReport::Certificate cert) {
  switch (cert) {
    case GriffithsReport::Certificate::SemipositiveUpTo: return "semipositive_up_to_tol";
    case GriffithsReport::Certificate::NegativeWitness: return "negative_witness";
    case GriffithsReport::Certificate::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

}  // namespace cwpos
