#include "cwpos/positivity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "cwpos/errors.hpp"
#include "cwpos/linalg.hpp"

namespace cwpos {

std::string to_string(PositivityVerdict::Status status) {
  switch (status) {
    case PositivityVerdict::Status::Certified: return "certified";
    case PositivityVerdict::Status::Refuted: return "refuted";
    case PositivityVerdict::Status::Unknown: return "unknown";
  }
  return "unknown";
}

ExteriorForm atom_form(int n, const DecomposableAtom& atom) {
  return hermitian_square(decomposable(n, atom.factors));
}

namespace {

void require_real_pp(const ExteriorForm& u, const char* who) {
  if (u.p() != u.q() || !is_real(u)) throw NotReal(std::string(who) + " needs a real (p,p)-form");
}

std::vector<Vector> columns_as_vectors(const Eigen::MatrixXcd& w) {
  std::vector<Vector> out;
  for (Eigen::Index a = 0; a < w.cols(); ++a) {
    std::vector<Complex> c(static_cast<std::size_t>(w.rows()));
    for (Eigen::Index j = 0; j < w.rows(); ++j) c[static_cast<std::size_t>(j)] = w(j, a);
    out.emplace_back(std::move(c));
  }
  return out;
}

// f(W) = sum_{I,J} A_IJ det(W_I) conj(det W_J) for an n x p frame W, where A is
// the coefficient matrix of u. f equals evaluate_pairing(u, columns of W).
class WeakObjective {
 public:
  WeakObjective(const ExteriorForm& u) : n_(u.dim()), p_(u.p()) {
    const CoefficientMatrix cm = coefficient_matrix(u);
    a_ = cm.matrix;
    for (const MultiIndex& idx : cm.basis) {
      std::vector<int> rows;
      for (int j : idx.indices()) rows.push_back(j - 1);
      rows_.push_back(std::move(rows));
    }
    scale_ = a_.size() == 0 ? 0.0 : a_.cwiseAbs().maxCoeff();
  }

  double scale() const { return scale_; }

  double value(const Eigen::MatrixXcd& w) const {
    Eigen::VectorXcd d(static_cast<Eigen::Index>(rows_.size()));
    for (std::size_t t = 0; t < rows_.size(); ++t) d(static_cast<Eigen::Index>(t)) = minor(w, rows_[t]);
    return (d.transpose() * a_ * d.conjugate())(0, 0).real();
  }

  // H with f = y^* H y, y = conj(w_a), all other columns fixed.
  Eigen::MatrixXcd column_form(const Eigen::MatrixXcd& w, int a) const {
    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rows_.size()), n_);
    Eigen::MatrixXcd m(p_, p_);
    for (std::size_t t = 0; t < rows_.size(); ++t) {
      const auto& rows = rows_[t];
      for (int x = 0; x < p_; ++x) m.row(x) = w.row(rows[static_cast<std::size_t>(x)]);
      for (int x = 0; x < p_; ++x) {
        m.col(a).setZero();
        m(x, a) = 1.0;
        g(static_cast<Eigen::Index>(t), rows[static_cast<std::size_t>(x)]) = m.determinant();
      }
    }
    return g.transpose() * a_ * g.conjugate();
  }

 private:
  Complex minor(const Eigen::MatrixXcd& w, const std::vector<int>& rows) const {
    if (p_ == 0) return 1.0;
    Eigen::MatrixXcd m(p_, p_);
    for (int x = 0; x < p_; ++x) m.row(x) = w.row(rows[static_cast<std::size_t>(x)]);
    return m.determinant();
  }

  int n_;
  int p_;
  Eigen::MatrixXcd a_;
  std::vector<std::vector<int>> rows_;
  double scale_ = 0.0;
};

Eigen::MatrixXcd random_frame(std::mt19937_64& rng, int n, int p) {
  Eigen::MatrixXcd z(n, p);
  for (int j = 0; j < n; ++j)
    for (int a = 0; a < p; ++a) z(j, a) = complex_normal(rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  return qr.householderQ() * Eigen::MatrixXcd::Identity(n, p);
}

// Orthonormal basis of the orthogonal complement of the columns of y (assumed orthonormal).
Eigen::MatrixXcd complement(const Eigen::MatrixXcd& y, int n) {
  if (y.cols() == 0) return Eigen::MatrixXcd::Identity(n, n);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(y);
  const Eigen::MatrixXcd q = qr.householderQ();
  return q.rightCols(n - y.cols());
}

}  // namespace

PositivityVerdict check_positive(const ExteriorForm& u, const SearchBudget& budget) {
  budget.validate();
  require_real_pp(u, "check_positive");
  PositivityVerdict out;
  out.tol = budget.tol;
  out.heuristic = true;
  const int n = u.dim();
  const int p = u.p();

  if (u.is_zero()) {
    out.status = PositivityVerdict::Status::Certified;
    out.heuristic = false;
    out.payload = SearchRecord{};
    return out;
  }
  if (p == 0) {
    out.margin = u.coefficient({}, {}).real();
    out.heuristic = false;
    if (out.margin < -budget.tol) {
      out.status = PositivityVerdict::Status::Refuted;
      out.payload = PairingWitness{};
    } else {
      out.status = PositivityVerdict::Status::Certified;
      out.payload = SearchRecord{};
    }
    return out;
  }

  const WeakObjective f(u);
  const double stall = 1e-13 * std::max(f.scale(), std::numeric_limits<double>::min());
  double best = std::numeric_limits<double>::infinity();
  Eigen::MatrixXcd best_w;
  for (int start = 0; start < budget.random_starts; ++start) {
    std::mt19937_64 rng(split_seed(budget.rng_seed, static_cast<std::uint64_t>(start)));
    Eigen::MatrixXcd w = random_frame(rng, n, p);
    double value = f.value(w);
    for (int it = 0; it < budget.local_iters; ++it) {
      for (int a = 0; a < p; ++a) {
        Eigen::MatrixXcd others(n, p - 1);
        for (int b = 0, col = 0; b < p; ++b) {
          if (b != a) others.col(col++) = w.col(b).conjugate();
        }
        const Eigen::MatrixXcd q = complement(others, n);
        const Eigen::MatrixXcd h = f.column_form(w, a);
        const MinEigenpair e = min_eigenpair(q.adjoint() * h * q);
        w.col(a) = (q * e.vector).conjugate();
      }
      const double next = f.value(w);
      const bool stalled = value - next <= stall;
      value = next;
      if (stalled) break;
    }
    if (value < best) {
      best = value;
      best_w = w;
    }
    if (best < -budget.tol) break;
  }

  const std::vector<Vector> tuple = columns_as_vectors(best_w);
  out.margin = evaluate_pairing(u, tuple);
  if (out.margin < -budget.tol) {
    out.status = PositivityVerdict::Status::Refuted;
    out.heuristic = false;
    out.payload = PairingWitness{tuple};
  } else {
    out.status = PositivityVerdict::Status::Certified;
    out.payload = SearchRecord{tuple};
  }
  return out;
}

PositivityVerdict check_hermitian_positive(const ExteriorForm& u, double tol) {
  require_real_pp(u, "check_hermitian_positive");
  PositivityVerdict out;
  out.tol = tol;
  const HermitianGram g = hermitian_gram(u);
  const MinEigenpair e = min_eigenpair(g.matrix);
  const double norm = spectral_norm(g.matrix);
  out.margin = e.value;
  // relative for large forms, absolute below unit scale so that a refutation
  // always replays below -tol
  if (e.value >= -tol * std::max(norm, 1.0)) {
    out.status = PositivityVerdict::Status::Certified;
    return out;
  }
  out.status = PositivityVerdict::Status::Refuted;
  // vol(u ^ i^{q^2} beta ^ conj beta) = b^T M conj(b); minimized by b = conj(x)
  out.payload = HermitianWitness{holomorphic_form(u.dim(), u.dim() - u.p(), e.vector.conjugate())};
  return out;
}

// ---------------------------------------------------------------------------

Eigen::VectorXd nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, int max_iter) {
  const Eigen::Index cols = a.cols();
  if (b.size() != a.rows()) throw DimensionMismatch("nnls: right-hand side length");
  if (max_iter <= 0) max_iter = 3 * static_cast<int>(cols) + 10;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(cols);
  std::vector<bool> passive(static_cast<std::size_t>(cols), false);
  const double eps = std::numeric_limits<double>::epsilon();
  const double tol_w = 10.0 * eps * a.cwiseAbs().colwise().sum().maxCoeff() * static_cast<double>(std::max(a.rows(), cols));

  auto solve_passive = [&](Eigen::VectorXd& s) {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index j = 0; j < cols; ++j)
      if (passive[static_cast<std::size_t>(j)]) idx.push_back(j);
    Eigen::MatrixXd ap(a.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t t = 0; t < idx.size(); ++t) ap.col(static_cast<Eigen::Index>(t)) = a.col(idx[t]);
    const Eigen::VectorXd sp = ap.colPivHouseholderQr().solve(b);
    s.setZero(cols);
    for (std::size_t t = 0; t < idx.size(); ++t) s(idx[t]) = sp(static_cast<Eigen::Index>(t));
  };

  Eigen::VectorXd w = a.transpose() * (b - a * x);
  for (int iter = 0; iter < max_iter; ++iter) {
    Eigen::Index j_max = -1;
    double w_max = tol_w;
    for (Eigen::Index j = 0; j < cols; ++j) {
      if (!passive[static_cast<std::size_t>(j)] && w(j) > w_max) {
        w_max = w(j);
        j_max = j;
      }
    }
    if (j_max < 0) break;
    passive[static_cast<std::size_t>(j_max)] = true;
    Eigen::VectorXd s;
    for (int inner = 0; inner <= static_cast<int>(cols); ++inner) {
      solve_passive(s);
      double alpha = std::numeric_limits<double>::infinity();
      for (Eigen::Index j = 0; j < cols; ++j) {
        if (passive[static_cast<std::size_t>(j)] && s(j) <= 0.0) {
          alpha = std::min(alpha, x(j) / (x(j) - s(j)));
        }
      }
      if (!std::isfinite(alpha)) break;
      x += alpha * (s - x);
      for (Eigen::Index j = 0; j < cols; ++j) {
        if (passive[static_cast<std::size_t>(j)] && x(j) <= eps * std::max(1.0, x.cwiseAbs().maxCoeff())) {
          passive[static_cast<std::size_t>(j)] = false;
          x(j) = 0.0;
        }
      }
    }
    x = s;
    for (Eigen::Index j = 0; j < cols; ++j)
      if (!passive[static_cast<std::size_t>(j)]) x(j) = 0.0;
    w = a.transpose() * (b - a * x);
  }
  return x.cwiseMax(0.0);
}

std::optional<std::vector<Covector>> factor_decomposable(const ExteriorForm& xi, double tol) {
  if (xi.q() != 0) throw InvalidArgument("factor_decomposable needs a (p,0)-form");
  const int n = xi.dim();
  const int p = xi.p();
  if (xi.is_zero()) return std::nullopt;
  std::vector<Covector> factors;
  if (p == n) {
    for (int j = 1; j <= n; ++j) factors.push_back(Covector::basis(n, j));
  } else if (p > 0) {
    // kernel of beta -> beta ^ xi is p-dimensional exactly when xi is decomposable
    const auto rows = subsets(n, p + 1);
    Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rows.size()), n);
    for (int j = 1; j <= n; ++j) {
      const ExteriorForm prod = wedge(ExteriorForm::one_form(Covector::basis(n, j)), xi);
      for (std::size_t t = 0; t < rows.size(); ++t) k(static_cast<Eigen::Index>(t), j - 1) = prod.coefficient(rows[t], {});
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(k, Eigen::ComputeFullV);
    const Eigen::MatrixXcd v = svd.matrixV();
    for (int c = n - p; c < n; ++c) {
      std::vector<Complex> comp(static_cast<std::size_t>(n));
      for (int j = 0; j < n; ++j) comp[static_cast<std::size_t>(j)] = v(j, c);
      factors.emplace_back(std::move(comp));
    }
  }
  const ExteriorForm omega = decomposable(n, factors);
  // best scalar c with c * omega ~ xi
  Complex num{};
  double den = 0.0;
  for (const auto& [key, c] : omega.terms()) {
    num += std::conj(c) * xi.coefficient(key.hol, key.antihol);
    den += std::norm(c);
  }
  if (den == 0.0) return std::nullopt;
  const Complex scale = num / den;
  if ((xi - scale * omega).max_abs() > tol * xi.max_abs()) return std::nullopt;
  if (!factors.empty()) {
    for (auto& z : factors.front().components) z *= scale;
  }
  return factors;
}

StrongCertificate wedge_certificates(const StrongCertificate& a, const StrongCertificate& b) {
  StrongCertificate out;
  // i^{p^2} al^conj(al) ^ i^{q^2} be^conj(be) = i^{(p+q)^2} (al^be) ^ conj(al^be)
  for (std::size_t s = 0; s < a.atoms.size(); ++s) {
    for (std::size_t t = 0; t < b.atoms.size(); ++t) {
      DecomposableAtom atom = a.atoms[s];
      atom.factors.insert(atom.factors.end(), b.atoms[t].factors.begin(), b.atoms[t].factors.end());
      out.atoms.push_back(std::move(atom));
      out.weights.push_back(a.weights[s] * b.weights[t]);
    }
  }
  out.residual = a.residual + b.residual;
  return out;
}

namespace {

// Isometric real coordinates of a Hermitian matrix: diagonal, then sqrt(2) Re and
// sqrt(2) Im of the strict upper triangle.
Eigen::VectorXd real_coordinates(const Eigen::MatrixXcd& h) {
  const Eigen::Index m = h.rows();
  Eigen::VectorXd v(m * m);
  Eigen::Index t = 0;
  for (Eigen::Index i = 0; i < m; ++i) v(t++) = h(i, i).real();
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i + 1; j < m; ++j) {
      v(t++) = std::sqrt(2.0) * h(i, j).real();
      v(t++) = std::sqrt(2.0) * h(i, j).imag();
    }
  }
  return v;
}

Eigen::VectorXcd holomorphic_coordinates(const ExteriorForm& alpha, const std::vector<MultiIndex>& basis) {
  Eigen::VectorXcd a(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t t = 0; t < basis.size(); ++t) a(static_cast<Eigen::Index>(t)) = alpha.coefficient(basis[t], {});
  return a;
}

struct Dictionary {
  std::vector<DecomposableAtom> atoms;
  std::vector<Eigen::VectorXd> columns;  // unit-norm real coordinates
  std::vector<double> norms;

  void add(int n, const std::vector<MultiIndex>& basis, DecomposableAtom atom) {
    const Eigen::VectorXcd a = holomorphic_coordinates(decomposable(n, atom.factors), basis);
    const Eigen::VectorXd col = real_coordinates(a * a.adjoint());
    const double norm = col.norm();
    if (!(norm > 0.0)) return;
    atoms.push_back(std::move(atom));
    columns.push_back(col / norm);
    norms.push_back(norm);
  }
};

std::optional<StrongCertificate> try_certify(const Dictionary& dict, const Eigen::VectorXd& target,
                                             double residual_tol) {
  if (dict.columns.empty()) return std::nullopt;
  Eigen::MatrixXd a(target.size(), static_cast<Eigen::Index>(dict.columns.size()));
  for (std::size_t s = 0; s < dict.columns.size(); ++s) a.col(static_cast<Eigen::Index>(s)) = dict.columns[s];
  const Eigen::VectorXd x = nnls(a, target);
  const double residual = (a * x - target).norm() / target.norm();
  if (residual > residual_tol) return std::nullopt;
  StrongCertificate cert;
  cert.residual = residual;
  for (std::size_t s = 0; s < dict.columns.size(); ++s) {
    const double weight = x(static_cast<Eigen::Index>(s));
    if (weight <= 0.0) continue;
    cert.atoms.push_back(dict.atoms[s]);
    cert.weights.push_back(weight / dict.norms[s]);
  }
  return cert;
}

}  // namespace

PositivityVerdict check_strongly_positive(const ExteriorForm& u, const SearchBudget& budget,
                                          const StrongSearchOptions& options) {
  budget.validate();
  require_real_pp(u, "check_strongly_positive");
  PositivityVerdict out;
  out.tol = budget.tol;
  const int n = u.dim();
  const int p = u.p();
  if (u.is_zero()) {
    out.status = PositivityVerdict::Status::Certified;
    out.payload = StrongCertificate{};
    return out;
  }

  // Dual side: a single-term Hermitian-positive (q,q)-form with negative pairing.
  const PositivityVerdict hp = check_hermitian_positive(u, budget.tol);
  if (hp.status == PositivityVerdict::Status::Refuted) {
    const ExteriorForm v = hermitian_square(std::get<HermitianWitness>(hp.payload).beta);
    out.status = PositivityVerdict::Status::Refuted;
    out.margin = volume_coefficient(wedge(u, v));
    out.payload = DualWitness{v};
    return out;
  }

  const CoefficientMatrix cm = coefficient_matrix(u);
  const Eigen::VectorXd target = real_coordinates(hermitian_part(cm.matrix));

  // Small dictionary first: seeds, decomposable eigenvectors, coordinate atoms.
  Dictionary dict;
  for (const auto& atom : options.seed_atoms) dict.add(n, cm.basis, atom);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitian_part(cm.matrix));
  const double top = es.eigenvalues().cwiseAbs().maxCoeff();
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    if (es.eigenvalues()(k) <= budget.tol * top) continue;
    const ExteriorForm xi = holomorphic_form(n, p, es.eigenvectors().col(k));
    if (auto factors = factor_decomposable(xi, 1e-9)) dict.add(n, cm.basis, DecomposableAtom{*factors});
  }
  for (const MultiIndex& idx : cm.basis) {
    DecomposableAtom atom;
    for (int j : idx.indices()) atom.factors.push_back(Covector::basis(n, j));
    dict.add(n, cm.basis, std::move(atom));
  }
  std::optional<StrongCertificate> cert = try_certify(dict, target, options.residual_tol);

  if (!cert) {
    const std::size_t dim = cm.basis.size() * cm.basis.size();
    const std::size_t count = static_cast<std::size_t>(std::max(options.atoms_per_dimension, 0)) * dim;
    for (std::size_t s = 0; s < count; ++s) {
      std::mt19937_64 rng(split_seed(budget.rng_seed, s));
      DecomposableAtom atom;
      for (int f = 0; f < p; ++f) {
        std::vector<Complex> c(static_cast<std::size_t>(n));
        for (auto& z : c) z = complex_normal(rng);
        atom.factors.emplace_back(std::move(c));
      }
      dict.add(n, cm.basis, std::move(atom));
    }
    cert = try_certify(dict, target, options.residual_tol);
  }

  if (cert) {
    out.status = PositivityVerdict::Status::Certified;
    out.margin = cert->residual;
    out.payload = std::move(*cert);
  } else {
    out.status = PositivityVerdict::Status::Unknown;
    out.margin = hp.margin;
  }
  return out;
}

double replay_witness(const ExteriorForm& u, const PositivityVerdict& verdict) {
  if (const auto* w = std::get_if<PairingWitness>(&verdict.payload)) return evaluate_pairing(u, w->tuple);
  if (const auto* w = std::get_if<HermitianWitness>(&verdict.payload)) {
    return volume_coefficient(wedge(u, hermitian_square(w->beta)));
  }
  if (const auto* w = std::get_if<DualWitness>(&verdict.payload)) return volume_coefficient(wedge(u, w->v));
  throw InvalidArgument("verdict carries no refutation witness");
}

}  // namespace cwpos
