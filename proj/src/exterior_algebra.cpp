#include "cwpos/exterior_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cwpos/errors.hpp"

namespace cwpos {

namespace {

void require_dim(int n) {
  if (n < 0 || n > kMaxDimension) {
    throw InvalidArgument("ambient dimension out of range: " + std::to_string(n));
  }
}

// Sign of sorting the concatenation (a, b) when both are already increasing.
int inversion_parity(std::uint32_t a, std::uint32_t b) {
  int inversions = 0;
  while (b != 0) {
    const int bit = std::countr_zero(b);
    b &= b - 1;
    // entries of a strictly greater than this entry of b
    const std::uint32_t above = bit >= 31 ? 0u : (a & ~((2u << bit) - 1u));
    inversions += std::popcount(above);
  }
  return (inversions & 1) ? -1 : 1;
}

Eigen::MatrixXcd rows_of(const Eigen::MatrixXcd& w, MultiIndex rows) {
  const auto idx = rows.indices();
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(idx.size()), w.cols());
  for (std::size_t a = 0; a < idx.size(); ++a) {
    out.row(static_cast<Eigen::Index>(a)) = w.row(idx[a] - 1);
  }
  return out;
}

Eigen::MatrixXcd as_matrix(const std::vector<Vector>& w, int n) {
  Eigen::MatrixXcd m(n, static_cast<Eigen::Index>(w.size()));
  for (std::size_t a = 0; a < w.size(); ++a) {
    if (w[a].dim() != n) {
      throw DimensionMismatch("vector has " + std::to_string(w[a].dim()) +
                              " components, expected " + std::to_string(n));
    }
    for (int j = 0; j < n; ++j) m(j, static_cast<Eigen::Index>(a)) = w[a][j];
  }
  return m;
}

Complex det_or_one(const Eigen::MatrixXcd& m) {
  return m.rows() == 0 ? Complex(1.0) : m.determinant();
}

}  // namespace

MultiIndex::MultiIndex(std::initializer_list<int> indices)
    : MultiIndex(std::vector<int>(indices)) {}

MultiIndex::MultiIndex(const std::vector<int>& indices) {
  int prev = 0;
  for (int j : indices) {
    if (j <= prev || j > 32) {
      throw InvalidArgument("multi-index must be strictly increasing with entries in [1, 32]");
    }
    mask_ |= 1u << (j - 1);
    prev = j;
  }
}

std::vector<int> MultiIndex::indices() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (std::uint32_t m = mask_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m) + 1);
  return out;
}

std::string MultiIndex::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (int j : indices()) {
    if (!first) os << ',';
    os << j;
    first = false;
  }
  os << '}';
  return os.str();
}

std::vector<MultiIndex> subsets(int n, int k) {
  std::vector<MultiIndex> out;
  if (k < 0 || k > n) return out;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int a = 0; a < k; ++a) idx[static_cast<std::size_t>(a)] = a + 1;
  while (true) {
    out.emplace_back(idx);
    int a = k - 1;
    while (a >= 0 && idx[static_cast<std::size_t>(a)] == n - k + a + 1) --a;
    if (a < 0) break;
    ++idx[static_cast<std::size_t>(a)];
    for (int b = a + 1; b < k; ++b) {
      idx[static_cast<std::size_t>(b)] = idx[static_cast<std::size_t>(b - 1)] + 1;
    }
  }
  return out;
}

int merge_sign(MultiIndex i, MultiIndex k) {
  if ((i.mask() & k.mask()) != 0) return 0;
  return inversion_parity(i.mask(), k.mask());
}

Complex i_pow(long k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

// ---------------------------------------------------------------------------

ExteriorForm::ExteriorForm(int n, int p, int q) : n_(n), p_(p), q_(q) {
  require_dim(n);
  if (p < 0 || q < 0 || p > n || q > n) {
    throw InvalidArgument("bidegree (" + std::to_string(p) + "," + std::to_string(q) +
                          ") out of range for n=" + std::to_string(n));
  }
}

ExteriorForm ExteriorForm::scalar(int n, Complex value) {
  ExteriorForm f(n, 0, 0);
  f.add_term({}, {}, value);
  return f;
}

ExteriorForm ExteriorForm::monomial(int n, MultiIndex hol, MultiIndex antihol, Complex c) {
  ExteriorForm f(n, hol.size(), antihol.size());
  if (hol.max_entry() > n || antihol.max_entry() > n) {
    throw InvalidArgument("multi-index entry exceeds the ambient dimension");
  }
  f.add_term(hol, antihol, c);
  return f;
}

ExteriorForm ExteriorForm::one_form(const Covector& c) {
  ExteriorForm f(c.dim(), 1, 0);
  for (int j = 0; j < c.dim(); ++j) f.add_term(MultiIndex::from_mask(1u << j), {}, c[j]);
  return f;
}

ExteriorForm ExteriorForm::antiholomorphic_one_form(const Covector& c) {
  ExteriorForm f(c.dim(), 0, 1);
  for (int j = 0; j < c.dim(); ++j) f.add_term({}, MultiIndex::from_mask(1u << j), c[j]);
  return f;
}

Complex ExteriorForm::coefficient(MultiIndex hol, MultiIndex antihol) const {
  auto it = terms_.find(Key{hol, antihol});
  return it == terms_.end() ? Complex{} : it->second;
}

double ExteriorForm::max_abs() const {
  double m = 0.0;
  for (const auto& [key, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

void ExteriorForm::add_term(MultiIndex hol, MultiIndex antihol, Complex c) {
  if (hol.size() != p_ || antihol.size() != q_) {
    throw InvalidArgument("term " + hol.to_string() + antihol.to_string() +
                          " does not have bidegree (" + std::to_string(p_) + "," +
                          std::to_string(q_) + ")");
  }
  if (c == Complex{}) return;
  auto [it, inserted] = terms_.try_emplace(Key{hol, antihol}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex{}) terms_.erase(it);
  }
}

void ExteriorForm::require_compatible(const ExteriorForm& other) const {
  if (n_ != other.n_) {
    throw DimensionMismatch("forms on C^" + std::to_string(n_) + " and C^" +
                            std::to_string(other.n_));
  }
}

ExteriorForm& ExteriorForm::operator+=(const ExteriorForm& other) {
  require_compatible(other);
  if (p_ != other.p_ || q_ != other.q_) {
    // A zero summand carries no information about degree.
    if (other.is_zero()) return *this;
    if (!is_zero()) throw InvalidArgument("adding forms of different bidegree");
    p_ = other.p_;
    q_ = other.q_;
  }
  for (const auto& [key, c] : other.terms_) add_term(key.hol, key.antihol, c);
  return *this;
}

ExteriorForm& ExteriorForm::operator-=(const ExteriorForm& other) {
  return *this += (-other);
}

ExteriorForm& ExteriorForm::operator*=(Complex s) {
  if (s == Complex{}) {
    terms_.clear();
    return *this;
  }
  for (auto& [key, c] : terms_) c *= s;
  return *this;
}

std::string ExteriorForm::to_string() const {
  std::ostringstream os;
  os << "(" << p_ << "," << q_ << ")-form on C^" << n_ << ":";
  if (terms_.empty()) os << " 0";
  for (const auto& [key, c] : terms_) {
    os << " + (" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)"
       << "e" << key.hol.to_string() << "^ebar" << key.antihol.to_string();
  }
  return os.str();
}

// ---------------------------------------------------------------------------

WedgeResult try_wedge(const ExteriorForm& u, const ExteriorForm& v) {
  if (u.dim() != v.dim()) {
    throw DimensionMismatch("wedge of forms on C^" + std::to_string(u.dim()) + " and C^" +
                            std::to_string(v.dim()));
  }
  const int n = u.dim();
  const int p = u.p() + v.p();
  const int q = u.q() + v.q();
  if (p > n || q > n) {
    return {ExteriorForm(n, std::min(p, n), std::min(q, n)), true};
  }
  ExteriorForm out(n, p, q);
  // (e_I ^ ebar_J) ^ (e_K ^ ebar_L) = (-1)^{|J||K|} e_I ^ e_K ^ ebar_J ^ ebar_L
  const int cross = (u.q() * v.p()) % 2 == 0 ? 1 : -1;
  for (const auto& [ku, cu] : u.terms()) {
    for (const auto& [kv, cv] : v.terms()) {
      const int s1 = merge_sign(ku.hol, kv.hol);
      if (s1 == 0) continue;
      const int s2 = merge_sign(ku.antihol, kv.antihol);
      if (s2 == 0) continue;
      out.add_term(MultiIndex::from_mask(ku.hol.mask() | kv.hol.mask()),
                   MultiIndex::from_mask(ku.antihol.mask() | kv.antihol.mask()),
                   static_cast<double>(cross * s1 * s2) * cu * cv);
    }
  }
  return {std::move(out), false};
}

ExteriorForm wedge(const ExteriorForm& u, const ExteriorForm& v) { return try_wedge(u, v).form; }

ExteriorForm wedge_power(const ExteriorForm& u, int k) {
  if (k < 0) throw InvalidArgument("negative wedge power");
  ExteriorForm acc = ExteriorForm::scalar(u.dim(), 1.0);
  for (int i = 0; i < k; ++i) acc = wedge(acc, u);
  return acc;
}

ExteriorForm conjugate(const ExteriorForm& u) {
  ExteriorForm out(u.dim(), u.q(), u.p());
  const double sign = (u.p() * u.q()) % 2 == 0 ? 1.0 : -1.0;
  for (const auto& [key, c] : u.terms()) out.add_term(key.antihol, key.hol, sign * std::conj(c));
  return out;
}

double default_tolerance(const ExteriorForm& u) { return 1e-9 * u.max_abs() + 1e-12; }

bool is_real(const ExteriorForm& u, double tol) {
  if (u.p() != u.q()) return false;
  const ExteriorForm c = conjugate(u);
  for (const auto& [key, a] : u.terms()) {
    if (std::abs(a - c.coefficient(key.hol, key.antihol)) > tol) return false;
  }
  for (const auto& [key, b] : c.terms()) {
    if (std::abs(b - u.coefficient(key.hol, key.antihol)) > tol) return false;
  }
  return true;
}

bool is_real(const ExteriorForm& u) { return is_real(u, default_tolerance(u)); }

namespace {

Complex complex_volume_coefficient(const ExteriorForm& v) {
  const int n = v.dim();
  if (v.p() != n || v.q() != n) {
    throw NotTopDegree("expected bidegree (" + std::to_string(n) + "," + std::to_string(n) +
                       "), got (" + std::to_string(v.p()) + "," + std::to_string(v.q()) + ")");
  }
  const MultiIndex all = MultiIndex::full(n);
  // (i e_1 ^ ebar_1) ^ ... ^ (i e_n ^ ebar_n) = i^{n^2} e_{1..n} ^ ebar_{1..n}
  return v.coefficient(all, all) / i_pow(static_cast<long>(n) * n);
}

}  // namespace

double volume_coefficient(const ExteriorForm& v, double tol) {
  const Complex tau = complex_volume_coefficient(v);
  if (std::abs(tau.imag()) > tol) {
    throw NotReal("volume coefficient has imaginary part " + std::to_string(tau.imag()));
  }
  return tau.real();
}

double volume_coefficient(const ExteriorForm& v) {
  const Complex tau = complex_volume_coefficient(v);
  return volume_coefficient(v, 1e-9 * std::max(1.0, std::abs(tau)));
}

double evaluate_pairing(const ExteriorForm& u, const std::vector<Vector>& w) {
  if (u.p() != u.q() || !is_real(u)) throw NotReal("evaluate_pairing needs a real (p,p)-form");
  const int p = u.p();
  if (static_cast<int>(w.size()) != p) {
    throw ArityMismatch("expected " + std::to_string(p) + " vectors, got " +
                        std::to_string(w.size()));
  }
  const Eigen::MatrixXcd wm = as_matrix(w, u.dim());
  // e_I ^ ebar_J evaluated on (w, conj(w)) is block triangular: det(W_I) conj(det W_J).
  std::map<std::uint32_t, Complex> minors;
  auto minor = [&](MultiIndex idx) {
    auto it = minors.find(idx.mask());
    if (it != minors.end()) return it->second;
    const Complex d = det_or_one(rows_of(wm, idx));
    minors.emplace(idx.mask(), d);
    return d;
  };
  Complex sum{};
  double scale = 0.0;
  for (const auto& [key, c] : u.terms()) {
    const Complex t = c * minor(key.hol) * std::conj(minor(key.antihol));
    sum += t;
    scale += std::abs(t);
  }
  sum *= i_pow(-static_cast<long>(p) * p);
  if (std::abs(sum.imag()) > 1e-9 * std::max(1.0, scale)) {
    throw NotReal("pairing has imaginary part " + std::to_string(sum.imag()));
  }
  return sum.real();
}

ExteriorForm decomposable(int n, const std::vector<Covector>& factors) {
  if (static_cast<int>(factors.size()) > n) {
    throw InvalidArgument("more factors than the ambient dimension");
  }
  ExteriorForm acc = ExteriorForm::scalar(n, 1.0);
  for (const Covector& b : factors) {
    if (b.dim() != n) throw DimensionMismatch("covector dimension differs from n");
    acc = wedge(acc, ExteriorForm::one_form(b));
  }
  return acc;
}

double restrict_volume(const ExteriorForm& u, const std::vector<Vector>& s) {
  if (u.p() != u.q() || !is_real(u)) throw NotReal("restrict_volume needs a real (p,p)-form");
  const int p = u.p();
  const int n = u.dim();
  if (static_cast<int>(s.size()) != p) {
    throw ArityMismatch("expected " + std::to_string(p) + " spanning vectors, got " +
                        std::to_string(s.size()));
  }
  const Eigen::MatrixXcd sm = as_matrix(s, n);
  if (p > 0) {
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(sm);
    lu.setThreshold(1e-12);
    if (lu.rank() < p) throw RankDeficient("spanning vectors are linearly dependent");
  }
  // e_j^v pulls back to sum_a (s_a)_j f_a^v on C^p.
  std::vector<Covector> pulled(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    Covector c;
    c.components.resize(static_cast<std::size_t>(p));
    for (int a = 0; a < p; ++a) c[a] = sm(j, a);
    pulled[static_cast<std::size_t>(j)] = std::move(c);
  }
  auto pull = [&](MultiIndex idx) {
    std::vector<Covector> f;
    for (int j : idx.indices()) f.push_back(pulled[static_cast<std::size_t>(j - 1)]);
    return decomposable(p, f);
  };
  ExteriorForm restricted(p, p, p);
  for (const auto& [key, c] : u.terms()) {
    restricted += c * wedge(pull(key.hol), conjugate(pull(key.antihol)));
  }
  return volume_coefficient(restricted, 1e-9 * std::max(1.0, restricted.max_abs()));
}

HermitianGram hermitian_gram(const ExteriorForm& u) {
  if (u.p() != u.q()) throw NotReal("hermitian_gram needs a (p,p)-form");
  const int n = u.dim();
  const int q = n - u.p();
  HermitianGram g;
  g.basis = subsets(n, q);
  const auto size = static_cast<Eigen::Index>(g.basis.size());
  g.matrix.resize(size, size);
  const Complex phase = i_pow(static_cast<long>(q) * q);
  for (Eigen::Index a = 0; a < size; ++a) {
    for (Eigen::Index b = 0; b < size; ++b) {
      const ExteriorForm test = ExteriorForm::monomial(
          n, g.basis[static_cast<std::size_t>(a)], g.basis[static_cast<std::size_t>(b)], phase);
      g.matrix(a, b) = complex_volume_coefficient(wedge(u, test));
    }
  }
  const double tol = 1e-9 * std::max(1.0, g.matrix.cwiseAbs().maxCoeff());
  if ((g.matrix - g.matrix.adjoint()).cwiseAbs().maxCoeff() > tol) {
    throw NotReal("Hermitian form of u is not Hermitian; u is not real");
  }
  return g;
}

CoefficientMatrix coefficient_matrix(const ExteriorForm& u) {
  if (u.p() != u.q()) throw InvalidArgument("coefficient_matrix needs a (p,p)-form");
  CoefficientMatrix a;
  a.basis = subsets(u.dim(), u.p());
  std::map<std::uint32_t, Eigen::Index> pos;
  for (std::size_t t = 0; t < a.basis.size(); ++t) {
    pos[a.basis[t].mask()] = static_cast<Eigen::Index>(t);
  }
  const auto size = static_cast<Eigen::Index>(a.basis.size());
  a.matrix = Eigen::MatrixXcd::Zero(size, size);
  const Complex inv_phase = i_pow(-static_cast<long>(u.p()) * u.p());
  for (const auto& [key, c] : u.terms()) {
    a.matrix(pos.at(key.hol.mask()), pos.at(key.antihol.mask())) = c * inv_phase;
  }
  return a;
}

ExteriorForm form_from_coefficients(int n, int p, const Eigen::MatrixXcd& a) {
  const auto basis = subsets(n, p);
  if (a.rows() != static_cast<Eigen::Index>(basis.size()) || a.cols() != a.rows()) {
    throw DimensionMismatch("coefficient matrix shape does not match C(n,p)");
  }
  ExteriorForm u(n, p, p);
  const Complex phase = i_pow(static_cast<long>(p) * p);
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      u.add_term(basis[static_cast<std::size_t>(r)], basis[static_cast<std::size_t>(c)],
                 phase * a(r, c));
    }
  }
  return u;
}

ExteriorForm holomorphic_form(int n, int p, const Eigen::VectorXcd& z) {
  const auto basis = subsets(n, p);
  if (z.size() != static_cast<Eigen::Index>(basis.size())) {
    throw DimensionMismatch("component count does not match C(n,p)");
  }
  ExteriorForm xi(n, p, 0);
  for (std::size_t t = 0; t < basis.size(); ++t) {
    xi.add_term(basis[t], {}, z(static_cast<Eigen::Index>(t)));
  }
  return xi;
}

ExteriorForm hermitian_square(const ExteriorForm& xi) {
  if (xi.q() != 0) throw InvalidArgument("hermitian_square needs a (p,0)-form");
  return i_pow(static_cast<long>(xi.p()) * xi.p()) * wedge(xi, conjugate(xi));
}

}  // namespace cwpos
