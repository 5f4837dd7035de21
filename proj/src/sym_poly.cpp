#include "cwpos/sym_poly.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "cwpos/errors.hpp"

namespace cwpos {

std::string variable_prefix(Alphabet a) {
  switch (a) {
    case Alphabet::Root: return "x";
    case Alphabet::Xi: return "xi";
    case Alphabet::Chern: return "c";
    case Alphabet::Segre: return "s";
  }
  return "?";
}

namespace {

void trim(SymPoly::Exponents& e) {
  while (!e.empty() && e.back() == 0) e.pop_back();
}

SymPoly::Exponents multiply(const SymPoly::Exponents& a, const SymPoly::Exponents& b) {
  SymPoly::Exponents out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

bool divides(const SymPoly::Exponents& d, const SymPoly::Exponents& m) {
  if (d.size() > m.size()) return false;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] > m[i]) return false;
  return true;
}

}  // namespace

SymPoly SymPoly::constant(Alphabet a, const BigInt& c) {
  SymPoly p(a);
  p.add_term({}, c);
  return p;
}

SymPoly SymPoly::variable(Alphabet a, int i, int power) {
  if (i < 1 || power < 0) throw InvalidArgument("variable index must be >= 1 and power >= 0");
  Exponents e(static_cast<std::size_t>(i), 0);
  e.back() = power;
  return monomial(a, std::move(e));
}

SymPoly SymPoly::monomial(Alphabet a, Exponents e, const BigInt& c) {
  for (int x : e)
    if (x < 0) throw InvalidArgument("negative exponent");
  SymPoly p(a);
  p.add_term(std::move(e), c);
  return p;
}

BigInt SymPoly::coefficient(const Exponents& e) const {
  Exponents key = e;
  trim(key);
  auto it = terms_.find(key);
  return it == terms_.end() ? BigInt(0) : it->second;
}

int SymPoly::variable_count() const {
  std::size_t m = 0;
  for (const auto& [e, c] : terms_) m = std::max(m, e.size());
  return static_cast<int>(m);
}

int SymPoly::degree_of(const Exponents& e) const {
  const bool weighted = alphabet_ == Alphabet::Chern || alphabet_ == Alphabet::Segre;
  int d = 0;
  for (std::size_t i = 0; i < e.size(); ++i) d += e[i] * (weighted ? static_cast<int>(i + 1) : 1);
  return d;
}

std::vector<int> SymPoly::degrees() const {
  std::set<int> ds;
  for (const auto& [e, c] : terms_) ds.insert(degree_of(e));
  return {ds.begin(), ds.end()};
}

void SymPoly::add_term(Exponents e, const BigInt& c) {
  if (c == 0) return;
  trim(e);
  auto [it, inserted] = terms_.try_emplace(std::move(e), c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void SymPoly::require_same(const SymPoly& o) const {
  if (o.alphabet_ != alphabet_) throw InvalidArgument("polynomials in different alphabets");
}

SymPoly& SymPoly::operator+=(const SymPoly& o) {
  require_same(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

SymPoly& SymPoly::operator-=(const SymPoly& o) {
  require_same(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

SymPoly& SymPoly::operator*=(const BigInt& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

SymPoly SymPoly::operator-() const {
  SymPoly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

SymPoly operator*(const SymPoly& a, const SymPoly& b) {
  a.require_same(b);
  SymPoly out(a.alphabet_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) out.add_term(multiply(ea, eb), ca * cb);
  return out;
}

SymPoly SymPoly::pow(int k) const {
  if (k < 0) throw InvalidArgument("negative power");
  SymPoly out = constant(alphabet_, 1);
  SymPoly base = *this;
  while (k > 0) {
    if (k & 1) out = out * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return out;
}

SymPoly SymPoly::substitute(Alphabet target, const std::function<SymPoly(int)>& image) const {
  // powers[i][k] = image(i+1)^k, filled lazily
  std::vector<std::vector<SymPoly>> powers;
  auto power = [&](std::size_t i, int k) -> const SymPoly& {
    if (powers.size() <= i) powers.resize(i + 1);
    auto& row = powers[i];
    if (row.empty()) {
      row.push_back(constant(target, 1));
      SymPoly img = image(static_cast<int>(i + 1));
      if (img.alphabet() != target) throw InvalidArgument("substitution image in the wrong alphabet");
      row.push_back(std::move(img));
    }
    while (static_cast<int>(row.size()) <= k) row.push_back(row.back() * row[1]);
    return row[static_cast<std::size_t>(k)];
  };
  SymPoly out(target);
  for (const auto& [e, c] : terms_) {
    SymPoly term = constant(target, c);
    for (std::size_t i = 0; i < e.size() && !term.is_zero(); ++i) {
      if (e[i] > 0) term = term * power(i, e[i]);
    }
    out += term;
  }
  return out;
}

SymPoly SymPoly::permute(const std::vector<int>& perm) const {
  SymPoly out(alphabet_);
  for (const auto& [e, c] : terms_) {
    Exponents moved(std::max(e.size(), perm.size()), 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      const std::size_t to = i < perm.size() ? static_cast<std::size_t>(perm[i] - 1) : i;
      moved[to] += e[i];
    }
    out.add_term(std::move(moved), c);
  }
  return out;
}

SymPoly SymPoly::relabel(Alphabet target) const {
  auto degree_one = [](Alphabet a) { return a == Alphabet::Root || a == Alphabet::Xi; };
  if (!degree_one(alphabet_) || !degree_one(target)) {
    throw InvalidArgument("relabel is only defined between degree-one alphabets");
  }
  SymPoly out(target);
  out.terms_ = terms_;
  return out;
}

SymPoly SymPoly::exact_divide(const SymPoly& divisor) const {
  require_same(divisor);
  if (divisor.is_zero()) throw InvalidArgument("division by the zero polynomial");
  const auto& [lead_e, lead_c] = *divisor.terms_.rbegin();
  SymPoly rest = *this;
  SymPoly quotient(alphabet_);
  while (!rest.is_zero()) {
    const auto [e, c] = *rest.terms_.rbegin();
    if (!divides(lead_e, e) || c % lead_c != 0) {
      throw InternalError("polynomial division is not exact");
    }
    Exponents q(e.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) q[i] = e[i] - (i < lead_e.size() ? lead_e[i] : 0);
    const SymPoly t = monomial(alphabet_, q, c / lead_c);
    quotient += t;
    rest -= t * divisor;
  }
  return quotient;
}

std::string SymPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // highest monomials first
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    const bool negative = c < 0;
    const BigInt mag = negative ? BigInt(-c) : c;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    if (mag != 1 || e.empty()) {
      os << mag;
      wrote = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (wrote) os << "*";
      os << variable_prefix(alphabet_) << (i + 1);
      if (e[i] > 1) os << "^" << e[i];
      wrote = true;
    }
  }
  return os.str();
}

}  // namespace cwpos
