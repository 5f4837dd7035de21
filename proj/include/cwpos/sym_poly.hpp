#pragma once

// Exact multivariate polynomials over Z in one formal alphabet.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace cwpos {

using BigInt = boost::multiprecision::cpp_int;

/// Variable families. Root and Xi variables have degree 1; Chern and Segre
/// variables c_i, s_i have degree i.
enum class Alphabet { Root, Xi, Chern, Segre };

std::string variable_prefix(Alphabet a);

class SymPoly {
 public:
  /// Exponent vector, index 0 <-> variable 1, without trailing zeros. The
  /// std::map order on these vectors is the lexicographic monomial order with
  /// variable 1 largest.
  using Exponents = std::vector<int>;
  using Terms = std::map<Exponents, BigInt>;

  explicit SymPoly(Alphabet a = Alphabet::Root) : alphabet_(a) {}

  static SymPoly constant(Alphabet a, const BigInt& c);
  /// v_i^power, i >= 1.
  static SymPoly variable(Alphabet a, int i, int power = 1);
  static SymPoly monomial(Alphabet a, Exponents e, const BigInt& c = 1);

  Alphabet alphabet() const { return alphabet_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  BigInt coefficient(const Exponents& e) const;
  /// Largest variable index that occurs.
  int variable_count() const;

  /// Weighted degree of a monomial (see Alphabet).
  int degree_of(const Exponents& e) const;
  /// Set of weighted degrees of the terms.
  std::vector<int> degrees() const;
  bool is_homogeneous() const { return degrees().size() <= 1; }

  void add_term(Exponents e, const BigInt& c);

  SymPoly& operator+=(const SymPoly& o);
  SymPoly& operator-=(const SymPoly& o);
  SymPoly& operator*=(const BigInt& s);
  friend SymPoly operator+(SymPoly a, const SymPoly& b) { return a += b; }
  friend SymPoly operator-(SymPoly a, const SymPoly& b) { return a -= b; }
  friend SymPoly operator*(SymPoly a, const BigInt& s) { return a *= s; }
  friend SymPoly operator*(const BigInt& s, SymPoly a) { return a *= s; }
  SymPoly operator-() const;
  friend SymPoly operator*(const SymPoly& a, const SymPoly& b);
  SymPoly pow(int k) const;

  bool operator==(const SymPoly& o) const { return alphabet_ == o.alphabet_ && terms_ == o.terms_; }

  /// Replaces variable i by image(i), an element of `target`.
  SymPoly substitute(Alphabet target, const std::function<SymPoly(int)>& image) const;
  /// v_i -> v_{perm[i-1]} for a permutation of 1..perm.size() (variables beyond
  /// perm.size() are fixed).
  SymPoly permute(const std::vector<int>& perm) const;
  /// Same polynomial read in another alphabet of degree-1 variables (Xi <-> Root).
  SymPoly relabel(Alphabet target) const;

  /// Exact quotient; throws InternalError if the division leaves a remainder.
  SymPoly exact_divide(const SymPoly& divisor) const;

  /// e.g. "c1*c2 - c3", "0" for the zero polynomial.
  std::string to_string() const;

 private:
  void require_same(const SymPoly& o) const;
  Alphabet alphabet_;
  Terms terms_;
};

}  // namespace cwpos
