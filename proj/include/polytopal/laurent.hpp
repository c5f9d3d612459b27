#pragma once

// Multivariate Laurent polynomials with rational coefficients.

#include "polytopal/arith.hpp"
#include "polytopal/lattice_geometry.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace polytopal {

class LaurentPolynomial {
 public:
  using Terms = std::map<IntVector, Rational>;

  explicit LaurentPolynomial(std::size_t dim = 0) : dim_(dim) {}
  static LaurentPolynomial monomial(IntVector exponent, Rational coeff = 1);
  static LaurentPolynomial constant(std::size_t dim, Rational c);
  /// Builds from (exponent, coefficient) pairs, summing repeats.
  static LaurentPolynomial from_terms(std::size_t dim, const std::vector<std::pair<IntVector, Rational>>& terms);

  std::size_t dim() const { return dim_; }
  /// Terms keyed by exponent in ascending lexicographic order.
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Rational coefficient(const IntVector& exponent) const;
  void add_term(const IntVector& exponent, const Rational& coeff);

  /// Lexicographically largest exponent and its coefficient.
  std::pair<IntVector, Rational> leading_term() const;
  IntVector min_exponents() const;
  IntVector max_exponents() const;
  std::vector<IntVector> support() const;
  /// Terms in graded lexicographic order (total degree, then lex).
  std::vector<std::pair<IntVector, Rational>> canonical_terms() const;

  LaurentPolynomial shifted(std::span<const Int> by) const;
  LaurentPolynomial scaled(const Rational& c) const;

  LaurentPolynomial operator+(const LaurentPolynomial& o) const;
  LaurentPolynomial operator-(const LaurentPolynomial& o) const;
  LaurentPolynomial operator-() const { return scaled(-1); }
  LaurentPolynomial operator*(const LaurentPolynomial& o) const;
  LaurentPolynomial& operator+=(const LaurentPolynomial& o);
  LaurentPolynomial& operator-=(const LaurentPolynomial& o);
  bool operator==(const LaurentPolynomial& o) const { return dim_ == o.dim_ && terms_ == o.terms_; }

  std::string to_string() const;

 private:
  std::size_t dim_;
  Terms terms_;
};

LaurentPolynomial multiply(const LaurentPolynomial& f, const LaurentPolynomial& g);
LaurentPolynomial power(const LaurentPolynomial& f, Int n);

/// Exact quotient f / g in the Laurent ring, if g divides f.
std::optional<LaurentPolynomial> exact_divide(const LaurentPolynomial& f, const LaurentPolynomial& g);

LatticePolytope newton_polytope(const LaurentPolynomial& f);

enum class TermClass { zero, monomial, binomial, segmentonomial, general };
TermClass classify(const LaurentPolynomial& f);
std::string to_string(TermClass c);

/// Unit normalisation: minimal exponent 0 in every coordinate and leading
/// (lexicographically largest) coefficient 1.
LaurentPolynomial normalize_unit(const LaurentPolynomial& f);

/// Greatest common divisor in the Laurent ring, unit-normalised.
LaurentPolynomial gcd(const LaurentPolynomial& f, const LaurentPolynomial& g);

Rational evaluate(const LaurentPolynomial& f, std::span<const Rational> point);
LaurentPolynomial partial_derivative(const LaurentPolynomial& f, std::size_t variable);

/// Rational roots (with multiplicity) of the univariate polynomial
/// sum_i coeffs[i] T^i, and the cofactor left after removing them.
struct RationalRoots {
  std::vector<std::pair<Rational, Int>> roots;
  std::vector<Rational> cofactor;
};
RationalRoots rational_roots(const std::vector<Rational>& coeffs);
std::string univariate_to_string(const std::vector<Rational>& coeffs, const std::string& var = "T");

}  // namespace polytopal
