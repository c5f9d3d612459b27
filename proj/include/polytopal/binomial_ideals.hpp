#pragma once

// Minimal primes of segmentonomial ideals in affine semigroup rings, their
// realisation as monomial quotient maps k[S] -> k[S'], the independence
// criterion for residue classes, and the variable-splitting transform.

#include "polytopal/laurent.hpp"
#include "polytopal/semigroup.hpp"

#include <optional>
#include <vector>

namespace polytopal {

enum class PrimeKind { monomial_face, character_kernel };
std::string to_string(PrimeKind k);

/// Image of one monomial: a nonzero scalar times t^v, or nothing (the monomial dies).
using MonomialImage = std::optional<std::pair<Rational, IntVector>>;

struct BinomialPrime {
  AffineSemigroup semigroup;
  PrimeKind kind;
  /// Facet normal of the cone (monomial_face only).
  IntVector face_normal;
  /// Primitive direction of N(f) in the ambient lattice (character_kernel only).
  IntVector direction;
  Rational root;
  Int multiplicity = 0;
  /// Image of each generator of S under the quotient map.
  std::vector<MonomialImage> projected_map;
  std::size_t image_dim = 0;
  /// Grading on the image lattice compatible with the one on S (empty when f is not homogeneous).
  IntVector image_grading;
  /// Monomials and binomials spanning the prime in generator-degree <= degree_bound.
  std::vector<LaurentPolynomial> generators;
  Int degree_bound = 0;
};

MonomialImage quotient_image(const BinomialPrime& p, std::span<const Int> s);
/// Applies the quotient map to a polynomial supported on S.
LaurentPolynomial apply_quotient(const BinomialPrime& p, const LaurentPolynomial& f);
/// Every generator of p maps to zero under q, up to the degree bound of p.
bool prime_contained_in(const BinomialPrime& p, const BinomialPrime& q);

struct SegmentonomialPrimes {
  std::vector<BinomialPrime> primes;
  /// Product of the factors of the univariate part without rational roots (degree 0 when fully split).
  std::vector<Rational> unsplit_factor;
  bool fully_split() const { return unsplit_factor.size() <= 1; }
};

/// Minimal primes over (f) in k[S] for a nonzero segmentonomial f supported
/// on S: facet primes containing f, and one character kernel per rational
/// root of the univariate part.
SegmentonomialPrimes segmentonomial_minimal_primes(const AffineSemigroup& s, const LaurentPolynomial& f,
                                                   Int degree_bound = 3);
/// Raises ExtensionRequired when some factor has no rational root.
std::vector<BinomialPrime> segmentonomial_minimal_primes_strict(const AffineSemigroup& s, const LaurentPolynomial& f,
                                                                Int degree_bound = 3);

/// Minimal primes over (f_1, ..., f_m): the primes of f_1, then recursively
/// those of the images of the remaining generators in each quotient.
/// recursion_depth defaults to the number of generators.
SegmentonomialPrimes segmentonomial_ideal_primes(const AffineSemigroup& s, const std::vector<LaurentPolynomial>& fs,
                                                 Int degree_bound = 3, std::optional<Int> recursion_depth = std::nullopt);

struct QuotientMap {
  AffineSemigroup semigroup;
  std::vector<MonomialImage> images;
};
/// k[S]/p = k[S'] with S' generated by the images of the generators of S.
/// Throws InvalidInput when two generators have proportional images but no
/// degree-1 generator of p relates them, or the other way round.
QuotientMap quotient_as_semigroup(const BinomialPrime& p);

/// True iff no two of the points differ by a multiple of the direction of N(f).
bool independence_test(const AffineSemigroup& s, const LaurentPolynomial& f, const std::vector<IntVector>& points);

struct SplitTransform {
  RationalMatrix matrix_t;
  std::size_t chosen_j;
  /// n x n; row i holds the coefficients of epsilon_j(X_{i+1}).
  RationalMatrix epsilon_matrix;
  /// (n+1) x n; row i holds the coefficients of nu(X_{i+1}).
  RationalMatrix nu_matrix;
};
/// T is (n+1) x (n+1) with row i holding Psi(X_{i+1}). epsilon_0 is the
/// top-left block; epsilon_j adds the last column of the top rows into column j.
RationalMatrix split_epsilon(const RationalMatrix& t, std::size_t j);
/// T with its last column dropped (j = 0) or added into column j.
RationalMatrix relabelled_rows(const RationalMatrix& t, std::size_t j);
/// Picks j = 0 when epsilon_0 is invertible and the first invertible epsilon_j otherwise.
SplitTransform split_variable(const RationalMatrix& t);

}  // namespace polytopal
