#pragma once

// Elements of polytopal algebras k[P] and graded homomorphisms between them.
//
// An element of k[P] is a Laurent polynomial in n+1 variables supported on
// S_P; the generator attached to the lattice point x is the monomial (x, 1).
// A graded homomorphism k[P] -> k[P'] is fixed by the images of the degree-1
// generators, each a rational combination of degree-1 generators of k[P'].

#include "polytopal/laurent.hpp"
#include "polytopal/semigroup.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace polytopal {

/// Monomial (x, 1) for the lattice point with the given index.
LaurentPolynomial generator(const LatticePolytope& p, std::size_t index);
LaurentPolynomial generator_product(const LatticePolytope& p, const std::vector<std::size_t>& multiset);
/// Coefficients of a degree-1 element on the generators of k[P]; throws if
/// the element is not supported on E_P.
RationalVector degree_one_coordinates(const LatticePolytope& p, const LaurentPolynomial& f);
LaurentPolynomial from_degree_one_coordinates(const LatticePolytope& p, std::span<const Rational> c);

/// dim P + 1, at least 2.
Int default_degree_bound(const LatticePolytope& p);

struct RelationFailure {
  BinomialRelation relation;
  LaurentPolynomial left_image;
  LaurentPolynomial right_image;
};

class RelationViolation : public std::runtime_error {
 public:
  explicit RelationViolation(RelationFailure failure);
  const RelationFailure& failure() const { return failure_; }

 private:
  RelationFailure failure_;
};

class GradedAlgebraMap {
 public:
  const LatticePolytope& source() const { return source_; }
  const LatticePolytope& target() const { return target_; }
  /// Images of the generators, indexed like source().lattice_points().
  const std::vector<LaurentPolynomial>& images() const { return images_; }
  const LaurentPolynomial& image(std::size_t i) const { return images_.at(i); }
  Int degree_bound() const { return degree_bound_; }
  bool is_endomorphism() const { return source_ == target_; }

  LaurentPolynomial apply_product(const std::vector<std::size_t>& multiset) const;
  /// Image of an element supported on S_source.
  LaurentPolynomial apply(const LaurentPolynomial& f) const;
  /// (*this) o inner; the bound is the smaller of the two.
  GradedAlgebraMap compose(const GradedAlgebraMap& inner) const;
  /// Images as a matrix: row i holds the coordinates of image(i).
  RationalMatrix matrix() const;

  bool operator==(const GradedAlgebraMap& o) const {
    return source_ == o.source_ && target_ == o.target_ && images_ == o.images_;
  }

  static GradedAlgebraMap identity(const LatticePolytope& p, Int degree_bound);

 private:
  GradedAlgebraMap(LatticePolytope source, LatticePolytope target, std::vector<LaurentPolynomial> images, Int bound);
  friend GradedAlgebraMap check_homomorphism(const LatticePolytope&, const LatticePolytope&,
                                             std::vector<LaurentPolynomial>, const RelationSet&);

  LatticePolytope source_;
  LatticePolytope target_;
  std::vector<LaurentPolynomial> images_;
  Int degree_bound_;
};

/// The first relation whose two sides have different images, if any.
std::optional<RelationFailure> find_relation_violation(const LatticePolytope& target,
                                                       const std::vector<LaurentPolynomial>& images,
                                                       const RelationSet& relations);
/// Validated map; throws RelationViolation or InvalidInput.
GradedAlgebraMap check_homomorphism(const LatticePolytope& source, const LatticePolytope& target,
                                    std::vector<LaurentPolynomial> images, const RelationSet& relations);
GradedAlgebraMap check_homomorphism(const LatticePolytope& source, const LatticePolytope& target,
                                    std::vector<LaurentPolynomial> images, Int degree_bound);
GradedAlgebraMap check_homomorphism(const LatticePolytope& p, std::vector<LaurentPolynomial> images, Int degree_bound);

/// Map sending each generator to scalar * (target point, 1), or to 0 for an empty entry.
GradedAlgebraMap monomial_map(const LatticePolytope& source, const LatticePolytope& target,
                              const std::vector<std::optional<std::pair<Rational, IntVector>>>& images,
                              Int degree_bound);

}  // namespace polytopal
