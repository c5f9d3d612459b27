#pragma once

// Positively graded affine semigroups, their groups of differences,
// membership, normality, homogeneity, Veronese subsemigroups and toric
// relations.

#include "polytopal/arith.hpp"
#include "polytopal/lattice_geometry.hpp"
#include "polytopal/matrix.hpp"

#include <optional>
#include <vector>

namespace polytopal {

/// A subgroup of Z^d given by a canonical Hermite basis (rows).
struct LatticeSubgroup {
  IntMatrix basis;
  std::size_t rank() const { return basis.rows(); }
  bool contains(std::span<const Int> x) const;
  /// Coordinates with respect to the basis rows.
  std::optional<IntVector> coordinates(std::span<const Int> x) const;
  bool operator==(const LatticeSubgroup&) const = default;
};
LatticeSubgroup lattice_span(const std::vector<IntVector>& vectors, std::size_t ambient_dim);

class AffineSemigroup {
 public:
  /// Generators must be distinct and the grading strictly positive on them.
  AffineSemigroup(std::vector<IntVector> generators, IntVector grading);

  std::size_t ambient_dim() const { return grading_.size(); }
  const std::vector<IntVector>& generators() const { return generators_; }
  const IntVector& grading() const { return grading_; }
  Int degree(std::span<const Int> x) const { return dot(grading_, x); }

  /// A multiset of generator indices summing to x, if x lies in S.
  std::optional<std::vector<std::size_t>> factorization(std::span<const Int> x) const;
  bool contains(std::span<const Int> x) const { return factorization(x).has_value(); }

  /// x lies in the real cone spanned by the generators.
  bool in_cone(std::span<const Int> x) const;
  /// Homogeneous inequalities (row . x >= 0) and equations (row . x == 0) of the cone.
  const std::vector<IntVector>& cone_inequalities() const { return cone_ineq_; }
  const std::vector<IntVector>& cone_equations() const { return cone_eq_; }

  bool operator==(const AffineSemigroup& o) const {
    return generators_ == o.generators_ && grading_ == o.grading_;
  }

 private:
  std::vector<IntVector> generators_;
  IntVector grading_;
  std::vector<IntVector> cone_ineq_;
  std::vector<IntVector> cone_eq_;
};

/// Facets of the cone over S: a primitive inequality and the generators on the facet.
struct ConeFacet {
  IntVector normal;
  std::vector<std::size_t> generators;
};
std::vector<ConeFacet> cone_facets(const AffineSemigroup& s);

/// S_P: generators (x, 1) for x in L_P in lattice-point order; grading = last coordinate.
AffineSemigroup polytopal_semigroup(const LatticePolytope& p);
IntVector lift(std::span<const Int> x, Int degree = 1);

LatticeSubgroup difference_group(const AffineSemigroup& s);
std::size_t rank(const AffineSemigroup& s);

/// All distinct sums of d generators, sorted.
std::vector<IntVector> degree_elements(const AffineSemigroup& s, Int d);

struct NormalityWitness {
  IntVector element;  // in gp(S) and the cone, not in S
  Int multiple;       // multiple * element lies in S
};
struct NormalityResult {
  bool normal;
  Int degree_bound;
  std::optional<NormalityWitness> witness;
};
/// Checks every element of the normalisation with grading <= bound
/// (default rank(S) - 1, at least 1).
NormalityResult normality_check(const AffineSemigroup& s, std::optional<Int> degree_bound = std::nullopt);
/// Elements of gp(S) in the cone with the given grading value.
std::vector<IntVector> normalization_elements(const AffineSemigroup& s, Int grading_value);

/// Subsemigroup generated by degree_elements(s, n). When the grading is a
/// coordinate functional the new generators are rescaled to degree 1.
AffineSemigroup veronese(const AffineSemigroup& s, Int n);
/// veronese(S_P, n) coincides with S_{nP}.
bool veronese_is_dilation(const LatticePolytope& p, Int n);

/// Generators not expressible as a sum of two nonzero elements of S.
std::vector<IntVector> irreducible_elements(const AffineSemigroup& s);
bool is_homogeneous(const AffineSemigroup& s);

/// left and right are sorted multisets of generator indices with equal sums.
struct BinomialRelation {
  std::vector<std::size_t> left;
  std::vector<std::size_t> right;
  std::size_t degree() const { return left.size(); }
  bool operator==(const BinomialRelation&) const = default;
};
struct RelationSet {
  std::vector<BinomialRelation> relations;
  Int degree_bound;
};
/// Generating set of the toric relations up to the degree bound: every
/// relation of degree <= bound follows from the returned ones.
RelationSet toric_relations(const AffineSemigroup& s, Int degree_bound);
/// All multisets of d generator indices grouped by their sum, in sorted order.
std::vector<std::vector<std::vector<std::size_t>>> degree_fibers(const AffineSemigroup& s, Int d);
IntVector multiset_sum(const AffineSemigroup& s, const std::vector<std::size_t>& multiset);

}  // namespace polytopal
