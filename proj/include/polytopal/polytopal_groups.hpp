#pragma once

// Generators of the graded automorphism group of k[P]: elementary
// automorphisms attached to column vectors, the embedded torus and the
// lattice symmetries of P, together with words in these generators.

#include "polytopal/graded_map.hpp"

#include <variant>
#include <vector>

namespace polytopal {

/// v with base facet F: x + v lies in P for every x in L_P off F.
struct ColumnVector {
  IntVector vector;
  std::size_t base_facet;  // index into P.facets()
  bool operator==(const ColumnVector&) const = default;
  auto operator<=>(const ColumnVector&) const = default;
};

bool is_column_vector(const LatticePolytope& p, const ColumnVector& c);
/// All column vectors, sorted by vector and then by facet.
std::vector<ColumnVector> column_vectors(const LatticePolytope& p);
/// Column vectors with the given base facet.
std::vector<ColumnVector> column_vectors_for_facet(const LatticePolytope& p, std::size_t facet);
/// Lattice points of the facet with the given index.
std::vector<IntVector> facet_lattice_points(const LatticePolytope& p, std::size_t facet);

/// Largest m >= 0 with x + m (v, 0) in S_P, for x in S_P given in Z^{n+1}.
Int height(const LatticePolytope& p, const ColumnVector& c, std::span<const Int> x);

/// x -> (1 + lambda v)^{ht_v(x)} x on the generators.
GradedAlgebraMap elementary(const LatticePolytope& p, const ColumnVector& c, const Rational& lambda, Int degree_bound);

/// Basis of gp(S_P) on which torus elements act diagonally.
LatticeSubgroup torus_basis(const LatticePolytope& p);
/// chi_xi(x) for x in gp(S_P).
Rational character(const LatticePolytope& p, std::span<const Rational> xi, std::span<const Int> x);
/// x -> chi_xi(x) x; xi has rank(S_P) nonzero entries.
GradedAlgebraMap toric(const LatticePolytope& p, std::span<const Rational> xi, Int degree_bound);

/// Unimodular affine maps of aff(P) carrying L_P onto itself, sorted.
std::vector<AffineLatticeMap> symmetries(const LatticePolytope& p);
GradedAlgebraMap symmetry_map(const LatticePolytope& p, const AffineLatticeMap& sigma, Int degree_bound);

struct ElementaryFactor {
  ColumnVector column;
  Rational lambda;
  bool operator==(const ElementaryFactor&) const = default;
};
struct ToricFactor {
  RationalVector xi;
  bool operator==(const ToricFactor&) const = default;
};
struct SymmetryFactor {
  AffineLatticeMap map;
  bool operator==(const SymmetryFactor&) const = default;
};
using WordFactor = std::variant<ElementaryFactor, ToricFactor, SymmetryFactor>;

GradedAlgebraMap factor_map(const LatticePolytope& p, const WordFactor& f, Int degree_bound);
WordFactor inverse_factor(const LatticePolytope& p, const WordFactor& f);

/// gamma = f_1 o f_2 o ... o f_r; every factor is validated on construction
/// and the composite is available as a verified map.
class AutomorphismWord {
 public:
  AutomorphismWord(LatticePolytope p, std::vector<WordFactor> factors, Int degree_bound);

  const LatticePolytope& polytope() const { return polytope_; }
  const std::vector<WordFactor>& factors() const { return factors_; }
  Int degree_bound() const { return degree_bound_; }
  const GradedAlgebraMap& map() const { return map_; }
  bool empty() const { return factors_.empty(); }

  AutomorphismWord inverse() const;
  /// (*this) o other
  AutomorphismWord then(const AutomorphismWord& other) const;

  bool operator==(const AutomorphismWord& o) const {
    return polytope_ == o.polytope_ && factors_ == o.factors_ && degree_bound_ == o.degree_bound_;
  }

 private:
  LatticePolytope polytope_;
  std::vector<WordFactor> factors_;
  Int degree_bound_;
  GradedAlgebraMap map_;
};

/// Applies the factors right to left to an element supported on S_P.
LaurentPolynomial evaluate_word(const AutomorphismWord& w, const LaurentPolynomial& f);
/// h^alpha = alpha o h o alpha^{-1}.
GradedAlgebraMap conjugate(const GradedAlgebraMap& h, const AutomorphismWord& alpha);

/// Syntactic check of the shape alpha_1 o ... o alpha_r o tau o sigma: blocks
/// of elementary factors with pairwise different base facets whose lattice
/// point counts do not decrease, then at most one toric and one symmetry factor.
bool is_normal_form(const AutomorphismWord& w);

}  // namespace polytopal
