#pragma once

// Small hand-checked maps shared by the unit and acceptance suites.

#include "polytopal/retraction.hpp"

#include <stdexcept>

namespace polytopal::testkit {

inline LaurentPolynomial gen_at(const IntVector& x, Rational c = 1) { return LaurentPolynomial::monomial(lift(x), c); }

inline std::size_t facet_with_normal(const LatticePolytope& p, const IntVector& normal) {
  for (std::size_t i = 0; i < p.facets().size(); ++i)
    if (p.facets()[i].normal == normal) return i;
  throw std::runtime_error("no facet with normal " + to_string(normal));
}

inline LatticePolytope facet_polytope(const LatticePolytope& p, std::size_t f) {
  return LatticePolytope::hull(facet_lattice_points(p, f));
}

/// Endomorphism from (point, image) pairs; unlisted points go to 0.
inline GradedAlgebraMap endomorphism(const LatticePolytope& p,
                                     const std::vector<std::pair<IntVector, LaurentPolynomial>>& images, Int d) {
  std::vector<LaurentPolynomial> out(p.lattice_points().size(), LaurentPolynomial(p.ambient_dim() + 1));
  for (const auto& [x, f] : images) out.at(*p.point_index(x)) = f;
  return check_homomorphism(p, std::move(out), d);
}

/// join(7 Delta_1, 2 Delta_1) with A_i -> A_i and B_j -> A_{2j} + A_{2j+1}.
struct JoinRetraction {
  LatticePolytope p = join(segment(7), segment(2));
  IntVector a(Int i) const { return join_left(IntVector{i - 1}, 1); }
  IntVector b(Int j) const { return join_right(IntVector{j - 1}, 1); }

  GradedAlgebraMap map(Int d) const {
    std::vector<std::pair<IntVector, LaurentPolynomial>> im;
    for (Int i = 1; i <= 8; ++i) im.emplace_back(a(i), gen_at(a(i)));
    for (Int j = 1; j <= 3; ++j) im.emplace_back(b(j), gen_at(a(2 * j)) + gen_at(a(2 * j + 1)));
    return endomorphism(p, im, d);
  }

  /// P' = conv{(0,0),(7,0),(0,1),(4,1)}, the middle of the chain h = iota o pi o alpha o f.
  LatticePolytope middle() const { return LatticePolytope::hull({{0, 0}, {7, 0}, {0, 1}, {4, 1}}); }

  TamenessCertificate certificate(Int d) const {
    auto q = middle();
    std::vector<LaurentPolynomial> f_images;
    for (const auto& x : p.lattice_points()) f_images.push_back(x[2] == 0 ? gen_at({x[0], 0}) : gen_at({2 * x[1], 1}));
    auto f = check_homomorphism(p, q, f_images, d);
    auto bottom = facet_with_normal(q, {0, 1});
    AutomorphismWord alpha(q, {ElementaryFactor{{{1, -1}, bottom}, 1}, ElementaryFactor{{{2, -1}, bottom}, 1}}, d);
    auto edge = facet_polytope(q, bottom);
    std::vector<LaurentPolynomial> iota;
    for (const auto& y : edge.lattice_points()) iota.push_back(gen_at(a(y[0] + 1)));
    TamenessCertificate cert{map(d), {}, d, "join chain through P'"};
    cert.steps.push_back(MorphismStep{f});
    cert.steps.push_back(WordStep{alpha});
    cert.steps.push_back(FaceStep{q, edge});
    cert.steps.push_back(MorphismStep{check_homomorphism(edge, p, iota, d)});
    return cert;
  }
};

/// Unit square with W -> U and T -> V, fixing U and V.
inline GradedAlgebraMap square_vertical(Int d) {
  auto sq = box({1, 1});
  return endomorphism(
      sq, {{{0, 0}, gen_at({0, 0})}, {{1, 0}, gen_at({1, 0})}, {{0, 1}, gen_at({0, 0})}, {{1, 1}, gen_at({1, 0})}}, d);
}

}  // namespace polytopal::testkit
