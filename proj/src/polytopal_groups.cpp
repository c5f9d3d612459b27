#include "polytopal/polytopal_groups.hpp"

#include <algorithm>
#include <set>

namespace polytopal {

namespace {

IntVector direction_lift(std::span<const Int> v) { return lift(v, 0); }

template <class... F>
struct Overloaded : F... {
  using F::operator()...;
};
template <class... F>
Overloaded(F...) -> Overloaded<F...>;

}  // namespace

bool is_column_vector(const LatticePolytope& p, const ColumnVector& c) {
  if (c.vector.size() != p.ambient_dim() || is_zero(c.vector) || c.base_facet >= p.facets().size()) return false;
  for (const auto& x : p.lattice_points())
    if (p.facet_value(c.base_facet, x) != 0 && !p.contains(add(x, c.vector))) return false;
  return true;
}

std::vector<ColumnVector> column_vectors(const LatticePolytope& p) {
  std::set<IntVector> diffs;
  for (const auto& a : p.lattice_points())
    for (const auto& b : p.lattice_points())
      if (a != b) diffs.insert(sub(a, b));
  std::vector<ColumnVector> out;
  for (const auto& v : diffs)
    for (std::size_t f = 0; f < p.facets().size(); ++f) {
      ColumnVector c{v, f};
      if (is_column_vector(p, c)) out.push_back(c);
    }
  return out;
}

std::vector<ColumnVector> column_vectors_for_facet(const LatticePolytope& p, std::size_t facet) {
  std::vector<ColumnVector> out;
  for (auto& c : column_vectors(p))
    if (c.base_facet == facet) out.push_back(c);
  return out;
}

std::vector<IntVector> facet_lattice_points(const LatticePolytope& p, std::size_t facet) {
  std::vector<IntVector> out;
  for (const auto& x : p.lattice_points())
    if (p.facet_value(facet, x) == 0) out.push_back(x);
  return out;
}

Int height(const LatticePolytope& p, const ColumnVector& c, std::span<const Int> x) {
  if (x.size() != p.ambient_dim() + 1) throw InvalidInput("height: element has the wrong dimension");
  IntVector step = direction_lift(c.vector);
  IntVector cur(x.begin(), x.end());
  if (cur.back() == 1) {
    auto in_p = [&](const IntVector& y) { return p.is_lattice_point(std::span<const Int>(y.data(), y.size() - 1)); };
    if (!in_p(cur)) throw InvalidInput("height: " + to_string(cur) + " is not in S_P");
    Int m = 0;
    while (in_p(add(cur, step))) cur = add(cur, step), ++m;
    return m;
  }
  AffineSemigroup s = polytopal_semigroup(p);
  if (!s.contains(cur)) throw InvalidInput("height: " + to_string(cur) + " is not in S_P");
  Int m = 0;
  while (s.contains(add(cur, step))) cur = add(cur, step), ++m;
  return m;
}

GradedAlgebraMap elementary(const LatticePolytope& p, const ColumnVector& c, const Rational& lambda, Int degree_bound) {
  if (!is_column_vector(p, c)) throw InvalidInput("elementary: " + to_string(c.vector) + " is not a column vector for the given facet");
  std::vector<LaurentPolynomial> images;
  for (const auto& x : p.lattice_points()) {
    IntVector e = lift(x);
    Int h = height(p, c, e);
    LaurentPolynomial img(p.ambient_dim() + 1);
    for (Int j = 0; j <= h; ++j) {
      Rational coeff = binomial(h, j) * power(lambda, j);
      if (coeff != 0) img.add_term(add(e, scale(direction_lift(c.vector), j)), coeff);
    }
    images.push_back(std::move(img));
  }
  return check_homomorphism(p, std::move(images), degree_bound);
}

LatticeSubgroup torus_basis(const LatticePolytope& p) { return difference_group(polytopal_semigroup(p)); }

Rational character(const LatticePolytope& p, std::span<const Rational> xi, std::span<const Int> x) {
  auto basis = torus_basis(p);
  if (xi.size() != basis.rank()) throw InvalidInput("torus element must have rank(S_P) entries");
  auto c = basis.coordinates(x);
  if (!c) throw InvalidInput("character: " + to_string(x) + " is not in gp(S_P)");
  Rational out = 1;
  for (std::size_t i = 0; i < c->size(); ++i) out *= power(xi[i], (*c)[i]);
  return out;
}

GradedAlgebraMap toric(const LatticePolytope& p, std::span<const Rational> xi, Int degree_bound) {
  for (const auto& q : xi)
    if (q == 0) throw InvalidInput("toric: torus entries must be nonzero");
  std::vector<LaurentPolynomial> images;
  for (const auto& x : p.lattice_points()) {
    IntVector e = lift(x);
    images.push_back(LaurentPolynomial::monomial(e, character(p, xi, e)));
  }
  return check_homomorphism(p, std::move(images), degree_bound);
}

std::vector<AffineLatticeMap> symmetries(const LatticePolytope& p) { return all_affine_lattice_isos(p, p); }

GradedAlgebraMap symmetry_map(const LatticePolytope& p, const AffineLatticeMap& sigma, Int degree_bound) {
  std::vector<LaurentPolynomial> images;
  std::set<IntVector> hit;
  for (const auto& x : p.lattice_points()) {
    IntVector y = sigma.apply(x);
    if (!p.point_index(y)) throw InvalidInput("symmetry does not preserve L_P");
    hit.insert(y);
    images.push_back(LaurentPolynomial::monomial(lift(y)));
  }
  if (hit.size() != p.lattice_points().size()) throw InvalidInput("symmetry is not a bijection of L_P");
  return check_homomorphism(p, std::move(images), degree_bound);
}

GradedAlgebraMap factor_map(const LatticePolytope& p, const WordFactor& f, Int degree_bound) {
  return std::visit(Overloaded{
                        [&](const ElementaryFactor& e) { return elementary(p, e.column, e.lambda, degree_bound); },
                        [&](const ToricFactor& t) { return toric(p, t.xi, degree_bound); },
                        [&](const SymmetryFactor& s) { return symmetry_map(p, s.map, degree_bound); },
                    },
                    f);
}

WordFactor inverse_factor(const LatticePolytope& p, const WordFactor& f) {
  return std::visit(Overloaded{
                        [&](const ElementaryFactor& e) -> WordFactor { return ElementaryFactor{e.column, -e.lambda}; },
                        [&](const ToricFactor& t) -> WordFactor {
                          RationalVector inv;
                          for (const auto& q : t.xi) inv.push_back(1 / q);
                          return ToricFactor{inv};
                        },
                        [&](const SymmetryFactor& s) -> WordFactor {
                          // Inverse on aff(P), looked up among the symmetries.
                          for (const auto& cand : symmetries(p)) {
                            bool ok = true;
                            for (const auto& x : p.lattice_points())
                              if (cand.apply(s.map.apply(x)) != x) {
                                ok = false;
                                break;
                              }
                            if (ok) return SymmetryFactor{cand};
                          }
                          throw InvalidInput("symmetry factor has no inverse on L_P");
                        },
                    },
                    f);
}

namespace {

GradedAlgebraMap word_map(const LatticePolytope& p, const std::vector<WordFactor>& factors, Int degree_bound) {
  GradedAlgebraMap out = GradedAlgebraMap::identity(p, degree_bound);
  for (const auto& f : factors) out = out.compose(factor_map(p, f, degree_bound));
  return out;
}

}  // namespace

AutomorphismWord::AutomorphismWord(LatticePolytope p, std::vector<WordFactor> factors, Int degree_bound)
    : polytope_(std::move(p)),
      factors_(std::move(factors)),
      degree_bound_(degree_bound),
      map_(word_map(polytope_, factors_, degree_bound)) {}

AutomorphismWord AutomorphismWord::inverse() const {
  std::vector<WordFactor> inv;
  for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) inv.push_back(inverse_factor(polytope_, *it));
  return AutomorphismWord(polytope_, std::move(inv), degree_bound_);
}

AutomorphismWord AutomorphismWord::then(const AutomorphismWord& other) const {
  if (!(other.polytope_ == polytope_)) throw InvalidInput("words act on different polytopes");
  auto f = factors_;
  f.insert(f.end(), other.factors_.begin(), other.factors_.end());
  return AutomorphismWord(polytope_, std::move(f), std::min(degree_bound_, other.degree_bound_));
}

LaurentPolynomial evaluate_word(const AutomorphismWord& w, const LaurentPolynomial& f) {
  LaurentPolynomial out = f;
  for (auto it = w.factors().rbegin(); it != w.factors().rend(); ++it)
    out = factor_map(w.polytope(), *it, w.degree_bound()).apply(out);
  return out;
}

GradedAlgebraMap conjugate(const GradedAlgebraMap& h, const AutomorphismWord& alpha) {
  return alpha.map().compose(h).compose(alpha.inverse().map());
}

bool is_normal_form(const AutomorphismWord& w) {
  const auto& p = w.polytope();
  std::size_t i = 0;
  const auto& f = w.factors();
  std::vector<std::size_t> block_facets;
  while (i < f.size() && std::holds_alternative<ElementaryFactor>(f[i])) {
    std::size_t facet = std::get<ElementaryFactor>(f[i]).column.base_facet;
    if (block_facets.empty() || block_facets.back() != facet) block_facets.push_back(facet);
    ++i;
  }
  if (i < f.size() && std::holds_alternative<ToricFactor>(f[i])) ++i;
  if (i < f.size() && std::holds_alternative<SymmetryFactor>(f[i])) ++i;
  if (i != f.size()) return false;
  std::set<std::size_t> distinct(block_facets.begin(), block_facets.end());
  if (distinct.size() != block_facets.size()) return false;
  for (std::size_t k = 1; k < block_facets.size(); ++k)
    if (facet_lattice_points(p, block_facets[k - 1]).size() > facet_lattice_points(p, block_facets[k]).size())
      return false;
  return true;
}

}  // namespace polytopal
