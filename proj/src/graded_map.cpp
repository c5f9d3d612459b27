#include "polytopal/graded_map.hpp"

#include <algorithm>

namespace polytopal {

LaurentPolynomial generator(const LatticePolytope& p, std::size_t index) {
  return LaurentPolynomial::monomial(lift(p.lattice_points().at(index)));
}

LaurentPolynomial generator_product(const LatticePolytope& p, const std::vector<std::size_t>& multiset) {
  IntVector e(p.ambient_dim() + 1, 0);
  for (auto i : multiset) e = add(e, lift(p.lattice_points().at(i)));
  return LaurentPolynomial::monomial(e);
}

RationalVector degree_one_coordinates(const LatticePolytope& p, const LaurentPolynomial& f) {
  if (f.dim() != p.ambient_dim() + 1) throw InvalidInput("element has the wrong number of variables");
  RationalVector c(p.lattice_points().size(), Rational(0));
  for (const auto& [e, coeff] : f.terms()) {
    std::optional<std::size_t> idx;
    if (e.back() == 1) idx = p.point_index(std::span<const Int>(e.data(), e.size() - 1));
    if (!idx) throw InvalidInput("term " + to_string(e) + " is not a degree-1 generator");
    c[*idx] = coeff;
  }
  return c;
}

LaurentPolynomial from_degree_one_coordinates(const LatticePolytope& p, std::span<const Rational> c) {
  LaurentPolynomial f(p.ambient_dim() + 1);
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] != 0) f.add_term(lift(p.lattice_points()[i]), c[i]);
  return f;
}

Int default_degree_bound(const LatticePolytope& p) { return std::max<Int>(2, static_cast<Int>(p.dim()) + 1); }

namespace {

std::string describe(const RelationFailure& f) {
  auto side = [](const std::vector<std::size_t>& m) {
    std::string s;
    for (auto i : m) s += (s.empty() ? "" : "*") + std::string("g") + std::to_string(i);
    return s;
  };
  return "relation " + side(f.relation.left) + " = " + side(f.relation.right) + " violated: " +
         f.left_image.to_string() + " != " + f.right_image.to_string();
}

}  // namespace

RelationViolation::RelationViolation(RelationFailure failure)
    : std::runtime_error(describe(failure)), failure_(std::move(failure)) {}

GradedAlgebraMap::GradedAlgebraMap(LatticePolytope source, LatticePolytope target, std::vector<LaurentPolynomial> images,
                                   Int bound)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)), degree_bound_(bound) {}

LaurentPolynomial GradedAlgebraMap::apply_product(const std::vector<std::size_t>& multiset) const {
  LaurentPolynomial out = LaurentPolynomial::constant(target_.ambient_dim() + 1, 1);
  for (auto i : multiset) out = out * images_.at(i);
  return out;
}

LaurentPolynomial GradedAlgebraMap::apply(const LaurentPolynomial& f) const {
  if (f.dim() != source_.ambient_dim() + 1) throw InvalidInput("apply: element has the wrong number of variables");
  AffineSemigroup s = polytopal_semigroup(source_);
  LaurentPolynomial out(target_.ambient_dim() + 1);
  for (const auto& [e, c] : f.terms()) {
    auto m = s.factorization(e);
    if (!m) throw InvalidInput("apply: term " + to_string(e) + " is not supported on S_P");
    out += apply_product(*m).scaled(c);
  }
  return out;
}

GradedAlgebraMap GradedAlgebraMap::compose(const GradedAlgebraMap& inner) const {
  if (!(inner.target_ == source_)) throw InvalidInput("compose: target of inner map differs from source");
  std::vector<LaurentPolynomial> out;
  for (const auto& img : inner.images_) {
    auto c = degree_one_coordinates(source_, img);
    LaurentPolynomial f(target_.ambient_dim() + 1);
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c[i] != 0) f += images_[i].scaled(c[i]);
    out.push_back(std::move(f));
  }
  return GradedAlgebraMap(inner.source_, target_, std::move(out), std::min(degree_bound_, inner.degree_bound_));
}

RationalMatrix GradedAlgebraMap::matrix() const {
  RationalMatrix m(images_.size(), target_.lattice_points().size());
  for (std::size_t i = 0; i < images_.size(); ++i) {
    auto c = degree_one_coordinates(target_, images_[i]);
    for (std::size_t j = 0; j < c.size(); ++j) m(i, j) = c[j];
  }
  return m;
}

GradedAlgebraMap GradedAlgebraMap::identity(const LatticePolytope& p, Int degree_bound) {
  std::vector<LaurentPolynomial> images;
  for (std::size_t i = 0; i < p.lattice_points().size(); ++i) images.push_back(generator(p, i));
  return GradedAlgebraMap(p, p, std::move(images), degree_bound);
}

std::optional<RelationFailure> find_relation_violation(const LatticePolytope& target,
                                                       const std::vector<LaurentPolynomial>& images,
                                                       const RelationSet& relations) {
  auto product = [&](const std::vector<std::size_t>& m) {
    LaurentPolynomial out = LaurentPolynomial::constant(target.ambient_dim() + 1, 1);
    for (auto i : m) out = out * images.at(i);
    return out;
  };
  for (const auto& r : relations.relations) {
    LaurentPolynomial l = product(r.left), rr = product(r.right);
    if (!(l == rr)) return RelationFailure{r, l, rr};
  }
  return std::nullopt;
}

GradedAlgebraMap check_homomorphism(const LatticePolytope& source, const LatticePolytope& target,
                                    std::vector<LaurentPolynomial> images, const RelationSet& relations) {
  if (images.size() != source.lattice_points().size())
    throw InvalidInput("expected " + std::to_string(source.lattice_points().size()) + " generator images, got " +
                       std::to_string(images.size()));
  for (const auto& img : images) degree_one_coordinates(target, img);
  if (auto f = find_relation_violation(target, images, relations)) throw RelationViolation(*f);
  return GradedAlgebraMap(source, target, std::move(images), relations.degree_bound);
}

GradedAlgebraMap check_homomorphism(const LatticePolytope& source, const LatticePolytope& target,
                                    std::vector<LaurentPolynomial> images, Int degree_bound) {
  return check_homomorphism(source, target, std::move(images),
                            toric_relations(polytopal_semigroup(source), degree_bound));
}

GradedAlgebraMap check_homomorphism(const LatticePolytope& p, std::vector<LaurentPolynomial> images, Int degree_bound) {
  return check_homomorphism(p, p, std::move(images), degree_bound);
}

GradedAlgebraMap monomial_map(const LatticePolytope& source, const LatticePolytope& target,
                              const std::vector<std::optional<std::pair<Rational, IntVector>>>& images,
                              Int degree_bound) {
  std::vector<LaurentPolynomial> out;
  for (const auto& img : images) {
    if (!img || img->first == 0) {
      out.emplace_back(target.ambient_dim() + 1);
      continue;
    }
    if (!target.point_index(img->second)) throw InvalidInput("monomial_map: " + to_string(img->second) + " is not in L_P");
    out.push_back(LaurentPolynomial::monomial(lift(img->second), img->first));
  }
  return check_homomorphism(source, target, std::move(out), degree_bound);
}

}  // namespace polytopal
