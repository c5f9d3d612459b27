#include "polytopal/retraction.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>

namespace polytopal {

namespace {

template <class... F>
struct Overloaded : F... {
  using F::operator()...;
};
template <class... F>
Overloaded(F...) -> Overloaded<F...>;

// Coefficient matrix of a list of polynomials, one row each.
RationalMatrix coefficient_rows(const std::vector<LaurentPolynomial>& polys) {
  std::map<IntVector, std::size_t> col;
  for (const auto& f : polys)
    for (const auto& [e, c] : f.terms()) col.try_emplace(e, col.size());
  RationalMatrix m(polys.size(), col.size());
  for (std::size_t i = 0; i < polys.size(); ++i)
    for (const auto& [e, c] : polys[i].terms()) m(i, col.at(e)) = c;
  return m;
}

std::size_t poly_rank(const std::vector<LaurentPolynomial>& polys) {
  if (polys.empty()) return 0;
  return rank(coefficient_rows(polys));
}

std::size_t point_index_or_throw(const LatticePolytope& p, std::span<const Int> x) {
  auto i = p.point_index(x);
  if (!i) throw InvalidInput(to_string(x) + " is not a lattice point of the polytope");
  return *i;
}

void require_endomorphism(const GradedAlgebraMap& h, const char* what) {
  if (!h.is_endomorphism()) throw InvalidInput(std::string(what) + ": map is not an endomorphism");
}

LatticePolytope point_hull(const std::vector<IntVector>& points) { return LatticePolytope::hull(points); }

}  // namespace

bool check_idempotent(const GradedAlgebraMap& h) {
  require_endomorphism(h, "check_idempotent");
  return h.compose(h).images() == h.images();
}

ImageDimension image_dimension(const GradedAlgebraMap& h, Int trials, std::uint64_t seed) {
  if (trials < 1) throw InvalidInput("image_dimension: trials must be positive");
  const std::size_t vars = h.target().ambient_dim() + 1;
  const Int cap = static_cast<Int>(rank(polytopal_semigroup(h.source())));
  std::vector<std::vector<LaurentPolynomial>> partials;
  for (const auto& f : h.images()) {
    std::vector<LaurentPolynomial> row;
    for (std::size_t k = 0; k < vars; ++k) row.push_back(partial_derivative(f, k));
    partials.push_back(std::move(row));
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-40, 40), den(1, 9);
  Int best = 0;
  for (Int t = 0; t < trials && best < cap; ++t) {
    RationalVector point(vars);
    for (auto& q : point) {
      long a = 0;
      while (a == 0) a = num(rng);
      q = Rational(a, static_cast<unsigned long>(den(rng)));
      q.canonicalize();
    }
    RationalMatrix jac(partials.size(), vars);
    for (std::size_t i = 0; i < partials.size(); ++i)
      for (std::size_t k = 0; k < vars; ++k) jac(i, k) = evaluate(partials[i][k], point);
    best = std::max(best, static_cast<Int>(rank(jac)));
  }
  return ImageDimension{std::min(best, cap), trials, seed};
}

Int degree_one_image_dimension(const GradedAlgebraMap& h) { return static_cast<Int>(poly_rank(h.images())); }

Int codimension(const GradedAlgebraMap& h, Int trials, std::uint64_t seed) {
  return static_cast<Int>(rank(polytopal_semigroup(h.source()))) - image_dimension(h, trials, seed).dimension;
}

KernelMonomials kernel_monomials(const GradedAlgebraMap& h) {
  require_endomorphism(h, "kernel_monomials");
  const auto& p = h.source();
  KernelMonomials out;
  for (std::size_t i = 0; i < p.lattice_points().size(); ++i)
    if (h.image(i).is_zero()) out.zero_set.push_back(p.lattice_points()[i]);
  if (out.zero_set.empty()) {
    out.diagnostic = "no monomials in the kernel";
    return out;
  }
  std::set<IntVector> zero(out.zero_set.begin(), out.zero_set.end());
  for (auto& f : faces(p)) {
    std::set<IntVector> complement;
    for (const auto& x : p.lattice_points())
      if (!f.polytope.is_lattice_point(x)) complement.insert(x);
    if (complement != zero) continue;
    if (f.facets.size() == 1 && f.polytope.dim() + 1 == p.dim()) out.facet = f.facets[0];
    out.face = std::move(f);
    out.diagnostic = "zero set is the complement of a face";
    return out;
  }
  out.diagnostic = "zero set of " + std::to_string(out.zero_set.size()) + " points is not the complement of a face";
  return out;
}

GradedAlgebraMap face_projection(const LatticePolytope& p, const LatticePolytope& face, Int degree_bound) {
  if (!face_of(p, face)) throw InvalidInput("face_projection: not a face of the polytope");
  std::vector<LaurentPolynomial> images;
  for (const auto& x : p.lattice_points())
    images.push_back(face.is_lattice_point(x) ? LaurentPolynomial::monomial(lift(x)) : LaurentPolynomial(p.ambient_dim() + 1));
  return check_homomorphism(p, face, std::move(images), degree_bound);
}

GradedAlgebraMap face_retraction(const LatticePolytope& p, const LatticePolytope& face, Int degree_bound) {
  if (!face_of(p, face)) throw InvalidInput("face_retraction: not a face of the polytope");
  std::vector<LaurentPolynomial> images;
  for (const auto& x : p.lattice_points())
    images.push_back(face.is_lattice_point(x) ? LaurentPolynomial::monomial(lift(x)) : LaurentPolynomial(p.ambient_dim() + 1));
  return check_homomorphism(p, std::move(images), degree_bound);
}

namespace {

// Integer normals of span(directions).
IntMatrix plane_normals(const LatticeFibration& fib) {
  const std::size_t n = fib.polytope.ambient_dim();
  if (fib.directions.rows() == 0) return IntMatrix::identity(n);
  return integer_kernel(fib.directions);
}

IntMatrix stack_rows(const IntMatrix& a, const IntMatrix& b, std::size_t cols) {
  IntMatrix out(a.rows() + b.rows(), cols);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < cols; ++j) out(a.rows() + i, j) = b(i, j);
  return out;
}

IntMatrix rows_times(const IntMatrix& coeffs, std::size_t take, const IntMatrix& basis) {
  IntMatrix out(coeffs.rows(), basis.cols());
  for (std::size_t i = 0; i < coeffs.rows(); ++i)
    for (std::size_t k = 0; k < take; ++k)
      for (std::size_t j = 0; j < basis.cols(); ++j)
        out(i, j) = checked_add(out(i, j), checked_mul(coeffs(i, k), basis(k, j)));
  return out;
}

IntMatrix hnf_or_empty(const IntMatrix& m, std::size_t cols) {
  if (m.rows() == 0) return IntMatrix(0, cols);
  return hermite_normal_form(m);
}

// The unique point of (x + W) on H among the lattice points of P, or all candidates if not unique.
std::vector<IntVector> fibre_feet(const LatticeFibration& fib, std::span<const Int> x) {
  std::vector<IntVector> out;
  for (const auto& y : fib.polytope.lattice_points())
    if (in_base_plane(fib, y) && fib.w.contains(sub(x, y))) out.push_back(y);
  return out;
}

}  // namespace

bool in_base_plane(const LatticeFibration& fib, std::span<const Int> x) {
  IntMatrix normals = plane_normals(fib);
  IntVector d = sub(x, fib.base_point);
  for (std::size_t i = 0; i < normals.rows(); ++i)
    if (dot(normals.row(i), d) != 0) return false;
  return true;
}

FibrationCheck check_fibration(const LatticeFibration& fib) {
  FibrationCheck out;
  const auto& p = fib.polytope;
  const std::size_t n = p.ambient_dim();
  if (p.dim() != n) throw InvalidInput("lattice fibration: the polytope must be full-dimensional");
  if (fib.base_point.size() != n || fib.directions.cols() != n || fib.w.basis.cols() != n)
    throw InvalidInput("lattice fibration: dimension mismatch");
  const std::size_t dim_h = fib.directions.rows() ? rank(fib.directions) : 0;
  const std::size_t dim_w = fib.w.rank();
  out.dimension_ok = dim_h + dim_w == n;
  if (!out.dimension_ok)
    out.problems.push_back("dim W + dim H = " + std::to_string(dim_w + dim_h) + ", expected " + std::to_string(n));

  out.covering_ok = true;
  for (const auto& x : p.lattice_points()) {
    auto feet = fibre_feet(fib, x);
    if (feet.size() != 1) {
      out.covering_ok = false;
      out.problems.push_back("fibre of " + to_string(x) + " meets L_P cap H in " + std::to_string(feet.size()) + " points");
    }
  }

  // L = (L cap W) + (L cap H0) as a direct sum.
  std::vector<IntVector> diffs;
  for (const auto& x : p.lattice_points()) diffs.push_back(sub(x, p.lattice_points().front()));
  IntMatrix lb = lattice_span(diffs, n).basis;
  const std::size_t k = lb.rows();
  IntMatrix normals = plane_normals(fib);
  IntMatrix l_cap_h(0, n), l_cap_w(0, n);
  {
    // a * lb orthogonal to every normal.
    IntMatrix c(normals.rows(), k);
    for (std::size_t i = 0; i < normals.rows(); ++i)
      for (std::size_t j = 0; j < k; ++j) c(i, j) = dot(normals.row(i), lb.row(j));
    IntMatrix coeffs = normals.rows() ? integer_kernel(c) : IntMatrix::identity(k);
    l_cap_h = rows_times(coeffs, k, lb);
  }
  if (dim_w > 0) {
    // a * lb = b * wb
    IntMatrix m(n, k + dim_w);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < k; ++i) m(j, i) = lb(i, j);
      for (std::size_t i = 0; i < dim_w; ++i) m(j, k + i) = -fib.w.basis(i, j);
    }
    IntMatrix ker = integer_kernel(m);
    l_cap_w = rows_times(ker, k, lb);
  }
  IntMatrix both = stack_rows(l_cap_w, l_cap_h, n);
  const std::size_t rw = l_cap_w.rows() ? rank(l_cap_w) : 0, rh = l_cap_h.rows() ? rank(l_cap_h) : 0;
  out.direct_sum_ok = rw + rh == k && hnf_or_empty(both, n) == hnf_or_empty(lb, n);
  if (!out.direct_sum_ok) out.problems.push_back("L is not the direct sum of L cap W and L cap H0");
  return out;
}

LatticePolytope fibration_base(const LatticeFibration& fib) {
  std::vector<IntVector> pts;
  for (const auto& x : fib.polytope.lattice_points())
    if (in_base_plane(fib, x)) pts.push_back(x);
  if (pts.empty()) throw InvalidInput("lattice fibration: H contains no lattice point of P");
  return point_hull(pts);
}

LatticeFibration segmental_fibration(const LatticePolytope& p, IntVector point, IntVector direction, IntVector w) {
  const std::size_t n = p.ambient_dim();
  return LatticeFibration{p, std::move(point), IntMatrix::from_rows({std::move(direction)}, n),
                          lattice_span({std::move(w)}, n)};
}

GradedAlgebraMap fibration_projection(const LatticeFibration& fib, Int degree_bound) {
  auto check = check_fibration(fib);
  if (!check.valid()) throw InvalidInput("invalid lattice fibration: " + check.problems.front());
  LatticePolytope base = fibration_base(fib);
  std::vector<LaurentPolynomial> images;
  for (const auto& x : fib.polytope.lattice_points()) images.push_back(LaurentPolynomial::monomial(lift(fibre_feet(fib, x).front())));
  return check_homomorphism(fib.polytope, base, std::move(images), degree_bound);
}

GradedAlgebraMap fibration_retraction(const LatticeFibration& fib, Int degree_bound) {
  auto check = check_fibration(fib);
  if (!check.valid()) throw InvalidInput("invalid lattice fibration: " + check.problems.front());
  std::vector<LaurentPolynomial> images;
  for (const auto& x : fib.polytope.lattice_points()) images.push_back(LaurentPolynomial::monomial(lift(fibre_feet(fib, x).front())));
  return check_homomorphism(fib.polytope, std::move(images), degree_bound);
}

bool meets_interior(const LatticePolytope& p, const std::vector<IntVector>& points) {
  for (std::size_t f = 0; f < p.facets().size(); ++f)
    if (std::all_of(points.begin(), points.end(), [&](const IntVector& x) { return p.facet_value(f, x) == 0; }))
      return false;
  return true;
}

bool is_base(const GradedAlgebraMap& h, const std::vector<IntVector>& points) {
  require_endomorphism(h, "is_base");
  const auto& p = h.source();
  if (points.empty()) return false;
  std::vector<std::size_t> idx;
  std::vector<IntVector> lifts;
  for (const auto& x : points) {
    idx.push_back(point_index_or_throw(p, x));
    lifts.push_back(lift(x));
  }
  AffineSemigroup sx(lifts, lift(IntVector(p.ambient_dim(), 0)));
  AffineSemigroup sp = polytopal_semigroup(p);
  for (Int d = 1; d <= h.degree_bound(); ++d) {
    std::vector<LaurentPolynomial> sub_images, all_images;
    for (const auto& e : degree_elements(sx, d)) {
      auto f = *sx.factorization(e);
      std::vector<std::size_t> m;
      for (auto i : f) m.push_back(idx[i]);
      sub_images.push_back(h.apply_product(m));
    }
    if (poly_rank(sub_images) != sub_images.size()) return false;
    for (const auto& e : degree_elements(sp, d)) all_images.push_back(h.apply_product(*sp.factorization(e)));
    if (poly_rank(all_images) != sub_images.size()) return false;
  }
  return true;
}

namespace {

// Interior candidates first, then those fixed pointwise by h.
std::vector<std::vector<IntVector>> base_preference_order(const GradedAlgebraMap& h,
                                                          std::vector<std::vector<IntVector>> candidates) {
  const auto& p = h.source();
  auto rank_of = [&](const std::vector<IntVector>& x) {
    bool fixed = std::all_of(x.begin(), x.end(), [&](const IntVector& y) {
      return h.image(*p.point_index(y)) == LaurentPolynomial::monomial(lift(y));
    });
    return (meets_interior(p, x) ? 0 : 2) + (fixed ? 0 : 1);
  };
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](const auto& a, const auto& b) { return rank_of(a) < rank_of(b); });
  return candidates;
}

}  // namespace

BaseSearch find_base(const GradedAlgebraMap& h, Int trials, std::uint64_t seed) {
  require_endomorphism(h, "find_base");
  const auto& p = h.source();
  const auto& pts = p.lattice_points();
  BaseSearch out;
  const Int m = degree_one_image_dimension(h);
  const Int k = image_dimension(h, trials, seed).dimension;
  out.diagnostics.push_back("degree-1 image dimension " + std::to_string(m) + ", image dimension " + std::to_string(k));
  if (k < 1) return out;
  std::set<std::vector<IntVector>> candidates;
  // Cross sections through k affinely independent lattice points.
  std::vector<std::size_t> choice;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (static_cast<Int>(choice.size()) == k) {
      std::vector<IntVector> chosen;
      for (auto i : choice) chosen.push_back(pts[i]);
      LatticePolytope span = point_hull(chosen);
      if (static_cast<Int>(span.dim()) != k - 1) return;
      std::vector<IntVector> x;
      for (const auto& y : pts)
        if (span.in_affine_hull(y)) x.push_back(y);
      if (static_cast<Int>(x.size()) == m) candidates.insert(std::move(x));
      return;
    }
    for (std::size_t i = from; i < pts.size(); ++i) {
      choice.push_back(i);
      rec(i + 1);
      choice.pop_back();
    }
  };
  rec(0);
  if (k == 2 && p.dim() == 2 && p.ambient_dim() == 2)
    for (const auto& seg : segment_embeddings(p, m - 1)) {
      std::vector<IntVector> x;
      for (Int i = 0; i < m; ++i) x.push_back(add(seg.start, scale(seg.step, i)));
      std::sort(x.begin(), x.end());
      candidates.insert(std::move(x));
    }
  for (const auto& x : base_preference_order(h, {candidates.begin(), candidates.end()})) {
    ++out.candidates_tried;
    if (!is_base(h, x)) continue;
    out.witness = BaseWitness{x, point_hull(x), meets_interior(p, x)};
    return out;
  }
  out.diagnostics.push_back("no base among " + std::to_string(out.candidates_tried) + " candidates with " +
                            std::to_string(m) + " lattice points at degree bound " + std::to_string(h.degree_bound()));
  return out;
}

IntVector facet_valuation(const LatticePolytope& p, std::size_t facet) {
  if (facet >= p.facets().size()) throw InvalidInput("facet_valuation: no such facet");
  const auto& f = p.facets()[facet];
  IntVector v = f.normal;
  v.push_back(-f.offset);
  auto gp = torus_basis(p);
  Int g = 0;
  for (std::size_t i = 0; i < gp.rank(); ++i) g = gcd(g, dot(v, gp.basis.row(i)));
  if (g == 0) throw InvalidInput("facet_valuation: form vanishes on gp(S_P)");
  for (auto& x : v) x /= g;
  return v;
}

GradedAlgebraMap retraction_onto_base(const GradedAlgebraMap& h, const std::vector<IntVector>& points) {
  require_endomorphism(h, "retraction_onto_base");
  const auto& p = h.source();
  const std::size_t np = p.lattice_points().size();
  std::vector<std::size_t> idx;
  for (const auto& x : points) idx.push_back(point_index_or_throw(p, x));
  RationalMatrix a(np, idx.size());  // column i: coordinates of h(x_i)
  for (std::size_t i = 0; i < idx.size(); ++i) {
    auto c = degree_one_coordinates(p, h.image(idx[i]));
    for (std::size_t j = 0; j < np; ++j) a(j, i) = c[j];
  }
  std::vector<LaurentPolynomial> images;
  for (std::size_t k = 0; k < np; ++k) {
    auto b = degree_one_coordinates(p, h.image(k));
    auto sol = solve(a, b);
    if (!sol) throw ConstructionFailure("h(" + to_string(p.lattice_points()[k]) + ") is not in the span of the base images");
    LaurentPolynomial f(p.ambient_dim() + 1);
    for (std::size_t i = 0; i < idx.size(); ++i)
      if ((*sol)[i] != 0) f.add_term(lift(points[i]), (*sol)[i]);
    images.push_back(std::move(f));
  }
  return check_homomorphism(p, std::move(images), h.degree_bound());
}

GradedAlgebraMap step_map(const ChainStep& step, Int degree_bound) {
  return std::visit(Overloaded{
                        [&](const WordStep& s) { return s.word.map(); },
                        [&](const FaceStep& s) { return face_projection(s.source, s.face, degree_bound); },
                        [&](const FibrationStep& s) { return fibration_projection(s.fibration, degree_bound); },
                        [&](const MorphismStep& s) { return s.map; },
                    },
                    step);
}

std::string step_name(const ChainStep& step) {
  return std::visit(Overloaded{
                        [](const WordStep&) { return std::string("automorphism"); },
                        [](const FaceStep&) { return std::string("face retraction"); },
                        [](const FibrationStep&) { return std::string("fibration retraction"); },
                        [](const MorphismStep&) { return std::string("morphism"); },
                    },
                    step);
}

TamenessCertificate conjugated_certificate(const GradedAlgebraMap& original, const AutomorphismWord& alpha,
                                           ChainStep inner, const LatticePolytope& base,
                                           std::vector<LaurentPolynomial> embedding_images, std::string path) {
  const Int d = original.degree_bound();
  TamenessCertificate cert{original, {}, d, std::move(path)};
  if (!alpha.empty()) cert.steps.push_back(WordStep{alpha.inverse()});
  cert.steps.push_back(std::move(inner));
  cert.steps.push_back(MorphismStep{check_homomorphism(base, original.target(), std::move(embedding_images), d)});
  if (!alpha.empty()) cert.steps.push_back(WordStep{alpha});
  return cert;
}

std::optional<AutomorphismWord> certificate_conjugator(const TamenessCertificate& cert) {
  if (cert.steps.size() == 4 && std::holds_alternative<WordStep>(cert.steps.back()))
    return std::get<WordStep>(cert.steps.back()).word;
  return std::nullopt;
}

CertificateCheck verify_certificate(const TamenessCertificate& cert) {
  CertificateCheck out;
  const auto& h = cert.original;
  try {
    GradedAlgebraMap cur = GradedAlgebraMap::identity(h.source(), cert.degree_bound);
    for (std::size_t s = 0; s < cert.steps.size(); ++s) {
      if (const auto* f = std::get_if<FibrationStep>(&cert.steps[s])) {
        auto check = check_fibration(f->fibration);
        if (!check.valid()) {
          out.report = "step " + std::to_string(s) + ": invalid fibration: " + check.problems.front();
          return out;
        }
      }
      GradedAlgebraMap m = step_map(cert.steps[s], cert.degree_bound);
      if (!(m.source() == cur.target())) {
        out.report = "step " + std::to_string(s) + " (" + step_name(cert.steps[s]) + ") does not start where the previous one ends";
        return out;
      }
      cur = m.compose(cur);
    }
    if (!(cur.target() == h.target())) {
      out.report = "the chain ends in a different polytope";
      return out;
    }
    for (std::size_t i = 0; i < h.images().size(); ++i)
      if (!(cur.image(i) == h.image(i))) {
        out.divergent_generator = i;
        out.report = "generator " + to_string(h.source().lattice_points()[i]) + ": replay gives " +
                     cur.image(i).to_string() + ", original is " + h.image(i).to_string();
        return out;
      }
  } catch (const std::exception& e) {
    out.report = std::string("replay failed: ") + e.what();
    return out;
  }
  out.ok = true;
  out.report = "replay matches on all " + std::to_string(h.images().size()) + " generators";
  return out;
}

namespace {

void require_verified(const TamenessCertificate& cert) {
  auto check = verify_certificate(cert);
  if (!check.ok) throw ConstructionFailure("certificate does not replay: " + check.report);
}

}  // namespace

InteriorCorrection correct_interior_base(const GradedAlgebraMap& h, const BaseWitness& witness,
                                         std::optional<Int> search_degree) {
  require_endomorphism(h, "correct_interior_base");
  const auto& p = h.source();
  const Int dbound = h.degree_bound();
  if (!meets_interior(p, witness.points)) throw InvalidInput("correct_interior_base: the base does not meet the interior");
  if (!kernel_monomials(h).empty()) throw InvalidInput("correct_interior_base: h kills monomials");
  const auto& x_pts = witness.points;
  GradedAlgebraMap hp = retraction_onto_base(h, x_pts);

  const LatticeSubgroup gp = torus_basis(p);
  const std::size_t r = gp.rank();
  std::vector<IntVector> lifted, coords;
  for (const auto& x : x_pts) {
    lifted.push_back(lift(x));
    coords.push_back(*gp.coordinates(lifted.back()));
  }
  IntMatrix u = saturated_span(IntMatrix::from_rows(coords, r), r);
  const std::size_t k = u.rows();
  IntMatrix m = complete_to_unimodular(u, r);
  auto degree_of = [&](const IntVector& c) {
    Int d = 0;
    for (std::size_t i = 0; i < r; ++i) d = checked_add(d, checked_mul(c[i], gp.basis(i, p.ambient_dim())));
    return d;
  };
  for (std::size_t j = k; j < r; ++j) {
    IntVector row = m.row(j);
    IntVector adj = sub(row, scale(coords.front(), degree_of(row)));
    for (std::size_t i = 0; i < r; ++i) m(j, i) = adj[i];
  }
  IntMatrix minv = unimodular_inverse(m);

  AffineSemigroup sx(lifted, lift(IntVector(p.ambient_dim(), 0)));
  AffineSemigroup sp = polytopal_semigroup(p);
  const Int max_degree = search_degree.value_or(3 * static_cast<Int>(r));
  std::vector<Rational> scalars;
  std::vector<IntVector> w_rows;
  for (std::size_t j = k; j < r; ++j) {
    IntVector v(p.ambient_dim() + 1, 0);
    for (std::size_t i = 0; i < r; ++i) v = add(v, scale(gp.basis.row(i), m(j, i)));
    std::optional<std::pair<IntVector, Rational>> found;
    IntVector x_used;
    for (Int d = 1; d <= max_degree && !found; ++d)
      for (const auto& x : normalization_elements(sx, d)) {
        if (!sp.contains(add(x, v)) || !sp.contains(sub(x, v))) continue;
        LaurentPolynomial img = hp.apply(LaurentPolynomial::monomial(add(x, v)));
        if (img.size() != 1)
          throw ConstructionFailure("h(x v) = " + img.to_string() + " is not a monomial for x = " + to_string(x));
        found = std::make_pair(img.terms().begin()->first, img.terms().begin()->second);
        x_used = x;
        break;
      }
    if (!found) throw ConstructionFailure("no x with x v, x v^-1 in S_P up to degree " + std::to_string(max_degree));
    const auto& [x1, a] = *found;
    scalars.push_back(a);
    IntVector w = sub(add(v, x_used), x1);
    w.pop_back();
    w_rows.push_back(w);
  }

  RationalVector xi(r, Rational(1));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = k; j < r; ++j) xi[i] *= power(scalars[j - k], minv(i, j));
  ToricFactor tau{xi};
  AutomorphismWord tau_word(p, {tau}, dbound);

  IntMatrix dirs = point_hull(x_pts).hull_basis();
  LatticeFibration fib{p, x_pts.front(), dirs, lattice_span(w_rows, p.ambient_dim())};
  auto check = check_fibration(fib);
  if (!check.valid()) throw ConstructionFailure("recovered fibration is invalid: " + check.problems.front());
  GradedAlgebraMap corrected = conjugate(hp, tau_word);
  GradedAlgebraMap rho = fibration_retraction(fib, dbound);
  if (!(corrected == rho)) throw ConstructionFailure("toric correction does not produce the fibration retraction");

  LatticePolytope base = fibration_base(fib);
  GradedAlgebraMap hc = conjugate(h, tau_word);
  std::vector<LaurentPolynomial> iota;
  for (const auto& y : base.lattice_points()) iota.push_back(hc.image(point_index_or_throw(p, y)));
  AutomorphismWord alpha = tau_word.inverse();
  auto cert = conjugated_certificate(h, alpha, FibrationStep{fib}, base, iota, "interior base");
  require_verified(cert);
  return InteriorCorrection{tau, fib, std::move(iota), std::move(cert)};
}

FacetCorrection correct_facet_base(const GradedAlgebraMap& h, const BaseWitness& witness) {
  require_endomorphism(h, "correct_facet_base");
  const auto& p = h.source();
  const Int dbound = h.degree_bound();
  std::optional<std::size_t> facet;
  for (std::size_t f = 0; f < p.facets().size() && !facet; ++f)
    if (facet_lattice_points(p, f) == [&] {
          auto s = witness.points;
          std::sort(s.begin(), s.end());
          return s;
        }())
      facet = f;
  if (!facet) throw InvalidInput("correct_facet_base: the base is not the set of lattice points of a facet");
  if (!kernel_monomials(h).empty()) throw InvalidInput("correct_facet_base: h kills monomials; use the face retraction directly");
  const auto f_pts = facet_lattice_points(p, *facet);
  GradedAlgebraMap hp = retraction_onto_base(h, f_pts);

  std::optional<LaurentPolynomial> phi;
  for (std::size_t i = 0; i < p.lattice_points().size(); ++i) {
    const auto& x = p.lattice_points()[i];
    if (p.facet_value(*facet, x) == 0) continue;
    LaurentPolynomial diff = generator(p, i) - hp.image(i);
    phi = phi ? gcd(*phi, diff) : normalize_unit(diff);
  }
  if (!phi || phi->size() < 2) throw ConstructionFailure("not a facet-based codimension-1 retraction: the kernel gcd is trivial");

  // Shift N(phi) into P so that it touches F.
  const IntVector first = phi->terms().begin()->first;
  std::optional<LaurentPolynomial> shifted;
  for (const auto& y : p.lattice_points()) {
    IntVector t = sub(lift(y), first);
    LaurentPolynomial cand = phi->shifted(t);
    bool inside = true, touches = false;
    for (const auto& [e, c] : cand.terms()) {
      if (e.back() != 1 || !p.is_lattice_point(std::span<const Int>(e.data(), e.size() - 1))) {
        inside = false;
        break;
      }
      touches = touches || p.facet_value(*facet, std::span<const Int>(e.data(), e.size() - 1)) == 0;
    }
    if (inside && touches) {
      shifted = cand;
      break;
    }
  }
  if (!shifted) throw ConstructionFailure("N(phi) admits no shift into P meeting the facet");

  const IntVector valuation = facet_valuation(p, *facet);
  std::optional<std::pair<IntVector, Rational>> apex;
  std::vector<std::pair<IntVector, Rational>> on_facet;
  for (const auto& [e, c] : shifted->terms()) {
    IntVector x(e.begin(), e.end() - 1);
    if (dot(valuation, e) == 0) {
      on_facet.emplace_back(x, c);
    } else {
      if (apex) throw ConstructionFailure("N(phi) has more than one point off the facet");
      if (dot(valuation, e) != 1) throw ConstructionFailure("apex of N(phi) has height " + std::to_string(dot(valuation, e)));
      apex = std::make_pair(x, c);
    }
  }
  if (!apex) throw ConstructionFailure("N(phi) lies in the facet");

  std::vector<WordFactor> factors;
  for (const auto& [b, mu] : on_facet) {
    ColumnVector col{sub(b, apex->first), *facet};
    if (!is_column_vector(p, col)) throw ConstructionFailure(to_string(col.vector) + " is not a column vector for the facet");
    factors.push_back(ElementaryFactor{col, -mu / apex->second});
  }
  AutomorphismWord epsilon(p, factors, dbound);
  GradedAlgebraMap corrected = conjugate(hp, epsilon);
  LatticePolytope face = point_hull(f_pts);
  auto km = kernel_monomials(corrected);
  if (km.facet != facet || !(corrected == face_retraction(p, face, dbound)))
    throw ConstructionFailure("the elementary correction does not produce the facet retraction");

  GradedAlgebraMap hc = conjugate(h, epsilon);
  std::vector<LaurentPolynomial> iota;
  for (const auto& y : face.lattice_points()) iota.push_back(hc.image(point_index_or_throw(p, y)));
  auto cert = conjugated_certificate(h, epsilon.inverse(), FaceStep{p, face}, face, iota, "facet base");
  require_verified(cert);
  return FacetCorrection{*facet, *shifted, apex->first, epsilon, std::move(iota), std::move(cert)};
}

TamenessResult polygon_tameness(const GradedAlgebraMap& h, Int trials, std::uint64_t seed) {
  require_endomorphism(h, "polygon_tameness");
  const auto& p = h.source();
  if (p.dim() != 2 || p.ambient_dim() != 2) throw InvalidInput("polygon_tameness: the polytope must be a lattice polygon");
  if (!check_idempotent(h)) throw InvalidInput("polygon_tameness: h is not idempotent");
  const Int cd = codimension(h, trials, seed);
  if (cd != 1) throw InvalidInput("polygon_tameness: h has codimension " + std::to_string(cd));

  TamenessResult out;
  out.c = degree_one_image_dimension(h) - 1;
  const Int dbound = h.degree_bound();

  auto km = kernel_monomials(h);
  if (!km.empty()) {
    if (!km.facet) {
      out.diagnostics.push_back("monomial kernel: " + km.diagnostic);
      return out;
    }
    const LatticePolytope& face = km.face->polytope;
    std::vector<LaurentPolynomial> iota;
    for (const auto& y : face.lattice_points()) iota.push_back(h.image(point_index_or_throw(p, y)));
    TamenessCertificate cert{h, {}, dbound, "monomial kernel"};
    cert.steps.push_back(FaceStep{p, face});
    cert.steps.push_back(MorphismStep{check_homomorphism(face, p, std::move(iota), dbound)});
    require_verified(cert);
    out.diagnostics.push_back("kernel contains the monomials off a facet");
    out.certificate = std::move(cert);
    return out;
  }

  auto segments = segment_embeddings(p, out.c);
  out.diagnostics.push_back(std::to_string(segments.size()) + " embeddings of " + std::to_string(out.c) + "*Delta_1");
  std::vector<std::vector<IntVector>> point_sets;
  std::map<std::vector<IntVector>, SegmentEmbedding> segment_of;
  for (const auto& seg : segments) {
    std::vector<IntVector> x;
    for (Int i = 0; i <= out.c; ++i) x.push_back(add(seg.start, scale(seg.step, i)));
    std::sort(x.begin(), x.end());
    if (segment_of.emplace(x, seg).second) point_sets.push_back(std::move(x));
  }
  for (const auto& x : base_preference_order(h, point_sets)) {
    const auto& seg = segment_of.at(x);
    const std::string label = "segment " + to_string(seg.start) + " + t" + to_string(seg.step);
    if (!is_base(h, x)) {
      out.diagnostics.push_back(label + ": not a base; width along it " + std::to_string(lattice_width(p, seg.step)));
      continue;
    }
    BaseWitness w{x, point_hull(x), meets_interior(p, x)};
    try {
      TamenessCertificate cert = w.meets_interior ? correct_interior_base(h, w).certificate : correct_facet_base(h, w).certificate;
      out.diagnostics.push_back(label + ": base, " + cert.path);
      out.base_segment = seg;
      out.certificate = std::move(cert);
      return out;
    } catch (const ConstructionFailure& e) {
      out.diagnostics.push_back(label + ": base, correction failed: " + e.what());
    } catch (const InvalidInput& e) {
      out.diagnostics.push_back(label + ": base, correction not applicable: " + e.what());
    }
  }
  out.diagnostics.push_back("no certificate at degree bound " + std::to_string(dbound));
  return out;
}

bool segment_width_obstruction(const LatticePolytope& p, Int c) {
  if (p.dim() != 2 || p.ambient_dim() != 2) throw InvalidInput("segment_width_obstruction: the polytope must be a lattice polygon");
  if (c < 1) throw InvalidInput("segment_width_obstruction: c must be positive");
  for (const auto& e : polygon_edges(p))
    if (e.lattice_length() >= c) return false;
  Int diameter = 1;
  for (const auto& a : p.vertices())
    for (const auto& b : p.vertices())
      for (std::size_t i = 0; i < 2; ++i) diameter = std::max(diameter, std::abs(a[i] - b[i]));
  return minimal_lattice_width(p, diameter).width <= c;
}

}  // namespace polytopal
