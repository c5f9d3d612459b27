#include "polytopal/binomial_ideals.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace polytopal {

std::string to_string(PrimeKind k) { return k == PrimeKind::monomial_face ? "monomial-face" : "character-kernel"; }

namespace {

MonomialImage multiply_images(const MonomialImage& a, const MonomialImage& b) {
  if (!a || !b) return std::nullopt;
  return std::make_pair(a->first * b->first, add(a->second, b->second));
}

MonomialImage unit_image(std::size_t dim) { return std::make_pair(Rational(1), IntVector(dim, 0)); }

struct UnionFind {
  std::vector<std::size_t> parent;
  std::size_t add() {
    parent.push_back(parent.size());
    return parent.size() - 1;
  }
  std::size_t find(std::size_t i) { return parent[i] == i ? i : parent[i] = find(parent[i]); }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a), b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

// Monomials and binomials spanning the kernel of a monomial map in
// generator-degree <= bound. Elements are grouped by image vector; a fibre
// edge is new only when it is not a translate of a lower-degree one.
std::vector<LaurentPolynomial> kernel_generators(const AffineSemigroup& s, const std::vector<MonomialImage>& map,
                                                 Int bound) {
  const std::size_t n = s.ambient_dim();
  const auto& gens = s.generators();
  std::map<IntVector, std::size_t> index;
  std::vector<IntVector> elements;
  std::vector<MonomialImage> images;
  UnionFind uf;
  std::vector<LaurentPolynomial> out;
  std::vector<IntVector> dead;  // minimal elements with zero image

  std::vector<std::size_t> frontier;
  for (Int d = 1; d <= bound; ++d) {
    std::vector<std::size_t> fresh;
    auto visit = [&](const IntVector& x, const MonomialImage& img) {
      if (index.count(x)) return;
      std::size_t id = uf.add();
      index[x] = id;
      elements.push_back(x);
      images.push_back(img);
      fresh.push_back(id);
    };
    if (d == 1) {
      for (std::size_t i = 0; i < gens.size(); ++i) visit(gens[i], map[i]);
    } else {
      for (auto e : frontier)
        for (std::size_t i = 0; i < gens.size(); ++i) visit(add(elements[e], gens[i]), multiply_images(images[e], map[i]));
      // Translates of existing fibre edges.
      for (auto e : frontier) {
        std::size_t r = uf.find(e);
        if (r == e) continue;
        for (const auto& g : gens) {
          auto a = index.find(add(elements[e], g));
          auto b = index.find(add(elements[r], g));
          if (a != index.end() && b != index.end()) uf.unite(b->second, a->second);
        }
      }
    }
    std::map<IntVector, std::vector<std::size_t>> fibres;
    for (auto id : fresh) {
      if (!images[id]) {
        const IntVector& x = elements[id];
        bool divisible = std::any_of(dead.begin(), dead.end(), [&](const IntVector& t) { return s.contains(sub(x, t)); });
        if (!divisible) {
          dead.push_back(x);
          out.push_back(LaurentPolynomial::monomial(x));
        }
        continue;
      }
      fibres[images[id]->second].push_back(id);
    }
    // Fresh elements may share a fibre with older ones.
    for (std::size_t id = 0; id < elements.size(); ++id)
      if (images[id] && std::find(fresh.begin(), fresh.end(), id) == fresh.end()) {
        auto it = fibres.find(images[id]->second);
        if (it != fibres.end()) it->second.push_back(id);
      }
    for (auto& [v, ids] : fibres) {
      std::sort(ids.begin(), ids.end());
      for (std::size_t k = 1; k < ids.size(); ++k) {
        std::size_t a = ids[0], b = ids[k];
        if (!uf.unite(a, b)) continue;
        // x^a - (c_a / c_b) x^b maps to zero.
        LaurentPolynomial g(n);
        g.add_term(elements[a], Rational(1));
        g.add_term(elements[b], -images[a]->first / images[b]->first);
        out.push_back(std::move(g));
      }
    }
    frontier = std::move(fresh);
  }
  return out;
}

BinomialPrime finish_prime(BinomialPrime p) {
  p.generators = kernel_generators(p.semigroup, p.projected_map, p.degree_bound);
  for (const auto& g : p.generators)
    if (!apply_quotient(p, g).is_zero())
      throw std::logic_error("kernel generator " + g.to_string() + " does not vanish in the quotient");
  return p;
}

void check_supported(const AffineSemigroup& s, const LaurentPolynomial& f) {
  if (f.dim() != s.ambient_dim()) throw InvalidInput("polynomial dimension does not match the semigroup");
  for (const auto& [e, c] : f.terms())
    if (!s.contains(e)) throw InvalidInput("term " + to_string(e) + " is not in S");
}

BinomialPrime face_prime(const AffineSemigroup& s, const ConeFacet& facet, Int bound) {
  BinomialPrime p{s, PrimeKind::monomial_face, facet.normal, {}, Rational(0), 1, {}, s.ambient_dim(), s.grading(), {}, bound};
  p.projected_map.assign(s.generators().size(), std::nullopt);
  for (auto i : facet.generators) p.projected_map[i] = std::make_pair(Rational(1), s.generators()[i]);
  return finish_prime(std::move(p));
}

}  // namespace

MonomialImage quotient_image(const BinomialPrime& p, std::span<const Int> s) {
  auto f = p.semigroup.factorization(s);
  if (!f) throw InvalidInput("quotient_image: " + to_string(s) + " is not in S");
  MonomialImage out = unit_image(p.image_dim);
  for (auto i : *f) out = multiply_images(out, p.projected_map[i]);
  return out;
}

LaurentPolynomial apply_quotient(const BinomialPrime& p, const LaurentPolynomial& f) {
  LaurentPolynomial out(p.image_dim);
  for (const auto& [e, c] : f.terms()) {
    auto img = quotient_image(p, e);
    if (img) out.add_term(img->second, c * img->first);
  }
  return out;
}

bool prime_contained_in(const BinomialPrime& p, const BinomialPrime& q) {
  if (!(p.semigroup == q.semigroup)) throw InvalidInput("primes live in different semigroup rings");
  return std::all_of(p.generators.begin(), p.generators.end(),
                     [&](const LaurentPolynomial& g) { return apply_quotient(q, g).is_zero(); });
}

SegmentonomialPrimes segmentonomial_minimal_primes(const AffineSemigroup& s, const LaurentPolynomial& f,
                                                   Int degree_bound) {
  if (degree_bound < 1) throw InvalidInput("degree bound must be positive");
  if (f.is_zero()) throw InvalidInput("segmentonomial_minimal_primes: f is zero");
  TermClass cls = classify(f);
  if (cls == TermClass::general) throw InvalidInput("f = " + f.to_string() + " is not a segmentonomial");
  check_supported(s, f);

  SegmentonomialPrimes out;
  for (const auto& facet : cone_facets(s)) {
    bool inside = std::all_of(f.terms().begin(), f.terms().end(),
                              [&](const auto& t) { return dot(facet.normal, t.first) > 0; });
    if (inside) out.primes.push_back(face_prime(s, facet, degree_bound));
  }
  if (cls == TermClass::monomial) return out;

  // Coordinates in gp(S); the support lies on a segment c_min + m * dir.
  const LatticeSubgroup gp = difference_group(s);
  const std::size_t r = gp.rank();
  std::vector<std::pair<IntVector, Rational>> coords;
  for (const auto& [e, c] : f.terms()) coords.emplace_back(*gp.coordinates(e), c);
  std::sort(coords.begin(), coords.end());
  const IntVector dir = primitive(sub(coords.back().first, coords.front().first));
  const Int steps = vector_gcd(sub(coords.back().first, coords.front().first));
  std::vector<Rational> u(static_cast<std::size_t>(steps) + 1, Rational(0));
  for (const auto& [c, a] : coords) {
    IntVector diff = sub(c, coords.front().first);
    std::size_t k = 0;
    while (dir[k] == 0) ++k;
    Int m = diff[k] / dir[k];
    if (scale(dir, m) != diff) throw InvalidInput("f = " + f.to_string() + " is not a segmentonomial");
    u[static_cast<std::size_t>(m)] += a;
  }

  IntMatrix unimodular = complete_to_unimodular(IntMatrix::from_rows({dir}, r), r);
  IntMatrix chart = unimodular_inverse(unimodular);
  IntVector ambient_dir(s.ambient_dim(), 0);
  for (std::size_t i = 0; i < r; ++i) ambient_dir = add(ambient_dir, scale(gp.basis.row(i), dir[i]));
  // Grading on the y_1..y_{r-1} coordinates, defined when dir has degree 0.
  IntVector image_grading;
  if (s.degree(ambient_dir) == 0) {
    IntVector basis_degrees(r);
    for (std::size_t i = 0; i < r; ++i) basis_degrees[i] = s.degree(gp.basis.row(i));
    IntVector w = multiply(unimodular, basis_degrees);
    image_grading.assign(w.begin() + 1, w.end());
  }

  RationalRoots roots = rational_roots(u);
  out.unsplit_factor = roots.cofactor;
  for (const auto& [a, mult] : roots.roots) {
    BinomialPrime p{s, PrimeKind::character_kernel, {}, ambient_dir, a, mult, {}, r - 1, image_grading, {}, degree_bound};
    for (const auto& g : s.generators()) {
      IntVector c = *gp.coordinates(g);
      IntVector y(r, 0);
      for (std::size_t j = 0; j < r; ++j)
        for (std::size_t i = 0; i < r; ++i) y[j] = checked_add(y[j], checked_mul(c[i], chart(i, j)));
      p.projected_map.emplace_back(std::make_pair(power(a, y[0]), IntVector(y.begin() + 1, y.end())));
    }
    out.primes.push_back(finish_prime(std::move(p)));
  }
  return out;
}

std::vector<BinomialPrime> segmentonomial_minimal_primes_strict(const AffineSemigroup& s, const LaurentPolynomial& f,
                                                                Int degree_bound) {
  auto res = segmentonomial_minimal_primes(s, f, degree_bound);
  if (!res.fully_split())
    throw ExtensionRequired("the univariate part of " + f.to_string() + " has the factor " +
                            univariate_to_string(res.unsplit_factor) + " without rational roots");
  return std::move(res.primes);
}

QuotientMap quotient_as_semigroup(const BinomialPrime& p) {
  const auto& gens = p.semigroup.generators();
  if (p.projected_map.size() != gens.size()) throw InvalidInput("prime: map table does not match the generators");
  if (p.image_grading.size() != p.image_dim)
    throw InvalidInput("quotient_as_semigroup: the quotient carries no compatible grading (f is not homogeneous)");
  std::set<IntVector> targets;
  for (const auto& img : p.projected_map) {
    if (!img) continue;
    if (img->second.size() != p.image_dim || img->first == 0) throw InvalidInput("prime: malformed map entry");
    targets.insert(img->second);
  }
  if (targets.empty() || (targets.size() == 1 && is_zero(*targets.begin())))
    throw InvalidInput("quotient_as_semigroup: the quotient is the coefficient field");
  AffineSemigroup image({targets.begin(), targets.end()}, p.image_grading);

  // Generators linked by degree-1 binomials of p.
  std::map<IntVector, std::size_t> index;
  for (std::size_t i = 0; i < gens.size(); ++i) index[gens[i]] = i;
  UnionFind uf;
  for (std::size_t i = 0; i < gens.size(); ++i) uf.add();
  for (const auto& g : p.generators)
    if (g.size() == 2) {
      auto a = index.find(g.terms().begin()->first), b = index.find(std::next(g.terms().begin())->first);
      if (a != index.end() && b != index.end()) uf.unite(a->second, b->second);
    }
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      const auto& a = p.projected_map[i];
      const auto& b = p.projected_map[j];
      bool proportional = a && b && a->second == b->second;
      if (proportional != (uf.find(i) == uf.find(j)))
        throw InvalidInput("prime data inconsistent at generators " + to_string(gens[i]) + " and " + to_string(gens[j]));
    }
  return QuotientMap{std::move(image), p.projected_map};
}

SegmentonomialPrimes segmentonomial_ideal_primes(const AffineSemigroup& s, const std::vector<LaurentPolynomial>& fs,
                                                 Int degree_bound, std::optional<Int> recursion_depth) {
  Int depth = recursion_depth.value_or(static_cast<Int>(fs.size()));
  std::vector<LaurentPolynomial> live;
  for (const auto& f : fs)
    if (!f.is_zero()) live.push_back(f);
  if (live.empty()) throw InvalidInput("segmentonomial_ideal_primes: the ideal is zero");
  if (depth < 1) throw InvalidInput("segmentonomial_ideal_primes: recursion depth exhausted");

  SegmentonomialPrimes first = segmentonomial_minimal_primes(s, live.front(), degree_bound);
  SegmentonomialPrimes out{{}, first.unsplit_factor};
  std::vector<BinomialPrime> candidates;
  for (auto& p : first.primes) {
    std::vector<LaurentPolynomial> rest;
    for (std::size_t k = 1; k < live.size(); ++k) {
      auto img = apply_quotient(p, live[k]);
      if (!img.is_zero()) rest.push_back(std::move(img));
    }
    if (rest.empty()) {
      candidates.push_back(std::move(p));
      continue;
    }
    QuotientMap q = quotient_as_semigroup(p);
    bool unit = std::any_of(rest.begin(), rest.end(), [&](const LaurentPolynomial& g) {
      return std::all_of(g.terms().begin(), g.terms().end(), [](const auto& t) { return is_zero(t.first); });
    });
    if (unit) continue;
    SegmentonomialPrimes inner = segmentonomial_ideal_primes(q.semigroup, rest, degree_bound, depth - 1);
    if (!inner.fully_split() && out.fully_split()) out.unsplit_factor = inner.unsplit_factor;
    std::map<IntVector, std::size_t> inner_index;
    for (std::size_t i = 0; i < q.semigroup.generators().size(); ++i) inner_index[q.semigroup.generators()[i]] = i;
    for (const auto& ip : inner.primes) {
      BinomialPrime c = p;
      c.kind = ip.kind;
      if (ip.kind == PrimeKind::character_kernel) c.direction = ip.direction, c.root = ip.root, c.multiplicity = ip.multiplicity;
      else c.face_normal = ip.face_normal;
      c.image_dim = ip.image_dim;
      c.image_grading = ip.image_grading;
      for (auto& img : c.projected_map)
        if (img) img = multiply_images(std::make_pair(img->first, IntVector(ip.image_dim, 0)),
                                       ip.projected_map[inner_index.at(img->second)]);
      candidates.push_back(finish_prime(std::move(c)));
    }
  }
  // Keep the minimal ones, one copy each.
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    bool drop = false;
    for (std::size_t j = 0; j < candidates.size() && !drop; ++j) {
      if (i == j || !prime_contained_in(candidates[j], candidates[i])) continue;
      drop = !prime_contained_in(candidates[i], candidates[j]) || j < i;
    }
    if (!drop) out.primes.push_back(candidates[i]);
  }
  return out;
}

bool independence_test(const AffineSemigroup& s, const LaurentPolynomial& f, const std::vector<IntVector>& points) {
  TermClass cls = classify(f);
  if (cls != TermClass::binomial && cls != TermClass::segmentonomial)
    throw InvalidInput("independence_test: N(f) must be a segment");
  std::set<IntVector> seen;
  for (const auto& x : points) {
    if (!s.contains(x)) throw InvalidInput("independence_test: " + to_string(x) + " is not in S");
    if (!seen.insert(x).second) throw InvalidInput("independence_test: repeated point " + to_string(x));
  }
  const IntVector dir = primitive(sub(f.terms().rbegin()->first, f.terms().begin()->first));
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      IntVector d = sub(points[i], points[j]);
      if (primitive(d) == dir || primitive(d) == negate(dir)) return false;
    }
  return true;
}

RationalMatrix relabelled_rows(const RationalMatrix& t, std::size_t j) {
  const std::size_t n = t.rows() - 1;
  if (t.cols() != n + 1 || n == 0) throw InvalidInput("split_variable: T must be square of size at least 2");
  if (j > n) throw InvalidInput("split_variable: j out of range");
  RationalMatrix out(n + 1, n);
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t k = 0; k < n; ++k) out(i, k) = t(i, k);
    if (j > 0) out(i, j - 1) += t(i, n);
  }
  return out;
}

RationalMatrix split_epsilon(const RationalMatrix& t, std::size_t j) {
  RationalMatrix rows = relabelled_rows(t, j);
  const std::size_t n = rows.cols();
  RationalMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) out(i, k) = rows(i, k);
  return out;
}

SplitTransform split_variable(const RationalMatrix& t) {
  if (t.rows() != t.cols() || t.rows() < 2) throw InvalidInput("split_variable: T must be square of size at least 2");
  if (determinant(t) == 0) throw InvalidInput("split_variable: T is singular");
  const std::size_t n = t.rows() - 1;
  for (std::size_t j = 0; j <= n; ++j) {
    RationalMatrix eps = split_epsilon(t, j);
    auto inv = inverse(eps);
    if (!inv) continue;
    RationalMatrix rows = relabelled_rows(t, j);
    RationalMatrix nu(n + 1, n);
    for (std::size_t i = 0; i < n; ++i) nu(i, i) = 1;
    RationalMatrix last(1, n);
    for (std::size_t k = 0; k < n; ++k) last(0, k) = rows(n, k);
    last = multiply(last, *inv);
    for (std::size_t k = 0; k < n; ++k) nu(n, k) = last(0, k);
    return SplitTransform{t, j, std::move(eps), std::move(nu)};
  }
  throw std::logic_error("split_variable: no invertible epsilon_j for an invertible T");
}

}  // namespace polytopal
