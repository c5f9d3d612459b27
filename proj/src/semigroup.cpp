#include "polytopal/semigroup.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace polytopal {

bool LatticeSubgroup::contains(std::span<const Int> x) const { return coordinates(x).has_value(); }

std::optional<IntVector> LatticeSubgroup::coordinates(std::span<const Int> x) const {
  return integer_coordinates(basis, x);
}

LatticeSubgroup lattice_span(const std::vector<IntVector>& vectors, std::size_t n) {
  if (vectors.empty()) return LatticeSubgroup{IntMatrix(0, n)};
  return LatticeSubgroup{hermite_normal_form(IntMatrix::from_rows(vectors, n))};
}

AffineSemigroup::AffineSemigroup(std::vector<IntVector> generators, IntVector grading)
    : generators_(std::move(generators)), grading_(std::move(grading)) {
  const std::size_t n = grading_.size();
  if (generators_.empty()) throw InvalidInput("semigroup needs at least one generator");
  std::set<IntVector> seen;
  for (const auto& g : generators_) {
    if (g.size() != n) throw InvalidInput("generator " + to_string(g) + " has the wrong dimension");
    if (!seen.insert(g).second) throw InvalidInput("duplicate generator " + to_string(g));
    if (dot(grading_, g) < 1) throw InvalidInput("grading is not positive on generator " + to_string(g));
  }
  // Cone over the generators scaled to a common grading level.
  Int level = 1;
  for (const auto& g : generators_) level = std::lcm(level, dot(grading_, g));
  std::vector<IntVector> scaled;
  for (const auto& g : generators_) scaled.push_back(scale(g, level / dot(grading_, g)));
  LatticePolytope base = LatticePolytope::hull(scaled);
  for (const auto& f : base.facets()) {
    IntVector row(n);
    for (std::size_t j = 0; j < n; ++j) row[j] = checked_sub(checked_mul(level, f.normal[j]), checked_mul(f.offset, grading_[j]));
    cone_ineq_.push_back(primitive(row));
  }
  cone_ineq_.push_back(primitive(grading_));
  for (const auto& e : base.hull_equations()) {
    Int c = dot(e, base.origin());
    IntVector row(n);
    for (std::size_t j = 0; j < n; ++j) row[j] = checked_sub(checked_mul(level, e[j]), checked_mul(c, grading_[j]));
    cone_eq_.push_back(primitive(row));
  }
}

bool AffineSemigroup::in_cone(std::span<const Int> x) const {
  for (const auto& r : cone_eq_)
    if (dot(r, x) != 0) return false;
  for (const auto& r : cone_ineq_)
    if (dot(r, x) < 0) return false;
  return true;
}

std::optional<std::vector<std::size_t>> AffineSemigroup::factorization(std::span<const Int> x) const {
  if (x.size() != ambient_dim()) throw InvalidInput("membership: dimension mismatch");
  std::map<IntVector, std::optional<std::size_t>> memo;  // element -> generator used (nullopt = not in S)
  std::function<bool(const IntVector&)> member = [&](const IntVector& y) -> bool {
    if (is_zero(y)) return true;
    auto it = memo.find(y);
    if (it != memo.end()) return it->second.has_value();
    memo[y] = std::nullopt;
    if (degree(y) <= 0 || !in_cone(y)) return false;
    for (std::size_t i = 0; i < generators_.size(); ++i) {
      IntVector rest = sub(y, generators_[i]);
      if (member(rest)) {
        memo[y] = i;
        return true;
      }
    }
    return false;
  };
  IntVector target(x.begin(), x.end());
  if (!member(target)) return std::nullopt;
  std::vector<std::size_t> out;
  while (!is_zero(target)) {
    std::size_t i = *memo.at(target);
    out.push_back(i);
    target = sub(target, generators_[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ConeFacet> cone_facets(const AffineSemigroup& s) {
  const std::size_t r = rank(s);
  std::vector<ConeFacet> out;
  std::set<std::vector<std::size_t>> seen;
  for (const auto& row : s.cone_inequalities()) {
    ConeFacet f{row, {}};
    std::vector<IntVector> on;
    for (std::size_t i = 0; i < s.generators().size(); ++i)
      if (dot(row, s.generators()[i]) == 0) f.generators.push_back(i), on.push_back(s.generators()[i]);
    if (on.empty() ? r != 1 : rank(IntMatrix::from_rows(on, s.ambient_dim())) + 1 != r) continue;
    if (seen.insert(f.generators).second) out.push_back(std::move(f));
  }
  return out;
}

IntVector lift(std::span<const Int> x, Int degree) {
  IntVector v(x.begin(), x.end());
  v.push_back(degree);
  return v;
}

AffineSemigroup polytopal_semigroup(const LatticePolytope& p) {
  std::vector<IntVector> gens;
  for (const auto& x : p.lattice_points()) gens.push_back(lift(x));
  IntVector grading(p.ambient_dim() + 1, 0);
  grading.back() = 1;
  return AffineSemigroup(gens, grading);
}

LatticeSubgroup difference_group(const AffineSemigroup& s) { return lattice_span(s.generators(), s.ambient_dim()); }

std::size_t rank(const AffineSemigroup& s) { return difference_group(s).rank(); }

std::vector<IntVector> degree_elements(const AffineSemigroup& s, Int d) {
  if (d < 1) throw InvalidInput("degree_elements: degree must be positive");
  std::set<IntVector> cur(s.generators().begin(), s.generators().end());
  for (Int i = 1; i < d; ++i) {
    std::set<IntVector> next;
    for (const auto& x : cur)
      for (const auto& g : s.generators()) next.insert(add(x, g));
    cur = std::move(next);
  }
  return {cur.begin(), cur.end()};
}

std::vector<IntVector> normalization_elements(const AffineSemigroup& s, Int value) {
  const std::size_t n = s.ambient_dim();
  // Bounding box of the slice of the cone at the given grading value.
  IntVector lo(n), hi(n);
  for (std::size_t j = 0; j < n; ++j) {
    bool first = true;
    Rational mn, mx;
    for (const auto& g : s.generators()) {
      Rational c = Rational(static_cast<long>(g[j]) * value, static_cast<long>(s.degree(g)));
      c.canonicalize();
      if (first || c < mn) mn = c;
      if (first || c > mx) mx = c;
      first = false;
    }
    mpz_class f, cl;
    mpz_fdiv_q(f.get_mpz_t(), mn.get_num_mpz_t(), mn.get_den_mpz_t());
    mpz_cdiv_q(cl.get_mpz_t(), mx.get_num_mpz_t(), mx.get_den_mpz_t());
    lo[j] = f.get_si();
    hi[j] = cl.get_si();
  }
  LatticeSubgroup gp = difference_group(s);
  std::vector<IntVector> out;
  IntVector x = lo;
  while (true) {
    if (s.degree(x) == value && s.in_cone(x) && gp.contains(x)) out.push_back(x);
    std::size_t i = 0;
    while (i < n && x[i] == hi[i]) x[i] = lo[i], ++i;
    if (i == n) break;
    ++x[i];
  }
  return out;
}

NormalityResult normality_check(const AffineSemigroup& s, std::optional<Int> degree_bound) {
  Int bound = degree_bound ? *degree_bound : std::max<Int>(1, static_cast<Int>(rank(s)) - 1);
  if (bound < 1) throw InvalidInput("normality_check: degree bound must be positive");
  for (Int d = 1; d <= bound; ++d)
    for (const auto& x : normalization_elements(s, d)) {
      if (s.contains(x)) continue;
      Int m = 2;
      while (m <= 256 && !s.contains(scale(x, m))) ++m;
      return NormalityResult{false, bound, NormalityWitness{x, m}};
    }
  return NormalityResult{true, bound, std::nullopt};
}

AffineSemigroup veronese(const AffineSemigroup& s, Int n) {
  if (n < 1) throw InvalidInput("veronese: n must be positive");
  auto gens = degree_elements(s, n);
  const auto& gr = s.grading();
  std::size_t nonzero = 0, coord = 0;
  for (std::size_t j = 0; j < gr.size(); ++j)
    if (gr[j] != 0) ++nonzero, coord = j;
  bool coordinate_grading = nonzero == 1 && gr[coord] == 1;
  bool uniform = std::all_of(gens.begin(), gens.end(), [&](const IntVector& g) { return s.degree(g) == n; });
  if (coordinate_grading && uniform) {
    for (auto& g : gens) g[coord] = 1;
    std::sort(gens.begin(), gens.end());
  }
  return AffineSemigroup(gens, gr);
}

bool veronese_is_dilation(const LatticePolytope& p, Int n) {
  return veronese(polytopal_semigroup(p), n).generators() == polytopal_semigroup(dilate(p, n)).generators();
}

std::vector<IntVector> irreducible_elements(const AffineSemigroup& s) {
  std::vector<IntVector> out;
  for (const auto& g : s.generators()) {
    bool reducible = false;
    for (const auto& h : s.generators()) {
      if (h == g) continue;
      IntVector rest = sub(g, h);
      if (s.degree(rest) > 0 && s.contains(rest)) {
        reducible = true;
        break;
      }
    }
    if (!reducible) out.push_back(g);
  }
  return out;
}

bool is_homogeneous(const AffineSemigroup& s) {
  auto irr = irreducible_elements(s);
  RationalMatrix a(irr.size(), s.ambient_dim());
  for (std::size_t i = 0; i < irr.size(); ++i)
    for (std::size_t j = 0; j < s.ambient_dim(); ++j) a(i, j) = Rational(static_cast<long>(irr[i][j]));
  RationalVector ones(irr.size(), Rational(1));
  return solve(a, ones).has_value();
}

IntVector multiset_sum(const AffineSemigroup& s, const std::vector<std::size_t>& m) {
  IntVector x(s.ambient_dim(), 0);
  for (auto i : m) x = add(x, s.generators().at(i));
  return x;
}

std::vector<std::vector<std::vector<std::size_t>>> degree_fibers(const AffineSemigroup& s, Int d) {
  const std::size_t m = s.generators().size();
  std::map<IntVector, std::vector<std::vector<std::size_t>>> fibers;
  std::vector<std::size_t> cur;
  std::function<void(std::size_t, IntVector)> rec = [&](std::size_t from, IntVector sum) {
    if (static_cast<Int>(cur.size()) == d) {
      fibers[sum].push_back(cur);
      return;
    }
    for (std::size_t i = from; i < m; ++i) {
      cur.push_back(i);
      rec(i, add(sum, s.generators()[i]));
      cur.pop_back();
    }
  };
  rec(0, IntVector(s.ambient_dim(), 0));
  std::vector<std::vector<std::vector<std::size_t>>> out;
  for (auto& [sum, members] : fibers) out.push_back(std::move(members));
  return out;
}

RelationSet toric_relations(const AffineSemigroup& s, Int degree_bound) {
  if (degree_bound < 2) throw InvalidInput("toric_relations: degree bound must be at least 2");
  RelationSet out{{}, degree_bound};
  for (Int d = 2; d <= degree_bound; ++d) {
    for (const auto& fiber : degree_fibers(s, d)) {
      if (fiber.size() < 2) continue;
      std::vector<std::size_t> parent(fiber.size());
      std::iota(parent.begin(), parent.end(), 0);
      std::function<std::size_t(std::size_t)> find = [&](std::size_t i) {
        return parent[i] == i ? i : parent[i] = find(parent[i]);
      };
      // Multisets sharing a generator are already related through lower degrees.
      std::map<std::size_t, std::size_t> owner;
      for (std::size_t k = 0; k < fiber.size(); ++k)
        for (auto g : fiber[k]) {
          auto [it, inserted] = owner.try_emplace(g, k);
          if (!inserted) parent[find(k)] = find(it->second);
        }
      for (std::size_t k = 1; k < fiber.size(); ++k) {
        if (find(k) == find(0)) continue;
        out.relations.push_back(BinomialRelation{fiber[0], fiber[k]});
        parent[find(k)] = find(0);
      }
    }
  }
  return out;
}

}  // namespace polytopal
