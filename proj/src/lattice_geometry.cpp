#include "polytopal/lattice_geometry.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace polytopal {

namespace {

constexpr std::size_t kMaxBoxPoints = 5'000'000;

Int cross2(std::span<const Int> o, std::span<const Int> a, std::span<const Int> b) {
  return checked_sub(checked_mul(checked_sub(a[0], o[0]), checked_sub(b[1], o[1])),
                     checked_mul(checked_sub(a[1], o[1]), checked_sub(b[0], o[0])));
}

// Andrew's monotone chain; returns strictly convex vertices counterclockwise
// starting at the lexicographic minimum.
std::vector<IntVector> convex_polygon(std::vector<IntVector> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<IntVector> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross2(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross2(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

struct IntrinsicHull {
  std::vector<IntVector> vertices;
  std::vector<Facet> facets;
};

IntrinsicHull full_dimensional_hull(std::vector<IntVector> pts, std::size_t k) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  IntrinsicHull out;
  if (k == 0) {
    out.vertices = pts;
    return out;
  }
  if (k == 1) {
    Int lo = pts.front()[0], hi = pts.back()[0];
    out.vertices = {IntVector{lo}, IntVector{hi}};
    out.facets = {Facet{{1}, lo}, Facet{{-1}, -hi}};
    return out;
  }
  if (k == 2) {
    auto poly = convex_polygon(pts);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const auto& a = poly[i];
      const auto& b = poly[(i + 1) % poly.size()];
      IntVector n = primitive(IntVector{checked_sub(a[1], b[1]), checked_sub(b[0], a[0])});
      out.facets.push_back(Facet{n, dot(n, a)});
    }
    out.vertices = poly;
    return out;
  }
  std::set<std::pair<IntVector, Int>> found;
  const std::size_t m = pts.size();
  std::vector<std::size_t> idx(k);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t depth, std::size_t from) {
    if (depth == k) {
      IntMatrix rows(k - 1, k);
      for (std::size_t r = 1; r < k; ++r)
        for (std::size_t c = 0; c < k; ++c) rows(r - 1, c) = checked_sub(pts[idx[r]][c], pts[idx[0]][c]);
      IntMatrix ker = integer_kernel(rows);
      if (ker.rows() != 1) return;
      IntVector n = primitive(ker.row(0));
      Int base = dot(n, pts[idx[0]]);
      bool ge = true, le = true;
      for (const auto& p : pts) {
        Int v = dot(n, p);
        if (v < base) ge = false;
        if (v > base) le = false;
        if (!ge && !le) return;
      }
      if (ge) found.insert({n, base});
      if (le) found.insert({negate(n), -base});
      return;
    }
    for (std::size_t i = from; i + (k - depth) <= m; ++i) {
      idx[depth] = i;
      rec(depth + 1, i + 1);
    }
  };
  rec(0, 0);
  for (const auto& [n, b] : found) out.facets.push_back(Facet{n, b});
  for (const auto& p : pts) {
    std::vector<IntVector> tight;
    for (const auto& f : out.facets)
      if (dot(f.normal, p) == f.offset) tight.push_back(f.normal);
    if (tight.size() >= k && rank(IntMatrix::from_rows(tight, k)) == k) out.vertices.push_back(p);
  }
  return out;
}

}  // namespace

LatticePolytope LatticePolytope::hull(const std::vector<IntVector>& points) {
  if (points.empty()) throw InvalidInput("hull: empty point list");
  const std::size_t n = points.front().size();
  for (const auto& p : points)
    if (p.size() != n) throw InvalidInput("hull: dimension mismatch");
  std::vector<IntVector> pts = points;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  LatticePolytope P;
  P.ambient_dim_ = n;
  P.origin_ = pts.front();
  std::vector<IntVector> diffs;
  for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(sub(pts[i], P.origin_));
  P.basis_ = diffs.empty() ? IntMatrix(0, n) : saturated_span(IntMatrix::from_rows(diffs, n), n);
  P.dim_ = P.basis_.rows();
  P.chart_ = unimodular_inverse(complete_to_unimodular(P.basis_, n)).transposed();

  std::vector<IntVector> local;
  local.reserve(pts.size());
  for (const auto& p : pts) local.push_back(P.intrinsic(p));
  IntrinsicHull ih = full_dimensional_hull(local, P.dim_);

  for (const auto& v : ih.vertices) P.vertices_.push_back(P.ambient(v));
  std::sort(P.vertices_.begin(), P.vertices_.end());

  std::vector<std::pair<Facet, Facet>> facet_pairs;
  for (const auto& f : ih.facets) {
    IntVector a(n, 0);
    for (std::size_t i = 0; i < P.dim_; ++i)
      for (std::size_t j = 0; j < n; ++j) a[j] = checked_add(a[j], checked_mul(f.normal[i], P.chart_(i, j)));
    facet_pairs.push_back({Facet{a, checked_add(f.offset, dot(a, P.origin_))}, f});
  }
  std::sort(facet_pairs.begin(), facet_pairs.end(), [](const auto& x, const auto& y) {
    return std::tie(x.first.normal, x.first.offset) < std::tie(y.first.normal, y.first.offset);
  });
  for (auto& [amb, loc] : facet_pairs) {
    P.facets_.push_back(amb);
    P.intrinsic_facets_.push_back(loc);
  }

  // Lattice points by intrinsic bounding-box scan.
  const std::size_t k = P.dim_;
  IntVector lo(k), hi(k);
  for (std::size_t i = 0; i < k; ++i) {
    lo[i] = hi[i] = ih.vertices.front()[i];
    for (const auto& v : ih.vertices) {
      lo[i] = std::min(lo[i], v[i]);
      hi[i] = std::max(hi[i], v[i]);
    }
  }
  std::size_t total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    total *= static_cast<std::size_t>(hi[i] - lo[i] + 1);
    if (total > kMaxBoxPoints) throw InvalidInput("lattice_points: bounding box too large");
  }
  IntVector y = lo;
  while (true) {
    bool inside = true;
    for (const auto& f : P.intrinsic_facets_)
      if (dot(f.normal, y) < f.offset) {
        inside = false;
        break;
      }
    if (inside) P.lattice_points_.push_back(P.ambient(y));
    std::size_t i = 0;
    while (i < k && y[i] == hi[i]) y[i] = lo[i], ++i;
    if (i == k) break;
    ++y[i];
  }
  std::sort(P.lattice_points_.begin(), P.lattice_points_.end());
  return P;
}

std::vector<IntVector> LatticePolytope::hull_equations() const {
  std::vector<IntVector> eq;
  for (std::size_t r = dim_; r < ambient_dim_; ++r) eq.push_back(chart_.row(r));
  return eq;
}

bool LatticePolytope::in_affine_hull(std::span<const Int> x) const {
  if (x.size() != ambient_dim_) throw InvalidInput("point dimension mismatch");
  IntVector d = sub(x, origin_);
  for (std::size_t r = dim_; r < ambient_dim_; ++r)
    if (dot(chart_.row(r), d) != 0) return false;
  return true;
}

IntVector LatticePolytope::intrinsic(std::span<const Int> x) const {
  if (!in_affine_hull(x)) throw InvalidInput("point " + to_string(x) + " is off the affine hull");
  return intrinsic_direction(sub(x, origin_));
}

IntVector LatticePolytope::intrinsic_direction(std::span<const Int> v) const {
  if (v.size() != ambient_dim_) throw InvalidInput("vector dimension mismatch");
  IntVector y(dim_);
  for (std::size_t r = 0; r < dim_; ++r) y[r] = dot(chart_.row(r), v);
  for (std::size_t r = dim_; r < ambient_dim_; ++r)
    if (dot(chart_.row(r), v) != 0) throw InvalidInput("vector " + to_string(v) + " is not parallel to the affine hull");
  return y;
}

IntVector LatticePolytope::chart_projection(std::span<const Int> v) const {
  IntVector y(dim_);
  for (std::size_t r = 0; r < dim_; ++r) y[r] = dot(chart_.row(r), v);
  return y;
}

IntVector LatticePolytope::ambient(std::span<const Int> y) const {
  if (y.size() != dim_) throw InvalidInput("intrinsic dimension mismatch");
  IntVector x = origin_;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < ambient_dim_; ++j) x[j] = checked_add(x[j], checked_mul(y[i], basis_(i, j)));
  return x;
}

bool LatticePolytope::contains(std::span<const Int> x) const {
  if (!in_affine_hull(x)) return false;
  for (std::size_t f = 0; f < facets_.size(); ++f)
    if (facet_value(f, x) < 0) return false;
  return true;
}

bool LatticePolytope::is_lattice_point(std::span<const Int> x) const { return point_index(x).has_value(); }

Int LatticePolytope::facet_value(std::size_t f, std::span<const Int> x) const {
  return checked_sub(dot(facets_.at(f).normal, x), facets_[f].offset);
}

std::vector<std::size_t> LatticePolytope::tight_facets(std::span<const Int> x) const {
  std::vector<std::size_t> t;
  for (std::size_t f = 0; f < facets_.size(); ++f)
    if (facet_value(f, x) == 0) t.push_back(f);
  return t;
}

std::optional<std::size_t> LatticePolytope::point_index(std::span<const Int> x) const {
  IntVector key(x.begin(), x.end());
  auto it = std::lower_bound(lattice_points_.begin(), lattice_points_.end(), key);
  if (it == lattice_points_.end() || *it != key) return std::nullopt;
  return static_cast<std::size_t>(it - lattice_points_.begin());
}

bool LatticePolytope::is_interior(std::span<const Int> x) const { return contains(x) && tight_facets(x).empty(); }

std::vector<Face> faces(const LatticePolytope& p) {
  const auto& verts = p.vertices();
  std::vector<std::set<std::size_t>> facet_sets;
  for (std::size_t f = 0; f < p.facets().size(); ++f) {
    std::set<std::size_t> s;
    for (std::size_t v = 0; v < verts.size(); ++v)
      if (p.facet_value(f, verts[v]) == 0) s.insert(v);
    facet_sets.push_back(std::move(s));
  }
  std::set<std::set<std::size_t>> seen;
  std::vector<std::set<std::size_t>> queue;
  std::set<std::size_t> all;
  for (std::size_t v = 0; v < verts.size(); ++v) all.insert(v);
  queue.push_back(all);
  seen.insert(all);
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    for (const auto& fs : facet_sets) {
      std::set<std::size_t> inter;
      std::set_intersection(queue[qi].begin(), queue[qi].end(), fs.begin(), fs.end(),
                            std::inserter(inter, inter.begin()));
      if (!inter.empty() && seen.insert(inter).second) queue.push_back(inter);
    }
  }
  std::vector<Face> out;
  for (const auto& s : queue) {
    std::vector<IntVector> pts;
    for (auto v : s) pts.push_back(verts[v]);
    Face face{LatticePolytope::hull(pts), {}};
    for (std::size_t f = 0; f < facet_sets.size(); ++f)
      if (std::includes(facet_sets[f].begin(), facet_sets[f].end(), s.begin(), s.end())) face.facets.push_back(f);
    out.push_back(std::move(face));
  }
  std::sort(out.begin(), out.end(), [](const Face& a, const Face& b) {
    if (a.polytope.dim() != b.polytope.dim()) return a.polytope.dim() < b.polytope.dim();
    return a.polytope.vertices() < b.polytope.vertices();
  });
  return out;
}

std::optional<Face> face_of(const LatticePolytope& p, const LatticePolytope& candidate) {
  if (candidate.ambient_dim() != p.ambient_dim()) return std::nullopt;
  for (auto& f : faces(p))
    if (f.polytope == candidate) return f;
  return std::nullopt;
}

LatticePolytope minkowski_sum(const LatticePolytope& p, const LatticePolytope& q) {
  if (p.ambient_dim() != q.ambient_dim()) throw InvalidInput("minkowski_sum: dimension mismatch");
  std::vector<IntVector> sums;
  for (const auto& a : p.vertices())
    for (const auto& b : q.vertices()) sums.push_back(add(a, b));
  return LatticePolytope::hull(sums);
}

bool verify_minkowski_sum(const LatticePolytope& q, const LatticePolytope& r, const LatticePolytope& p) {
  if (q.ambient_dim() != p.ambient_dim() || r.ambient_dim() != p.ambient_dim()) return false;
  return minkowski_sum(q, r) == p;
}

LatticePolytope dilate(const LatticePolytope& p, Int c) {
  if (c < 1) throw InvalidInput("dilate: factor must be positive");
  std::vector<IntVector> v;
  for (const auto& x : p.vertices()) v.push_back(scale(x, c));
  return LatticePolytope::hull(v);
}

LatticePolytope translate(const LatticePolytope& p, std::span<const Int> t) {
  std::vector<IntVector> v;
  for (const auto& x : p.vertices()) v.push_back(add(x, t));
  return LatticePolytope::hull(v);
}

IntVector join_left(std::span<const Int> x, std::size_t q_dim) {
  IntVector out(x.begin(), x.end());
  out.resize(x.size() + q_dim + 1, 0);
  return out;
}

IntVector join_right(std::span<const Int> y, std::size_t p_dim) {
  IntVector out(p_dim, 0);
  out.insert(out.end(), y.begin(), y.end());
  out.push_back(1);
  return out;
}

LatticePolytope join(const LatticePolytope& p, const LatticePolytope& q) {
  std::vector<IntVector> pts;
  for (const auto& x : p.vertices()) pts.push_back(join_left(x, q.ambient_dim()));
  for (const auto& y : q.vertices()) pts.push_back(join_right(y, p.ambient_dim()));
  return LatticePolytope::hull(pts);
}

LatticePolytope segment(Int length) { return LatticePolytope::hull({{0}, {length}}); }

LatticePolytope unit_simplex(std::size_t n) {
  std::vector<IntVector> pts{IntVector(n, 0)};
  for (std::size_t i = 0; i < n; ++i) {
    IntVector e(n, 0);
    e[i] = 1;
    pts.push_back(e);
  }
  return LatticePolytope::hull(pts);
}

LatticePolytope box(const IntVector& lengths) {
  const std::size_t n = lengths.size();
  std::vector<IntVector> pts;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    IntVector v(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t{1} << i)) v[i] = lengths[i];
    pts.push_back(v);
  }
  return LatticePolytope::hull(pts);
}

namespace {

Int spread(const std::vector<IntVector>& pts, std::span<const Int> form) {
  Int lo = dot(form, pts.front()), hi = lo;
  for (const auto& p : pts) {
    Int v = dot(form, p);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return hi - lo;
}

}  // namespace

Int lattice_width(const LatticePolytope& p, std::span<const Int> direction) {
  if (direction.size() != p.ambient_dim()) throw InvalidInput("lattice_width: dimension mismatch");
  if (is_zero(direction)) throw InvalidInput("lattice_width: zero direction");
  if (!is_primitive(direction)) throw InvalidInput("lattice_width: direction is not primitive");
  if (p.ambient_dim() == 2) {
    IntVector form{-direction[1], direction[0]};
    return spread(p.vertices(), form);
  }
  if (p.dim() == 2) {
    IntVector d = p.intrinsic_direction(direction);
    IntVector form{-d[1], d[0]};
    std::vector<IntVector> local;
    for (const auto& v : p.vertices()) local.push_back(p.intrinsic(v));
    return spread(local, form);
  }
  if (p.dim() <= 1) {
    try {
      p.intrinsic_direction(direction);
      return 0;
    } catch (const InvalidInput&) {
    }
  }
  throw InvalidInput("lattice_width: supported for polytopes in Z^2 or polygons containing the direction");
}

WidthResult minimal_lattice_width(const LatticePolytope& p, Int bound) {
  if (p.ambient_dim() != 2 && p.dim() != 2) throw InvalidInput("minimal_lattice_width: polygon required");
  std::optional<WidthResult> best;
  for (Int a = 0; a <= bound; ++a)
    for (Int b = -bound; b <= bound; ++b) {
      if (a == 0 && b <= 0) continue;
      if (gcd(a, b) != 1) continue;
      IntVector d{a, b};
      IntVector amb;
      if (p.ambient_dim() == 2) {
        amb = d;
      } else {
        amb = sub(p.ambient(d), p.origin());
      }
      Int w = lattice_width(p, amb);
      if (!best || w < best->width) best = WidthResult{w, amb};
    }
  return *best;
}

std::vector<SegmentEmbedding> segment_embeddings(const LatticePolytope& p, Int c) {
  if (c < 1) throw InvalidInput("segment_embeddings: c must be positive");
  std::vector<SegmentEmbedding> out;
  const auto& L = p.lattice_points();
  for (std::size_t i = 0; i < L.size(); ++i)
    for (std::size_t j = i + 1; j < L.size(); ++j) {
      IntVector d = sub(L[j], L[i]);
      if (vector_gcd(d) != c) continue;
      out.push_back(SegmentEmbedding{L[i], primitive(d)});
    }
  return out;
}

std::vector<PyramidApex> pyramid_apexes(const LatticePolytope& p) {
  std::vector<PyramidApex> out;
  const auto& verts = p.vertices();
  for (const auto& v : verts)
    for (std::size_t f = 0; f < p.facets().size(); ++f) {
      if (p.facet_value(f, v) == 0) continue;
      bool base = true;
      for (const auto& w : verts)
        if (w != v && p.facet_value(f, w) != 0) {
          base = false;
          break;
        }
      if (base) out.push_back(PyramidApex{v, f});
    }
  return out;
}

std::optional<Homothety> homothety_check(const LatticePolytope& p, const LatticePolytope& q) {
  if (p.ambient_dim() != q.ambient_dim()) throw InvalidInput("homothety_check: dimension mismatch");
  const auto& pv = p.vertices();
  const auto& qv = q.vertices();
  const std::size_t n = p.ambient_dim();
  if (qv.size() == 1) {
    RationalVector c = to_rational(qv[0]);
    if (pv.size() == 1 && pv[0] == qv[0]) return Homothety{1, RationalVector(n, Rational(0)), c};
    return Homothety{0, c, c};
  }
  if (pv.size() != qv.size()) return std::nullopt;
  IntVector dp = sub(pv.back(), pv.front()), dq = sub(qv.back(), qv.front());
  std::size_t i = 0;
  while (dp[i] == 0) ++i;
  Rational lambda(static_cast<long>(dq[i]), static_cast<long>(dp[i]));
  lambda.canonicalize();
  if (lambda <= 0) return std::nullopt;
  RationalVector t(n);
  for (std::size_t j = 0; j < n; ++j) t[j] = Rational(static_cast<long>(qv[0][j])) - lambda * static_cast<long>(pv[0][j]);
  for (std::size_t v = 0; v < pv.size(); ++v)
    for (std::size_t j = 0; j < n; ++j)
      if (lambda * static_cast<long>(pv[v][j]) + t[j] != static_cast<long>(qv[v][j])) return std::nullopt;
  Homothety h{lambda, t, std::nullopt};
  if (lambda != 1) {
    RationalVector c(n);
    for (std::size_t j = 0; j < n; ++j) c[j] = t[j] / (1 - lambda);
    h.center = c;
  } else if (std::all_of(t.begin(), t.end(), [](const Rational& x) { return x == 0; })) {
    h.center = to_rational(pv[0]);
  }
  return h;
}

Int Edge::lattice_length() const { return vector_gcd(sub(to, from)); }
IntVector Edge::primitive_direction() const { return primitive(sub(to, from)); }

std::vector<Edge> polygon_edges(const LatticePolytope& p) {
  if (p.ambient_dim() != 2 || p.dim() != 2) throw InvalidInput("polygon_edges: full-dimensional polygon in Z^2 required");
  auto ccw = convex_polygon(p.vertices());
  std::vector<Edge> out;
  for (std::size_t i = 0; i < ccw.size(); ++i) out.push_back(Edge{ccw[i], ccw[(i + 1) % ccw.size()]});
  return out;
}

namespace {

int half_plane(const IntVector& u) { return (u[1] < 0 || (u[1] == 0 && u[0] < 0)) ? 1 : 0; }

bool angle_less(const IntVector& a, const IntVector& b) {
  int ha = half_plane(a), hb = half_plane(b);
  if (ha != hb) return ha < hb;
  return checked_sub(checked_mul(a[0], b[1]), checked_mul(a[1], b[0])) > 0;
}

struct AngleLess {
  bool operator()(const IntVector& a, const IntVector& b) const { return angle_less(a, b); }
};

using EdgeProfile = std::map<IntVector, Int, AngleLess>;

EdgeProfile edge_profile(const LatticePolytope& p) {
  EdgeProfile prof;
  if (p.dim() == 0) return prof;
  if (p.dim() == 1) {
    IntVector d = sub(p.vertices()[1], p.vertices()[0]);
    Int len = vector_gcd(d);
    IntVector u = primitive(d);
    prof[u] += len;
    prof[negate(u)] += len;
    return prof;
  }
  for (const auto& e : polygon_edges(p)) prof[e.primitive_direction()] += e.lattice_length();
  return prof;
}

LatticePolytope from_profile(const EdgeProfile& prof, std::span<const Int> lexmin) {
  std::vector<IntVector> walk{IntVector{0, 0}};
  for (const auto& [u, len] : prof) walk.push_back(add(walk.back(), scale(u, len)));
  auto poly = LatticePolytope::hull(walk);
  IntVector shift = sub(lexmin, poly.vertices().front());
  return translate(poly, shift);
}

LatticePolytope lift_to_plane(const LatticePolytope& p) {
  std::vector<IntVector> v;
  for (const auto& x : p.vertices()) v.push_back(IntVector{x[0], 0});
  return LatticePolytope::hull(v);
}

LatticePolytope drop_to_line(const LatticePolytope& p) {
  std::vector<IntVector> v;
  for (const auto& x : p.vertices()) v.push_back(IntVector{x[0]});
  return LatticePolytope::hull(v);
}

}  // namespace

std::optional<LatticePolytope> minkowski_summand_check(const LatticePolytope& q, const LatticePolytope& p) {
  if (p.ambient_dim() != q.ambient_dim()) throw InvalidInput("minkowski_summand_check: dimension mismatch");
  if (p.ambient_dim() == 1) {
    auto r = minkowski_summand_check(lift_to_plane(q), lift_to_plane(p));
    if (!r) return std::nullopt;
    return drop_to_line(*r);
  }
  if (p.ambient_dim() != 2) throw InvalidInput("minkowski_summand_check: decomposition search needs dimension <= 2");
  EdgeProfile pp = edge_profile(p), qp = edge_profile(q);
  EdgeProfile rp;
  for (const auto& [u, len] : qp) {
    auto it = pp.find(u);
    if (it == pp.end() || it->second < len) return std::nullopt;
  }
  for (const auto& [u, len] : pp) {
    auto it = qp.find(u);
    Int rest = len - (it == qp.end() ? 0 : it->second);
    if (rest > 0) rp[u] = rest;
  }
  IntVector lexmin = sub(p.vertices().front(), q.vertices().front());
  LatticePolytope r = from_profile(rp, lexmin);
  if (!verify_minkowski_sum(q, r, p)) return std::nullopt;
  return r;
}

std::vector<std::pair<LatticePolytope, LatticePolytope>> minkowski_decompositions(const LatticePolytope& p) {
  if (p.ambient_dim() != 2) throw InvalidInput("minkowski_decompositions: polygon in Z^2 required");
  EdgeProfile prof = edge_profile(p);
  std::vector<std::pair<IntVector, Int>> dirs(prof.begin(), prof.end());
  std::vector<std::pair<LatticePolytope, LatticePolytope>> out;
  std::set<std::pair<std::vector<IntVector>, std::vector<IntVector>>> seen;
  IntVector choice(dirs.size(), 0);
  auto normalized = [](const LatticePolytope& x) {
    std::vector<IntVector> v;
    for (const auto& y : x.vertices()) v.push_back(sub(y, x.vertices().front()));
    return v;
  };
  std::function<void(std::size_t, IntVector)> rec = [&](std::size_t i, IntVector total) {
    if (i == dirs.size()) {
      if (!is_zero(total)) return;
      EdgeProfile qp;
      for (std::size_t j = 0; j < dirs.size(); ++j)
        if (choice[j] > 0) qp[dirs[j].first] = choice[j];
      LatticePolytope q = from_profile(qp, IntVector{0, 0});
      auto r = minkowski_summand_check(q, p);
      if (!r) return;
      auto nq = normalized(q), nr = normalized(*r);
      auto key = nq <= nr ? std::make_pair(nq, nr) : std::make_pair(nr, nq);
      if (!seen.insert(key).second) return;
      out.emplace_back(q, *r);
      return;
    }
    for (Int a = 0; a <= dirs[i].second; ++a) {
      choice[i] = a;
      rec(i + 1, add(total, scale(dirs[i].first, a)));
    }
  };
  rec(0, IntVector{0, 0});
  return out;
}

AffineLatticeMap::AffineLatticeMap(IntMatrix matrix, IntVector translation)
    : matrix_(std::move(matrix)), translation_(std::move(translation)) {
  if (matrix_.rows() != translation_.size()) throw InvalidInput("AffineLatticeMap: translation size mismatch");
}

AffineLatticeMap AffineLatticeMap::identity(std::size_t n) { return AffineLatticeMap(IntMatrix::identity(n), IntVector(n, 0)); }

IntVector AffineLatticeMap::apply(std::span<const Int> x) const { return add(multiply(matrix_, x), translation_); }

AffineLatticeMap AffineLatticeMap::compose(const AffineLatticeMap& inner) const {
  return AffineLatticeMap(multiply(matrix_, inner.matrix_), apply(inner.translation_));
}

bool AffineLatticeMap::is_unimodular() const {
  if (matrix_.rows() != matrix_.cols()) return false;
  Int d = determinant(matrix_);
  return d == 1 || d == -1;
}

AffineLatticeMap AffineLatticeMap::inverse() const {
  if (!is_unimodular()) throw InvalidInput("AffineLatticeMap::inverse: map is not unimodular");
  IntMatrix inv = unimodular_inverse(matrix_);
  return AffineLatticeMap(inv, negate(multiply(inv, translation_)));
}

namespace {

std::vector<AffineLatticeMap> isos(const LatticePolytope& p, const LatticePolytope& q, bool first_only) {
  std::vector<AffineLatticeMap> out;
  if (p.dim() != q.dim() || p.vertices().size() != q.vertices().size() ||
      p.lattice_points().size() != q.lattice_points().size())
    return out;
  const std::size_t k = p.dim();
  std::vector<IntVector> pv, qv;
  for (const auto& v : p.vertices()) pv.push_back(p.intrinsic(v));
  for (const auto& v : q.vertices()) qv.push_back(q.intrinsic(v));
  std::set<IntVector> qset(qv.begin(), qv.end());

  // Affinely independent frame of k+1 vertices of P.
  std::vector<std::size_t> frame{0};
  std::vector<IntVector> rows;
  for (std::size_t i = 1; i < pv.size() && frame.size() < k + 1; ++i) {
    auto trial = rows;
    trial.push_back(sub(pv[i], pv[0]));
    if (rank(IntMatrix::from_rows(trial, k)) == trial.size()) {
      rows = trial;
      frame.push_back(i);
    }
  }
  RationalMatrix finv;
  if (k > 0) finv = *inverse(to_rational(IntMatrix::from_rows(rows, k).transposed()));


  std::vector<std::size_t> image(frame.size());
  std::vector<bool> used(qv.size(), false);
  std::function<bool(std::size_t)> rec = [&](std::size_t depth) -> bool {
    if (depth == frame.size()) {
      IntMatrix a(k, k, 0);
      if (k > 0) {
        RationalMatrix g(k, k);
        for (std::size_t c = 0; c < k; ++c)
          for (std::size_t r = 0; r < k; ++r)
            g(r, c) = Rational(static_cast<long>(qv[image[c + 1]][r] - qv[image[0]][r]));
        RationalMatrix ar = multiply(g, finv);
        for (std::size_t r = 0; r < k; ++r)
          for (std::size_t c = 0; c < k; ++c) {
            if (!is_integral(ar(r, c))) return false;
            a(r, c) = to_int(ar(r, c));
          }
        Int d = determinant(a);
        if (d != 1 && d != -1) return false;
      }
      IntVector t = sub(qv[image[0]], multiply(a, pv[frame[0]]));
      for (const auto& v : pv)
        if (!qset.count(add(multiply(a, v), t))) return false;
      // ambient: x -> q.ambient(a * p.intrinsic(x) + t)
      const std::size_t n = p.ambient_dim(), m = q.ambient_dim();
      IntMatrix amb(m, n, 0);
      for (std::size_t j = 0; j < n; ++j) {
        IntVector e(n, 0);
        e[j] = 1;
        IntVector y = multiply(a, p.chart_projection(e));
        IntVector col = sub(q.ambient(y), q.origin());
        for (std::size_t r = 0; r < m; ++r) amb(r, j) = col[r];
      }
      IntVector img0 = q.ambient(add(multiply(a, p.intrinsic(p.origin())), t));
      IntVector trans = sub(img0, multiply(amb, p.origin()));
      out.emplace_back(amb, trans);
      return first_only;
    }
    for (std::size_t j = 0; j < qv.size(); ++j) {
      if (used[j]) continue;
      used[j] = true;
      image[depth] = j;
      bool stop = rec(depth + 1);
      used[j] = false;
      if (stop) return true;
    }
    return false;
  };
  rec(0);
  std::sort(out.begin(), out.end(), [](const AffineLatticeMap& x, const AffineLatticeMap& y) {
    auto kx = std::make_pair(x.matrix().row_list(), x.translation());
    auto ky = std::make_pair(y.matrix().row_list(), y.translation());
    return kx < ky;
  });
  return out;
}

}  // namespace

std::optional<AffineLatticeMap> affine_lattice_iso(const LatticePolytope& p, const LatticePolytope& q) {
  auto v = isos(p, q, true);
  if (v.empty()) return std::nullopt;
  return v.front();
}

std::vector<AffineLatticeMap> all_affine_lattice_isos(const LatticePolytope& p, const LatticePolytope& q) {
  return isos(p, q, false);
}

}  // namespace polytopal
