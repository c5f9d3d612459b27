#pragma once

// Lattice polytopes: hulls, facets, lattice points, faces, Minkowski
// arithmetic, joins, lattice widths, segment embeddings, pyramids,
// homotheties and lattice isomorphisms.

#include "polytopal/arith.hpp"
#include "polytopal/matrix.hpp"

#include <optional>
#include <vector>

namespace polytopal {

/// Inequality normal . x >= offset, with a primitive inward normal.
struct Facet {
  IntVector normal;
  Int offset = 0;
  bool operator==(const Facet&) const = default;
};

class LatticePolytope {
 public:
  /// Convex hull of a nonempty list of points of uniform dimension.
  static LatticePolytope hull(const std::vector<IntVector>& points);

  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t dim() const { return dim_; }
  const std::vector<IntVector>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }
  const std::vector<IntVector>& lattice_points() const { return lattice_points_; }

  /// Affine hull chart: x = origin + sum_i y_i * basis_row_i for y in Z^dim.
  const IntVector& origin() const { return origin_; }
  const IntMatrix& hull_basis() const { return basis_; }
  /// Rows e with e . (x - origin) = 0 exactly on the affine hull.
  std::vector<IntVector> hull_equations() const;

  bool in_affine_hull(std::span<const Int> x) const;
  /// Intrinsic lattice coordinates of a point of the affine hull.
  IntVector intrinsic(std::span<const Int> x) const;
  IntVector ambient(std::span<const Int> y) const;
  /// Intrinsic coordinates of a direction vector lying in the hull's linear span.
  IntVector intrinsic_direction(std::span<const Int> v) const;
  /// First dim() chart coordinates of v, without the affine-hull check.
  IntVector chart_projection(std::span<const Int> v) const;
  /// Intrinsic facet normals matching facets() one to one.
  const std::vector<Facet>& intrinsic_facets() const { return intrinsic_facets_; }

  bool contains(std::span<const Int> x) const;
  bool is_lattice_point(std::span<const Int> x) const;
  /// normal . x - offset for facet i.
  Int facet_value(std::size_t facet, std::span<const Int> x) const;
  /// Indices of the facets containing x.
  std::vector<std::size_t> tight_facets(std::span<const Int> x) const;
  /// Index of x in lattice_points(), if present.
  std::optional<std::size_t> point_index(std::span<const Int> x) const;
  bool is_interior(std::span<const Int> x) const;

  bool operator==(const LatticePolytope& o) const {
    return ambient_dim_ == o.ambient_dim_ && vertices_ == o.vertices_;
  }

 private:
  std::size_t ambient_dim_ = 0;
  std::size_t dim_ = 0;
  std::vector<IntVector> vertices_;
  std::vector<Facet> facets_;
  std::vector<Facet> intrinsic_facets_;
  std::vector<IntVector> lattice_points_;
  IntVector origin_;
  IntMatrix basis_;
  IntMatrix chart_;  // unimodular; first dim_ rows give intrinsic coordinates
};

struct Face {
  LatticePolytope polytope;
  std::vector<std::size_t> facets;  // indices into the parent's facets()
};

/// All nonempty faces, ordered by dimension and then by vertex list;
/// includes P itself (with no facets) and every vertex.
std::vector<Face> faces(const LatticePolytope& p);
/// Face equal to conv(points), if it is a face of p.
std::optional<Face> face_of(const LatticePolytope& p, const LatticePolytope& candidate);

LatticePolytope minkowski_sum(const LatticePolytope& p, const LatticePolytope& q);
bool verify_minkowski_sum(const LatticePolytope& q, const LatticePolytope& r, const LatticePolytope& p);
LatticePolytope dilate(const LatticePolytope& p, Int c);
LatticePolytope translate(const LatticePolytope& p, std::span<const Int> t);
/// conv(P x {0} x {0}, {0} x Q x {1}).
LatticePolytope join(const LatticePolytope& p, const LatticePolytope& q);
/// Embedding maps of the two join factors, x -> (x, 0, 0) and y -> (0, y, 1).
IntVector join_left(std::span<const Int> x, std::size_t q_dim);
IntVector join_right(std::span<const Int> y, std::size_t p_dim);

/// Standard simplices and boxes used throughout tests and tools.
LatticePolytope segment(Int length);
LatticePolytope unit_simplex(std::size_t n);
LatticePolytope box(const IntVector& lengths);

/// Width of P along the lattice lines parallel to `direction`: the number of
/// lattice lines meeting P, minus one. Supported when P lives in Z^2, or when
/// P is a polygon whose affine hull contains the direction.
Int lattice_width(const LatticePolytope& p, std::span<const Int> direction);
/// Minimum lattice width over primitive directions with entries in [-bound, bound].
struct WidthResult {
  Int width;
  IntVector direction;
};
WidthResult minimal_lattice_width(const LatticePolytope& p, Int bound);

struct SegmentEmbedding {
  IntVector start;
  IntVector step;
  bool operator==(const SegmentEmbedding&) const = default;
};
std::vector<SegmentEmbedding> segment_embeddings(const LatticePolytope& p, Int c);

struct PyramidApex {
  IntVector apex;
  std::size_t base_facet;
};
std::vector<PyramidApex> pyramid_apexes(const LatticePolytope& p);

/// Q = center + factor * (P - center), or Q = factor * P + translation when
/// factor == 1 and the map is a pure translation (no center).
struct Homothety {
  Rational factor;
  RationalVector translation;
  std::optional<RationalVector> center;
};
std::optional<Homothety> homothety_check(const LatticePolytope& p, const LatticePolytope& q);

/// Lattice edges of a polygon (dimension 2, ambient 2) in counterclockwise order.
struct Edge {
  IntVector from;
  IntVector to;
  Int lattice_length() const;
  IntVector primitive_direction() const;
};
std::vector<Edge> polygon_edges(const LatticePolytope& p);

/// R with Q + R = P, searched by edge vectors; P and Q must live in Z^1 or Z^2.
std::optional<LatticePolytope> minkowski_summand_check(const LatticePolytope& q, const LatticePolytope& p);
/// All lattice decompositions P = Q + R (unordered, Q normalised to lexmin 0).
std::vector<std::pair<LatticePolytope, LatticePolytope>> minkowski_decompositions(const LatticePolytope& p);

class AffineLatticeMap {
 public:
  AffineLatticeMap() = default;
  AffineLatticeMap(IntMatrix matrix, IntVector translation);
  static AffineLatticeMap identity(std::size_t n);

  const IntMatrix& matrix() const { return matrix_; }
  const IntVector& translation() const { return translation_; }
  std::size_t source_dim() const { return matrix_.cols(); }
  std::size_t target_dim() const { return matrix_.rows(); }

  IntVector apply(std::span<const Int> x) const;
  /// (*this) o inner
  AffineLatticeMap compose(const AffineLatticeMap& inner) const;
  bool is_unimodular() const;
  /// Integer inverse of a square unimodular map.
  AffineLatticeMap inverse() const;

  bool operator==(const AffineLatticeMap& o) const {
    return matrix_ == o.matrix_ && translation_ == o.translation_;
  }

 private:
  IntMatrix matrix_;
  IntVector translation_;
};

/// Unimodular affine maps between the affine lattices of P and Q carrying L_P
/// onto L_Q. The ambient matrix acts correctly on aff(P).
std::optional<AffineLatticeMap> affine_lattice_iso(const LatticePolytope& p, const LatticePolytope& q);
std::vector<AffineLatticeMap> all_affine_lattice_isos(const LatticePolytope& p, const LatticePolytope& q);

}  // namespace polytopal
