#pragma once

// Graded retractions of polytopal algebras: idempotence, image dimension,
// monomial kernels, face and fibration retractions, bases, the toric and
// elementary corrections that bring a based retraction into standard form,
// the codimension-1 tameness pipeline for polygons, and certificates.

#include "polytopal/graded_map.hpp"
#include "polytopal/polytopal_groups.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace polytopal {

/// Raised when a construction cannot be carried out at the configured bounds
/// or the input does not have the expected structure.
class ConstructionFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

bool check_idempotent(const GradedAlgebraMap& h);

struct ImageDimension {
  Int dimension;
  Int trials;
  std::uint64_t seed;
};
/// Krull dimension of Im(h): maximal Jacobian rank of the images at random
/// rational points. Never exceeds rank(S_P).
ImageDimension image_dimension(const GradedAlgebraMap& h, Int trials = 5, std::uint64_t seed = 1);
/// Dimension of the span of the images of the generators.
Int degree_one_image_dimension(const GradedAlgebraMap& h);
/// rank(S_P) - dim Im(h).
Int codimension(const GradedAlgebraMap& h, Int trials = 5, std::uint64_t seed = 1);

struct KernelMonomials {
  std::vector<IntVector> zero_set;  // lattice points with h(x) = 0
  std::optional<Face> face;         // face F with zero_set = L_P \ L_F
  std::optional<std::size_t> facet; // index of F among the facets, when F is one
  std::string diagnostic;
  bool empty() const { return zero_set.empty(); }
};
KernelMonomials kernel_monomials(const GradedAlgebraMap& h);

/// pi_F : k[P] -> k[F], the identity on L_F and 0 elsewhere.
GradedAlgebraMap face_projection(const LatticePolytope& p, const LatticePolytope& face, Int degree_bound);
/// pi_F followed by the inclusion k[F] -> k[P].
GradedAlgebraMap face_retraction(const LatticePolytope& p, const LatticePolytope& face, Int degree_bound);

/// (P, H, W): H = base_point + span(directions), W a sublattice of Z^n.
struct LatticeFibration {
  LatticePolytope polytope;
  IntVector base_point;
  IntMatrix directions;
  LatticeSubgroup w;
  std::size_t codimension() const { return w.rank(); }
};
struct FibrationCheck {
  bool dimension_ok = false;
  bool covering_ok = false;
  bool direct_sum_ok = false;
  std::vector<std::string> problems;
  bool valid() const { return dimension_ok && covering_ok && direct_sum_ok; }
};
FibrationCheck check_fibration(const LatticeFibration& fib);
bool in_base_plane(const LatticeFibration& fib, std::span<const Int> x);
/// conv(L_P cap H).
LatticePolytope fibration_base(const LatticeFibration& fib);
/// Segmental fibration with base line through `point` along `direction` and W = Z w.
LatticeFibration segmental_fibration(const LatticePolytope& p, IntVector point, IntVector direction, IntVector w);
/// rho : k[P] -> k[P cap H], each point sent to the point of its fibre on H.
GradedAlgebraMap fibration_projection(const LatticeFibration& fib, Int degree_bound);
GradedAlgebraMap fibration_retraction(const LatticeFibration& fib, Int degree_bound);

struct BaseWitness {
  std::vector<IntVector> points;
  std::optional<LatticePolytope> cross_section;
  bool meets_interior = false;
};
/// h restricted to k[S_X] is injective up to the bound, onto Im(h) in each degree.
bool is_base(const GradedAlgebraMap& h, const std::vector<IntVector>& points);
bool meets_interior(const LatticePolytope& p, const std::vector<IntVector>& points);
struct BaseSearch {
  std::optional<BaseWitness> witness;
  std::size_t candidates_tried = 0;
  std::vector<std::string> diagnostics;
};
BaseSearch find_base(const GradedAlgebraMap& h, Int trials = 5, std::uint64_t seed = 1);

/// Primitive form on Z^{n+1}, zero on L_F, non-negative on L_P and surjective on gp(S_P).
IntVector facet_valuation(const LatticePolytope& p, std::size_t facet);

/// psi^{-1} o h where psi = h restricted to k[S_X]: a retraction onto k[S_X].
GradedAlgebraMap retraction_onto_base(const GradedAlgebraMap& h, const std::vector<IntVector>& points);

// Certificates: a chain of maps whose composite reproduces the original.
struct WordStep {
  AutomorphismWord word;
};
struct FaceStep {
  LatticePolytope source;
  LatticePolytope face;
};
struct FibrationStep {
  LatticeFibration fibration;
};
struct MorphismStep {
  GradedAlgebraMap map;
};
using ChainStep = std::variant<WordStep, FaceStep, FibrationStep, MorphismStep>;
GradedAlgebraMap step_map(const ChainStep& step, Int degree_bound);
std::string step_name(const ChainStep& step);

struct TamenessCertificate {
  GradedAlgebraMap original;
  /// Applied first to last.
  std::vector<ChainStep> steps;
  Int degree_bound;
  std::string path;
};
/// original = alpha o iota o inner o alpha^{-1}, with iota given by the images of the base points.
TamenessCertificate conjugated_certificate(const GradedAlgebraMap& original, const AutomorphismWord& alpha,
                                           ChainStep inner, const LatticePolytope& base,
                                           std::vector<LaurentPolynomial> embedding_images, std::string path);
/// The certificate's conjugator, when it has the shape alpha^{-1}, inner, iota, alpha.
std::optional<AutomorphismWord> certificate_conjugator(const TamenessCertificate& cert);

struct CertificateCheck {
  bool ok = false;
  std::string report;
  std::optional<std::size_t> divergent_generator;
};
CertificateCheck verify_certificate(const TamenessCertificate& cert);

struct InteriorCorrection {
  ToricFactor tau;
  LatticeFibration fibration;
  std::vector<LaurentPolynomial> embedding_images;
  TamenessCertificate certificate;
};
/// For a retraction with a base meeting the interior: h^tau = iota o rho.
InteriorCorrection correct_interior_base(const GradedAlgebraMap& h, const BaseWitness& witness,
                                         std::optional<Int> search_degree = std::nullopt);

struct FacetCorrection {
  std::size_t facet;
  LaurentPolynomial phi;  // shifted into P, meeting F
  IntVector apex;
  AutomorphismWord epsilon;
  std::vector<LaurentPolynomial> embedding_images;
  TamenessCertificate certificate;
};
/// For a codimension-1 retraction based on the lattice points of a facet:
/// h^epsilon = iota o pi_F with epsilon in A(F).
FacetCorrection correct_facet_base(const GradedAlgebraMap& h, const BaseWitness& witness);

struct TamenessResult {
  std::optional<TamenessCertificate> certificate;
  Int c = 0;
  std::optional<SegmentEmbedding> base_segment;
  std::vector<std::string> diagnostics;
};
/// Codimension-1 retractions of k[P] for a lattice polygon P.
TamenessResult polygon_tameness(const GradedAlgebraMap& h, Int trials = 5, std::uint64_t seed = 1);

/// Every edge of P is shorter than c and width_l(P) <= c for some lattice direction.
bool segment_width_obstruction(const LatticePolytope& p, Int c);

}  // namespace polytopal
