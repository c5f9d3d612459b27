#pragma once

// JSON encodings of the library's value types. Rationals are {"num","den"}
// pairs, lattice points are addressed by ids like "2,-1", and every reader
// reports the JSON path of the first offending value.

#include "polytopal/binomial_ideals.hpp"
#include "polytopal/retraction.hpp"

#include <json.hpp>

#include <string>

namespace polytopal {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0";

class SchemaError : public InvalidInput {
 public:
  SchemaError(const std::string& path, const std::string& message)
      : InvalidInput(path + ": " + message), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// Accepts a missing "schema" field; rejects any major version other than ours.
void check_schema_version(const Json& j, const std::string& path = "$");

Json rational_to_json(const Rational& q);
Rational rational_from_json(const Json& j, const std::string& path);
IntVector int_vector_from_json(const Json& j, const std::string& path);
IntMatrix int_matrix_from_json(const Json& j, const std::string& path);
RationalMatrix rational_matrix_from_json(const Json& j, const std::string& path);
Json rational_matrix_to_json(const RationalMatrix& m);

std::string point_id(std::span<const Int> x);
IntVector point_from_id(const std::string& id, std::size_t dim, const std::string& path);

/// {"ambient_dim": n, "vertices": [[...], ...]}
Json polytope_to_json(const LatticePolytope& p);
LatticePolytope polytope_from_json(const Json& j, const std::string& path);
/// Vertices, facets and lattice points.
Json polytope_details(const LatticePolytope& p);

/// {"ambient_dim": d, "terms": [{"exp": [...], "num": a, "den": b}, ...]} in canonical order.
Json polynomial_to_json(const LaurentPolynomial& f);
LaurentPolynomial polynomial_from_json(const Json& j, const std::string& path);

Json semigroup_to_json(const AffineSemigroup& s);
AffineSemigroup semigroup_from_json(const Json& j, const std::string& path);

/// {"polytope", "degree_bound", "factors": [{"type": "elementary" | "toric" | "symmetry", ...}]}
Json word_to_json(const AutomorphismWord& w);
AutomorphismWord word_from_json(const Json& j, const std::string& path);

/// {"polytope", "target"?, "images": {"<id>": [{"coeff", "point"}]}, "degree_bound"}; missing ids map to 0.
Json map_to_json(const GradedAlgebraMap& h);
/// Validated with check_homomorphism; RelationViolation propagates.
GradedAlgebraMap map_from_json(const Json& j, const std::string& path);

/// {"polytope", "base_point", "directions": [[...]], "w": [[...]]}
Json fibration_to_json(const LatticeFibration& f);
LatticeFibration fibration_from_json(const Json& j, const std::string& path);

struct ReplayMetadata {
  std::uint64_t seed = 1;
  Int trials = 5;
};
Json certificate_to_json(const TamenessCertificate& c, const ReplayMetadata& meta);
TamenessCertificate certificate_from_json(const Json& j, const std::string& path);

Json prime_to_json(const BinomialPrime& p);
Json relation_to_json(const LatticePolytope& p, const BinomialRelation& r);

}  // namespace polytopal
