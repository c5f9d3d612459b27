#include "polytopal/json_io.hpp"

#include <charconv>
#include <map>

namespace polytopal {

namespace {

const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(path, std::string("missing field \"") + key + "\"");
  return *it;
}

std::string at(const std::string& path, const char* key) { return path + "." + key; }
std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const Json& array_field(const Json& j, const char* key, const std::string& path) {
  const Json& a = field(j, key, path);
  if (!a.is_array()) throw SchemaError(at(path, key), "expected an array");
  return a;
}

Int int_from_json(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw SchemaError(path, "expected an integer");
  if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX))
    throw SchemaError(path, "integer out of range");
  return j.get<Int>();
}

std::size_t index_from_json(const Json& j, const std::string& path) {
  Int i = int_from_json(j, path);
  if (i < 0) throw SchemaError(path, "expected a non-negative integer");
  return static_cast<std::size_t>(i);
}

// Integers may be JSON numbers or decimal strings (for values beyond 64 bits).
mpz_class big_int_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return mpz_class(std::to_string(j.get<std::uint64_t>()));
    return mpz_class(std::to_string(j.get<std::int64_t>()));
  }
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    mpz_class z;
    if (s.empty() || z.set_str(s, 10) != 0) throw SchemaError(path, "not a decimal integer: \"" + s + "\"");
    return z;
  }
  throw SchemaError(path, "expected an integer or a decimal string");
}

Json big_int_to_json(const mpz_class& z) {
  if (z.fits_slong_p()) return Json(static_cast<std::int64_t>(z.get_si()));
  return Json(z.get_str());
}

Json int_vector_to_json(std::span<const Int> v) { return Json(IntVector(v.begin(), v.end())); }

Json int_matrix_to_json(const IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(int_vector_to_json(m.row(i)));
  return out;
}

Json facet_to_json(const Facet& f) {
  Json j;
  j["normal"] = int_vector_to_json(f.normal);
  j["offset"] = f.offset;
  return j;
}

// Degree-1 element as a term list over target point ids.
Json degree_one_to_json(const LaurentPolynomial& f) {
  Json out = Json::array();
  for (const auto& [e, c] : f.canonical_terms()) {
    Json t;
    t["coeff"] = rational_to_json(c);
    t["point"] = point_id(std::span<const Int>(e.data(), e.size() - 1));
    out.push_back(std::move(t));
  }
  return out;
}

LaurentPolynomial degree_one_from_json(const Json& j, const LatticePolytope& target, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array of terms");
  LaurentPolynomial f(target.ambient_dim() + 1);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = at(path, i);
    const Json& id = field(j[i], "point", p);
    if (!id.is_string()) throw SchemaError(at(p, "point"), "expected a point id string");
    IntVector y = point_from_id(id.get<std::string>(), target.ambient_dim(), at(p, "point"));
    if (!target.is_lattice_point(y)) throw SchemaError(at(p, "point"), to_string(y) + " is not a lattice point of the target");
    f.add_term(lift(y), rational_from_json(field(j[i], "coeff", p), at(p, "coeff")));
  }
  return f;
}

}  // namespace

void check_schema_version(const Json& j, const std::string& path) {
  if (!j.is_object() || !j.contains("schema")) return;
  const Json& v = j["schema"];
  if (!v.is_string()) throw SchemaError(at(path, "schema"), "expected a version string");
  const auto& s = v.get_ref<const std::string&>();
  const std::string ours = kSchemaVersion;
  if (s.substr(0, s.find('.')) != ours.substr(0, ours.find('.')))
    throw SchemaError(at(path, "schema"), "unsupported schema version \"" + s + "\" (this build reads " + ours + ")");
}

Json rational_to_json(const Rational& q) {
  Json j;
  j["num"] = big_int_to_json(q.get_num());
  j["den"] = big_int_to_json(q.get_den());
  return j;
}

Rational rational_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(big_int_from_json(j, path));
  if (!j.is_object()) throw SchemaError(path, "expected {\"num\", \"den\"} or an integer");
  mpz_class num = big_int_from_json(field(j, "num", path), at(path, "num"));
  mpz_class den = j.contains("den") ? big_int_from_json(j["den"], at(path, "den")) : mpz_class(1);
  if (den == 0) throw SchemaError(at(path, "den"), "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

IntVector int_vector_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array of integers");
  IntVector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(int_from_json(j[i], at(path, i)));
  return v;
}

IntMatrix int_matrix_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array of rows");
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < j.size(); ++i) rows.push_back(int_vector_from_json(j[i], at(path, i)));
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i].size() != cols) throw SchemaError(at(path, i), "ragged matrix row");
  return IntMatrix::from_rows(rows, cols);
}

RationalMatrix rational_matrix_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw SchemaError(path, "expected a nonempty array of rows");
  std::vector<RationalVector> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array()) throw SchemaError(at(path, i), "expected a row array");
    RationalVector row;
    for (std::size_t k = 0; k < j[i].size(); ++k) row.push_back(rational_from_json(j[i][k], at(at(path, i), k)));
    if (row.size() != (rows.empty() ? row.size() : rows.front().size())) throw SchemaError(at(path, i), "ragged matrix row");
    rows.push_back(std::move(row));
  }
  return RationalMatrix::from_rows(rows, rows.front().size());
}

Json rational_matrix_to_json(const RationalMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(rational_to_json(m(i, k)));
    out.push_back(std::move(row));
  }
  return out;
}

std::string point_id(std::span<const Int> x) {
  std::string s;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(x[i]);
  }
  return s;
}

IntVector point_from_id(const std::string& id, std::size_t dim, const std::string& path) {
  IntVector x;
  const char* p = id.data();
  const char* end = id.data() + id.size();
  while (p < end) {
    Int v = 0;
    auto [next, ec] = std::from_chars(p, end, v);
    if (ec != std::errc() || (next < end && *next != ',')) throw SchemaError(path, "malformed point id \"" + id + "\"");
    x.push_back(v);
    p = next < end ? next + 1 : next;
  }
  if (x.size() != dim) throw SchemaError(path, "point id \"" + id + "\" should have " + std::to_string(dim) + " coordinates");
  return x;
}

Json polytope_to_json(const LatticePolytope& p) {
  Json j;
  j["ambient_dim"] = p.ambient_dim();
  Json v = Json::array();
  for (const auto& x : p.vertices()) v.push_back(int_vector_to_json(x));
  j["vertices"] = std::move(v);
  return j;
}

LatticePolytope polytope_from_json(const Json& j, const std::string& path) {
  std::size_t n = index_from_json(field(j, "ambient_dim", path), at(path, "ambient_dim"));
  const Json& vs = array_field(j, "vertices", path);
  if (vs.empty()) throw SchemaError(at(path, "vertices"), "a polytope needs at least one vertex");
  std::vector<IntVector> pts;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    pts.push_back(int_vector_from_json(vs[i], at(at(path, "vertices"), i)));
    if (pts.back().size() != n)
      throw SchemaError(at(at(path, "vertices"), i), "expected " + std::to_string(n) + " coordinates");
  }
  return LatticePolytope::hull(pts);
}

Json polytope_details(const LatticePolytope& p) {
  Json j = polytope_to_json(p);
  j["dim"] = p.dim();
  Json facets = Json::array();
  for (const auto& f : p.facets()) facets.push_back(facet_to_json(f));
  j["facets"] = std::move(facets);
  Json pts = Json::array();
  for (const auto& x : p.lattice_points()) pts.push_back(point_id(x));
  j["lattice_points"] = std::move(pts);
  return j;
}

Json polynomial_to_json(const LaurentPolynomial& f) {
  Json j;
  j["ambient_dim"] = f.dim();
  Json terms = Json::array();
  for (const auto& [e, c] : f.canonical_terms()) {
    Json t;
    t["exp"] = int_vector_to_json(e);
    t["num"] = big_int_to_json(c.get_num());
    t["den"] = big_int_to_json(c.get_den());
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

LaurentPolynomial polynomial_from_json(const Json& j, const std::string& path) {
  std::size_t d = index_from_json(field(j, "ambient_dim", path), at(path, "ambient_dim"));
  const Json& ts = array_field(j, "terms", path);
  LaurentPolynomial f(d);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const std::string p = at(at(path, "terms"), i);
    IntVector e = int_vector_from_json(field(ts[i], "exp", p), at(p, "exp"));
    if (e.size() != d) throw SchemaError(at(p, "exp"), "expected " + std::to_string(d) + " exponents");
    f.add_term(e, rational_from_json(ts[i], p));
  }
  return f;
}

Json semigroup_to_json(const AffineSemigroup& s) {
  Json j;
  j["ambient_dim"] = s.ambient_dim();
  Json g = Json::array();
  for (const auto& x : s.generators()) g.push_back(int_vector_to_json(x));
  j["generators"] = std::move(g);
  j["grading"] = int_vector_to_json(s.grading());
  return j;
}

AffineSemigroup semigroup_from_json(const Json& j, const std::string& path) {
  std::size_t d = index_from_json(field(j, "ambient_dim", path), at(path, "ambient_dim"));
  const Json& gs = array_field(j, "generators", path);
  std::vector<IntVector> gens;
  for (std::size_t i = 0; i < gs.size(); ++i) {
    gens.push_back(int_vector_from_json(gs[i], at(at(path, "generators"), i)));
    if (gens.back().size() != d) throw SchemaError(at(at(path, "generators"), i), "wrong length");
  }
  IntVector grading = int_vector_from_json(field(j, "grading", path), at(path, "grading"));
  if (grading.size() != d) throw SchemaError(at(path, "grading"), "wrong length");
  try {
    return AffineSemigroup(gens, grading);
  } catch (const InvalidInput& e) {
    throw SchemaError(path, e.what());
  }
}

Json word_to_json(const AutomorphismWord& w) {
  Json j;
  j["polytope"] = polytope_to_json(w.polytope());
  j["degree_bound"] = w.degree_bound();
  Json fs = Json::array();
  for (const auto& f : w.factors()) {
    Json x;
    if (const auto* e = std::get_if<ElementaryFactor>(&f)) {
      x["type"] = "elementary";
      x["vector"] = int_vector_to_json(e->column.vector);
      x["base_facet"] = e->column.base_facet;
      x["lambda"] = rational_to_json(e->lambda);
    } else if (const auto* t = std::get_if<ToricFactor>(&f)) {
      x["type"] = "toric";
      Json xi = Json::array();
      for (const auto& q : t->xi) xi.push_back(rational_to_json(q));
      x["xi"] = std::move(xi);
    } else {
      const auto& s = std::get<SymmetryFactor>(f);
      x["type"] = "symmetry";
      x["matrix"] = int_matrix_to_json(s.map.matrix());
      x["translation"] = int_vector_to_json(s.map.translation());
    }
    fs.push_back(std::move(x));
  }
  j["factors"] = std::move(fs);
  return j;
}

AutomorphismWord word_from_json(const Json& j, const std::string& path) {
  LatticePolytope p = polytope_from_json(field(j, "polytope", path), at(path, "polytope"));
  Int d = j.contains("degree_bound") ? int_from_json(j["degree_bound"], at(path, "degree_bound")) : default_degree_bound(p);
  const Json& fs = array_field(j, "factors", path);
  std::vector<WordFactor> factors;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const std::string fp = at(at(path, "factors"), i);
    const Json& type = field(fs[i], "type", fp);
    const std::string t = type.is_string() ? type.get<std::string>() : "";
    if (t == "elementary") {
      ColumnVector c{int_vector_from_json(field(fs[i], "vector", fp), at(fp, "vector")),
                     index_from_json(field(fs[i], "base_facet", fp), at(fp, "base_facet"))};
      factors.push_back(ElementaryFactor{c, rational_from_json(field(fs[i], "lambda", fp), at(fp, "lambda"))});
    } else if (t == "toric") {
      const Json& xi = array_field(fs[i], "xi", fp);
      RationalVector v;
      for (std::size_t k = 0; k < xi.size(); ++k) v.push_back(rational_from_json(xi[k], at(at(fp, "xi"), k)));
      factors.push_back(ToricFactor{v});
    } else if (t == "symmetry") {
      factors.push_back(SymmetryFactor{AffineLatticeMap(int_matrix_from_json(field(fs[i], "matrix", fp), at(fp, "matrix")),
                                                        int_vector_from_json(field(fs[i], "translation", fp),
                                                                             at(fp, "translation")))});
    } else {
      throw SchemaError(at(fp, "type"), "expected \"elementary\", \"toric\" or \"symmetry\"");
    }
  }
  try {
    return AutomorphismWord(p, std::move(factors), d);
  } catch (const InvalidInput& e) {
    throw SchemaError(at(path, "factors"), e.what());
  }
}

Json map_to_json(const GradedAlgebraMap& h) {
  Json j;
  j["polytope"] = polytope_to_json(h.source());
  if (!h.is_endomorphism()) j["target"] = polytope_to_json(h.target());
  Json images = Json::object();
  for (std::size_t i = 0; i < h.images().size(); ++i)
    images[point_id(h.source().lattice_points()[i])] = degree_one_to_json(h.image(i));
  j["images"] = std::move(images);
  j["degree_bound"] = h.degree_bound();
  return j;
}

GradedAlgebraMap map_from_json(const Json& j, const std::string& path) {
  LatticePolytope p = polytope_from_json(field(j, "polytope", path), at(path, "polytope"));
  LatticePolytope q = j.contains("target") ? polytope_from_json(j["target"], at(path, "target")) : p;
  Int d = j.contains("degree_bound") ? int_from_json(j["degree_bound"], at(path, "degree_bound")) : default_degree_bound(p);
  if (d < 1) throw SchemaError(at(path, "degree_bound"), "must be positive");
  const Json& im = field(j, "images", path);
  if (!im.is_object()) throw SchemaError(at(path, "images"), "expected an object keyed by point id");
  std::vector<LaurentPolynomial> images(p.lattice_points().size(), LaurentPolynomial(q.ambient_dim() + 1));
  for (const auto& [key, value] : im.items()) {
    const std::string ip = at(path, "images") + "[\"" + key + "\"]";
    IntVector x = point_from_id(key, p.ambient_dim(), ip);
    auto idx = p.point_index(x);
    if (!idx) throw SchemaError(ip, to_string(x) + " is not a lattice point of the polytope");
    images[*idx] = degree_one_from_json(value, q, ip);
  }
  return check_homomorphism(p, q, std::move(images), d);
}

Json fibration_to_json(const LatticeFibration& f) {
  Json j;
  j["polytope"] = polytope_to_json(f.polytope);
  j["base_point"] = int_vector_to_json(f.base_point);
  j["directions"] = int_matrix_to_json(f.directions);
  j["w"] = int_matrix_to_json(f.w.basis);
  return j;
}

LatticeFibration fibration_from_json(const Json& j, const std::string& path) {
  LatticePolytope p = polytope_from_json(field(j, "polytope", path), at(path, "polytope"));
  const std::size_t n = p.ambient_dim();
  IntVector base = int_vector_from_json(field(j, "base_point", path), at(path, "base_point"));
  if (base.size() != n) throw SchemaError(at(path, "base_point"), "wrong length");
  IntMatrix dirs = int_matrix_from_json(field(j, "directions", path), at(path, "directions"));
  IntMatrix w = int_matrix_from_json(field(j, "w", path), at(path, "w"));
  if (dirs.rows() && dirs.cols() != n) throw SchemaError(at(path, "directions"), "rows must have length " + std::to_string(n));
  if (w.rows() && w.cols() != n) throw SchemaError(at(path, "w"), "rows must have length " + std::to_string(n));
  if (!dirs.rows()) dirs = IntMatrix(0, n);
  return LatticeFibration{p, base, dirs, lattice_span(w.row_list(), n)};
}

Json certificate_to_json(const TamenessCertificate& c, const ReplayMetadata& meta) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = "tameness_certificate";
  j["path"] = c.path;
  j["degree_bound"] = c.degree_bound;
  j["replay"] = Json{{"seed", meta.seed}, {"trials", meta.trials}};
  j["original"] = map_to_json(c.original);
  Json steps = Json::array();
  for (const auto& s : c.steps) {
    Json x;
    std::visit(
        [&](const auto& step) {
          using T = std::decay_t<decltype(step)>;
          if constexpr (std::is_same_v<T, WordStep>) {
            x["type"] = "automorphism";
            x["word"] = word_to_json(step.word);
          } else if constexpr (std::is_same_v<T, FaceStep>) {
            x["type"] = "face_retraction";
            x["source"] = polytope_to_json(step.source);
            x["face"] = polytope_to_json(step.face);
          } else if constexpr (std::is_same_v<T, FibrationStep>) {
            x["type"] = "fibration_retraction";
            x["fibration"] = fibration_to_json(step.fibration);
          } else {
            x["type"] = "morphism";
            x["map"] = map_to_json(step.map);
          }
        },
        s);
    steps.push_back(std::move(x));
  }
  j["steps"] = std::move(steps);
  return j;
}

TamenessCertificate certificate_from_json(const Json& j, const std::string& path) {
  check_schema_version(j, path);
  GradedAlgebraMap original = map_from_json(field(j, "original", path), at(path, "original"));
  Int d = int_from_json(field(j, "degree_bound", path), at(path, "degree_bound"));
  std::string name = j.contains("path") && j["path"].is_string() ? j["path"].get<std::string>() : "";
  TamenessCertificate c{original, {}, d, name};
  const Json& steps = array_field(j, "steps", path);
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const std::string sp = at(at(path, "steps"), i);
    const Json& type = field(steps[i], "type", sp);
    const std::string t = type.is_string() ? type.get<std::string>() : "";
    if (t == "automorphism") {
      c.steps.push_back(WordStep{word_from_json(field(steps[i], "word", sp), at(sp, "word"))});
    } else if (t == "face_retraction") {
      c.steps.push_back(FaceStep{polytope_from_json(field(steps[i], "source", sp), at(sp, "source")),
                                 polytope_from_json(field(steps[i], "face", sp), at(sp, "face"))});
    } else if (t == "fibration_retraction") {
      c.steps.push_back(FibrationStep{fibration_from_json(field(steps[i], "fibration", sp), at(sp, "fibration"))});
    } else if (t == "morphism") {
      c.steps.push_back(MorphismStep{map_from_json(field(steps[i], "map", sp), at(sp, "map"))});
    } else {
      throw SchemaError(at(sp, "type"), "unknown step type");
    }
  }
  return c;
}

Json prime_to_json(const BinomialPrime& p) {
  Json j;
  j["kind"] = to_string(p.kind);
  if (p.kind == PrimeKind::monomial_face) {
    j["face_normal"] = int_vector_to_json(p.face_normal);
  } else {
    j["direction"] = int_vector_to_json(p.direction);
    j["root"] = rational_to_json(p.root);
    j["multiplicity"] = p.multiplicity;
  }
  j["image_dim"] = p.image_dim;
  j["image_grading"] = int_vector_to_json(p.image_grading);
  Json table = Json::array();
  for (std::size_t i = 0; i < p.projected_map.size(); ++i) {
    Json row;
    row["generator"] = int_vector_to_json(p.semigroup.generators()[i]);
    if (p.projected_map[i]) {
      row["scalar"] = rational_to_json(p.projected_map[i]->first);
      row["image"] = int_vector_to_json(p.projected_map[i]->second);
    } else {
      row["image"] = nullptr;
    }
    table.push_back(std::move(row));
  }
  j["map"] = std::move(table);
  Json gens = Json::array();
  for (const auto& g : p.generators) gens.push_back(polynomial_to_json(g));
  j["generators"] = std::move(gens);
  j["degree_bound"] = p.degree_bound;
  return j;
}

Json relation_to_json(const LatticePolytope& p, const BinomialRelation& r) {
  auto side = [&](const std::vector<std::size_t>& m) {
    Json a = Json::array();
    for (auto i : m) a.push_back(point_id(p.lattice_points()[i]));
    return a;
  };
  Json j;
  j["degree"] = r.degree();
  j["left"] = side(r.left);
  j["right"] = side(r.right);
  return j;
}

}  // namespace polytopal
