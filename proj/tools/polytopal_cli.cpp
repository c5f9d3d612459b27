// Batch front-end: one verb per run, JSON report on stdout.
// Exit status: 0 success, 1 negative mathematical result, 2 input error.

#include "polytopal/json_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <map>

using namespace polytopal;

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kInputError = 2;

struct Options {
  std::string input;
  std::optional<Int> degree_bound;
  std::uint64_t seed = 1;
  Int trials = 5;
  Int length = 1;
  bool exhaustive = false;
};

struct Report {
  Json body;
  int status = kOk;
};

Json read_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("$", "cannot open " + path);
  try {
    Json j = Json::parse(in);
    check_schema_version(j);
    return j;
  } catch (const Json::parse_error& e) {
    throw SchemaError("$", std::string("invalid JSON: ") + e.what());
  }
}

// A polytope file may hold the polytope itself or wrap it under "polytope".
LatticePolytope read_polytope(const Json& j) {
  if (j.contains("polytope")) return polytope_from_json(j["polytope"], "$.polytope");
  return polytope_from_json(j, "$");
}

Int bound_for(const Options& o, Int fallback) { return o.degree_bound.value_or(fallback); }

Json witness_json(const NormalityResult& r) {
  if (!r.witness) return nullptr;
  return Json{{"element", r.witness->element}, {"multiple", r.witness->multiple}};
}

Json column_json(const LatticePolytope& p, const ColumnVector& c) {
  return Json{{"vector", c.vector},
              {"base_facet", c.base_facet},
              {"facet_normal", p.facets()[c.base_facet].normal},
              {"facet_offset", p.facets()[c.base_facet].offset}};
}

Report analyze(const Options& o) {
  auto p = read_polytope(read_input(o.input));
  auto s = polytopal_semigroup(p);
  auto normal = normality_check(s, o.degree_bound);
  Json cols = Json::array();
  for (const auto& c : column_vectors(p)) cols.push_back(column_json(p, c));
  Int interior = 0;
  for (const auto& x : p.lattice_points()) interior += p.is_interior(x);
  Json j = polytope_details(p);
  j["lattice_point_count"] = p.lattice_points().size();
  j["interior_point_count"] = interior;
  j["column_vectors"] = std::move(cols);
  j["normal"] = normal.normal;
  j["normality_degree_bound"] = normal.degree_bound;
  j["normality_witness"] = witness_json(normal);
  j["homogeneous"] = is_homogeneous(s);
  return {j};
}

Report col(const Options& o) {
  auto p = read_polytope(read_input(o.input));
  Json cols = Json::array();
  for (const auto& c : column_vectors(p)) cols.push_back(column_json(p, c));
  return {Json{{"polytope", polytope_to_json(p)}, {"count", cols.size()}, {"column_vectors", std::move(cols)}}};
}

Report normality(const Options& o) {
  Json in = read_input(o.input);
  AffineSemigroup s = in.contains("generators") ? semigroup_from_json(in, "$")
                      : in.contains("semigroup") ? semigroup_from_json(in["semigroup"], "$.semigroup")
                                                 : polytopal_semigroup(read_polytope(in));
  std::optional<Int> bound = o.degree_bound;
  if (o.exhaustive && !bound) bound = static_cast<Int>(rank(s));
  auto r = normality_check(s, bound);
  return {Json{{"semigroup", semigroup_to_json(s)},
               {"normal", r.normal},
               {"degree_bound", r.degree_bound},
               {"witness", witness_json(r)}}};
}

Report relations(const Options& o) {
  auto p = read_polytope(read_input(o.input));
  Int d = bound_for(o, default_degree_bound(p));
  auto rel = toric_relations(polytopal_semigroup(p), d);
  Json rs = Json::array();
  for (const auto& r : rel.relations) rs.push_back(relation_to_json(p, r));
  Json pts = Json::array();
  for (const auto& x : p.lattice_points()) pts.push_back(point_id(x));
  return {Json{{"polytope", polytope_to_json(p)},
               {"generators", std::move(pts)},
               {"degree_bound", rel.degree_bound},
               {"count", rs.size()},
               {"relations", std::move(rs)}}};
}

Int diameter(const LatticePolytope& p) {
  Int d = 1;
  for (const auto& a : p.vertices())
    for (const auto& b : p.vertices())
      for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

Report width(const Options& o) {
  auto p = read_polytope(read_input(o.input));
  if (p.dim() != 2 || p.ambient_dim() != 2) throw InvalidInput("width: expected a lattice polygon in Z^2");
  const Int bound = diameter(p);
  auto w = minimal_lattice_width(p, bound);
  Json edges = Json::array();
  for (const auto& e : polygon_edges(p))
    edges.push_back(Json{{"from", e.from}, {"to", e.to}, {"lattice_length", e.lattice_length()}});
  Json j{{"polytope", polytope_to_json(p)},
         {"direction_bound", bound},
         {"minimal_width", w.width},
         {"direction", w.direction},
         {"edges", std::move(edges)}};
  if (o.exhaustive) {
    Json all = Json::array();
    for (Int a = -bound; a <= bound; ++a)
      for (Int b = -bound; b <= bound; ++b) {
        if (gcd(a, b) != 1 || a < 0 || (a == 0 && b < 0)) continue;
        IntVector dir{a, b};
        all.push_back(Json{{"direction", dir}, {"width", lattice_width(p, dir)}});
      }
    j["all_directions"] = std::move(all);
  }
  return {j};
}

Report embed_segment(const Options& o) {
  auto p = read_polytope(read_input(o.input));
  if (o.length < 1) throw InvalidInput("embed-segment: --length must be positive");
  Json es = Json::array();
  for (const auto& e : segment_embeddings(p, o.length)) {
    Json pts = Json::array();
    for (Int i = 0; i <= o.length; ++i) pts.push_back(point_id(add(e.start, scale(e.step, i))));
    es.push_back(Json{{"start", e.start}, {"step", e.step}, {"points", std::move(pts)}});
  }
  return {Json{{"polytope", polytope_to_json(p)}, {"c", o.length}, {"count", es.size()}, {"embeddings", std::move(es)}}};
}

Report symmetries_verb(const Options& o) {
  auto p = read_polytope(read_input(o.input));
  Json ms = Json::array();
  for (const auto& s : symmetries(p)) {
    Json m = Json::array();
    for (std::size_t i = 0; i < s.matrix().rows(); ++i) m.push_back(s.matrix().row(i));
    ms.push_back(Json{{"matrix", std::move(m)}, {"translation", s.translation()}});
  }
  return {Json{{"polytope", polytope_to_json(p)}, {"count", ms.size()}, {"symmetries", std::move(ms)}}};
}

// Reads a map description, overriding its degree bound from the command line.
GradedAlgebraMap read_map(const Options& o) {
  Json in = read_input(o.input);
  if (o.degree_bound) in["degree_bound"] = *o.degree_bound;
  return map_from_json(in, "$");
}

Json violation_json(const LatticePolytope& p, const RelationViolation& v) {
  const auto& f = v.failure();
  return Json{{"relation", relation_to_json(p, f.relation)},
              {"left_image", polynomial_to_json(f.left_image)},
              {"right_image", polynomial_to_json(f.right_image)}};
}

Report retraction_check(const Options& o) {
  std::optional<GradedAlgebraMap> h;
  try {
    h = read_map(o);
  } catch (const RelationViolation& v) {
    auto p = read_polytope(read_input(o.input));
    return {Json{{"valid", false}, {"violation", violation_json(p, v)}}, kNegative};
  }
  Json j{{"valid", true}, {"degree_bound", h->degree_bound()}};
  if (!h->is_endomorphism()) {
    j["endomorphism"] = false;
    return {j};
  }
  auto dim = image_dimension(*h, o.trials, o.seed);
  auto km = kernel_monomials(*h);
  Json zero = Json::array();
  for (const auto& x : km.zero_set) zero.push_back(point_id(x));
  Json kernel{{"zero_set", std::move(zero)}, {"diagnostic", km.diagnostic}};
  if (km.face) kernel["face"] = polytope_to_json(km.face->polytope);
  if (km.facet) kernel["facet"] = *km.facet;
  j["idempotent"] = check_idempotent(*h);
  j["image_dimension"] = Json{{"dimension", dim.dimension}, {"trials", dim.trials}, {"seed", dim.seed}};
  j["rank"] = rank(polytopal_semigroup(h->source()));
  j["codimension"] = static_cast<Int>(rank(polytopal_semigroup(h->source()))) - dim.dimension;
  j["degree_one_image_dimension"] = degree_one_image_dimension(*h);
  j["kernel_monomials"] = std::move(kernel);
  return {j};
}

Report retraction_tame(const Options& o) {
  auto h = read_map(o);
  TamenessResult r;
  try {
    r = polygon_tameness(h, o.trials, o.seed);
  } catch (const InvalidInput& e) {
    return {Json{{"tame", false}, {"precondition", e.what()}}, kNegative};
  }
  Json j{{"tame", r.certificate.has_value()}, {"c", r.c}};
  if (r.base_segment) j["base_segment"] = Json{{"start", r.base_segment->start}, {"step", r.base_segment->step}};
  j["diagnostics"] = r.diagnostics;
  if (!r.certificate) return {j, kNegative};
  j["certificate"] = certificate_to_json(*r.certificate, ReplayMetadata{o.seed, o.trials});
  return {j};
}

Report fibration_verify(const Options& o) {
  Json in = read_input(o.input);
  auto fib = fibration_from_json(in, "$");
  auto check = check_fibration(fib);
  Json j{{"fibration", fibration_to_json(fib)},
         {"valid", check.valid()},
         {"dimension_ok", check.dimension_ok},
         {"covering_ok", check.covering_ok},
         {"direct_sum_ok", check.direct_sum_ok},
         {"codimension", fib.codimension()},
         {"problems", check.problems}};
  if (!check.valid()) return {j, kNegative};
  j["base"] = polytope_to_json(fibration_base(fib));
  j["retraction"] = map_to_json(fibration_retraction(fib, bound_for(o, default_degree_bound(fib.polytope))));
  return {j};
}

Report segprime(const Options& o) {
  Json in = read_input(o.input);
  AffineSemigroup s = in.contains("semigroup") ? semigroup_from_json(in["semigroup"], "$.semigroup")
                                               : polytopal_semigroup(read_polytope(in));
  Int d = in.contains("degree_bound") ? in["degree_bound"].get<Int>() : 3;
  d = bound_for(o, d);
  std::vector<LaurentPolynomial> fs;
  if (in.contains("f")) fs.push_back(polynomial_from_json(in["f"], "$.f"));
  if (in.contains("fs")) {
    if (!in["fs"].is_array()) throw SchemaError("$.fs", "expected an array of polynomials");
    for (std::size_t i = 0; i < in["fs"].size(); ++i)
      fs.push_back(polynomial_from_json(in["fs"][i], "$.fs[" + std::to_string(i) + "]"));
  }
  if (fs.empty()) throw SchemaError("$", "missing field \"f\" (or \"fs\")");
  auto r = fs.size() == 1 ? segmentonomial_minimal_primes(s, fs.front(), d) : segmentonomial_ideal_primes(s, fs, d);
  Json primes = Json::array();
  for (const auto& p : r.primes) primes.push_back(prime_to_json(p));
  Json unsplit = Json::array();
  for (const auto& c : r.unsplit_factor) unsplit.push_back(rational_to_json(c));
  Json j{{"semigroup", semigroup_to_json(s)},
         {"degree_bound", d},
         {"fully_split", r.fully_split()},
         {"unsplit_factor", std::move(unsplit)},
         {"primes", std::move(primes)}};
  if (!r.fully_split()) {
    j["diagnostic"] = "extension required: " + univariate_to_string(r.unsplit_factor) + " has no rational roots";
    return {j, kNegative};
  }
  return {j};
}

Report split_variable_verb(const Options& o) {
  Json in = read_input(o.input);
  auto t = rational_matrix_from_json(in.contains("matrix") ? in["matrix"] : in, in.contains("matrix") ? "$.matrix" : "$");
  if (t.rows() != t.cols() || t.rows() < 2) throw SchemaError("$.matrix", "expected a square matrix of size at least 2");
  SplitTransform r;
  try {
    r = split_variable(t);
  } catch (const InvalidInput& e) {
    return {Json{{"split", false}, {"diagnostic", e.what()}}, kNegative};
  }
  bool commutes = multiply(r.nu_matrix, r.epsilon_matrix) == relabelled_rows(t, r.chosen_j);
  return {Json{{"split", true},
               {"chosen_j", r.chosen_j},
               {"epsilon", rational_matrix_to_json(r.epsilon_matrix)},
               {"nu", rational_matrix_to_json(r.nu_matrix)},
               {"commutes", commutes}}};
}

Report verify_cert(const Options& o) {
  Json in = read_input(o.input);
  const Json& body = in.contains("certificate") ? in["certificate"] : in;
  const std::string path = in.contains("certificate") ? "$.certificate" : "$";
  auto cert = certificate_from_json(body, path);
  auto check = verify_certificate(cert);
  Json j{{"ok", check.ok}, {"report", check.report}, {"path", cert.path}, {"steps", cert.steps.size()}};
  if (check.divergent_generator)
    j["divergent_generator"] = point_id(cert.original.source().lattice_points()[*check.divergent_generator]);
  return {j, check.ok ? kOk : kNegative};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice polytopes, polytopal algebras and their retractions"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--degree-bound", o.degree_bound, "Degree bound D for relation checks");
  app.add_option("--seed", o.seed, "Seed for randomized Jacobian ranks");
  app.add_option("--trials", o.trials, "Number of random Jacobian evaluations")->check(CLI::PositiveNumber);
  app.add_option("--length", o.length, "Segment length c for embed-segment");
  app.add_flag("--exhaustive", o.exhaustive, "Widen searches (normality bound, all width directions)");

  const std::vector<std::pair<std::string, std::function<Report(const Options&)>>> verbs{
      {"analyze", analyze},
      {"col", col},
      {"normality", normality},
      {"relations", relations},
      {"width", width},
      {"embed-segment", embed_segment},
      {"symmetries", symmetries_verb},
      {"retraction-check", retraction_check},
      {"retraction-tame", retraction_tame},
      {"fibration-verify", fibration_verify},
      {"segprime", segprime},
      {"split-variable", split_variable_verb},
      {"verify-cert", verify_cert},
  };
  std::map<CLI::App*, std::size_t> index;
  for (std::size_t i = 0; i < verbs.size(); ++i) {
    auto* sub = app.add_subcommand(verbs[i].first);
    sub->add_option("input", o.input, "Input JSON file")->required();
    sub->fallthrough();
    index[sub] = i;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  const auto& [verb, run] = verbs[index.at(app.get_subcommands().front())];
  Json out{{"schema", kSchemaVersion}, {"verb", verb}};
  int status = kOk;
  try {
    Report r = run(o);
    for (auto& [k, v] : r.body.items()) out[k] = v;
    status = r.status;
  } catch (const InvalidInput& e) {
    out["error"] = e.what();
    if (const auto* s = dynamic_cast<const SchemaError*>(&e)) out["json_path"] = s->path();
    status = kInputError;
  } catch (const RelationViolation& e) {
    out["error"] = e.what();
    status = kNegative;
  } catch (const ExtensionRequired& e) {
    out["error"] = e.what();
    status = kNegative;
  } catch (const ArithmeticOverflow& e) {
    out["error"] = e.what();
    status = kInputError;
  }
  std::cout << out.dump(2) << '\n';
  return status;
}
