#include "polytopal/json_io.hpp"
#include "printers.hpp"
#include "retraction_generators.hpp"
#include "worked_examples.hpp"

#include <gtest/gtest.h>

#include <functional>

using namespace polytopal;
namespace tk = polytopal::testkit;

namespace {

std::string error_path(const std::function<void()>& f) {
  try {
    f();
  } catch (const SchemaError& e) {
    return e.path();
  }
  return "<no error>";
}

TEST(JsonRational, CanonicalizesAndRejectsZeroDenominator) {
  EXPECT_EQ(rational_from_json(Json::parse(R"({"num": 4, "den": -6})"), "$"), Rational(-2, 3));
  EXPECT_EQ(rational_from_json(Json(5), "$"), Rational(5));
  EXPECT_EQ(rational_from_json(Json::parse(R"({"num": "123456789012345678901234567890", "den": "10"})"), "$"),
            Rational("12345678901234567890123456789"));
  EXPECT_EQ(error_path([] { rational_from_json(Json::parse(R"({"num": 1, "den": 0})"), "$.x"); }), "$.x.den");
  EXPECT_EQ(error_path([] { rational_from_json(Json("half"), "$.y"); }), "$.y");
}

TEST(JsonRational, RoundTripsLargeValues) {
  Rational big("-98765432109876543210987654321/10");
  big.canonicalize();
  EXPECT_EQ(rational_from_json(rational_to_json(big), "$"), big);
  tk::Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    Rational q = tk::random_nonzero_rational(rng, 50);
    EXPECT_EQ(rational_from_json(rational_to_json(q), "$"), q);
  }
}

TEST(JsonPointId, ParsesAndRejects) {
  EXPECT_EQ(point_id(IntVector{2, -1}), "2,-1");
  EXPECT_EQ(point_from_id("2,-1", 2, "$"), (IntVector{2, -1}));
  EXPECT_EQ(error_path([] { point_from_id("2", 2, "$.id"); }), "$.id");
  EXPECT_EQ(error_path([] { point_from_id("a,b", 2, "$.id"); }), "$.id");
}

TEST(JsonSchema, AcceptsSameMajorAndRejectsOthers) {
  EXPECT_NO_THROW(check_schema_version(Json::parse(R"({"schema": "1.7"})")));
  EXPECT_NO_THROW(check_schema_version(Json::parse(R"({"vertices": []})")));
  EXPECT_EQ(error_path([] { check_schema_version(Json::parse(R"({"schema": "2.0"})")); }), "$.schema");
}

TEST(JsonPolytope, RandomPolygonsRoundTrip) {
  tk::Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    auto p = tk::random_polygon(rng, 4);
    EXPECT_EQ(polytope_from_json(polytope_to_json(p), "$"), p);
  }
}

TEST(JsonPolytope, ReportsPathOfBadVertex) {
  auto j = Json::parse(R"({"ambient_dim": 2, "vertices": [[0, 0], [1, 0, 3], [0, 1]]})");
  EXPECT_EQ(error_path([&] { polytope_from_json(j, "$"); }), "$.vertices[1]");
}

TEST(JsonPolynomial, RoundTrip) {
  tk::Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    LaurentPolynomial f(3);
    for (int t = 0; t < 4; ++t) f.add_term(tk::random_vector(rng, 3, -2, 2), tk::random_nonzero_rational(rng));
    EXPECT_EQ(polynomial_from_json(polynomial_to_json(f), "$"), f);
  }
}

TEST(JsonSemigroup, RoundTrip) {
  auto s = polytopal_semigroup(box({2, 1}));
  EXPECT_EQ(semigroup_from_json(semigroup_to_json(s), "$"), s);
}

TEST(JsonWord, RandomWordsRoundTrip) {
  tk::Rng rng(17);
  for (int i = 0; i < 40; ++i) {
    auto p = tk::random_polygon(rng, 3);
    auto w = tk::random_word(rng, p, 4, 2);
    auto back = word_from_json(word_to_json(w), "$");
    EXPECT_EQ(back, w);
    EXPECT_EQ(word_to_json(back), word_to_json(w));
  }
}

TEST(JsonMap, RoundTripAndMissingIdsMapToZero) {
  tk::JoinRetraction wt;
  auto h = wt.map(3);
  EXPECT_EQ(map_from_json(map_to_json(h), "$"), h);

  auto j = Json::parse(R"({
    "polytope": {"ambient_dim": 2, "vertices": [[0, 0], [1, 0], [0, 1], [1, 1]]},
    "images": {"0,0": [{"coeff": 1, "point": "0,0"}], "0,1": [{"coeff": 1, "point": "0,1"}]},
    "degree_bound": 2
  })");
  auto face = map_from_json(j, "$");
  EXPECT_TRUE(face.image(*face.source().point_index(IntVector{1, 1})).is_zero());
}

TEST(JsonMap, InvalidImagesRaiseRelationViolation) {
  auto j = Json::parse(R"({
    "polytope": {"ambient_dim": 2, "vertices": [[0, 0], [1, 0], [0, 1], [1, 1]]},
    "images": {"0,0": [{"coeff": 1, "point": "0,0"}], "1,0": [{"coeff": 1, "point": "1,0"}],
               "0,1": [{"coeff": 1, "point": "0,1"}], "1,1": [{"coeff": 1, "point": "0,0"}]},
    "degree_bound": 2
  })");
  EXPECT_THROW(map_from_json(j, "$"), RelationViolation);
}

TEST(JsonMap, RejectsPointsOutsideThePolytope) {
  auto j = Json::parse(R"({
    "polytope": {"ambient_dim": 2, "vertices": [[0, 0], [1, 0], [0, 1], [1, 1]]},
    "images": {"0,0": [{"coeff": 1, "point": "2,0"}]}
  })");
  EXPECT_EQ(error_path([&] { map_from_json(j, "$"); }), "$.images[\"0,0\"][0].point");
}

TEST(JsonFibration, RoundTrip) {
  tk::Rng rng(23);
  int seen = 0;
  for (int i = 0; i < 40; ++i) {
    auto f = tk::random_segmental_fibration(rng, tk::random_polygon(rng, 4));
    if (!f) continue;
    ++seen;
    auto back = fibration_from_json(fibration_to_json(*f), "$");
    EXPECT_EQ(fibration_to_json(back), fibration_to_json(*f));
    EXPECT_TRUE(check_fibration(back).valid());
  }
  EXPECT_GT(seen, 10);
}

TEST(JsonCertificate, HandBuiltChainRoundTripsAndVerifies) {
  tk::JoinRetraction wt;
  auto cert = wt.certificate(3);
  auto j = certificate_to_json(cert, {7, 3});
  EXPECT_EQ(j["replay"]["seed"], 7);
  auto back = certificate_from_json(j, "$");
  EXPECT_TRUE(verify_certificate(back).ok);
  EXPECT_EQ(certificate_to_json(back, {7, 3}), j);
}

TEST(JsonCertificate, ProducedCertificatesSurviveSerialization) {
  tk::Rng rng(29);
  for (int i = 0; i < 10; ++i) {
    auto k = tk::random_codim_one_retraction(rng, 3, 3);
    auto r = polygon_tameness(k.map, 5, 1);
    ASSERT_TRUE(r.certificate) << testing::PrintToString(k.map);
    auto back = certificate_from_json(certificate_to_json(*r.certificate, {}), "$");
    EXPECT_TRUE(verify_certificate(back).ok);
  }
}

TEST(JsonCertificate, UnknownStepTypeIsASchemaError) {
  tk::JoinRetraction wt;
  auto j = certificate_to_json(wt.certificate(2), {});
  j["steps"][1]["type"] = "teleport";
  EXPECT_EQ(error_path([&] { certificate_from_json(j, "$"); }), "$.steps[1].type");
}

}  // namespace
