#include "polytopal/retraction.hpp"
#include "printers.hpp"
#include "retraction_generators.hpp"
#include "worked_examples.hpp"

#include <gtest/gtest.h>

using namespace polytopal;
namespace tk = polytopal::testkit;
using L = LaurentPolynomial;

namespace {

using tk::facet_polytope;
using tk::facet_with_normal;
using tk::square_vertical;
using tk::JoinRetraction;

L gen(const IntVector& x, Rational c = 1) { return tk::gen_at(x, c); }

LatticePolytope unit_square() { return box({1, 1}); }

GradedAlgebraMap endo(const LatticePolytope& p, const std::vector<std::pair<IntVector, L>>& images, Int d) {
  return tk::endomorphism(p, images, d);
}

LatticeFibration two_by_one_interior() {
  return segmental_fibration(box({2, 1}), {1, 0}, {0, 1}, {1, 0});
}

}  // namespace

TEST(CheckHomomorphism, JoinRetractionIsValid) {
  JoinRetraction wt;
  auto h = wt.map(2);
  L lhs = h.image(*wt.p.point_index(wt.b(1))) * h.image(*wt.p.point_index(wt.b(3)));
  L rhs = h.image(*wt.p.point_index(wt.b(2))) * h.image(*wt.p.point_index(wt.b(2)));
  EXPECT_EQ(lhs, rhs);
  EXPECT_EQ(lhs.size(), 3u);
}

TEST(CheckHomomorphism, SquareWithTSentToUViolatesUTequalsVW) {
  auto sq = unit_square();
  try {
    endo(sq, {{{0, 0}, gen({0, 0})}, {{1, 0}, gen({1, 0})}, {{0, 1}, gen({0, 1})}, {{1, 1}, gen({0, 0})}}, 2);
    FAIL() << "expected a relation violation";
  } catch (const RelationViolation& e) {
    EXPECT_NE(e.failure().left_image, e.failure().right_image);
  }
}

TEST(CheckHomomorphism, ZeroingOneVertexOfTheSquareIsNotAMap) {
  auto sq = unit_square();
  EXPECT_THROW(endo(sq, {{{1, 0}, gen({1, 0})}, {{0, 1}, gen({0, 1})}, {{1, 1}, gen({1, 1})}}, 2), RelationViolation);
}

TEST(Idempotent, Examples) {
  EXPECT_TRUE(check_idempotent(JoinRetraction{}.map(2)));
  auto sq = unit_square();
  EXPECT_TRUE(check_idempotent(GradedAlgebraMap::identity(sq, 3)));
  ColumnVector down{{0, -1}, facet_with_normal(sq, {0, 1})};
  EXPECT_FALSE(check_idempotent(elementary(sq, down, 2, 3)));
  EXPECT_TRUE(check_idempotent(square_vertical(3)));
}

TEST(ImageDimension, Examples) {
  auto sq = unit_square();
  EXPECT_EQ(image_dimension(GradedAlgebraMap::identity(sq, 3)).dimension, 3);
  auto wt = JoinRetraction{}.map(2);
  auto dim = image_dimension(wt, 5, 9);
  EXPECT_EQ(dim.dimension, 2);
  EXPECT_EQ(dim.trials, 5);
  EXPECT_EQ(dim.seed, 9u);
  EXPECT_EQ(codimension(wt), 2);
  EXPECT_EQ(degree_one_image_dimension(wt), 8);
  auto pi = face_retraction(sq, facet_polytope(sq, facet_with_normal(sq, {0, 1})), 3);
  EXPECT_EQ(image_dimension(pi).dimension, 2);
  EXPECT_EQ(codimension(pi), 1);
}

TEST(ImageDimension, NeverExceedsRankAndIsSeedStable) {
  tk::Rng rng(3);
  for (int t = 0; t < 10; ++t) {
    auto k = tk::random_codim_one_retraction(rng, 3);
    auto a = image_dimension(k.map, 3, 77), b = image_dimension(k.map, 3, 77);
    EXPECT_EQ(a.dimension, b.dimension);
    EXPECT_EQ(a.dimension, 2) << testing::PrintToString(k.map);
  }
}

TEST(KernelMonomials, Examples) {
  auto sq = unit_square();
  auto bottom = facet_polytope(sq, facet_with_normal(sq, {0, 1}));
  auto km = kernel_monomials(face_retraction(sq, bottom, 3));
  ASSERT_TRUE(km.face);
  EXPECT_EQ(km.face->polytope, bottom);
  EXPECT_EQ(km.facet, facet_with_normal(sq, {0, 1}));
  auto wt = kernel_monomials(JoinRetraction{}.map(2));
  EXPECT_TRUE(wt.empty());
  EXPECT_EQ(wt.diagnostic, "no monomials in the kernel");
  auto vertex = kernel_monomials(face_retraction(sq, LatticePolytope::hull({{1, 1}}), 3));
  ASSERT_TRUE(vertex.face);
  EXPECT_FALSE(vertex.facet);
  EXPECT_EQ(vertex.zero_set.size(), 3u);
}

TEST(FaceRetraction, Examples) {
  auto sq = unit_square();
  auto pi = face_retraction(sq, facet_polytope(sq, facet_with_normal(sq, {0, 1})), 3);
  EXPECT_EQ(pi.image(*sq.point_index(IntVector{0, 0})), gen({0, 0}));
  EXPECT_EQ(pi.image(*sq.point_index(IntVector{1, 0})), gen({1, 0}));
  EXPECT_TRUE(pi.image(*sq.point_index(IntVector{0, 1})).is_zero());
  EXPECT_TRUE(pi.image(*sq.point_index(IntVector{1, 1})).is_zero());
  EXPECT_TRUE(check_idempotent(pi));
  EXPECT_EQ(face_retraction(sq, sq, 3), GradedAlgebraMap::identity(sq, 3));
  auto v = face_retraction(sq, LatticePolytope::hull({{0, 1}}), 3);
  for (std::size_t i = 0; i < 4; ++i)
    EXPECT_EQ(v.image(i).is_zero(), (sq.lattice_points()[i] != IntVector{0, 1}));
  EXPECT_THROW(face_retraction(sq, LatticePolytope::hull({{0, 0}, {1, 1}}), 3), InvalidInput);
  auto proj = face_projection(sq, v.source(), 3);
  EXPECT_EQ(proj.target(), sq);
}

TEST(FaceRetraction, FactorsThroughProjectionWhenKernelHasMonomials) {
  tk::Rng rng(12);
  for (int t = 0; t < 15; ++t) {
    auto p = tk::random_polygon(rng, 3);
    auto fs = faces(p);
    auto face = fs[static_cast<std::size_t>(tk::uniform(rng, 0, static_cast<Int>(fs.size()) - 2))].polytope;
    auto alpha = tk::random_word(rng, p, 3, 3);
    auto h = alpha.map().compose(face_retraction(p, face, 3));
    auto km = kernel_monomials(h);
    ASSERT_TRUE(km.face);
    EXPECT_EQ(km.face->polytope, face);
    std::vector<L> restricted;
    for (const auto& y : face.lattice_points()) restricted.push_back(h.image(*p.point_index(y)));
    auto g = check_homomorphism(face, p, restricted, 3);
    EXPECT_EQ(g.compose(face_projection(p, face, 3)), h);
  }
}

TEST(FaceRetraction, CommutesWithTheSecondVeronese) {
  tk::Rng rng(5);
  for (int t = 0; t < 10; ++t) {
    auto p = tk::random_polygon(rng, 2);
    auto p2 = dilate(p, 2);
    for (const auto& f : faces(p)) {
      auto pi = face_retraction(p, f.polytope, 3);
      auto pi2 = face_retraction(p2, dilate(f.polytope, 2), 3);
      const auto& pts = p.lattice_points();
      for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i; j < pts.size(); ++j) {
          L lhs = pi.apply_product({i, j});
          IntVector y = add(pts[i], pts[j]);
          const L& rhs = pi2.image(*p2.point_index(y));
          ASSERT_EQ(lhs.is_zero(), rhs.is_zero());
          if (!rhs.is_zero()) {
            EXPECT_EQ(rhs, gen(y));
            EXPECT_EQ(lhs, L::monomial(add(lift(pts[i]), lift(pts[j]))));
          }
        }
    }
  }
}

TEST(FibrationRetraction, Examples) {
  auto fib = two_by_one_interior();
  EXPECT_TRUE(check_fibration(fib).valid());
  auto rho = fibration_retraction(fib, 3);
  const auto& p = fib.polytope;
  for (Int j = 0; j <= 1; ++j)
    for (Int i = 0; i <= 2; ++i) EXPECT_EQ(rho.image(*p.point_index(IntVector{i, j})), gen({1, j}));
  EXPECT_TRUE(check_idempotent(rho));

  auto sq = unit_square();
  auto fig = fibration_retraction(segmental_fibration(sq, {0, 0}, {1, 0}, {0, 1}), 3);
  EXPECT_EQ(fig.image(*sq.point_index(IntVector{0, 1})), gen({0, 0}));
  EXPECT_EQ(fig.image(*sq.point_index(IntVector{1, 1})), gen({1, 0}));

  LatticeFibration trivial{sq, {0, 0}, IntMatrix::identity(2), lattice_span({}, 2)};
  EXPECT_EQ(fibration_retraction(trivial, 3), GradedAlgebraMap::identity(sq, 3));
}

TEST(FibrationRetraction, RejectsBrokenInvariants) {
  auto p = box({2, 1});
  auto skew = segmental_fibration(p, {1, 0}, {0, 1}, {2, 1});
  auto check = check_fibration(skew);
  EXPECT_FALSE(check.valid());
  EXPECT_FALSE(check.problems.empty());
  EXPECT_THROW(fibration_retraction(skew, 3), InvalidInput);
  LatticeFibration too_big{p, {0, 0}, IntMatrix::from_rows({{1, 0}}, 2), lattice_span({{0, 1}, {1, 1}}, 2)};
  EXPECT_FALSE(check_fibration(too_big).dimension_ok);
}

TEST(FibrationRetraction, RandomFibrationsSatisfyTheirInvariants) {
  tk::Rng rng(31);
  int found = 0;
  for (int t = 0; t < 30; ++t) {
    auto p = tk::random_polygon(rng, 3);
    auto fib = tk::random_segmental_fibration(rng, p);
    if (!fib) continue;
    ++found;
    auto rho = fibration_retraction(*fib, 3);
    EXPECT_TRUE(check_idempotent(rho));
    EXPECT_EQ(codimension(rho), 1);
    auto base = fibration_base(*fib);
    for (std::size_t i = 0; i < p.lattice_points().size(); ++i) {
      ASSERT_EQ(rho.image(i).size(), 1u);
      IntVector y = rho.image(i).terms().begin()->first;
      y.pop_back();
      EXPECT_TRUE(base.is_lattice_point(y));
      EXPECT_TRUE(fib->w.contains(sub(p.lattice_points()[i], y)));
    }
  }
  EXPECT_GT(found, 10);
}

TEST(FacetValuation, Examples) {
  auto sq = unit_square();
  EXPECT_EQ(facet_valuation(sq, facet_with_normal(sq, {0, 1})), (IntVector{0, 1, 0}));
  EXPECT_EQ(facet_valuation(sq, facet_with_normal(sq, {-1, 0})), (IntVector{-1, 0, 1}));
  JoinRetraction wt;
  for (std::size_t f = 0; f < wt.p.facets().size(); ++f) {
    auto pts = facet_lattice_points(wt.p, f);
    if (pts.size() != 8) continue;
    auto v = facet_valuation(wt.p, f);
    for (Int i = 1; i <= 8; ++i) EXPECT_EQ(dot(v, lift(wt.a(i))), 0);
    for (Int j = 1; j <= 3; ++j) EXPECT_EQ(dot(v, lift(wt.b(j))), 1);
  }
  EXPECT_THROW(facet_valuation(sq, 9), InvalidInput);
}

TEST(FindBase, Examples) {
  auto fib = two_by_one_interior();
  auto rho = fibration_retraction(fib, 3);
  auto s = find_base(rho);
  ASSERT_TRUE(s.witness);
  EXPECT_EQ(s.witness->points, (std::vector<IntVector>{{1, 0}, {1, 1}}));
  EXPECT_TRUE(s.witness->meets_interior);

  auto sq = unit_square();
  auto bottom = facet_polytope(sq, facet_with_normal(sq, {0, 1}));
  auto fb = find_base(face_retraction(sq, bottom, 3));
  ASSERT_TRUE(fb.witness);
  EXPECT_EQ(fb.witness->points, bottom.lattice_points());
  EXPECT_FALSE(fb.witness->meets_interior);

  JoinRetraction wt;
  auto wb = find_base(wt.map(2));
  ASSERT_TRUE(wb.witness);
  std::vector<IntVector> as;
  for (Int i = 1; i <= 8; ++i) as.push_back(wt.a(i));
  EXPECT_EQ(wb.witness->points, as);
  EXPECT_FALSE(wb.witness->meets_interior);
}

TEST(FindBase, IsBaseRejectsNonInjectiveSubsets) {
  auto sq = unit_square();
  auto rho = fibration_retraction(segmental_fibration(sq, {0, 0}, {1, 0}, {0, 1}), 3);
  EXPECT_TRUE(is_base(rho, {{0, 0}, {1, 0}}));
  EXPECT_FALSE(is_base(rho, {{0, 0}, {0, 1}}));
  EXPECT_FALSE(is_base(rho, {{0, 0}}));
}

TEST(NoKernelMonomials, ImagesOfMonomialsStayNonzero) {
  tk::Rng rng(8);
  for (int t = 0; t < 10; ++t) {
    auto k = tk::random_codim_one_retraction(rng, 3);
    if (!kernel_monomials(k.map).empty()) continue;
    auto s = polytopal_semigroup(k.map.source());
    for (Int d = 1; d <= 3; ++d)
      for (const auto& e : degree_elements(s, d)) EXPECT_FALSE(k.map.apply_product(*s.factorization(e)).is_zero());
  }
}

TEST(InteriorCorrection, FibrationRetractionNeedsNoTorus) {
  auto fib = two_by_one_interior();
  auto rho = fibration_retraction(fib, 3);
  auto witness = find_base(rho).witness;
  ASSERT_TRUE(witness);
  auto c = correct_interior_base(rho, *witness);
  for (const auto& x : c.tau.xi) EXPECT_EQ(x, 1);
  EXPECT_TRUE(c.fibration.w.contains(IntVector{1, 0}));
  EXPECT_EQ(c.fibration.w.rank(), 1u);
  EXPECT_TRUE(verify_certificate(c.certificate).ok);
}

TEST(InteriorCorrection, NeutralizesATorusConjugation) {
  auto fib = two_by_one_interior();
  auto p = fib.polytope;
  AutomorphismWord tau0(p, {ToricFactor{{Rational(2), Rational(-3), Rational(1, 5)}}}, 3);
  auto h = conjugate(fibration_retraction(fib, 3), tau0);
  auto witness = find_base(h).witness;
  ASSERT_TRUE(witness);
  auto c = correct_interior_base(h, *witness);
  AutomorphismWord tau(p, {c.tau}, 3);
  EXPECT_EQ(conjugate(retraction_onto_base(h, witness->points), tau), fibration_retraction(c.fibration, 3));
  auto check = verify_certificate(c.certificate);
  EXPECT_TRUE(check.ok) << check.report;
}

TEST(InteriorCorrection, RejectsFacetBases) {
  auto sq = unit_square();
  auto rho = fibration_retraction(segmental_fibration(sq, {0, 0}, {1, 0}, {0, 1}), 3);
  EXPECT_THROW(correct_interior_base(rho, BaseWitness{{{0, 0}, {1, 0}}, std::nullopt, false}), InvalidInput);
}

TEST(FacetCorrection, SquareExampleGivesTheBottomFacet) {
  auto h = square_vertical(3);
  auto sq = h.source();
  auto bottom = facet_with_normal(sq, {0, 1});
  auto c = correct_facet_base(h, BaseWitness{facet_lattice_points(sq, bottom), std::nullopt, false});
  EXPECT_EQ(c.facet, bottom);
  EXPECT_EQ(c.apex, (IntVector{0, 1}));
  ASSERT_EQ(c.epsilon.factors().size(), 1u);
  const auto& e = std::get<ElementaryFactor>(c.epsilon.factors()[0]);
  EXPECT_EQ(e.column.vector, (IntVector{0, -1}));
  EXPECT_EQ(e.lambda, 1);
  auto km = kernel_monomials(conjugate(h, c.epsilon));
  ASSERT_TRUE(km.facet);
  EXPECT_EQ(*km.facet, bottom);
  EXPECT_EQ(km.zero_set, (std::vector<IntVector>{{0, 1}, {1, 1}}));
  EXPECT_TRUE(verify_certificate(c.certificate).ok);
}

TEST(FacetCorrection, CancelsAnElementaryConjugation) {
  auto sq = unit_square();
  auto bottom = facet_with_normal(sq, {0, 1});
  ColumnVector down{{0, -1}, bottom};
  AutomorphismWord e(sq, {ElementaryFactor{down, Rational(7, 2)}}, 3);
  auto h = conjugate(face_retraction(sq, facet_polytope(sq, bottom), 3), e);
  EXPECT_TRUE(kernel_monomials(h).empty());
  auto c = correct_facet_base(h, BaseWitness{facet_lattice_points(sq, bottom), std::nullopt, false});
  EXPECT_EQ(conjugate(retraction_onto_base(h, facet_lattice_points(sq, bottom)), c.epsilon),
            face_retraction(sq, facet_polytope(sq, bottom), 3));
  EXPECT_TRUE(verify_certificate(c.certificate).ok);
}

TEST(FacetCorrection, TrivialGcdIsReported) {
  auto fib = two_by_one_interior();
  auto rho = fibration_retraction(fib, 3);
  auto p = fib.polytope;
  auto bottom = facet_with_normal(p, {0, 1});
  EXPECT_THROW(correct_facet_base(rho, BaseWitness{facet_lattice_points(p, bottom), std::nullopt, false}),
               std::exception);
}

TEST(Certificate, HandBuiltJoinRetractionChainReplays) {
  JoinRetraction wt;
  auto cert = wt.certificate(2);
  auto check = verify_certificate(cert);
  EXPECT_TRUE(check.ok) << check.report;

  auto q = wt.middle();
  auto bottom = facet_with_normal(q, {0, 1});
  cert.steps[1] = WordStep{AutomorphismWord(q, {ElementaryFactor{{{1, -1}, bottom}, 1}}, 2)};
  check = verify_certificate(cert);
  EXPECT_FALSE(check.ok);
  ASSERT_TRUE(check.divergent_generator);
  EXPECT_EQ(wt.p.lattice_points()[*check.divergent_generator], wt.b(1));
}

TEST(Certificate, TamperedLambdaIsPinpointed) {
  auto sq = unit_square();
  auto bottom = facet_with_normal(sq, {0, 1});
  ColumnVector down{{0, -1}, bottom};
  AutomorphismWord e(sq, {ElementaryFactor{down, 3}}, 3);
  auto h = conjugate(face_retraction(sq, facet_polytope(sq, bottom), 3), e);
  auto cert = correct_facet_base(h, BaseWitness{facet_lattice_points(sq, bottom), std::nullopt, false}).certificate;
  EXPECT_TRUE(verify_certificate(cert).ok);
  auto alpha = certificate_conjugator(cert);
  ASSERT_TRUE(alpha);
  std::vector<WordFactor> factors = alpha->factors();
  std::get<ElementaryFactor>(factors.at(0)).lambda += 1;
  AutomorphismWord bad(sq, factors, 3);
  cert.steps.back() = WordStep{bad};
  cert.steps.front() = WordStep{bad.inverse()};
  auto check = verify_certificate(cert);
  EXPECT_FALSE(check.ok);
  ASSERT_TRUE(check.divergent_generator);
  EXPECT_EQ(sq.lattice_points()[*check.divergent_generator][1], 1);
  EXPECT_NE(check.report.find("replay gives"), std::string::npos);
}

TEST(Certificate, RejectsMismatchedSteps) {
  auto sq = unit_square();
  auto h = face_retraction(sq, facet_polytope(sq, facet_with_normal(sq, {0, 1})), 3);
  TamenessCertificate cert{h, {FaceStep{box({2, 1}), facet_polytope(box({2, 1}), 0)}}, 3, "broken"};
  EXPECT_FALSE(verify_certificate(cert).ok);
}

TEST(PolygonTameness, SpecRoundTrips) {
  auto sq = unit_square();
  auto bottom = facet_with_normal(sq, {0, 1});
  ColumnVector down{{0, -1}, bottom};
  AutomorphismWord alpha(sq, {ElementaryFactor{down, 2}, ToricFactor{{3, Rational(1, 2), -1}}}, 3);
  auto rho = fibration_retraction(segmental_fibration(sq, {0, 0}, {1, 0}, {0, 1}), 3);
  auto r1 = polygon_tameness(conjugate(rho, alpha));
  ASSERT_TRUE(r1.certificate);
  EXPECT_EQ(r1.c, 1);
  EXPECT_TRUE(verify_certificate(*r1.certificate).ok);

  auto r2 = polygon_tameness(face_retraction(sq, facet_polytope(sq, bottom), 3));
  ASSERT_TRUE(r2.certificate);
  EXPECT_EQ(r2.certificate->path, "monomial kernel");

  auto fib = two_by_one_interior();
  auto r3 = polygon_tameness(fibration_retraction(fib, 3));
  ASSERT_TRUE(r3.certificate);
  EXPECT_EQ(r3.certificate->path, "interior base");
  ASSERT_TRUE(r3.base_segment);
  EXPECT_EQ(r3.base_segment->start, (IntVector{1, 0}));
}

TEST(PolygonTameness, Preconditions) {
  auto sq = unit_square();
  EXPECT_THROW(polygon_tameness(GradedAlgebraMap::identity(sq, 3)), InvalidInput);
  EXPECT_THROW(polygon_tameness(JoinRetraction{}.map(2)), InvalidInput);
  ColumnVector down{{0, -1}, facet_with_normal(sq, {0, 1})};
  EXPECT_THROW(polygon_tameness(elementary(sq, down, 1, 3)), InvalidInput);
}

TEST(PolygonTameness, RecoversRandomConjugatedRetractions) {
  tk::Rng rng(2024);
  for (int t = 0; t < 12; ++t) {
    auto k = tk::random_codim_one_retraction(rng, 3, 3);
    auto result = polygon_tameness(k.map);
    ASSERT_TRUE(result.certificate) << k.kind << testing::PrintToString(k.map) << "\n" << result.diagnostics.back();
    auto check = verify_certificate(*result.certificate);
    EXPECT_TRUE(check.ok) << check.report;
  }
}

TEST(SegmentWidthObstruction, Examples) {
  EXPECT_TRUE(segment_width_obstruction(LatticePolytope::hull({{0, 0}, {1, 1}, {2, 1}}), 2));
  EXPECT_FALSE(segment_width_obstruction(unit_square(), 1));
  EXPECT_THROW(segment_width_obstruction(segment(7), 3), InvalidInput);
  EXPECT_FALSE(segment_width_obstruction(box({3, 3}), 2));
}
