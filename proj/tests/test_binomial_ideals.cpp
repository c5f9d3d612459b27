#include "polytopal/binomial_ideals.hpp"
#include "printers.hpp"
#include "segmentonomial_oracle.hpp"

#include <gtest/gtest.h>

using namespace polytopal;
namespace tk = polytopal::testkit;

namespace {

LaurentPolynomial mono(IntVector e, Rational c = 1) { return LaurentPolynomial::monomial(std::move(e), c); }
const LaurentPolynomial X = mono({1, 0}), Y = mono({0, 1});

const BinomialPrime* find_kind(const std::vector<BinomialPrime>& ps, PrimeKind k) {
  for (const auto& p : ps)
    if (p.kind == k) return &p;
  return nullptr;
}

}  // namespace

TEST(SegmentonomialPrimes, LinearBinomialGivesOnePrime) {
  auto s = tk::orthant(2);
  auto f = X - Y.scaled(2);
  auto ps = segmentonomial_minimal_primes_strict(s, f);
  ASSERT_EQ(ps.size(), 1u);
  const auto& p = ps[0];
  EXPECT_EQ(p.kind, PrimeKind::character_kernel);
  EXPECT_EQ(p.root, 2);
  ASSERT_EQ(p.generators.size(), 1u);
  EXPECT_TRUE(tk::same_ideal_up_to(p.generators, {f}, 2, 3));
  EXPECT_TRUE(apply_quotient(p, f).is_zero());
  auto q = quotient_as_semigroup(p);
  ASSERT_EQ(q.semigroup.generators().size(), 1u);
  // X -> 2t, Y -> t
  EXPECT_EQ(q.images[0]->first / q.images[1]->first, 2);
  EXPECT_EQ(q.images[0]->second, q.images[1]->second);
}

TEST(SegmentonomialPrimes, QuadraticSplitsIntoTwoLines) {
  auto s = tk::orthant(2);
  auto f = X * X - (X * Y).scaled(3) + (Y * Y).scaled(2);
  auto ps = segmentonomial_minimal_primes_strict(s, f);
  ASSERT_EQ(ps.size(), 2u);
  std::vector<LaurentPolynomial> expected{X - Y, X - Y.scaled(2)};
  for (const auto& e : expected) {
    bool found = false;
    for (const auto& p : ps) found = found || tk::same_ideal_up_to(p.generators, {e}, 2, 3);
    EXPECT_TRUE(found) << e.to_string();
  }
}

TEST(SegmentonomialPrimes, MonomialContentGivesFacePrime) {
  auto s = tk::orthant(2);
  auto f = X * X * Y - X * X * X;
  auto ps = segmentonomial_minimal_primes_strict(s, f);
  ASSERT_EQ(ps.size(), 2u);
  auto face = find_kind(ps, PrimeKind::monomial_face);
  auto chr = find_kind(ps, PrimeKind::character_kernel);
  ASSERT_TRUE(face && chr);
  EXPECT_TRUE(tk::same_ideal_up_to(face->generators, {X}, 2, 3));
  EXPECT_TRUE(tk::same_ideal_up_to(chr->generators, {Y - X}, 2, 3));
  auto q = quotient_as_semigroup(*face);
  EXPECT_EQ(q.semigroup.generators(), (std::vector<IntVector>{{0, 1}}));
  EXPECT_FALSE(q.images[0].has_value());
}

TEST(SegmentonomialPrimes, MonomialInput) {
  auto s = tk::orthant(3);
  auto ps = segmentonomial_minimal_primes_strict(s, mono({2, 0, 1}));
  EXPECT_EQ(ps.size(), 2u);
  for (const auto& p : ps) EXPECT_EQ(p.kind, PrimeKind::monomial_face);
  EXPECT_TRUE(segmentonomial_minimal_primes_strict(s, mono({0, 0, 0}, 5)).empty());
}

TEST(SegmentonomialPrimes, IrrationalRootsAreReported) {
  auto s = tk::orthant(2);
  auto f = X * X - (Y * Y).scaled(2);
  auto res = segmentonomial_minimal_primes(s, f);
  EXPECT_TRUE(res.primes.empty());
  EXPECT_FALSE(res.fully_split());
  EXPECT_THROW(segmentonomial_minimal_primes_strict(s, f), ExtensionRequired);
  // The rational factor is still realised.
  auto g = f * (X - Y);
  auto partial = segmentonomial_minimal_primes(s, g);
  EXPECT_EQ(partial.primes.size(), 1u);
  EXPECT_EQ(partial.unsplit_factor.size(), 3u);
}

TEST(SegmentonomialPrimes, RejectsBadInput) {
  auto s = tk::orthant(2);
  EXPECT_THROW(segmentonomial_minimal_primes(s, LaurentPolynomial(2)), InvalidInput);
  EXPECT_THROW(segmentonomial_minimal_primes(s, X + Y + mono({0, 0})), InvalidInput);
  EXPECT_THROW(segmentonomial_minimal_primes(s, mono({-1, 1})), InvalidInput);
}

TEST(SegmentonomialPrimes, RandomAgainstFactorOracle) {
  tk::Rng rng(0x5e6);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = trial % 2 ? 3 : 2;
    auto rs = tk::random_segmentonomial(rng, n);
    auto s = tk::orthant(n);
    auto ps = segmentonomial_minimal_primes_strict(s, rs.f, 3);
    ASSERT_EQ(ps.size(), rs.prime_generators.size()) << rs.f.to_string();
    for (const auto& p : ps) EXPECT_TRUE(apply_quotient(p, rs.f).is_zero());
    for (const auto& g : rs.prime_generators) {
      int matches = 0;
      for (const auto& p : ps) matches += tk::same_ideal_up_to(p.generators, {g}, n, 3);
      EXPECT_EQ(matches, 1) << g.to_string() << " in " << rs.f.to_string();
    }
  }
}

TEST(SegmentonomialPrimes, PolytopalSemigroupQuotient) {
  // S_P for the unit square; f = x_{(0,0)} - 3 x_{(1,0)} has direction (1,0,0)
  // and lies in the prime of the top edge.
  auto s = polytopal_semigroup(box({1, 1}));
  auto f = mono({0, 0, 1}) - mono({1, 0, 1}, 3);
  auto ps = segmentonomial_minimal_primes_strict(s, f);
  ASSERT_EQ(ps.size(), 2u);
  auto face = find_kind(ps, PrimeKind::monomial_face);
  ASSERT_TRUE(face);
  EXPECT_EQ(face->face_normal, (IntVector{0, -1, 1}));
  const auto& p = *find_kind(ps, PrimeKind::character_kernel);
  EXPECT_TRUE(apply_quotient(p, f).is_zero());
  auto q = quotient_as_semigroup(p);
  EXPECT_EQ(q.semigroup.generators().size(), 2u);
  EXPECT_EQ(rank(q.semigroup), rank(s) - 1);
  // Pairs of generators with the same image are exactly those related by the prime.
  for (const auto& g : p.generators) EXPECT_TRUE(apply_quotient(p, g).is_zero());
}

TEST(SegmentonomialPrimes, KernelMatchesGeneratorsOnSquareSemigroup) {
  // Degree pieces of the kernel: one dimension drops per fibre collapse.
  auto s = polytopal_semigroup(box({1, 1}));
  auto f = mono({0, 0, 1}) - mono({0, 1, 1});
  auto ps = segmentonomial_minimal_primes_strict(s, f, 3);
  const auto& p = *find_kind(ps, PrimeKind::character_kernel);
  for (Int d = 1; d <= 3; ++d) {
    auto elems = degree_elements(s, d);
    std::set<IntVector> images;
    for (const auto& e : elems) images.insert(quotient_image(p, e)->second);
    // The image of degree d is the lattice points of d * [0,1].
    EXPECT_EQ(images.size(), static_cast<std::size_t>(d + 1));
  }
}

TEST(QuotientAsSemigroup, ExamplesAndGrading) {
  auto s = tk::orthant(2);
  auto p = segmentonomial_minimal_primes_strict(s, X - Y).at(0);
  auto q = quotient_as_semigroup(p);
  ASSERT_EQ(q.semigroup.generators().size(), 1u);
  EXPECT_EQ(q.images[0], q.images[1]);
  EXPECT_EQ(q.semigroup.degree(q.semigroup.generators()[0]), 1);
  // Inhomogeneous f has no graded quotient.
  auto inh = segmentonomial_minimal_primes_strict(s, X - Y * Y).at(0);
  EXPECT_THROW(quotient_as_semigroup(inh), InvalidInput);
  // Tampered data is caught.
  auto bad = p;
  bad.projected_map[1]->second = IntVector{2};
  EXPECT_THROW(quotient_as_semigroup(bad), InvalidInput);
}

TEST(IdealPrimes, RecursesThroughQuotients) {
  auto s = tk::orthant(3);
  auto x = mono({1, 0, 0}), y = mono({0, 1, 0}), z = mono({0, 0, 1});
  auto res = segmentonomial_ideal_primes(s, {x - y, y - z});
  ASSERT_EQ(res.primes.size(), 1u);
  EXPECT_TRUE(tk::same_ideal_up_to(res.primes[0].generators, {x - y, y - z}, 3, 3));

  auto both = segmentonomial_ideal_primes(s, {x - y, x - y.scaled(2)});
  ASSERT_EQ(both.primes.size(), 1u);
  EXPECT_TRUE(tk::same_ideal_up_to(both.primes[0].generators, {x, y}, 3, 3));

  auto mixed = segmentonomial_ideal_primes(s, {x * y, y - z});
  ASSERT_EQ(mixed.primes.size(), 2u);
  int matched = 0;
  for (const auto& p : mixed.primes)
    matched += tk::same_ideal_up_to(p.generators, {x, y - z}, 3, 3) + tk::same_ideal_up_to(p.generators, {y, z}, 3, 3);
  EXPECT_EQ(matched, 2);
  EXPECT_THROW(segmentonomial_ideal_primes(s, {x - y, y - z}, 3, 1), InvalidInput);
}

TEST(IdealPrimes, DropsNonMinimalBranches) {
  auto s = tk::orthant(2);
  // (X^2 - XY, X) has the single minimal prime (X).
  auto res = segmentonomial_ideal_primes(s, {X * X - X * Y, X});
  ASSERT_EQ(res.primes.size(), 1u);
  EXPECT_TRUE(tk::same_ideal_up_to(res.primes[0].generators, {X}, 2, 3));
}

TEST(IndependenceTest, Examples) {
  auto s = tk::orthant(2);
  EXPECT_FALSE(independence_test(s, X - Y, {{1, 0}, {0, 1}}));
  EXPECT_TRUE(independence_test(s, X - Y, {{1, 0}, {1, 1}}));
  EXPECT_TRUE(independence_test(s, X - Y, {{3, 2}}));
  EXPECT_THROW(independence_test(s, X, {{1, 0}}), InvalidInput);
  EXPECT_THROW(independence_test(s, X - Y, {{1, 0}, {1, 0}}), InvalidInput);
}

TEST(IndependenceTest, AgreesWithQuotientImages) {
  tk::Rng rng(77);
  auto s = tk::orthant(3);
  for (int trial = 0; trial < 40; ++trial) {
    auto rs = tk::random_segmentonomial(rng, 3);
    auto ps = segmentonomial_minimal_primes_strict(s, rs.f);
    std::vector<IntVector> pts;
    std::set<IntVector> seen;
    for (int k = 0; k < 3; ++k) {
      auto v = tk::random_vector(rng, 3, 0, 2);
      if (seen.insert(v).second) pts.push_back(v);
    }
    if (!independence_test(s, rs.f, pts)) continue;
    for (const auto& p : ps) {
      if (p.kind != PrimeKind::character_kernel) continue;
      std::set<IntVector> images;
      for (const auto& x : pts) images.insert(quotient_image(p, x)->second);
      EXPECT_EQ(images.size(), pts.size());
    }
  }
}

TEST(SplitVariable, Examples) {
  auto id = RationalMatrix::identity(3);
  auto a = split_variable(id);
  EXPECT_EQ(a.chosen_j, 0u);
  EXPECT_EQ(a.epsilon_matrix, RationalMatrix::identity(2));

  RationalMatrix swap(2, 2);
  swap(0, 1) = 1, swap(1, 0) = 1;
  auto b = split_variable(swap);
  EXPECT_EQ(b.chosen_j, 1u);
  EXPECT_EQ(b.epsilon_matrix(0, 0), 1);

  // Top-left block of rank one.
  auto t = to_rational(IntMatrix::from_rows({{1, 1, 0}, {1, 1, 1}, {0, 1, 0}}, 3));
  auto c = split_variable(t);
  EXPECT_EQ(c.chosen_j, 1u);
  EXPECT_NE(determinant(c.epsilon_matrix), 0);
  EXPECT_EQ(determinant(split_epsilon(t, 0)), 0);

  EXPECT_THROW(split_variable(RationalMatrix(3, 3)), InvalidInput);
}

TEST(SplitVariable, CommutingSquareOnRandomMatrices) {
  tk::Rng rng(314);
  int nonzero_j = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = static_cast<std::size_t>(tk::uniform(rng, 1, 3));
    RationalMatrix t(n + 1, n + 1);
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t j = 0; j <= n; ++j) t(i, j) = Rational(static_cast<long>(tk::uniform(rng, -1, 1)));
    if (determinant(t) == 0) continue;
    auto st = split_variable(t);
    EXPECT_NE(determinant(st.epsilon_matrix), 0);
    EXPECT_EQ(multiply(st.nu_matrix, st.epsilon_matrix), relabelled_rows(t, st.chosen_j));
    for (std::size_t j = 0; j < st.chosen_j; ++j) EXPECT_EQ(determinant(split_epsilon(t, j)), 0);
    nonzero_j += st.chosen_j > 0;
  }
  EXPECT_GT(nonzero_j, 0);
}
