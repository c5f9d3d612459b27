#pragma once

// Codimension-1 retractions with known structure: fibration retractions over
// random segmental fibrations and facet retractions, conjugated by random
// automorphism words.

#include "polytopal/retraction.hpp"
#include "test_support.hpp"

namespace polytopal::testkit {

inline Rational random_nonzero_rational(Rng& rng, Int range = 3) {
  Int a = 0;
  while (a == 0) a = uniform(rng, -range, range);
  Rational q(static_cast<long>(a), static_cast<unsigned long>(uniform(rng, 1, 2)));
  q.canonicalize();
  return q;
}

inline WordFactor random_factor(Rng& rng, const LatticePolytope& p) {
  auto cols = column_vectors(p);
  Int kind = uniform(rng, 0, 2);
  if (kind == 0 && !cols.empty())
    return ElementaryFactor{cols[static_cast<std::size_t>(uniform(rng, 0, static_cast<Int>(cols.size()) - 1))],
                            random_nonzero_rational(rng)};
  if (kind == 1) {
    auto syms = symmetries(p);
    if (syms.size() > 1)
      return SymmetryFactor{syms[static_cast<std::size_t>(uniform(rng, 0, static_cast<Int>(syms.size()) - 1))]};
  }
  RationalVector xi(torus_basis(p).rank());
  for (auto& x : xi) x = random_nonzero_rational(rng, 2);
  return ToricFactor{xi};
}

inline AutomorphismWord random_word(Rng& rng, const LatticePolytope& p, std::size_t max_length, Int degree_bound) {
  std::vector<WordFactor> factors;
  std::size_t length = static_cast<std::size_t>(uniform(rng, 1, static_cast<Int>(max_length)));
  for (std::size_t i = 0; i < length; ++i) factors.push_back(random_factor(rng, p));
  return AutomorphismWord(p, std::move(factors), degree_bound);
}

/// Segmental fibration with a base of at least two lattice points, when one turns up.
inline std::optional<LatticeFibration> random_segmental_fibration(Rng& rng, const LatticePolytope& p, int attempts = 200) {
  for (int a = 0; a < attempts; ++a) {
    IntVector e = random_vector(rng, 2, -2, 2);
    if (gcd(e[0], e[1]) != 1) continue;
    IntVector w = random_vector(rng, 2, -2, 2);
    if (std::abs(e[0] * w[1] - e[1] * w[0]) != 1) continue;
    const auto& pts = p.lattice_points();
    IntVector point = pts[static_cast<std::size_t>(uniform(rng, 0, static_cast<Int>(pts.size()) - 1))];
    auto fib = segmental_fibration(p, point, e, w);
    if (!check_fibration(fib).valid()) continue;
    if (fibration_base(fib).lattice_points().size() < 2) continue;
    return fib;
  }
  return std::nullopt;
}

struct KnownRetraction {
  GradedAlgebraMap map;
  std::string kind;  // "fibration" or "facet"
  AutomorphismWord conjugator;
};

/// alpha o g o alpha^{-1} for g a segmental fibration retraction or a facet retraction.
inline KnownRetraction random_codim_one_retraction(Rng& rng, Int degree_bound, std::size_t max_word = 4, Int box = 3) {
  while (true) {
    auto p = random_polygon(rng, box);
    std::optional<GradedAlgebraMap> g;
    std::string kind;
    if (uniform(rng, 0, 1) == 0) {
      if (auto fib = random_segmental_fibration(rng, p)) {
        g = fibration_retraction(*fib, degree_bound);
        kind = "fibration";
      }
    }
    if (!g) {
      std::size_t f = static_cast<std::size_t>(uniform(rng, 0, static_cast<Int>(p.facets().size()) - 1));
      g = face_retraction(p, LatticePolytope::hull(facet_lattice_points(p, f)), degree_bound);
      kind = "facet";
    }
    auto alpha = random_word(rng, p, max_word, degree_bound);
    return KnownRetraction{conjugate(*g, alpha), kind, alpha};
  }
}

}  // namespace polytopal::testkit
