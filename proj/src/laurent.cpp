#include "polytopal/laurent.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace polytopal {

LaurentPolynomial LaurentPolynomial::monomial(IntVector exponent, Rational coeff) {
  LaurentPolynomial f(exponent.size());
  f.add_term(exponent, coeff);
  return f;
}

LaurentPolynomial LaurentPolynomial::constant(std::size_t dim, Rational c) { return monomial(IntVector(dim, 0), c); }

LaurentPolynomial LaurentPolynomial::from_terms(std::size_t dim,
                                                const std::vector<std::pair<IntVector, Rational>>& terms) {
  LaurentPolynomial f(dim);
  for (const auto& [e, c] : terms) f.add_term(e, c);
  return f;
}

Rational LaurentPolynomial::coefficient(const IntVector& exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? Rational(0) : it->second;
}

void LaurentPolynomial::add_term(const IntVector& exponent, const Rational& coeff) {
  if (exponent.size() != dim_) throw InvalidInput("Laurent term dimension mismatch");
  Rational c = coeff;
  c.canonicalize();
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponent, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

std::pair<IntVector, Rational> LaurentPolynomial::leading_term() const {
  if (terms_.empty()) throw InvalidInput("leading_term of the zero polynomial");
  return *terms_.rbegin();
}

IntVector LaurentPolynomial::min_exponents() const {
  if (terms_.empty()) throw InvalidInput("min_exponents of the zero polynomial");
  IntVector m = terms_.begin()->first;
  for (const auto& [e, c] : terms_)
    for (std::size_t i = 0; i < dim_; ++i) m[i] = std::min(m[i], e[i]);
  return m;
}

IntVector LaurentPolynomial::max_exponents() const {
  if (terms_.empty()) throw InvalidInput("max_exponents of the zero polynomial");
  IntVector m = terms_.begin()->first;
  for (const auto& [e, c] : terms_)
    for (std::size_t i = 0; i < dim_; ++i) m[i] = std::max(m[i], e[i]);
  return m;
}

std::vector<IntVector> LaurentPolynomial::support() const {
  std::vector<IntVector> s;
  for (const auto& [e, c] : terms_) s.push_back(e);
  return s;
}

std::vector<std::pair<IntVector, Rational>> LaurentPolynomial::canonical_terms() const {
  std::vector<std::pair<IntVector, Rational>> out(terms_.begin(), terms_.end());
  auto total = [](const IntVector& e) { return std::accumulate(e.begin(), e.end(), Int{0}); };
  std::stable_sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
    Int da = total(a.first), db = total(b.first);
    if (da != db) return da < db;
    return a.first < b.first;
  });
  return out;
}

LaurentPolynomial LaurentPolynomial::shifted(std::span<const Int> by) const {
  LaurentPolynomial f(dim_);
  for (const auto& [e, c] : terms_) f.terms_.emplace(add(e, by), c);
  return f;
}

LaurentPolynomial LaurentPolynomial::scaled(const Rational& factor) const {
  LaurentPolynomial f(dim_);
  Rational c = factor;
  c.canonicalize();
  if (c == 0) return f;
  for (const auto& [e, a] : terms_) f.terms_.emplace(e, a * c);
  return f;
}

LaurentPolynomial& LaurentPolynomial::operator+=(const LaurentPolynomial& o) {
  if (o.dim_ != dim_) throw InvalidInput("Laurent addition: dimension mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

LaurentPolynomial& LaurentPolynomial::operator-=(const LaurentPolynomial& o) {
  if (o.dim_ != dim_) throw InvalidInput("Laurent subtraction: dimension mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

LaurentPolynomial LaurentPolynomial::operator+(const LaurentPolynomial& o) const {
  LaurentPolynomial f = *this;
  f += o;
  return f;
}

LaurentPolynomial LaurentPolynomial::operator-(const LaurentPolynomial& o) const {
  LaurentPolynomial f = *this;
  f -= o;
  return f;
}

LaurentPolynomial LaurentPolynomial::operator*(const LaurentPolynomial& o) const {
  if (o.dim_ != dim_) throw InvalidInput("Laurent multiplication: dimension mismatch");
  LaurentPolynomial f(dim_);
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) f.add_term(add(e1, e2), c1 * c2);
  return f;
}

std::string LaurentPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : canonical_terms()) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    Rational a = abs(c);
    os << a.get_str() << "*x^" << polytopal::to_string(e);
  }
  return os.str();
}

LaurentPolynomial multiply(const LaurentPolynomial& f, const LaurentPolynomial& g) { return f * g; }

LaurentPolynomial power(const LaurentPolynomial& f, Int n) {
  if (n < 0) throw InvalidInput("power: negative exponent");
  LaurentPolynomial r = LaurentPolynomial::constant(f.dim(), 1);
  for (Int i = 0; i < n; ++i) r = r * f;
  return r;
}

namespace {

bool divides_exponent(const IntVector& small, const IntVector& big) {
  for (std::size_t i = 0; i < small.size(); ++i)
    if (small[i] > big[i]) return false;
  return true;
}

// Exact division of polynomials (non-negative exponents) by lex-leading terms.
std::optional<LaurentPolynomial> poly_divide(LaurentPolynomial f, const LaurentPolynomial& g) {
  LaurentPolynomial q(f.dim());
  const auto [ge, gc] = g.leading_term();
  while (!f.is_zero()) {
    auto [fe, fc] = f.leading_term();
    if (!divides_exponent(ge, fe)) return std::nullopt;
    IntVector shift = sub(fe, ge);
    Rational c = fc / gc;
    q.add_term(shift, c);
    f -= g.shifted(shift).scaled(c);
  }
  return q;
}

LaurentPolynomial to_polynomial(const LaurentPolynomial& f) { return f.shifted(negate(f.min_exponents())); }

Int degree_in(const LaurentPolynomial& f, std::size_t v) {
  Int d = -1;
  for (const auto& [e, c] : f.terms()) d = std::max(d, e[v]);
  return d;
}

LaurentPolynomial coefficient_in(const LaurentPolynomial& f, std::size_t v, Int d) {
  LaurentPolynomial r(f.dim());
  for (const auto& [e, c] : f.terms())
    if (e[v] == d) {
      IntVector e2 = e;
      e2[v] = 0;
      r.add_term(e2, c);
    }
  return r;
}

LaurentPolynomial unit_var_power(std::size_t dim, std::size_t v, Int d) {
  IntVector e(dim, 0);
  e[v] = d;
  return LaurentPolynomial::monomial(e);
}

bool is_constant(const LaurentPolynomial& f) { return f.size() == 1 && is_zero(f.terms().begin()->first); }

LaurentPolynomial exact(const LaurentPolynomial& f, const LaurentPolynomial& g) {
  auto q = poly_divide(f, g);
  if (!q) throw std::logic_error("gcd: expected exact division failed");
  return *q;
}

LaurentPolynomial pseudo_remainder(const LaurentPolynomial& a, const LaurentPolynomial& b, std::size_t v) {
  Int db = degree_in(b, v);
  LaurentPolynomial lcb = coefficient_in(b, v, db);
  LaurentPolynomial r = a;
  Int e = degree_in(a, v) - db + 1;
  while (!r.is_zero() && degree_in(r, v) >= db) {
    Int dr = degree_in(r, v);
    LaurentPolynomial t = coefficient_in(r, v, dr) * unit_var_power(a.dim(), v, dr - db);
    r = lcb * r - t * b;
    --e;
  }
  return power(lcb, e) * r;
}

LaurentPolynomial poly_gcd(const LaurentPolynomial& f, const LaurentPolynomial& g);

LaurentPolynomial content_in(const LaurentPolynomial& f, std::size_t v) {
  Int d = degree_in(f, v);
  LaurentPolynomial c(f.dim());
  for (Int i = 0; i <= d; ++i) {
    LaurentPolynomial ci = coefficient_in(f, v, i);
    if (ci.is_zero()) continue;
    c = c.is_zero() ? ci : poly_gcd(c, ci);
    if (is_constant(c)) break;
  }
  return c;
}

// Primitive part with respect to v, scaled so the leading coefficient is 1.
LaurentPolynomial primitive_part_in(const LaurentPolynomial& f, std::size_t v) {
  return exact(f, content_in(f, v));
}

LaurentPolynomial subresultant_gcd(LaurentPolynomial a, LaurentPolynomial b, std::size_t v) {
  if (degree_in(a, v) < degree_in(b, v)) std::swap(a, b);
  const std::size_t n = a.dim();
  LaurentPolynomial g = LaurentPolynomial::constant(n, 1), h = LaurentPolynomial::constant(n, 1);
  while (true) {
    Int delta = degree_in(a, v) - degree_in(b, v);
    LaurentPolynomial r = pseudo_remainder(a, b, v);
    if (r.is_zero()) return primitive_part_in(b, v);
    if (degree_in(r, v) == 0) return LaurentPolynomial::constant(n, 1);
    a = b;
    b = exact(r, g * power(h, delta));
    g = coefficient_in(a, v, degree_in(a, v));
    if (delta == 0) {
      // h unchanged
    } else if (delta == 1) {
      h = g;
    } else {
      h = exact(power(g, delta), power(h, delta - 1));
    }
  }
}

LaurentPolynomial poly_gcd(const LaurentPolynomial& f, const LaurentPolynomial& g) {
  const std::size_t n = f.dim();
  if (is_constant(f) || is_constant(g)) return LaurentPolynomial::constant(n, 1);
  std::size_t v = n;
  for (std::size_t i = n; i-- > 0;)
    if (degree_in(f, i) > 0 || degree_in(g, i) > 0) {
      v = i;
      break;
    }
  if (v == n) return LaurentPolynomial::constant(n, 1);
  LaurentPolynomial cf = degree_in(f, v) > 0 ? content_in(f, v) : f;
  LaurentPolynomial cg = degree_in(g, v) > 0 ? content_in(g, v) : g;
  LaurentPolynomial c = poly_gcd(cf, cg);
  if (degree_in(f, v) == 0 || degree_in(g, v) == 0) return c;
  LaurentPolynomial pf = exact(f, cf), pg = exact(g, cg);
  return c * subresultant_gcd(pf, pg, v);
}

}  // namespace

std::optional<LaurentPolynomial> exact_divide(const LaurentPolynomial& f, const LaurentPolynomial& g) {
  if (g.is_zero()) throw InvalidInput("exact_divide: division by zero");
  if (f.dim() != g.dim()) throw InvalidInput("exact_divide: dimension mismatch");
  if (f.is_zero()) return f;
  IntVector fs = f.min_exponents(), gs = g.min_exponents();
  auto q = poly_divide(to_polynomial(f), to_polynomial(g));
  if (!q) return std::nullopt;
  return q->shifted(sub(fs, gs));
}

LatticePolytope newton_polytope(const LaurentPolynomial& f) {
  if (f.is_zero()) throw InvalidInput("newton_polytope of the zero polynomial");
  return LatticePolytope::hull(f.support());
}

TermClass classify(const LaurentPolynomial& f) {
  switch (f.size()) {
    case 0: return TermClass::zero;
    case 1: return TermClass::monomial;
    case 2: return TermClass::binomial;
    default: break;
  }
  return newton_polytope(f).dim() <= 1 ? TermClass::segmentonomial : TermClass::general;
}

std::string to_string(TermClass c) {
  switch (c) {
    case TermClass::zero: return "zero";
    case TermClass::monomial: return "monomial";
    case TermClass::binomial: return "binomial";
    case TermClass::segmentonomial: return "segmentonomial";
    case TermClass::general: return "general";
  }
  return "general";
}

LaurentPolynomial normalize_unit(const LaurentPolynomial& f) {
  if (f.is_zero()) return f;
  LaurentPolynomial p = to_polynomial(f);
  return p.scaled(1 / p.leading_term().second);
}

LaurentPolynomial gcd(const LaurentPolynomial& f, const LaurentPolynomial& g) {
  if (f.is_zero() || g.is_zero()) throw InvalidInput("gcd: zero input");
  if (f.dim() != g.dim()) throw InvalidInput("gcd: dimension mismatch");
  return normalize_unit(poly_gcd(to_polynomial(f), to_polynomial(g)));
}

Rational evaluate(const LaurentPolynomial& f, std::span<const Rational> point) {
  if (point.size() != f.dim()) throw InvalidInput("evaluate: dimension mismatch");
  Rational s = 0;
  for (const auto& [e, c] : f.terms()) {
    Rational t = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) t *= power(point[i], e[i]);
    s += t;
  }
  return s;
}

LaurentPolynomial partial_derivative(const LaurentPolynomial& f, std::size_t v) {
  LaurentPolynomial d(f.dim());
  for (const auto& [e, c] : f.terms()) {
    if (e[v] == 0) continue;
    IntVector e2 = e;
    --e2[v];
    d.add_term(e2, c * static_cast<long>(e[v]));
  }
  return d;
}

namespace {

std::vector<mpz_class> divisors(mpz_class n) {
  n = abs(n);
  std::vector<mpz_class> small, large;
  if (n > mpz_class("1000000000000000000")) throw InvalidInput("rational_roots: coefficients too large");
  for (mpz_class d = 1; d * d <= n; ++d)
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

Rational eval_univariate(const std::vector<Rational>& c, const Rational& x) {
  Rational s = 0;
  for (std::size_t i = c.size(); i-- > 0;) s = s * x + c[i];
  return s;
}

std::vector<Rational> deflate(const std::vector<Rational>& c, const Rational& r) {
  // Synthetic division by (T - r).
  std::vector<Rational> q(c.size() - 1);
  Rational carry = 0;
  for (std::size_t i = c.size(); i-- > 1;) {
    carry = carry * r + c[i];
    q[i - 1] = carry;
  }
  return q;
}

}  // namespace

RationalRoots rational_roots(const std::vector<Rational>& coeffs) {
  std::vector<Rational> c = coeffs;
  while (!c.empty() && c.back() == 0) c.pop_back();
  if (c.empty()) throw InvalidInput("rational_roots: zero polynomial");
  RationalRoots out;
  Int zero_mult = 0;
  while (c.size() > 1 && c.front() == 0) {
    c.erase(c.begin());
    ++zero_mult;
  }
  if (zero_mult) out.roots.push_back({Rational(0), zero_mult});
  if (c.size() > 1) {
    mpz_class l = 1;
    for (const auto& x : c) l = lcm(l, mpz_class(x.get_den()));
    std::vector<mpz_class> ic;
    for (const auto& x : c) ic.push_back(mpz_class(x * l));
    std::vector<Rational> candidates;
    for (const auto& p : divisors(ic.front()))
      for (const auto& q : divisors(ic.back())) {
        if (gcd(p, q) != 1) continue;
        Rational r(p, q);
        candidates.push_back(r);
        candidates.push_back(-r);
      }
    std::sort(candidates.begin(), candidates.end());
    for (const auto& r : candidates) {
      Int mult = 0;
      while (c.size() > 1 && eval_univariate(c, r) == 0) {
        c = deflate(c, r);
        ++mult;
      }
      if (mult) out.roots.push_back({r, mult});
    }
  }
  std::sort(out.roots.begin(), out.roots.end());
  out.cofactor = c;
  return out;
}

std::string univariate_to_string(const std::vector<Rational>& coeffs, const std::string& var) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    if (coeffs[i] == 0) continue;
    if (!first) os << (coeffs[i] < 0 ? " - " : " + ");
    else if (coeffs[i] < 0) os << "-";
    first = false;
    os << Rational(abs(coeffs[i])).get_str();
    if (i > 0) os << "*" << var << "^" << i;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace polytopal
