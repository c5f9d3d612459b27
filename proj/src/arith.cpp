#include "polytopal/arith.hpp"

#include <numeric>
#include <sstream>

namespace polytopal {

Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow("integer overflow in addition");
  return r;
}

Int checked_sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) throw ArithmeticOverflow("integer overflow in subtraction");
  return r;
}

Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow("integer overflow in multiplication");
  return r;
}

Int gcd(Int a, Int b) { return std::gcd(a, b); }

Int vector_gcd(std::span<const Int> v) {
  Int g = 0;
  for (Int x : v) g = std::gcd(g, x);
  return g;
}

ExtendedGcd extended_gcd(Int a, Int b) {
  Int old_r = a, r = b;
  Int old_s = 1, s = 0;
  Int old_t = 0, t = 1;
  while (r != 0) {
    Int q = old_r / r;
    Int tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = checked_sub(old_s, checked_mul(q, s));
    old_s = s;
    s = tmp;
    tmp = checked_sub(old_t, checked_mul(q, t));
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

Int floor_div(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Int ceil_div(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) == (b < 0))) ++q;
  return q;
}

bool is_zero(std::span<const Int> v) {
  for (Int x : v)
    if (x != 0) return false;
  return true;
}

bool is_primitive(std::span<const Int> v) { return vector_gcd(v) == 1; }

IntVector primitive(std::span<const Int> v) {
  Int g = vector_gcd(v);
  IntVector out(v.begin(), v.end());
  if (g > 1)
    for (Int& x : out) x /= g;
  return out;
}

Int dot(std::span<const Int> a, std::span<const Int> b) {
  if (a.size() != b.size()) throw InvalidInput("dot: dimension mismatch");
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = checked_add(s, checked_mul(a[i], b[i]));
  return s;
}

IntVector add(std::span<const Int> a, std::span<const Int> b) {
  if (a.size() != b.size()) throw InvalidInput("add: dimension mismatch");
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_add(a[i], b[i]);
  return r;
}

IntVector sub(std::span<const Int> a, std::span<const Int> b) {
  if (a.size() != b.size()) throw InvalidInput("sub: dimension mismatch");
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_sub(a[i], b[i]);
  return r;
}

IntVector scale(std::span<const Int> a, Int c) {
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_mul(a[i], c);
  return r;
}

IntVector negate(std::span<const Int> a) { return scale(a, -1); }

Rational dot(std::span<const Rational> a, std::span<const Int> b) {
  if (a.size() != b.size()) throw InvalidInput("dot: dimension mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * Rational(static_cast<long>(b[i]));
  return s;
}

RationalVector to_rational(std::span<const Int> v) {
  RationalVector r;
  r.reserve(v.size());
  for (Int x : v) r.emplace_back(static_cast<long>(x));
  return r;
}

std::string to_string(std::span<const Int> v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
  os << ')';
  return os.str();
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational power(const Rational& q, Int exponent) {
  if (exponent < 0) {
    if (q == 0) throw InvalidInput("power: zero to a negative exponent");
    Rational inv = 1 / q;
    return power(inv, -exponent);
  }
  Rational result = 1;
  Rational base = q;
  Int e = exponent;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

bool is_integral(const Rational& q) { return q.get_den() == 1; }

Int to_int(const Rational& q) {
  if (!is_integral(q)) throw InvalidInput("to_int: non-integral rational " + q.get_str());
  if (!q.get_num().fits_slong_p()) throw ArithmeticOverflow("to_int: value exceeds 64 bits");
  return q.get_num().get_si();
}

Rational binomial(Int n, Int k) {
  if (k < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(r);
}

}  // namespace polytopal
