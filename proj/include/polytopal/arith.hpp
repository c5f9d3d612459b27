#pragma once

// Exact scalar and vector arithmetic shared by every module.
//
// Lattice coordinates are 64-bit integers with overflow-checked arithmetic;
// coefficients are GMP rationals. Nothing in the library uses floating point.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace polytopal {

using Int = std::int64_t;
using Rational = mpq_class;
using IntVector = std::vector<Int>;
using RationalVector = std::vector<Rational>;

/// Raised when a precondition on the inputs of an operation does not hold
/// (dimension mismatch, malformed polytope, invalid column vector, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when 64-bit lattice arithmetic would overflow.
class ArithmeticOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Raised when an exact answer needs irrational algebraic numbers.
/// The coefficient field is Q; the caller gets the obstruction in the message.
class ExtensionRequired : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Int checked_add(Int a, Int b);
Int checked_sub(Int a, Int b);
Int checked_mul(Int a, Int b);

Int gcd(Int a, Int b);
Int vector_gcd(std::span<const Int> v);

/// Extended gcd: returns g = gcd(a, b) >= 0 and s, t with s*a + t*b = g.
struct ExtendedGcd {
  Int g;
  Int s;
  Int t;
};
ExtendedGcd extended_gcd(Int a, Int b);

Int floor_div(Int a, Int b);
Int ceil_div(Int a, Int b);

bool is_zero(std::span<const Int> v);
bool is_primitive(std::span<const Int> v);
/// Divides by the gcd of the entries; the zero vector is returned unchanged.
IntVector primitive(std::span<const Int> v);

Int dot(std::span<const Int> a, std::span<const Int> b);
IntVector add(std::span<const Int> a, std::span<const Int> b);
IntVector sub(std::span<const Int> a, std::span<const Int> b);
IntVector scale(std::span<const Int> a, Int c);
IntVector negate(std::span<const Int> a);

Rational dot(std::span<const Rational> a, std::span<const Int> b);
RationalVector to_rational(std::span<const Int> v);

/// "(1,-2,3)"
std::string to_string(std::span<const Int> v);
std::string to_string(const Rational& q);

/// Raises q to an integer power (negative exponents allowed for q != 0).
Rational power(const Rational& q, Int exponent);

/// Integer conversion of a rational that must be integral and fit in Int.
Int to_int(const Rational& q);
bool is_integral(const Rational& q);

/// Binomial coefficient C(n, k) as an exact rational.
Rational binomial(Int n, Int k);

}  // namespace polytopal
