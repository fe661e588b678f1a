#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace momentflow {

/// Arbitrary-precision rational number (normalized, denominator > 0).
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Exact vector in M(A) = Q^n.
using RationalVector = std::vector<Rational>;

/// Dense row-major rational matrix.
using RationalMatrix = std::vector<RationalVector>;

Rational dot(const RationalVector& a, const RationalVector& b);
RationalVector scaled(const RationalVector& v, const Rational& c);
RationalVector add(const RationalVector& a, const RationalVector& b);
RationalVector subtract(const RationalVector& a, const RationalVector& b);
bool is_zero(const RationalVector& v);

RationalVector to_rational(const std::vector<int>& v);
std::vector<double> to_double(const RationalVector& v);
double to_double(const Rational& r);

/// Serializes as "p/q", always with an explicit denominator ("2/1").
std::string to_string(const Rational& r);

/// Accepts "p/q", "p", or a terminating decimal such as "-0.25".
Rational parse_rational(std::string_view text);

/// Solves A x = b exactly with fraction-free (Bareiss) elimination.
/// Returns nullopt when A is singular. A must be square.
std::optional<RationalVector> solve_exact(const RationalMatrix& a, const RationalVector& b);

}  // namespace momentflow
