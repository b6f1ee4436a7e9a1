#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace torusfix {

using Integer = mpz_class;
using Rational = mpq_class;

using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

/// Parses "p", "-p" or "p/q" into a canonical rational. Throws InvalidInput.
Rational parse_rational(std::string_view text);

/// Canonical "p" or "p/q" text.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

RatVector to_rational(const IntVector& v);

/// Divides by the gcd of the entries and makes the first nonzero entry
/// positive. The zero vector is returned unchanged.
IntVector primitive_direction(const IntVector& v);

/// Scales a rational vector to a primitive integer vector (same sign
/// convention as primitive_direction).
IntVector primitive_direction(const RatVector& v);

bool is_zero(const RatVector& v);
bool is_zero(const IntVector& v);

}  // namespace torusfix
