#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <string_view>

namespace setpack {

/// Exact rational number used for every weight, LP coefficient and ratio.
using Rational = mpq_class;

/// Canonical text form: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& value);

/// Parses "p", "-p" or "p/q" (q > 0). Throws InputError on malformed text.
Rational parse_rational(std::string_view text);

/// floor(value) as a rational.
Rational floor(const Rational& value);

/// value^exponent for a non-negative integer exponent.
Rational pow(const Rational& value, unsigned long exponent);

Rational sum(std::span<const Rational> values);

}  // namespace setpack
