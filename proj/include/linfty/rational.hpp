#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace linfty {

using Rational = mpq_class;

/// Parses "p", "-p" or "p/q". Rejects a zero denominator and trailing junk.
Rational parse_rational(std::string_view text);

/// Canonical text: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);

inline bool is_negative(const Rational& q) { return sgn(q) < 0; }

}  // namespace linfty
