#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace tableau2d {

using Rational = mpq_class;

// Accepts "n", "n/d" and "-n/d". Throws std::invalid_argument on anything else
// (decimals are rejected on purpose).
Rational parse_rational(std::string_view text);

// Short form: "1", "3/4".
std::string to_string(const Rational& r);

// Always "num/den", e.g. "1/1", "0/1".
std::string to_fraction_string(const Rational& r);

std::size_t hash_value(const Rational& r);

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace tableau2d
