#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <utility>

#include "conemod/errors.hpp"

namespace conemod {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) { return q.template convert_to<double>(); }

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

// Parses "p/q", plain integers, and decimal literals ("-0.5" -> -1/2).
Rational parse_rational(const std::string& text);

// "p/q" when the denominator is nontrivial, plain integer otherwise.
std::string format_rational(const Rational& q);

// Floor of the integer square root; exact flag set when n is a perfect square.
std::pair<Integer, bool> integer_sqrt(const Integer& n);

// n = s^2 * d with d squarefree (best effort: trial division up to a bound,
// any remaining composite factor stays inside d).
std::pair<Integer, Integer> square_part(const Integer& n);

// sqrt(q) when q is the square of a rational.
std::optional<Rational> exact_sqrt(const Rational& q);

// sqrt(q) = coef * sqrt(d) with d a squarefree positive integer (q > 0).
std::pair<Rational, Integer> sqrt_decompose(const Rational& q);

}  // namespace conemod
