#include "conemod/rational.hpp"

#include <cctype>
#include <sstream>

namespace conemod {

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) fail(ErrorKind::Validation, "empty rational literal");

  auto slash = s.find('/');
  try {
    if (slash != std::string::npos) {
      Integer num(s.substr(0, slash));
      Integer den(s.substr(slash + 1));
      if (den == 0) fail(ErrorKind::Validation, "zero denominator in '" + text + "'");
      return Rational(num, den);
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(Integer(s));
    // decimal literal: a.b -> (a*10^n + b) / 10^n
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    size_t frac_len = s.size() - dot - 1;
    if (frac_len == 0) return Rational(Integer(s.substr(0, dot)));
    Integer den = 1;
    for (size_t i = 0; i < frac_len; ++i) den *= 10;
    return Rational(Integer(digits), den);
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    fail(ErrorKind::Validation, "cannot parse rational '" + text + "'");
  }
}

std::string format_rational(const Rational& q) {
  std::ostringstream os;
  os << numerator(q);
  if (denominator(q) != 1) os << '/' << denominator(q);
  return os.str();
}

std::pair<Integer, bool> integer_sqrt(const Integer& n) {
  if (n < 0) fail(ErrorKind::Domain, "integer_sqrt of a negative number");
  Integer root = boost::multiprecision::sqrt(n);
  return {root, root * root == n};
}

std::pair<Integer, Integer> square_part(const Integer& n) {
  if (n <= 0) fail(ErrorKind::Domain, "square_part expects a positive integer");
  Integer s = 1, d = 1, m = n;
  for (Integer p = 2; p * p <= m && p < 1000000; p == 2 ? p = 3 : p += 2) {
    int count = 0;
    while (m % p == 0) {
      m /= p;
      ++count;
    }
    for (int i = 0; i + 1 < count; i += 2) s *= p;
    if (count % 2 == 1) d *= p;
  }
  // whatever is left is either 1, prime, or too large to factor here
  auto [root, exact] = integer_sqrt(m);
  if (exact)
    s *= root;
  else
    d *= m;
  return {s, d};
}

std::pair<Rational, Integer> sqrt_decompose(const Rational& q) {
  if (q <= 0) fail(ErrorKind::Domain, "sqrt_decompose expects a positive rational");
  Integer m = numerator(q) * denominator(q);
  auto [s, d] = square_part(m);
  return {Rational(s, denominator(q)), d};
}

std::optional<Rational> exact_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  if (q == 0) return Rational(0);
  auto [ns, n_exact] = integer_sqrt(numerator(q));
  if (!n_exact) return std::nullopt;
  auto [ds, d_exact] = integer_sqrt(denominator(q));
  if (!d_exact) return std::nullopt;
  return Rational(ns, ds);
}

}  // namespace conemod
