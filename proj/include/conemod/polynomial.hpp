#pragma once

#include <vector>

#include "conemod/rate.hpp"
#include "conemod/rational.hpp"

namespace conemod {

// Univariate polynomial with exact rational coefficients, ascending powers.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for the zero polynomial
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  const Rational& coefficient(int i) const { return coeffs_.at(static_cast<size_t>(i)); }

  Rational eval(const Rational& x) const;
  double eval(double x) const;

  Polynomial derivative() const;
  Polynomial monic() const;
  bool is_zero() const { return coeffs_.empty(); }

 private:
  std::vector<Rational> coeffs_;  // trailing zeros trimmed
};

Polynomial poly_gcd(Polynomial a, Polynomial b);

// Number of distinct real roots in (a, b] via a Sturm chain; the whole real
// line when no interval is given.
int count_real_roots(const Polynomial& p);
int count_real_roots(const Polynomial& p, const Rational& a, const Rational& b);

// All roots of p, which must be real and simple; otherwise throws
// AssumptionViolation. Rational roots come out exact, the rest as
// algebraic floats (labelled for quadratics: "u+v*sqrt(d)").
std::vector<Rate> real_simple_roots(const Polynomial& p);

// Label helper for u + v*sqrt(d), d > 1 squarefree.
std::string surd_label(const Rational& u, const Rational& v, const Integer& d);

}  // namespace conemod
