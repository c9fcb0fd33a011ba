#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "conemod/errors.hpp"
#include "conemod/polynomial.hpp"

using namespace conemod;

namespace {

// Independent oracle: bisection on sign changes of the double-precision
// polynomial over a bracket mesh. Good to ~1e-12 for the roots under test.
std::vector<double> numeric_roots(const Polynomial& p, double lo, double hi) {
  std::vector<double> roots;
  const int mesh = 40000;
  double prev_x = lo, prev_f = p.eval(lo);
  for (int i = 1; i <= mesh; ++i) {
    double x = lo + (hi - lo) * i / mesh;
    double f = p.eval(x);
    if (prev_f == 0.0) roots.push_back(prev_x);
    if (prev_f * f < 0) {
      double a = prev_x, b = x;
      for (int it = 0; it < 100; ++it) {
        double m = 0.5 * (a + b);
        if (p.eval(a) * p.eval(m) <= 0)
          b = m;
        else
          a = m;
      }
      roots.push_back(0.5 * (a + b));
    }
    prev_x = x;
    prev_f = f;
  }
  if (prev_f == 0.0) roots.push_back(prev_x);
  return roots;
}

Polynomial make_poly(std::vector<long long> coeffs) {
  std::vector<Rational> c(coeffs.begin(), coeffs.end());
  return Polynomial(std::move(c));
}

}  // namespace

TEST_CASE("quadratic roots match the numeric oracle") {
  // -z^2 - 4z + mu for mu = 0, 5, 12
  struct Case {
    long long mu;
    std::vector<double> expected;
  };
  for (const auto& c : {Case{0, {-4, 0}}, Case{5, {-5, 1}}, Case{12, {-6, 2}}}) {
    Polynomial p = make_poly({c.mu, -4, -1});
    auto roots = real_simple_roots(p);
    auto oracle = numeric_roots(p, -30, 30);
    REQUIRE(roots.size() == 2);
    REQUIRE(oracle.size() == 2);
    for (size_t i = 0; i < 2; ++i) {
      CHECK(roots[i].is_exact);
      CHECK(roots[i].approx == doctest::Approx(c.expected[i]).epsilon(1e-12));
      CHECK(roots[i].approx == doctest::Approx(oracle[i]).epsilon(1e-9));
    }
  }
}

TEST_CASE("irrational quadratic roots carry surd labels") {
  // z^2 + 6z + 1: roots -3 +- 2*sqrt(2)
  Polynomial p = make_poly({1, 6, 1});
  auto roots = real_simple_roots(p);
  REQUIRE(roots.size() == 2);
  CHECK(!roots[0].is_exact);
  CHECK(roots[0].approx == doctest::Approx(-3.0 - 2.0 * std::sqrt(2.0)).epsilon(1e-14));
  CHECK(roots[1].approx == doctest::Approx(-3.0 + 2.0 * std::sqrt(2.0)).epsilon(1e-14));
  CHECK(roots[0].label == "-3-2*sqrt(2)");
  CHECK(roots[1].label == "-3+2*sqrt(2)");
}

TEST_CASE("repeated and non-real roots are rejected") {
  CHECK_THROWS_AS(real_simple_roots(make_poly({1, -2, 1})), Error);   // (z-1)^2
  CHECK_THROWS_AS(real_simple_roots(make_poly({1, 0, 1})), Error);    // z^2 + 1
  CHECK_THROWS_AS(real_simple_roots(make_poly({1, 1, 1, 1})), Error); // one real, two complex
  try {
    real_simple_roots(make_poly({1, -2, 1}));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::AssumptionViolation);
  }
}

TEST_CASE("higher-degree polynomials with rational and irrational roots") {
  // (z - 1)(z + 2)(2z - 3) = 2z^3 - z^2 - 7z + 6: rational roots only
  Polynomial p = make_poly({6, -7, -1, 2});
  REQUIRE(p.eval(Rational(1)) == 0);
  auto roots = real_simple_roots(p);
  REQUIRE(roots.size() == 3);
  CHECK(roots[0].exact == Rational(-2));
  CHECK(roots[1].exact == Rational(1));
  CHECK(roots[2].exact == Rational(3, 2));

  // (z^2 - 2)(z - 3): mixes exact and algebraic-float roots
  Polynomial q = make_poly({6, -2, -3, 1});
  auto qroots = real_simple_roots(q);
  auto oracle = numeric_roots(q, -10, 10);
  REQUIRE(qroots.size() == 3);
  REQUIRE(oracle.size() == 3);
  for (size_t i = 0; i < 3; ++i)
    CHECK(qroots[i].approx == doctest::Approx(oracle[i]).epsilon(1e-9));
  CHECK(qroots[2].is_exact);  // z = 3
}

TEST_CASE("sturm count agrees with the oracle on a mixed batch") {
  for (auto coeffs : {std::vector<long long>{-1, 0, 1},      // z^2 - 1
                      std::vector<long long>{1, 0, 1},       // z^2 + 1
                      std::vector<long long>{0, -4, 0, 1},   // z^3 - 4z
                      std::vector<long long>{2, 0, 0, 1}}) { // z^3 + 2
    Polynomial p = make_poly(coeffs);
    int count = count_real_roots(p);
    auto oracle = numeric_roots(p, -50, 50);
    CHECK(count == static_cast<int>(oracle.size()));
  }
}

TEST_CASE("evaluation and derivative") {
  Polynomial p = make_poly({5, -4, -1});  // -z^2 - 4z + 5
  CHECK(p.eval(Rational(1, 2)) == Rational(11, 4));  // 2.75
  CHECK(p.derivative().coefficients() == std::vector<Rational>{-4, -2});
  CHECK(p.degree() == 2);
}
