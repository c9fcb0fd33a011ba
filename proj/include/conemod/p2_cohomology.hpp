#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "conemod/rational.hpp"

namespace conemod {

// Rank and Chern classes of a bundle on P^2; c1 in multiples of the
// hyperplane class. Stability/polystability is asserted by the caller, never
// verified (it is not a function of Chern data).
struct ChernData {
  long long rank = 1;
  Rational c1 = 0;
  Rational c2 = 0;
  bool stable = false;
  int summands = 1;  // polystable summand count; 1 for stable
  // Optional overrides for unstable inputs: h^0((End E)(l)) for l = 0,-1,-2,-3.
  std::optional<std::array<long long, 4>> h0_end_overrides;
};

// Algebraic bundle expression: leaves O(k), T, Omega, abstract(r,c1,c2,...);
// nodes dual, twist(l), direct sum, End.
struct BundleExpr {
  enum class Kind { LineBundle, Tangent, Cotangent, Abstract, Dual, Twist, Sum, End };

  Kind kind = Kind::LineBundle;
  long long k = 0;              // LineBundle degree or Twist amount
  ChernData abstract;           // Abstract leaf payload
  std::vector<BundleExpr> children;

  static BundleExpr line(long long k);
  static BundleExpr tangent();
  static BundleExpr cotangent();
  static BundleExpr abstract_bundle(ChernData data);
  static BundleExpr dual(BundleExpr e);
  static BundleExpr twist(BundleExpr e, long long l);
  static BundleExpr sum(std::vector<BundleExpr> parts);
  static BundleExpr end(BundleExpr e);
};

// Compact text grammar: `O(2)`, `T`, `Omega`, `End(T)(-1)`, `O(1)+O(-1)`,
// `dual(T)`, `abstract(r=2,c1=0,c2=2,stable)`,
// `abstract(r=2,c1=0,c2=2,unstable,h0end=1:0:0:0)`.
BundleExpr parse_bundle_expr(const std::string& text);
std::string format_bundle_expr(const BundleExpr& expr);

// Chern character truncated at degree 2: (rank, c1, ch2), ch2 = (c1^2-2c2)/2.
struct ChernCharacter {
  long long rank = 0;
  Rational c1 = 0;
  Rational ch2 = 0;
};

ChernCharacter chern_character(const BundleExpr& expr);

// Hirzebruch-Riemann-Roch on P^2: chi = ch2 + (3/2) c1 + rank; errors when
// the value is not an integer.
long long euler_characteristic(const BundleExpr& expr);
long long euler_characteristic(const ChernCharacter& ch);

struct CohomologyVector {
  long long h0 = 0;
  long long h1 = 0;
  long long h2 = 0;
  enum class Certainty { Exact, ConditionalOnStability } certainty = Certainty::Exact;
};

// Bott's formula: dimensions of H^q(P^2, Omega^p(k)) for all q.
CohomologyVector bott_cohomology(int p, long long k);

// Exact Bott values for sums/twists/duals of Omega^p leaves; for (End E)(l)
// with l in [-3, 0] and E stable/polystable: stability vanishing for h^0,
// Serre duality for h^2, h^1 from the Euler characteristic.
CohomologyVector cohomology(const BundleExpr& expr);

// nu -> dim K(L)_nu = 2 h^1(P^2, (End E)(nu+1)) for nu in {-4,-3,-2,-1}.
std::map<int, long long> kernel_dims_from_cohomology(const BundleExpr& expr);

}  // namespace conemod
