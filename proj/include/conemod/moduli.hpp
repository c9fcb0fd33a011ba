#pragma once

#include <optional>
#include <string>
#include <vector>

#include "conemod/cone_operator.hpp"
#include "conemod/fredholm.hpp"
#include "conemod/p2_cohomology.hpp"

namespace conemod {

// Structure group of the singular instantons. Only finite-center groups are
// admissible; PU(n) unlocks the sheaf-cohomology dimension formula.
struct Group {
  bool projective_unitary = true;
  int n = 2;                  // meaningful for PU(n)
  bool finite_center = true;  // generic-compact declaration

  static Group pun(int n) { return Group{true, n, true}; }
  static Group generic_compact(bool finite_center = true) { return Group{false, 0, finite_center}; }
};

// One prescribed tangent cone: spectral/cohomological source, stabiliser
// dimension, complement dimension m = 8 - stab (overridable), and the
// convergence rate mu of the singular connection at this point.
struct TangentConeSpec {
  std::optional<std::string> preset;       // "fubini-study"
  std::optional<BundleExpr> bundle;        // PU(n) cone pulled back from P^2
  std::optional<ConeOperatorSpec> raw;     // raw critical-rate data
  int stab_dim = 8;                        // dim Stab_SU(3), in [0, 8]
  std::optional<int> m_dim_override;
  Rate mu = Rate::from_rational(Rational(-1, 2));

  int m_dim() const { return m_dim_override ? *m_dim_override : 8 - stab_dim; }
};

struct ModuliConfig {
  Group group;
  std::vector<TangentConeSpec> points;

  void validate() const;
};

struct PointBreakdown {
  std::string source;
  int stab_dim = 8;
  int m_dim = 0;
  double mu = 0.0;
  std::optional<Rate> mu_bar;      // unavailable for bundle-sourced cones
  int crossing_sum = 0;            // sum of dim K_nu over D(L) cap (-5/2, mu)
  int contribution = 0;            // 6 + m_dim - crossing_sum
};

struct VirtualDimensionReport {
  int virt_dim = 0;
  std::vector<PointBreakdown> per_point;
  std::optional<int> ker_dim;      // 0 when the -5/2 kernel hypothesis is asserted
  std::optional<int> coker_dim;
  std::optional<int> pun_virt_dim; // cross-formula value when Chern data exists
  std::optional<long long> universal_heuristic;  // sum 6 - 2h^1(End E(-1)); heuristic only
  std::vector<std::string> caveats;
};

// virt-dim = sum_i [6 + dim m_i] - sum_i sum_{nu in D(L_i) cap (-5/2, mu_i)} dim K_nu.
int virt_dim_general(const ModuliConfig& config, double tol = kRateTolerance);

// PU(n) route: sum_i [6 + (8 - stab_i) - 2h^1(End E_i) - 2h^1((End E_i)(-1))].
int virt_dim_pun(const ModuliConfig& config);

// (ker, coker) of the full deformation operator under the hypothesis
// ker(L)_{-5/2} = 0: ker = 0, coker = -6N + sum_i (K_-3 + K_-4 - m_i).
std::pair<int, int> obstruction_dims(const ModuliConfig& config, bool ker_hypothesis,
                                     double tol = kRateTolerance);

enum class RigidityVerdict { ZeroDimensionalFS, StrictlyNegative, NotApplicable };

struct Rigidity {
  RigidityVerdict verdict = RigidityVerdict::NotApplicable;
  std::optional<int> value;
  std::string detail;
};

Rigidity classify_rigidity(const ModuliConfig& config);

VirtualDimensionReport dimension_report(const ModuliConfig& config, bool ker_hypothesis,
                                        double tol = kRateTolerance);

// Resolved per-point views used by the formulas (and by tests).
ConeOperatorSpec resolve_cone_operator(const TangentConeSpec& point);  // preset/raw only
std::optional<BundleExpr> resolve_bundle(const TangentConeSpec& point);
std::vector<RateEntry> resolve_rate_entries(const TangentConeSpec& point, double tol = kRateTolerance);

inline const char* kFubiniStudyPreset = "fubini-study";

}  // namespace conemod
