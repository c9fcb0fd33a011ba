#pragma once

#include <string>
#include <vector>

namespace conemod {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;       // counts, measured tolerances, first failure
  double measured = 0.0;    // worst measured deviation where meaningful
};

// The built-in property suites: duality involution, index antisymmetry on
// randomized self-adjoint spectra, Serre-duality symmetry on the catalog,
// Bott-vs-monomial brute force, radial residuals, Euler consistency,
// cross-formula agreement, sign law, obstruction consistency, matrix-model
// duality, and the Fubini-Study end-to-end reproduction.
std::vector<CheckResult> run_verification(unsigned seed = 20250810);

}  // namespace conemod
