#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conemod/polynomial.hpp"
#include "conemod/rate.hpp"

namespace conemod {

// Everything here lives on the 6-dimensional metric cone over S^5.
inline constexpr int kConeDimension = 6;

// Joint eigenmode of the cross-section operators D_{l-i}: the radial symbol
// on this mode is the indicial polynomial p(z) = sum_i coefficients[i] z^i.
struct ModeBlock {
  std::vector<Rational> coefficients;  // size order+1, coefficient of z^i at index i
  int multiplicity = 1;
};

struct RateEntry {
  Rate rate;
  int dim = 0;  // homogeneous kernel dimension contributed at this rate
};

// Sorted slice of the critical-rate set D(L) inside an open window, with the
// homogeneous kernel dimension at each rate. `complete` certifies that the
// operator's spectral data provably exhausts the window.
struct CriticalRateSet {
  std::vector<RateEntry> entries;
  Window window;
  bool complete = false;
};

// A dilation-invariant elliptic operator described by its cross-section
// spectral data. Modes give the indicial polynomials; alternatively (for
// presets and matrix models whose eigenvalues are not rational) a direct
// catalog of critical rates with kernel dimensions can be supplied.
struct ConeOperatorSpec {
  static constexpr int dimension_of_cone = kConeDimension;

  int order = 2;
  bool self_adjoint = false;  // order-1 case; enables the index anchor at -5/2
  std::vector<ModeBlock> modes;
  std::vector<RateEntry> catalog;
  std::optional<Window> certified_window;  // where the rate data exhausts D(L)
  bool spectrum_complete = false;          // rate data is all of D(L) (matrix models)
  std::string name;

  void validate() const;
  bool laplacian_form() const;  // every mode is (mu, -4, -1) with mu >= 0
};

// p_j for one mode; degree must be exactly `order` (nonzero leading symbol).
Polynomial indicial_polynomial(const ModeBlock& block, int order);

// Union of the operator's critical rates (mode roots merged with the
// catalog), sorted, with kernel dimensions accumulated across modes.
std::vector<RateEntry> all_rates(const ConeOperatorSpec& op, double tol = kRateTolerance);

CriticalRateSet critical_rates(const ConeOperatorSpec& op, const Window& window,
                               double tol = kRateTolerance);

int homogeneous_kernel_dim(const ConeOperatorSpec& op, const Rate& rate,
                           double tol = kRateTolerance);

// Roots of -z(z+4) = mu on the 6-cone: (-2 + sqrt(4+mu), -2 - sqrt(4+mu)).
std::pair<Rate, Rate> laplacian_cone_rates(const Rational& cross_eigenvalue);

// The involution lambda -> -5 - lambda pairing homogeneous kernels.
Rate dualize_rate(const Rate& rate);

// Max over interior grid points of r^{l-lambda} |L r^lambda| with L applied
// through finite differences in log r; ~|p_j(lambda)|, ~0 iff lambda is a root.
double radial_residual(const ConeOperatorSpec& op, std::size_t mode_index, const Rate& rate,
                       const std::vector<double>& radii);

std::vector<double> log_spaced_grid(double r_min, double r_max, std::size_t count);

using Matrix = std::vector<std::vector<double>>;

struct DualityPair {
  double upper = 0.0;  // eigenvalue >= -5/2
  double lower = 0.0;  // its partner -5 - upper
  int multiplicity = 1;
  bool self_paired = false;  // fixed point -5/2
};

struct DualityPairing {
  std::vector<DualityPair> pairs;
  double anticommutator_residual = 0.0;  // max |(JM + MJ + 5J)_ij|
  double mapping_residual = 0.0;         // eigenspace transport defect
};

// Checks J^2 = -I and JM + MJ = -5J, then pairs the eigenvalues of M as
// {lambda, -5-lambda} and verifies J maps each eigenspace to its partner.
DualityPairing eigen_duality_check(const Matrix& J, const Matrix& M,
                                   double tol = kRateTolerance);

// Order-1 self-adjoint operator whose rate catalog is the spectrum of M
// (precondition: the pair (J, M) passes eigen_duality_check).
ConeOperatorSpec cone_operator_from_matrix_model(const Matrix& J, const Matrix& M,
                                                 double tol = kRateTolerance);

// "scalar-laplacian-s5" (trivial-bundle Laplacian, modes k <= 20) or
// "fubini-study" (instanton deformation operator of the Fubini-Study cone).
ConeOperatorSpec preset_operator(const std::string& name);

// Multiplicity of the degree-k spherical-harmonic eigenspace on S^5.
long long spherical_harmonic_multiplicity(int k);

inline constexpr int kScalarLaplacianMaxMode = 20;

}  // namespace conemod
