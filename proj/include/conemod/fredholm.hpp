#pragma once

#include <vector>

#include "conemod/cone_operator.hpp"

namespace conemod {

// One weight per singular point.
struct WeightVector {
  std::vector<Rate> weights;

  static WeightVector uniform(std::size_t points, Rate w) {
    return WeightVector{std::vector<Rate>(points, w)};
  }
};

// index(from) - index(to): the total homogeneous-kernel dimension at critical
// rates strictly between the weights, summed over the singular points.
// Componentwise from <= to gives the sum with a plus sign; the general case
// is filled in antisymmetrically. Weights on a critical rate are an error.
int index_change(const std::vector<std::vector<RateEntry>>& rates_per_point,
                 const WeightVector& from, const WeightVector& to, double tol = kRateTolerance);

// Fredholm index anchored by formal self-adjointness: index 0 at the
// symmetric weight (-5/2,...,-5/2) for an order-1 self-adjoint operator,
// everything else via index_change. Requires op.self_adjoint.
int selfadjoint_index(const ConeOperatorSpec& op, const WeightVector& weight,
                      double tol = kRateTolerance);

// Same anchoring for order-2 Laplacian-form operators, whose symmetric weight
// on the 6-cone is -2.
int laplacian_index(const ConeOperatorSpec& op, const WeightVector& weight,
                    double tol = kRateTolerance);

struct MuBar {
  Rate value;          // min of D(L) in (-1, 0), or 0 when the slice is empty
  bool caveat = false; // set when (-1, 0) is not covered by a completeness certificate
};

MuBar mu_bar(const ConeOperatorSpec& op, double tol = kRateTolerance);

// (-5 - mu_bar, mu_bar + 1): the window on which the associated Laplacian is
// claimed invertible (index 0 and trivial kernel) for irreducible cones.
Window invertibility_window(const Rate& mu_bar_value);

// Piecewise-constant index profile: anchor plus per-point jump data. The
// index decreases through each critical rate by that rate's kernel dimension.
struct IndexProfile {
  Rate anchor_weight;
  int anchor_index = 0;
  std::vector<std::vector<RateEntry>> jumps;

  int index_at(const WeightVector& weight, double tol = kRateTolerance) const;
};

IndexProfile selfadjoint_profile(const ConeOperatorSpec& op, std::size_t points);
IndexProfile laplacian_profile(const ConeOperatorSpec& op, std::size_t points);

}  // namespace conemod
