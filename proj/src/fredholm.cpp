#include "conemod/fredholm.hpp"

#include <algorithm>

#include "conemod/errors.hpp"

namespace conemod {

namespace {

Rate symmetric_weight_order1() { return Rate::from_rational(Rational(-5, 2)); }
Rate symmetric_weight_order2() { return Rate::from_rational(Rational(-2)); }

void require_noncritical(const std::vector<RateEntry>& rates, const Rate& weight, double tol) {
  for (const auto& entry : rates)
    if (rate_equal(entry.rate, weight, tol))
      fail(ErrorKind::EndpointCollision,
           "weight " + format_rate(weight) + " sits on the critical rate " + format_rate(entry.rate));
}

int one_point_change(const std::vector<RateEntry>& rates, const Rate& from, const Rate& to,
                     double tol) {
  require_noncritical(rates, from, tol);
  require_noncritical(rates, to, tol);
  const bool ascending = !rate_less(to, from);
  const Rate& lo = ascending ? from : to;
  const Rate& hi = ascending ? to : from;
  int sum = 0;
  for (const auto& entry : rates)
    if (rate_less(lo, entry.rate) && rate_less(entry.rate, hi)) sum += entry.dim;
  return ascending ? sum : -sum;
}

int anchored_index(const ConeOperatorSpec& op, const Rate& anchor, const WeightVector& weight,
                   double tol) {
  auto rates = all_rates(op, tol);
  for (const auto& entry : rates)
    if (rate_equal(entry.rate, anchor, tol))
      fail(ErrorKind::EndpointCollision, "the anchor weight " + format_rate(anchor) +
                                             " is itself a critical rate; no index anchor available");
  int index = 0;
  for (const auto& w : weight.weights) index -= one_point_change(rates, anchor, w, tol);
  return index;
}

}  // namespace

int index_change(const std::vector<std::vector<RateEntry>>& rates_per_point,
                 const WeightVector& from, const WeightVector& to, double tol) {
  if (rates_per_point.size() != from.weights.size() || from.weights.size() != to.weights.size())
    fail(ErrorKind::Validation, "index_change needs matching point counts for rates and weights");
  int total = 0;
  for (size_t i = 0; i < rates_per_point.size(); ++i)
    total += one_point_change(rates_per_point[i], from.weights[i], to.weights[i], tol);
  return total;
}

int selfadjoint_index(const ConeOperatorSpec& op, const WeightVector& weight, double tol) {
  op.validate();
  if (!op.self_adjoint)
    fail(ErrorKind::Precondition, "operator is not flagged formally self-adjoint (order-1 anchor)");
  return anchored_index(op, symmetric_weight_order1(), weight, tol);
}

int laplacian_index(const ConeOperatorSpec& op, const WeightVector& weight, double tol) {
  op.validate();
  if (!op.laplacian_form())
    fail(ErrorKind::Precondition, "the -2 anchor needs a Laplacian-form operator (order 2)");
  return anchored_index(op, symmetric_weight_order2(), weight, tol);
}

MuBar mu_bar(const ConeOperatorSpec& op, double tol) {
  Window slice = make_window(Rate::from_rational(Rational(-1)), Rate::from_rational(Rational(0)));
  CriticalRateSet rates = critical_rates(op, slice, tol);
  MuBar out;
  out.caveat = !rates.complete;
  out.value = rates.entries.empty() ? Rate::from_rational(Rational(0)) : rates.entries.front().rate;
  return out;
}

Window invertibility_window(const Rate& mu_bar_value) {
  Rate lo, hi;
  if (mu_bar_value.is_exact) {
    lo = Rate::from_rational(Rational(-5) - mu_bar_value.exact);
    hi = Rate::from_rational(mu_bar_value.exact + 1);
  } else {
    lo = Rate::from_double(-5.0 - mu_bar_value.approx);
    hi = Rate::from_double(mu_bar_value.approx + 1.0);
  }
  return make_window(lo, hi);
}

int IndexProfile::index_at(const WeightVector& weight, double tol) const {
  if (weight.weights.size() != jumps.size())
    fail(ErrorKind::Validation, "weight vector does not match the profile's point count");
  int index = anchor_index;
  for (size_t i = 0; i < jumps.size(); ++i)
    index -= one_point_change(jumps[i], anchor_weight, weight.weights[i], tol);
  return index;
}

IndexProfile selfadjoint_profile(const ConeOperatorSpec& op, std::size_t points) {
  op.validate();
  if (!op.self_adjoint)
    fail(ErrorKind::Precondition, "operator is not flagged formally self-adjoint (order-1 anchor)");
  IndexProfile profile;
  profile.anchor_weight = symmetric_weight_order1();
  profile.anchor_index = 0;
  profile.jumps.assign(points, all_rates(op));
  return profile;
}

IndexProfile laplacian_profile(const ConeOperatorSpec& op, std::size_t points) {
  op.validate();
  if (!op.laplacian_form())
    fail(ErrorKind::Precondition, "the -2 anchor needs a Laplacian-form operator (order 2)");
  IndexProfile profile;
  profile.anchor_weight = symmetric_weight_order2();
  profile.anchor_index = 0;
  profile.jumps.assign(points, all_rates(op));
  return profile;
}

}  // namespace conemod
