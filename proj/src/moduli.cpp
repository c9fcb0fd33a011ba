#include "conemod/moduli.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "conemod/errors.hpp"

namespace conemod {

namespace {

Rate half_weight() { return Rate::from_rational(Rational(-5, 2)); }

std::string point_label(const TangentConeSpec& point, size_t index) {
  std::ostringstream os;
  os << "point " << index + 1 << " (";
  if (point.preset)
    os << *point.preset;
  else if (point.bundle)
    os << format_bundle_expr(*point.bundle);
  else
    os << "raw rates";
  os << ")";
  return os.str();
}

long long h1_of(const BundleExpr& e, long long twist) {
  BundleExpr expr = BundleExpr::twist(BundleExpr::end(e), twist);
  return cohomology(expr).h1;
}

// dim K_nu over D(L) in (-5/2, mu); errors when mu or -5/2 is critical.
int crossing_sum(const std::vector<RateEntry>& entries, const Rate& mu, double tol) {
  const Rate anchor = half_weight();
  int sum = 0;
  for (const auto& entry : entries) {
    if (rate_equal(entry.rate, anchor, tol))
      fail(ErrorKind::EndpointCollision,
           "-5/2 is itself a critical rate; the kernel sum over (-5/2, mu) is ill-defined");
    if (rate_equal(entry.rate, mu, tol))
      fail(ErrorKind::EndpointCollision,
           "mu = " + format_rate(mu) + " sits on the critical rate " + format_rate(entry.rate));
    if (rate_less(anchor, entry.rate) && rate_less(entry.rate, mu)) sum += entry.dim;
  }
  return sum;
}

void check_mu_window(const TangentConeSpec& point, size_t index, double tol,
                     std::optional<Rate>* mu_bar_out, std::vector<std::string>* caveats) {
  const Rate minus_one = Rate::from_rational(Rational(-1));
  if (!rate_less(minus_one, point.mu))
    fail(ErrorKind::RateWindow, point_label(point, index) + ": mu = " + format_rate(point.mu) +
                                    " must lie in the admissible window (-1, mu_bar)");
  if (point.bundle && !point.preset) {
    if (!rate_less(point.mu, Rate::from_rational(Rational(0))))
      fail(ErrorKind::RateWindow, point_label(point, index) + ": mu = " + format_rate(point.mu) +
                                      " must lie in (-1, 0)");
    if (caveats)
      caveats->push_back(point_label(point, index) +
                         ": mu_bar is not derivable from Chern data; mu assumed below mu_bar");
    if (mu_bar_out) *mu_bar_out = std::nullopt;
    return;
  }
  ConeOperatorSpec op = resolve_cone_operator(point);
  MuBar mb = mu_bar(op, tol);
  if (!rate_less(point.mu, mb.value))
    fail(ErrorKind::RateWindow, point_label(point, index) + ": mu = " + format_rate(point.mu) +
                                    " must lie in the admissible window (-1, " +
                                    format_rate(mb.value) + ")");
  if (mb.caveat && caveats)
    caveats->push_back(point_label(point, index) +
                       ": spectral coverage of (-1, 0) carries no completeness certificate");
  if (mu_bar_out) *mu_bar_out = mb.value;
}

int kernel_dim_at(const std::vector<RateEntry>& entries, int nu, double tol) {
  Rate probe = Rate::from_rational(Rational(nu));
  for (const auto& entry : entries)
    if (rate_equal(entry.rate, probe, tol)) return entry.dim;
  return 0;
}

bool is_fs_point(const TangentConeSpec& point) {
  if (point.preset && *point.preset == kFubiniStudyPreset) return true;
  if (point.bundle && point.stab_dim == 8) {
    // End-level Chern data of the Fubini-Study cone: (4, 0, -3)
    ChernCharacter ch = chern_character(BundleExpr::end(*point.bundle));
    return ch.rank == 4 && ch.c1 == 0 && ch.ch2 == Rational(-3);
  }
  return false;
}

}  // namespace

ConeOperatorSpec resolve_cone_operator(const TangentConeSpec& point) {
  if (point.preset) return preset_operator(*point.preset);
  if (point.raw) return *point.raw;
  fail(ErrorKind::Validation, "no spectral operator available for a bundle-sourced cone");
}

std::optional<BundleExpr> resolve_bundle(const TangentConeSpec& point) {
  if (point.bundle) return point.bundle;
  if (point.preset && *point.preset == kFubiniStudyPreset) return BundleExpr::tangent();
  return std::nullopt;
}

std::vector<RateEntry> resolve_rate_entries(const TangentConeSpec& point, double tol) {
  if (point.preset || point.raw) return all_rates(resolve_cone_operator(point), tol);
  if (!point.bundle) fail(ErrorKind::Validation, "tangent cone carries no spectral source");
  std::vector<RateEntry> entries;
  for (auto [nu, dim] : kernel_dims_from_cohomology(*point.bundle))
    if (dim > 0) entries.push_back({Rate::from_rational(Rational(nu)), static_cast<int>(dim)});
  return entries;
}

void ModuliConfig::validate() const {
  if (points.empty()) fail(ErrorKind::Validation, "a moduli configuration needs at least one point");
  if (!group.finite_center)
    fail(ErrorKind::Validation,
         "structure groups with positive-dimensional center are out of scope");
  if (group.projective_unitary && group.n < 2)
    fail(ErrorKind::Validation, "PU(n) needs n >= 2");
  for (size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    int sources = (p.preset ? 1 : 0) + (p.bundle ? 1 : 0) + (p.raw ? 1 : 0);
    if (sources != 1)
      fail(ErrorKind::Validation, point_label(p, i) + ": exactly one of preset/bundle/rates required");
    if (p.preset && *p.preset != kFubiniStudyPreset)
      fail(ErrorKind::Validation,
           point_label(p, i) + ": only the fubini-study preset names a tangent cone");
    if (p.preset && p.stab_dim != 8)
      fail(ErrorKind::Validation,
           point_label(p, i) + ": the Fubini-Study cone has stabiliser dimension 8");
    if (p.stab_dim < 0 || p.stab_dim > 8)
      fail(ErrorKind::Validation, point_label(p, i) + ": stab_dim must lie in [0, 8]");
    if (p.m_dim() < 0 || p.m_dim() > 8)
      fail(ErrorKind::Validation, point_label(p, i) + ": m_dim must lie in [0, 8]");
    if (p.raw) p.raw->validate();
    if (p.bundle) {
      long long h1 = h1_of(*p.bundle, 0);
      if (8 - p.stab_dim > 2 * h1)
        fail(ErrorKind::Validation,
             point_label(p, i) + ": rotations must inject into deformations: 8 - stab_dim = " +
                 std::to_string(8 - p.stab_dim) + " exceeds 2h^1(End E) = " + std::to_string(2 * h1));
    }
  }
}

int virt_dim_general(const ModuliConfig& config, double tol) {
  config.validate();
  int total = 0;
  for (size_t i = 0; i < config.points.size(); ++i) {
    const auto& point = config.points[i];
    check_mu_window(point, i, tol, nullptr, nullptr);
    auto entries = resolve_rate_entries(point, tol);
    total += 6 + point.m_dim() - crossing_sum(entries, point.mu, tol);
  }
  return total;
}

int virt_dim_pun(const ModuliConfig& config) {
  config.validate();
  if (!config.group.projective_unitary)
    fail(ErrorKind::Precondition, "the cohomological dimension formula needs a PU(n) structure group");
  int total = 0;
  for (size_t i = 0; i < config.points.size(); ++i) {
    const auto& point = config.points[i];
    auto bundle = resolve_bundle(point);
    if (!bundle)
      fail(ErrorKind::Precondition,
           point_label(point, i) + ": the PU(n) formula needs a P^2 bundle source");
    total += 6 + (8 - point.stab_dim) -
             static_cast<int>(2 * h1_of(*bundle, 0) + 2 * h1_of(*bundle, -1));
  }
  return total;
}

std::pair<int, int> obstruction_dims(const ModuliConfig& config, bool ker_hypothesis, double tol) {
  config.validate();
  if (!ker_hypothesis)
    fail(ErrorKind::Precondition,
         "obstruction dimensions are unavailable: the hypothesis ker(L)_{-5/2} = 0 was not asserted");
  int coker = -6 * static_cast<int>(config.points.size());
  for (size_t i = 0; i < config.points.size(); ++i) {
    const auto& point = config.points[i];
    auto entries = resolve_rate_entries(point, tol);
    for (const auto& entry : entries) {
      double x = entry.rate.approx;
      if (x > -4.0 - tol && x < -1.0 + tol) {
        bool integer_rate = false;
        for (int nu = -4; nu <= -1; ++nu)
          if (rate_equal(entry.rate, Rate::from_rational(Rational(nu)), tol)) integer_rate = true;
        if (!integer_rate)
          fail(ErrorKind::Precondition,
               point_label(point, i) + ": critical rates in [-4, -1] must be contained in " +
                   "{-4, -3, -2, -1} (found " + format_rate(entry.rate) + ")");
      }
    }
    coker += kernel_dim_at(entries, -3, tol) + kernel_dim_at(entries, -4, tol) - point.m_dim();
  }
  if (coker < 0)
    fail(ErrorKind::Inconsistency,
         "negative cokernel dimension " + std::to_string(coker) + ": inconsistent inputs");
  return {0, coker};
}

Rigidity classify_rigidity(const ModuliConfig& config) {
  config.validate();
  Rigidity out;
  if (!config.group.projective_unitary) {
    out.verdict = RigidityVerdict::NotApplicable;
    out.detail = "rigidity classification applies to PU(n) structure groups only";
    return out;
  }
  bool all_fs = config.group.n == 2;
  for (const auto& point : config.points) all_fs = all_fs && is_fs_point(point);
  if (all_fs) {
    out.verdict = RigidityVerdict::ZeroDimensionalFS;
    out.value = 0;
    out.detail = "every tangent cone is the Fubini-Study cone: rigid with virtual dimension 0";
    return out;
  }
  int value = virt_dim_pun(config);
  if (value >= 0)
    fail(ErrorKind::Inconsistency,
         "non-FS configuration computed virtual dimension " + std::to_string(value) +
             " >= 0, contradicting the non-positivity theorem");
  out.verdict = RigidityVerdict::StrictlyNegative;
  out.value = value;
  out.detail = "some tangent cone differs from the Fubini-Study cone";
  return out;
}

VirtualDimensionReport dimension_report(const ModuliConfig& config, bool ker_hypothesis,
                                        double tol) {
  config.validate();
  VirtualDimensionReport report;
  bool all_bundles = true;
  bool any_override = false;

  for (size_t i = 0; i < config.points.size(); ++i) {
    const auto& point = config.points[i];
    PointBreakdown row;
    row.source = point.preset      ? *point.preset
                 : point.bundle    ? format_bundle_expr(*point.bundle)
                                   : std::string("raw rates");
    row.stab_dim = point.stab_dim;
    row.m_dim = point.m_dim();
    row.mu = point.mu.approx;
    check_mu_window(point, i, tol, &row.mu_bar, &report.caveats);
    auto entries = resolve_rate_entries(point, tol);
    row.crossing_sum = crossing_sum(entries, point.mu, tol);
    row.contribution = 6 + row.m_dim - row.crossing_sum;
    report.virt_dim += row.contribution;
    report.per_point.push_back(std::move(row));

    if (point.m_dim_override) {
      any_override = true;
      report.caveats.push_back(point_label(point, i) + ": m_dim override in effect (" +
                               std::to_string(point.m_dim()) + " instead of " +
                               std::to_string(8 - point.stab_dim) + ")");
    }
    all_bundles = all_bundles && resolve_bundle(point).has_value();
  }

  if (config.group.projective_unitary && all_bundles) {
    report.pun_virt_dim = virt_dim_pun(config);
    if (!any_override && *report.pun_virt_dim != report.virt_dim)
      fail(ErrorKind::Inconsistency,
           "cross-formula disagreement: rate bookkeeping gives " + std::to_string(report.virt_dim) +
               " but the cohomological formula gives " + std::to_string(*report.pun_virt_dim));
    long long universal = 0;
    for (const auto& point : config.points)
      universal += 6 - 2 * h1_of(*resolve_bundle(point), -1);
    report.universal_heuristic = universal;
    report.caveats.push_back(
        "universal_heuristic assumes variable tangent cones and is a heuristic, not a theorem");
  }

  try {
    auto [ker, coker] = obstruction_dims(config, ker_hypothesis, tol);
    report.ker_dim = ker;
    report.coker_dim = coker;
  } catch (const Error& e) {
    report.caveats.push_back(std::string("obstruction dimensions unavailable: ") + e.what());
  }
  return report;
}

}  // namespace conemod
