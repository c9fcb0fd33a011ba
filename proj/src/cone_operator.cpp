#include "conemod/cone_operator.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "conemod/errors.hpp"

namespace conemod {

namespace {

Eigen::MatrixXd to_eigen(const Matrix& m, const char* what) {
  if (m.empty()) fail(ErrorKind::Validation, std::string(what) + " must be a nonempty square matrix");
  const size_t n = m.size();
  Eigen::MatrixXd out(n, n);
  for (size_t i = 0; i < n; ++i) {
    if (m[i].size() != n)
      fail(ErrorKind::Validation, std::string(what) + " must be a square matrix");
    for (size_t j = 0; j < n; ++j) out(static_cast<long>(i), static_cast<long>(j)) = m[i][j];
  }
  return out;
}

// Fornberg's recursion: weights[k][j] applies f(x[j]) to d^k f / dx^k at x0.
std::vector<std::vector<double>> fd_weights(double x0, const std::vector<double>& x, int max_order) {
  const int n = static_cast<int>(x.size());
  std::vector<std::vector<double>> c(static_cast<size_t>(max_order) + 1,
                                     std::vector<double>(static_cast<size_t>(n), 0.0));
  double c1 = 1.0;
  double c4 = x[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, max_order);
    double c2 = 1.0;
    double c5 = c4;
    c4 = x[static_cast<size_t>(i)] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[static_cast<size_t>(i)] - x[static_cast<size_t>(j)];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c[static_cast<size_t>(k)][static_cast<size_t>(i)] =
              c1 * (k * c[static_cast<size_t>(k - 1)][static_cast<size_t>(i - 1)] -
                    c5 * c[static_cast<size_t>(k)][static_cast<size_t>(i - 1)]) /
              c2;
        c[0][static_cast<size_t>(i)] = -c1 * c5 * c[0][static_cast<size_t>(i - 1)] / c2;
      }
      for (int k = mn; k >= 1; --k)
        c[static_cast<size_t>(k)][static_cast<size_t>(j)] =
            (c4 * c[static_cast<size_t>(k)][static_cast<size_t>(j)] -
             k * c[static_cast<size_t>(k - 1)][static_cast<size_t>(j)]) /
            c3;
      c[0][static_cast<size_t>(j)] = c4 * c[0][static_cast<size_t>(j)] / c3;
    }
    c1 = c2;
  }
  return c;
}

struct EigenCluster {
  double value = 0.0;
  int count = 0;
};

std::vector<EigenCluster> cluster_eigenvalues(const Eigen::VectorXcd& ev, double tol) {
  std::vector<double> vals;
  vals.reserve(static_cast<size_t>(ev.size()));
  for (long i = 0; i < ev.size(); ++i) {
    if (std::abs(ev(i).imag()) > tol * (1.0 + std::abs(ev(i).real())))
      fail(ErrorKind::PairingFailure,
           "matrix model has a non-real eigenvalue; the duality pairing needs a real spectrum");
    vals.push_back(ev(i).real());
  }
  std::sort(vals.begin(), vals.end());
  std::vector<EigenCluster> clusters;
  for (double v : vals) {
    if (!clusters.empty() && std::abs(v - clusters.back().value) < tol)
      ++clusters.back().count;
    else
      clusters.push_back({v, 1});
  }
  return clusters;
}

}  // namespace

void ConeOperatorSpec::validate() const {
  if (order < 1) fail(ErrorKind::Validation, "operator order must be >= 1");
  if (self_adjoint && order != 1)
    fail(ErrorKind::Validation, "the self-adjoint index anchor requires an order-1 operator");
  if (modes.empty() && catalog.empty())
    fail(ErrorKind::Validation, "operator needs spectral modes or a critical-rate catalog");
  for (const auto& mode : modes) {
    if (mode.multiplicity < 1) fail(ErrorKind::Validation, "mode multiplicity must be >= 1");
    if (static_cast<int>(mode.coefficients.size()) != order + 1)
      fail(ErrorKind::Validation, "each mode needs exactly order+1 coefficients");
    if (mode.coefficients.back() == 0)
      fail(ErrorKind::Ellipticity, "vanishing leading coefficient: radial symbol is not elliptic");
  }
  for (const auto& entry : catalog)
    if (entry.dim < 1) fail(ErrorKind::Validation, "catalog kernel dimensions must be >= 1");
}

bool ConeOperatorSpec::laplacian_form() const {
  if (order != 2 || modes.empty() || !catalog.empty()) return false;
  for (const auto& mode : modes) {
    if (mode.coefficients.size() != 3) return false;
    if (mode.coefficients[0] < 0) return false;
    if (mode.coefficients[1] != -4 || mode.coefficients[2] != -1) return false;
  }
  return true;
}

Polynomial indicial_polynomial(const ModeBlock& block, int order) {
  if (static_cast<int>(block.coefficients.size()) != order + 1)
    fail(ErrorKind::Validation, "mode carries the wrong number of coefficients for this order");
  if (block.coefficients.back() == 0)
    fail(ErrorKind::Ellipticity, "vanishing leading coefficient: radial symbol is not elliptic");
  return Polynomial(block.coefficients);
}

std::vector<RateEntry> all_rates(const ConeOperatorSpec& op, double tol) {
  op.validate();
  std::vector<RateEntry> raw;
  for (const auto& mode : op.modes) {
    Polynomial p = indicial_polynomial(mode, op.order);
    for (auto& root : real_simple_roots(p)) raw.push_back({std::move(root), mode.multiplicity});
  }
  raw.insert(raw.end(), op.catalog.begin(), op.catalog.end());
  std::sort(raw.begin(), raw.end(),
            [](const RateEntry& a, const RateEntry& b) { return rate_less(a.rate, b.rate); });
  std::vector<RateEntry> merged;
  for (auto& entry : raw) {
    if (!merged.empty() && rate_equal(merged.back().rate, entry.rate, tol)) {
      merged.back().dim += entry.dim;
      if (!merged.back().rate.is_exact && entry.rate.is_exact) merged.back().rate = entry.rate;
    } else {
      merged.push_back(entry);
    }
  }
  return merged;
}

CriticalRateSet critical_rates(const ConeOperatorSpec& op, const Window& window, double tol) {
  CriticalRateSet out;
  out.window = window;
  auto rates = all_rates(op, tol);
  for (const auto& entry : rates) {
    for (const Rate* endpoint : {&window.lo, &window.hi}) {
      if (rate_identical(entry.rate, *endpoint)) continue;  // open window: cleanly excluded
      if (rate_equal(entry.rate, *endpoint, tol))
        fail(ErrorKind::EndpointCollision,
             "window endpoint " + format_rate(*endpoint) + " collides with the critical rate " +
                 format_rate(entry.rate));
    }
  }
  for (const auto& entry : rates) {
    if (rate_identical(entry.rate, window.lo) || rate_identical(entry.rate, window.hi)) continue;
    if (window.strictly_inside(entry.rate)) out.entries.push_back(entry);
  }

  out.complete = op.spectrum_complete;
  std::optional<Window> certified = op.certified_window;
  if (!certified && op.laplacian_form()) {
    Rational mu_max = 0;
    for (const auto& mode : op.modes) mu_max = std::max(mu_max, mode.coefficients[0]);
    auto [hi, lo] = laplacian_cone_rates(mu_max);
    certified = Window{lo, hi};
  }
  if (!out.complete && certified)
    out.complete = !rate_less(window.lo, certified->lo) && !rate_less(certified->hi, window.hi);
  return out;
}

int homogeneous_kernel_dim(const ConeOperatorSpec& op, const Rate& rate, double tol) {
  for (const auto& entry : all_rates(op, tol))
    if (rate_equal(entry.rate, rate, tol)) return entry.dim;
  return 0;
}

std::pair<Rate, Rate> laplacian_cone_rates(const Rational& cross_eigenvalue) {
  if (cross_eigenvalue < 0)
    fail(ErrorKind::Domain, "cross-section Laplacian eigenvalues are nonnegative");
  Rational disc = 4 + cross_eigenvalue;
  if (auto s = exact_sqrt(disc))
    return {Rate::from_rational(-2 + *s), Rate::from_rational(-2 - *s)};
  auto [coef, d] = sqrt_decompose(disc);
  double sq = to_double(coef) * std::sqrt(d.template convert_to<double>());
  Rational minus_two(-2);
  return {Rate::from_double(-2.0 + sq, surd_label(minus_two, coef, d)),
          Rate::from_double(-2.0 - sq, surd_label(minus_two, -coef, d))};
}

Rate dualize_rate(const Rate& rate) {
  if (rate.is_exact) return Rate::from_rational(Rational(-5) - rate.exact);
  std::string label;
  if (!rate.label.empty()) label = "-5-(" + rate.label + ")";
  return Rate::from_double(-5.0 - rate.approx, label);
}

std::vector<double> log_spaced_grid(double r_min, double r_max, std::size_t count) {
  if (!(r_min > 0) || !(r_max > r_min) || count < 2)
    fail(ErrorKind::Validation, "log grid needs 0 < r_min < r_max and at least two points");
  std::vector<double> out(count);
  const double t0 = std::log(r_min), t1 = std::log(r_max);
  for (std::size_t i = 0; i < count; ++i)
    out[i] = std::exp(t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(count - 1));
  return out;
}

double radial_residual(const ConeOperatorSpec& op, std::size_t mode_index, const Rate& rate,
                       const std::vector<double>& radii) {
  op.validate();
  if (op.modes.empty())
    fail(ErrorKind::Validation, "operator carries no spectral modes (catalog-only data)");
  if (mode_index >= op.modes.size()) fail(ErrorKind::Validation, "mode index out of range");
  if (radii.size() < 3) fail(ErrorKind::Validation, "residual grid needs at least 3 radii");
  for (double r : radii)
    if (!(r > 0)) fail(ErrorKind::Validation, "residual grid radii must be positive");
  for (size_t i = 0; i + 1 < radii.size(); ++i)
    if (!(radii[i] < radii[i + 1]))
      fail(ErrorKind::Validation, "residual grid radii must be strictly increasing");

  const int n = static_cast<int>(radii.size());
  const int order = op.order;
  if (n < order + 1)
    fail(ErrorKind::Discretization, "grid too coarse for an order-" + std::to_string(order) +
                                        " operator: need at least " + std::to_string(order + 1) +
                                        " points");

  int w = std::min(n, std::max(11, order + 1));
  if (w % 2 == 0) w = (w < n) ? w + 1 : w - 1;
  if (w < order + 1)
    fail(ErrorKind::Discretization, "grid too coarse for the requested derivative order");

  std::vector<double> t(radii.size());
  for (size_t i = 0; i < radii.size(); ++i) t[i] = std::log(radii[i]);

  std::vector<double> coeff(op.modes[mode_index].coefficients.size());
  for (size_t i = 0; i < coeff.size(); ++i)
    coeff[i] = to_double(op.modes[mode_index].coefficients[i]);

  const double lambda = rate.approx;
  const int half = w / 2;
  double worst = 0.0;
  // r^{l - lambda} * |L r^lambda| on centered stencils; values are taken
  // relative to the evaluation point so arbitrarily steep powers stay finite.
  for (int i = half; i <= n - 1 - half; ++i) {
    std::vector<double> nodes(static_cast<size_t>(w));
    std::vector<double> values(static_cast<size_t>(w));
    for (int j = 0; j < w; ++j) {
      nodes[static_cast<size_t>(j)] = t[static_cast<size_t>(i - half + j)] - t[static_cast<size_t>(i)];
      values[static_cast<size_t>(j)] = std::exp(lambda * nodes[static_cast<size_t>(j)]);
    }
    auto weights = fd_weights(0.0, nodes, order);
    double acc = 0.0;
    for (int k = 0; k <= order; ++k) {
      double deriv = 0.0;
      for (int j = 0; j < w; ++j)
        deriv += weights[static_cast<size_t>(k)][static_cast<size_t>(j)] * values[static_cast<size_t>(j)];
      acc += coeff[static_cast<size_t>(k)] * deriv;
    }
    worst = std::max(worst, std::abs(acc));
  }
  return worst;
}

DualityPairing eigen_duality_check(const Matrix& J, const Matrix& M, double tol) {
  Eigen::MatrixXd j = to_eigen(J, "J");
  Eigen::MatrixXd m = to_eigen(M, "M");
  if (j.rows() != m.rows()) fail(ErrorKind::Validation, "J and M must have the same size");

  const long n = j.rows();
  const double jsq = (j * j + Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (jsq > tol)
    fail(ErrorKind::Precondition, "J^2 = -Identity fails (max deviation " + std::to_string(jsq) + ")");

  DualityPairing out;
  out.anticommutator_residual = (j * m + m * j + 5.0 * j).cwiseAbs().maxCoeff();
  if (out.anticommutator_residual > tol)
    fail(ErrorKind::Precondition, "anticommutator identity JM + MJ = -5J fails (max deviation " +
                                      std::to_string(out.anticommutator_residual) + ")");

  Eigen::EigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success)
    fail(ErrorKind::Precondition, "eigenvalue computation failed");
  auto clusters = cluster_eigenvalues(solver.eigenvalues(), tol);

  std::vector<bool> used(clusters.size(), false);
  for (size_t i = 0; i < clusters.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    const double lam = clusters[i].value;
    if (std::abs(lam + 2.5) < tol) {
      out.pairs.push_back({-2.5, -2.5, clusters[i].count, true});
      continue;
    }
    const double partner = -5.0 - lam;
    bool found = false;
    for (size_t k = 0; k < clusters.size(); ++k) {
      if (used[k]) continue;
      if (std::abs(clusters[k].value - partner) < tol) {
        if (clusters[k].count != clusters[i].count)
          fail(ErrorKind::PairingFailure,
               "eigenvalue multiplicities of the dual pair (" + std::to_string(lam) + ", " +
                   std::to_string(partner) + ") differ");
        used[k] = true;
        out.pairs.push_back({std::max(lam, partner), std::min(lam, partner), clusters[i].count, false});
        found = true;
        break;
      }
    }
    if (!found)
      fail(ErrorKind::PairingFailure, "eigenvalue " + std::to_string(lam) +
                                          " has no partner at " + std::to_string(partner));
  }
  std::sort(out.pairs.begin(), out.pairs.end(),
            [](const DualityPair& a, const DualityPair& b) { return a.upper < b.upper; });

  // J must carry each lambda-eigenvector into the (-5-lambda)-eigenspace.
  Eigen::MatrixXcd jc = j.cast<std::complex<double>>();
  Eigen::MatrixXcd mc = m.cast<std::complex<double>>();
  for (long k = 0; k < n; ++k) {
    const std::complex<double> lam = solver.eigenvalues()(k);
    Eigen::VectorXcd v = solver.eigenvectors().col(k);
    Eigen::VectorXcd u = jc * v;
    const double defect = (mc * u - (std::complex<double>(-5.0, 0.0) - lam) * u).norm() / u.norm();
    out.mapping_residual = std::max(out.mapping_residual, defect);
  }
  if (out.mapping_residual > 100 * tol)
    fail(ErrorKind::PairingFailure, "J does not map eigenspaces to their duals (defect " +
                                        std::to_string(out.mapping_residual) + ")");
  return out;
}

ConeOperatorSpec cone_operator_from_matrix_model(const Matrix& J, const Matrix& M, double tol) {
  eigen_duality_check(J, M, tol);  // preconditions
  Eigen::MatrixXd m = to_eigen(M, "M");
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m);
  auto clusters = cluster_eigenvalues(solver.eigenvalues(), tol);

  ConeOperatorSpec op;
  op.order = 1;
  op.self_adjoint = true;
  op.spectrum_complete = true;
  op.name = "matrix-model";
  for (const auto& c : clusters) op.catalog.push_back({Rate::from_double(c.value), c.count});
  return op;
}

long long spherical_harmonic_multiplicity(int k) {
  if (k < 0) fail(ErrorKind::Domain, "harmonic degree must be nonnegative");
  auto monomials = [](int deg) -> long long {
    if (deg < 0) return 0;
    // C(deg+5, 5)
    long long v = 1;
    for (int i = 1; i <= 5; ++i) v = v * (deg + i) / i;
    return v;
  };
  return monomials(k) - monomials(k - 2);
}

ConeOperatorSpec preset_operator(const std::string& name) {
  if (name == "scalar-laplacian-s5") {
    ConeOperatorSpec op;
    op.order = 2;
    op.name = name;
    for (int k = 0; k <= kScalarLaplacianMaxMode; ++k) {
      ModeBlock mode;
      mode.coefficients = {Rational(k) * (k + 4), Rational(-4), Rational(-1)};
      mode.multiplicity = static_cast<int>(spherical_harmonic_multiplicity(k));
      op.modes.push_back(std::move(mode));
    }
    return op;
  }
  if (name == "fubini-study") {
    const double s = 2.0 * std::sqrt(2.0);
    ConeOperatorSpec op;
    op.order = 1;
    op.self_adjoint = true;
    op.name = name;
    op.catalog = {
        {Rate::from_double(-2.0 - s, "-2-2*sqrt(2)"), 6},
        {Rate::from_rational(Rational(-3)), 6},
        {Rate::from_rational(Rational(-2)), 6},
        {Rate::from_double(s - 3.0, "2*sqrt(2)-3"), 6},
    };
    op.certified_window = Window{Rate::from_rational(Rational(-5)), Rate::from_rational(Rational(0))};
    return op;
  }
  fail(ErrorKind::Validation, "unknown preset '" + name +
                                  "' (available: scalar-laplacian-s5, fubini-study)");
}

}  // namespace conemod
