#include "conemod/verify.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "conemod/cone_operator.hpp"
#include "conemod/errors.hpp"
#include "conemod/fredholm.hpp"
#include "conemod/moduli.hpp"
#include "conemod/p2_cohomology.hpp"

namespace conemod {

namespace {

using Rng = std::mt19937_64;

ConeOperatorSpec random_symmetric_spectrum(Rng& rng) {
  std::uniform_int_distribution<int> count_dist(1, 4);
  std::uniform_real_distribution<double> rate_dist(-2.4, 2.4);
  std::uniform_int_distribution<int> dim_dist(1, 8);
  ConeOperatorSpec op;
  op.order = 1;
  op.self_adjoint = true;
  op.spectrum_complete = true;
  op.name = "synthetic";
  const int pairs = count_dist(rng);
  for (int i = 0; i < pairs; ++i) {
    double lambda = rate_dist(rng);
    int dim = dim_dist(rng);
    op.catalog.push_back({Rate::from_double(lambda), dim});
    op.catalog.push_back({Rate::from_double(-5.0 - lambda), dim});
  }
  return op;
}

ModuliConfig fs_config(int points, const Rate& mu) {
  ModuliConfig config;
  config.group = Group::pun(2);
  for (int i = 0; i < points; ++i) {
    TangentConeSpec p;
    p.preset = kFubiniStudyPreset;
    p.stab_dim = 8;
    p.mu = mu;
    config.points.push_back(p);
  }
  return config;
}

ModuliConfig abstract_config(int rank, long long c1, long long c2, int stab) {
  ModuliConfig config;
  config.group = Group::pun(std::max(rank, 2));
  TangentConeSpec p;
  ChernData data;
  data.rank = rank;
  data.c1 = c1;
  data.c2 = c2;
  data.stable = true;
  p.bundle = BundleExpr::abstract_bundle(data);
  p.stab_dim = stab;
  p.mu = Rate::from_rational(Rational(-1, 2));
  config.points.push_back(p);
  return config;
}

long long monomial_count(int degree, int vars) {
  if (degree < 0) return 0;
  long long count = 0;
  if (vars == 3) {
    for (int i = 0; i <= degree; ++i)
      for (int j = 0; i + j <= degree; ++j) ++count;  // k = degree - i - j
  } else {
    fail(ErrorKind::Validation, "monomial oracle only implemented for 3 variables");
  }
  return count;
}

struct Failure {
  bool failed = false;
  std::string detail;

  void record(const std::string& msg) {
    if (!failed) detail = msg;
    failed = true;
  }
};

CheckResult make_result(const std::string& name, const Failure& f, const std::string& ok_detail,
                        double measured = 0.0) {
  CheckResult r;
  r.name = name;
  r.passed = !f.failed;
  r.detail = f.failed ? f.detail : ok_detail;
  r.measured = measured;
  return r;
}

}  // namespace

std::vector<CheckResult> run_verification(unsigned seed) {
  std::vector<CheckResult> results;
  Rng rng(seed);

  {  // duality involution + fixed point + Laplacian pair sum
    Failure f;
    double worst = 0.0;
    for (double x : {-7.25, -5.0, -2.5, -0.17157287525381, 0.0, 1.5, 20.0}) {
      Rate r = Rate::from_double(x);
      double diff = std::abs(dualize_rate(dualize_rate(r)).approx - x);
      worst = std::max(worst, diff);
      if (diff > 1e-12) f.record("dualize is not involutive at " + std::to_string(x));
    }
    Rate half = Rate::from_rational(Rational(-5, 2));
    if (!rate_equal(dualize_rate(half), half)) f.record("-5/2 is not a fixed point");
    for (int mu : {0, 2, 5, 12, 77}) {
      auto [hi, lo] = laplacian_cone_rates(Rational(mu));
      double sum = hi.approx + lo.approx;
      worst = std::max(worst, std::abs(sum + 4.0));
      if (std::abs(sum + 4.0) > 1e-12)
        f.record("laplacian rate pair does not sum to -4 at mu=" + std::to_string(mu));
    }
    results.push_back(make_result("duality-involution", f,
                                  "dualize o dualize = id, fixed point -5/2, pairs sum to -4",
                                  worst));
  }

  {  // index antisymmetry on randomized self-adjoint duality-symmetric spectra
    Failure f;
    std::uniform_real_distribution<double> weight_dist(-7.6, 2.6);
    int checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
      ConeOperatorSpec op = random_symmetric_spectrum(rng);
      auto rates = all_rates(op);
      for (int k = 0; k < 50; ++k) {
        double w = 0.0;
        bool ok = false;
        for (int attempt = 0; attempt < 100 && !ok; ++attempt) {
          w = weight_dist(rng);
          ok = std::abs(w + 2.5) > 1e-6;
          for (const auto& e : rates) ok = ok && std::abs(e.rate.approx - w) > 1e-6;
          for (const auto& e : rates) ok = ok && std::abs(e.rate.approx - (-5.0 - w)) > 1e-6;
        }
        if (!ok) continue;
        int a = selfadjoint_index(op, WeightVector::uniform(1, Rate::from_double(w)));
        int b = selfadjoint_index(op, WeightVector::uniform(1, Rate::from_double(-5.0 - w)));
        ++checked;
        if (a + b != 0)
          f.record("index(" + std::to_string(w) + ") + index(" + std::to_string(-5.0 - w) +
                   ") = " + std::to_string(a + b));
      }
    }
    results.push_back(make_result("index-antisymmetry", f,
                                  std::to_string(checked) +
                                      " weights over 200 spectra: index(w) + index(-5-w) = 0"));
  }

  {  // Serre-duality symmetry across the catalog
    Failure f;
    std::vector<BundleExpr> catalog;
    catalog.push_back(BundleExpr::tangent());
    for (long long c2 = 1; c2 <= 6; ++c2) {
      ChernData data;
      data.rank = 2;
      data.c1 = 0;
      data.c2 = c2;
      data.stable = true;
      catalog.push_back(BundleExpr::abstract_bundle(data));
    }
    int checked = 0;
    for (const auto& e : catalog) {
      for (long long k = -3; k <= 0; ++k) {
        long long a = cohomology(BundleExpr::twist(BundleExpr::end(e), k)).h1;
        long long b = cohomology(BundleExpr::twist(BundleExpr::end(e), -3 - k)).h1;
        ++checked;
        if (a != b)
          f.record("h1((End " + format_bundle_expr(e) + ")(" + std::to_string(k) + ")) = " +
                   std::to_string(a) + " != " + std::to_string(b));
      }
    }
    results.push_back(
        make_result("serre-duality-symmetry", f,
                    std::to_string(checked) + " twists: h1((End E)(k)) = h1((End E)(-3-k))"));
  }

  {  // kernel-dimension duality across -5-nu
    Failure f;
    for (const auto& expr : {BundleExpr::tangent(),
                             BundleExpr::abstract_bundle({2, 0, 2, true, 1, std::nullopt})}) {
      auto dims = kernel_dims_from_cohomology(expr);
      if (dims.at(-4) != dims.at(-1) || dims.at(-3) != dims.at(-2))
        f.record("kernel dims of " + format_bundle_expr(expr) + " are not -5-nu symmetric");
    }
    results.push_back(make_result("kernel-dim-duality", f, "dim K_nu = dim K_{-5-nu} on the catalog"));
  }

  {  // Bott vs brute-force monomial counting
    Failure f;
    for (long long k = 0; k <= 10; ++k) {
      long long bott = bott_cohomology(0, k).h0;
      long long count = monomial_count(static_cast<int>(k), 3);
      if (bott != count)
        f.record("h0(O(" + std::to_string(k) + ")) = " + std::to_string(bott) +
                 " != monomial count " + std::to_string(count));
    }
    for (long long k = -13; k <= -3; ++k) {
      long long h2 = bott_cohomology(0, k).h2;
      long long dual = bott_cohomology(0, -3 - k).h0;
      if (h2 != dual)
        f.record("h2(O(" + std::to_string(k) + ")) != h0(O(" + std::to_string(-3 - k) + "))");
    }
    results.push_back(make_result("bott-brute-force", f,
                                  "h0(O(k)) = C(k+2,2) monomial counts, h2(O(k)) = h0(O(-3-k))"));
  }

  {  // radial residuals at reported roots of the scalar Laplacian
    Failure f;
    double worst = 0.0;
    ConeOperatorSpec op = preset_operator("scalar-laplacian-s5");
    auto grid = log_spaced_grid(1e-3, 1.0, 4096);
    auto window = make_window(Rate::from_double(-24.5), Rate::from_double(20.5));
    auto rates = critical_rates(op, window);
    for (const auto& entry : rates.entries) {
      for (size_t m = 0; m < op.modes.size(); ++m) {
        Polynomial p = indicial_polynomial(op.modes[m], op.order);
        if (std::abs(p.eval(entry.rate.approx)) > 1e-6) continue;  // not this mode's root
        double res = radial_residual(op, m, entry.rate, grid);
        worst = std::max(worst, res);
        if (res > 1e-8)
          f.record("residual " + std::to_string(res) + " at rate " + format_rate(entry.rate));
      }
    }
    results.push_back(make_result("radial-residuals", f,
                                  std::to_string(rates.entries.size()) +
                                      " critical rates: residual < 1e-8 at every (mode, root)",
                                  worst));
  }

  {  // Euler consistency across a mixed expression batch
    Failure f;
    for (const char* text :
         {"O(0)", "O(3)", "O(-2)", "T", "Omega(2)", "O(1)+O(-1)", "End(T)", "End(T)(-1)",
          "End(abstract(r=2,c1=0,c2=2,stable))(-2)", "dual(T)(1)"}) {
      BundleExpr e = parse_bundle_expr(text);
      CohomologyVector v = cohomology(e);
      if (v.h0 - v.h1 + v.h2 != euler_characteristic(e))
        f.record(std::string("h0 - h1 + h2 != chi for ") + text);
    }
    results.push_back(make_result("euler-consistency", f, "h0 - h1 + h2 = chi on the batch"));
  }

  {  // Fubini-Study end-to-end
    Failure f;
    double worst = 0.0;
    ConeOperatorSpec fs = preset_operator("fubini-study");
    auto rates = critical_rates(fs, make_window(Rate::from_rational(Rational(-4)),
                                                Rate::from_rational(Rational(-1))));
    if (rates.entries.size() != 2 || !rate_equal(rates.entries[0].rate, Rate::from_rational(Rational(-3))) ||
        !rate_equal(rates.entries[1].rate, Rate::from_rational(Rational(-2))) ||
        rates.entries[0].dim != 6 || rates.entries[1].dim != 6)
      f.record("critical rates in (-4, -1) are not {-3: 6, -2: 6}");
    MuBar mb = mu_bar(fs);
    double mu_bar_err = std::abs(mb.value.approx - (2.0 * std::sqrt(2.0) - 3.0));
    worst = std::max(worst, mu_bar_err);
    if (mu_bar_err > 1e-9) f.record("mu_bar differs from 2*sqrt(2)-3");
    CohomologyVector v = cohomology(parse_bundle_expr("End(T)(-1)"));
    if (v.h0 != 0 || v.h1 != 3 || v.h2 != 0) f.record("cohomology(End(T)(-1)) != (0, 3, 0)");
    for (int n : {1, 2, 3}) {
      ModuliConfig config = fs_config(n, Rate::from_rational(Rational(-1, 2)));
      if (virt_dim_general(config) != 0)
        f.record("virt_dim_general(FS, N=" + std::to_string(n) + ") != 0");
      if (virt_dim_pun(config) != 0)
        f.record("virt_dim_pun(FS, N=" + std::to_string(n) + ") != 0");
    }
    auto [ker, coker] = obstruction_dims(fs_config(1, Rate::from_rational(Rational(-1, 2))), true);
    if (ker != 0 || coker != 0) f.record("FS obstruction dimensions != (0, 0)");
    results.push_back(make_result("fubini-study-end-to-end", f,
                                  "rates {-3, -2}, mu_bar = 2*sqrt(2)-3, 2h1 = 6, virt-dim 0, "
                                  "obstruction (0, 0)",
                                  worst));
  }

  {  // cross-formula agreement
    Failure f;
    for (const auto& config :
         {fs_config(1, Rate::from_rational(Rational(-1, 2))),
          fs_config(3, Rate::from_rational(Rational(-1, 2))), abstract_config(2, 0, 2, 0)}) {
      int a = virt_dim_general(config);
      int b = virt_dim_pun(config);
      if (a != b)
        f.record("virt_dim_general = " + std::to_string(a) + " but virt_dim_pun = " +
                 std::to_string(b));
    }
    results.push_back(make_result("cross-formula-agreement", f,
                                  "virt_dim_general = virt_dim_pun on the catalog configs"));
  }

  {  // sign law on randomized stable Chern inputs
    Failure f;
    std::uniform_int_distribution<int> rank_dist(2, 4);
    std::uniform_int_distribution<long long> c1_dist(-3, 3);
    std::uniform_int_distribution<long long> extra_dist(0, 6);
    int collected = 0;
    while (collected < 100) {
      int r = rank_dist(rng);
      long long c1 = c1_dist(rng);
      // smallest c2 keeping h1(End E) = 1 - r^2 + (2 r c2 - (r-1) c1^2) >= 0
      Rational min_c2 = (Rational(r * r - 1) + Rational(r - 1) * c1 * c1) / (2 * r);
      long long c2 = numerator(min_c2).template convert_to<long long>() /
                         denominator(min_c2).template convert_to<long long>() +
                     1 + extra_dist(rng);
      if (r == 2 && 4 * c2 - c1 * c1 == 3) continue;  // the Fubini-Study Chern family
      long long two_h1 =
          2 * cohomology(BundleExpr::end(BundleExpr::abstract_bundle({r, c1, c2, true, 1, std::nullopt}))).h1;
      std::uniform_int_distribution<long long> rot_dist(0, std::min<long long>(8, two_h1));
      int stab = static_cast<int>(8 - rot_dist(rng));
      int value = virt_dim_pun(abstract_config(r, c1, c2, stab));
      ++collected;
      if (value >= 0)
        f.record("virt_dim_pun = " + std::to_string(value) + " >= 0 for rank " + std::to_string(r) +
                 ", c1 " + std::to_string(c1) + ", c2 " + std::to_string(c2));
    }
    if (virt_dim_pun(fs_config(1, Rate::from_rational(Rational(-1, 2)))) != 0)
      f.record("equality case: FS preset is not exactly 0");
    results.push_back(make_result(
        "sign-law", f, "100 randomized stable inputs: virt_dim_pun < 0; FS preset exactly 0"));
  }

  {  // obstruction consistency: coker = -virt_dim_general where both exist
    Failure f;
    std::vector<ModuliConfig> configs = {fs_config(1, Rate::from_rational(Rational(-1, 2))),
                                         fs_config(2, Rate::from_rational(Rational(-1, 2))),
                                         abstract_config(2, 0, 2, 0), abstract_config(3, 1, 3, 8)};
    for (const auto& config : configs) {
      int virt = virt_dim_general(config);
      auto [ker, coker] = obstruction_dims(config, true);
      if (ker != 0 || coker != -virt)
        f.record("coker " + std::to_string(coker) + " != -virt_dim " + std::to_string(virt));
    }
    results.push_back(
        make_result("obstruction-consistency", f, "coker = -virt_dim on every defined config"));
  }

  {  // matrix-model duality
    Failure f;
    Matrix J = {{0, -1}, {1, 0}};
    Matrix M = {{-2.5, 0.5}, {0.5, -2.5}};
    auto pairing = eigen_duality_check(J, M, 1e-9);
    if (pairing.pairs.size() != 1 || std::abs(pairing.pairs[0].upper + 2.0) > 1e-12 ||
        std::abs(pairing.pairs[0].lower + 3.0) > 1e-12)
      f.record("2x2 model did not pair as (-2, -3)");
    if (pairing.anticommutator_residual > 1e-12)
      f.record("anticommutator residual above 1e-12");
    results.push_back(make_result("matrix-model-duality", f,
                                  "pairs (-2, -3); JM + MJ + 5J = 0 to 1e-12",
                                  pairing.anticommutator_residual));
  }

  return results;
}

}  // namespace conemod
