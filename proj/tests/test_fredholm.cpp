#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "conemod/errors.hpp"
#include "conemod/fredholm.hpp"

using namespace conemod;

namespace {

Rate exact(long long n) { return Rate::from_rational(Rational(n)); }
Rate exact(long long p, long long q) { return Rate::from_rational(Rational(p, q)); }

std::vector<RateEntry> two_jumps() {
  return {{exact(-3), 6}, {exact(-2), 6}};
}

ConeOperatorSpec catalog_op(std::vector<RateEntry> entries, bool self_adjoint = true) {
  ConeOperatorSpec op;
  op.order = 1;
  op.self_adjoint = self_adjoint;
  op.spectrum_complete = true;
  op.catalog = std::move(entries);
  return op;
}

}  // namespace

TEST_CASE("index_change across two jumps") {
  std::vector<std::vector<RateEntry>> rates = {two_jumps()};
  CHECK(index_change(rates, WeightVector{{exact(-7, 2)}}, WeightVector{{exact(-3, 2)}}) == 12);
  CHECK(index_change(rates, WeightVector{{exact(-3, 2)}}, WeightVector{{exact(-3, 2)}}) == 0);
  CHECK(index_change(rates, WeightVector{{exact(-5, 2)}}, WeightVector{{exact(-11, 5)}}) == 0);
  // antisymmetric extension for descending weights
  CHECK(index_change(rates, WeightVector{{exact(-3, 2)}}, WeightVector{{exact(-7, 2)}}) == -12);
  // weight on a critical rate is an error
  CHECK_THROWS_AS(index_change(rates, WeightVector{{exact(-3)}}, WeightVector{{exact(0)}}), Error);
}

TEST_CASE("index_change is additive over points and consistent over midpoints") {
  std::vector<std::vector<RateEntry>> rates = {two_jumps(), {{exact(-1), 4}}};
  WeightVector from{{exact(-4), exact(-2)}};
  WeightVector to{{exact(0), exact(0)}};
  int total = index_change(rates, from, to);
  int p0 = index_change({rates[0]}, WeightVector{{exact(-4)}}, WeightVector{{exact(0)}});
  int p1 = index_change({rates[1]}, WeightVector{{exact(-2)}}, WeightVector{{exact(0)}});
  CHECK(total == p0 + p1);
  CHECK(total == 16);

  WeightVector mid{{exact(-5, 2), exact(-3, 2)}};
  CHECK(index_change(rates, from, mid) + index_change(rates, mid, to) == total);
}

TEST_CASE("selfadjoint_index on the fubini-study preset") {
  ConeOperatorSpec fs = preset_operator("fubini-study");
  CHECK(selfadjoint_index(fs, WeightVector{{exact(-5, 2)}}) == 0);
  // crossing -2 on the way up from -5/2
  CHECK(selfadjoint_index(fs, WeightVector{{exact(-1, 2)}}) == -6);
  // descending from -5/2 to -2.7 crosses nothing (-3 lies below -2.7)
  CHECK(selfadjoint_index(fs, WeightVector{{exact(-27, 10)}}) == 0);
  CHECK(selfadjoint_index(fs, WeightVector{{exact(-23, 10)}}) == 0);
  // descending past the jump at -3
  CHECK(selfadjoint_index(fs, WeightVector{{exact(-7, 2)}}) == 6);
  CHECK(selfadjoint_index(fs, WeightVector{{exact(-3, 2)}}) == -6);
  // multi-point weights add up
  CHECK(selfadjoint_index(fs, WeightVector{{exact(-1, 2), exact(-7, 2)}}) == 0);

  CHECK_THROWS_AS(selfadjoint_index(fs, WeightVector{{exact(-2)}}), Error);
  ConeOperatorSpec not_sa = catalog_op(two_jumps(), false);
  CHECK_THROWS_AS(selfadjoint_index(not_sa, WeightVector{{exact(0)}}), Error);
}

TEST_CASE("selfadjoint antisymmetry index(w) + index(-5-w) = 0") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> rate_dist(-2.4, 2.4);
  std::uniform_real_distribution<double> weight_dist(-7.6, 2.6);
  std::uniform_int_distribution<int> dim_dist(1, 9);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<RateEntry> entries;
    for (int i = 0; i < 3; ++i) {
      double l = rate_dist(rng);
      int d = dim_dist(rng);
      entries.push_back({Rate::from_double(l), d});
      entries.push_back({Rate::from_double(-5.0 - l), d});
    }
    ConeOperatorSpec op = catalog_op(entries);
    for (int k = 0; k < 10; ++k) {
      double w = weight_dist(rng);
      bool clear = std::abs(w + 2.5) > 1e-5;
      for (const auto& e : entries) {
        clear = clear && std::abs(e.rate.approx - w) > 1e-5;
        clear = clear && std::abs(e.rate.approx + 5.0 + w) > 1e-5;
      }
      if (!clear) continue;
      int a = selfadjoint_index(op, WeightVector::uniform(1, Rate::from_double(w)));
      int b = selfadjoint_index(op, WeightVector::uniform(1, Rate::from_double(-5.0 - w)));
      CHECK(a + b == 0);
    }
  }
}

TEST_CASE("index is non-increasing in the weight") {
  ConeOperatorSpec fs = preset_operator("fubini-study");
  double previous = 1e9;
  for (double w : {-4.9, -4.5, -3.5, -2.7, -2.3, -1.5, -0.5, -0.05}) {
    int idx = selfadjoint_index(fs, WeightVector::uniform(1, Rate::from_double(w)));
    CHECK(idx <= previous);
    previous = idx;
  }
}

TEST_CASE("mu_bar") {
  CHECK(mu_bar(preset_operator("fubini-study")).value.approx ==
        doctest::Approx(2.0 * std::sqrt(2.0) - 3.0).epsilon(1e-12));
  CHECK_FALSE(mu_bar(preset_operator("fubini-study")).caveat);

  MuBar scalar = mu_bar(preset_operator("scalar-laplacian-s5"));
  CHECK(scalar.value.exact == Rational(0));
  CHECK_FALSE(scalar.caveat);

  ConeOperatorSpec synthetic = catalog_op({{Rate::from_double(-0.5), 2}, {Rate::from_double(-0.3), 1}});
  synthetic.spectrum_complete = false;
  MuBar mb = mu_bar(synthetic);
  CHECK(mb.value.approx == doctest::Approx(-0.5));
  CHECK(mb.caveat);  // no completeness certificate
}

TEST_CASE("laplacian index anchor and invertibility window") {
  ConeOperatorSpec op = preset_operator("scalar-laplacian-s5");
  CHECK(laplacian_index(op, WeightVector{{exact(-2)}}) == 0);
  // constant 0 on the whole spectral gap
  for (double w : {-3.9, -3.0, -1.0, -0.1})
    CHECK(laplacian_index(op, WeightVector::uniform(1, Rate::from_double(w))) == 0);
  // crossing the constants mode at 0
  CHECK(laplacian_index(op, WeightVector{{exact(1, 2)}}) == -1);
  CHECK(laplacian_index(op, WeightVector{{exact(-9, 2)}}) == 1);

  Window w = invertibility_window(mu_bar(op).value);
  CHECK(w.lo.exact == Rational(-5));
  CHECK(w.hi.exact == Rational(1));
  Window wfs = invertibility_window(mu_bar(preset_operator("fubini-study")).value);
  CHECK(wfs.lo.approx == doctest::Approx(-2.0 - 2.0 * std::sqrt(2.0)));
  CHECK(wfs.hi.approx == doctest::Approx(2.0 * std::sqrt(2.0) - 2.0));

  CHECK_THROWS_AS(laplacian_index(preset_operator("fubini-study"), WeightVector{{exact(-2)}}), Error);
}

TEST_CASE("index profiles") {
  ConeOperatorSpec fs = preset_operator("fubini-study");
  IndexProfile profile = selfadjoint_profile(fs, 2);
  CHECK(profile.anchor_index == 0);
  CHECK(profile.index_at(WeightVector{{exact(-5, 2), exact(-5, 2)}}) == 0);
  CHECK(profile.index_at(WeightVector{{exact(-1, 2), exact(-1, 2)}}) == -12);
  CHECK(profile.index_at(WeightVector{{exact(-1, 2), exact(-7, 2)}}) == 0);
  CHECK_THROWS_AS(profile.index_at(WeightVector{{exact(0)}}), Error);  // point count mismatch
}

TEST_CASE("anchor collision: a spectrum with -5/2 critical has no self-adjoint anchor") {
  ConeOperatorSpec op = catalog_op({{exact(-5, 2), 3}});
  CHECK_THROWS_AS(selfadjoint_index(op, WeightVector{{exact(0)}}), Error);
  try {
    selfadjoint_index(op, WeightVector{{exact(0)}});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EndpointCollision);
  }
}
