#include "waringlab/moments.hpp"

#include <cmath>

#include "doctest.h"
#include "waringlab/common.hpp"

using namespace wlab;

TEST_CASE("parseval anchors") {
  // k=2, s=5, P=4, R=4, dyadic: frequencies {9,16}, weights x^{-3/5}
  WeylSumSpec spec{2, 5, 4, 4, WeylVariant::kDyadic};
  const auto table = frequency_table(spec);
  REQUIRE(table->freqs == std::vector<std::uint64_t>{9, 16});
  const double want = std::pow(3.0, -6.0 / 5.0) + std::pow(4.0, -6.0 / 5.0);
  CHECK(exact_even_moment(*table, 1) == doctest::Approx(want).epsilon(1e-12));
  // unweighted f at w=1: |A(P,R)|
  WeylSumSpec full{2, 5, 20, 20, WeylVariant::kFull};
  const auto ft = frequency_table(full);
  CHECK(exact_even_moment(*ft, 1) == doctest::Approx(20.0).epsilon(1e-12));
}

TEST_CASE("fourth moment equals the brute-force weighted pair count") {
  // quadruple loop over A~(P,R), P <= 50
  WeylSumSpec spec{2, 9, 50, 50, WeylVariant::kDyadic};
  const auto table = frequency_table(spec);
  double brute = 0.0;
  const auto& f = table->freqs;
  const auto& w = table->weights;
  for (std::size_t a = 0; a < f.size(); ++a)
    for (std::size_t b = 0; b < f.size(); ++b)
      for (std::size_t c = 0; c < f.size(); ++c)
        for (std::size_t d = 0; d < f.size(); ++d)
          if (f[a] + f[b] == f[c] + f[d]) brute += w[a] * w[b] * w[c] * w[d];
  CHECK(exact_even_moment(*table, 2) == doctest::Approx(brute).epsilon(1e-9));
}

TEST_CASE("sparse and dense moment routes agree") {
  WeylSumSpec spec{2, 9, 60, 60, WeylVariant::kDyadic};
  const auto table = frequency_table(spec);
  const double dense = exact_even_moment(*table, 2);
  // force the sparse route through a tiny in-test replica
  CoefficientVector acc = CoefficientVector::from_table(*table);
  acc = convolve(acc, CoefficientVector::from_table(*table));
  std::vector<double> sq(acc.weights.size());
  for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = acc.weights[i] * acc.weights[i];
  CHECK(dense == doctest::Approx(pairwise_sum(sq)).epsilon(1e-9));
}

TEST_CASE("convolution associativity") {
  WeylSumSpec spec{2, 7, 30, 30, WeylVariant::kDyadic};
  const auto c = CoefficientVector::from_table(*frequency_table(spec));
  const auto left = convolve(convolve(c, c), c);
  const auto right = convolve(c, convolve(c, c));
  REQUIRE(left.freqs == right.freqs);
  for (std::size_t i = 0; i < left.weights.size(); ++i)
    CHECK(left.weights[i] == doctest::Approx(right.weights[i]).epsilon(1e-9));
}

TEST_CASE("diagonal lower bound") {
  WeylSumSpec spec{2, 9, 40, 40, WeylVariant::kDyadic};
  const auto table = frequency_table(spec);
  for (unsigned w : {1u, 2u}) {
    double diag = 0.0;
    for (auto wt : table->weights) diag += std::pow(wt, 2.0 * w);
    CHECK(exact_even_moment(*table, w) >= diag);
  }
}

TEST_CASE("quadrature matches the exact even moment") {
  WeylSumSpec spec{2, 9, 50, 50, WeylVariant::kDyadic};
  const auto table = frequency_table(spec);
  const double exact = exact_even_moment(*table, 2);
  const auto quad = quad_moment(spec, 4.0, {ArcKind::kFull, 1.0}, 1 << 17, 2);
  CHECK(quad.value == doctest::Approx(exact).epsilon(1e-8));
  // t=2 is plain Parseval
  const auto q2 = quad_moment(spec, 2.0, {ArcKind::kFull, 1.0}, 1 << 14, 1);
  double parseval = 0.0;
  for (auto wt : table->weights) parseval += wt * wt;
  CHECK(q2.value == doctest::Approx(parseval).epsilon(1e-8));
}

TEST_CASE("arc additivity of restricted moments") {
  WeylSumSpec spec{2, 9, 40, 40, WeylVariant::kDyadic};
  const std::size_t grid = 1 << 14;
  const double q = 4.0;
  const auto full = quad_moment(spec, 4.0, {ArcKind::kFull, q}, grid);
  const auto major = quad_moment(spec, 4.0, {ArcKind::kMajor, q}, grid);
  const auto minor = quad_moment(spec, 4.0, {ArcKind::kMinor, q}, grid);
  CHECK(major.value + minor.value == doctest::Approx(full.value).epsilon(1e-9));
  CHECK(minor.value <= full.value + 1e-15);
}

TEST_CASE("major moment is monotone in Q") {
  WeylSumSpec spec{2, 9, 40, 40, WeylVariant::kDyadic};
  const std::size_t grid = 1 << 15;
  double prev = 0.0;
  for (double q : {1.0, 2.0, 4.0, 8.0}) {
    const auto m = quad_moment(spec, 4.0, {ArcKind::kMajor, q}, grid);
    CHECK(m.value >= prev - 1e-12);
    prev = m.value;
  }
}

TEST_CASE("grid warning fires when arcs are unresolved") {
  WeylSumSpec spec{2, 9, 40, 40, WeylVariant::kDyadic};
  const auto warned = quad_moment(spec, 4.0, {ArcKind::kMajor, 2.0}, 1 << 10);
  CHECK(warned.grid_warning);  // arc width ~ 2*40^-2 << 2^-10
}

TEST_CASE("full-interval probe slope against the second-moment exponent") {
  // t=2 over [0,1): Parseval makes the true decay computable; prediction
  // includes the Delta-term at theta = k/2
  const std::vector<double> ps = {32, 64, 128, 256, 512};
  const auto probe = bound_probe(ProbeKind::kMajor, 2, 9, 2.0, ps, 1.0, 1 << 14, 2);
  REQUIRE(probe.abscissa.size() == ps.size());
  CHECK(std::abs(probe.slope - probe.predicted) < 0.5);
}

TEST_CASE("quad_moment rejects tiny grids") {
  WeylSumSpec spec{2, 9, 40, 40, WeylVariant::kDyadic};
  CHECK_THROWS_AS(quad_moment(spec, 4.0, {ArcKind::kFull, 1.0}, 512), ConfigError);
}
