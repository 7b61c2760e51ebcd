#include "waringlab/common.hpp"

#include <cmath>

#include "doctest.h"
#include "waringlab/fft.hpp"

using namespace wlab;

TEST_CASE("frac_mul matches long-double products on moderate inputs") {
  const double alphas[] = {0.0, 0.125, 1.0 / 3.0, 0.9999, 0.5671432904097838};
  for (double a : alphas) {
    for (std::uint64_t n : {std::uint64_t(1), std::uint64_t(7), std::uint64_t(12345)}) {
      const long double exact = std::fmod(static_cast<long double>(a) * n, 1.0L);
      CHECK(std::abs(frac_mul(a, n) - static_cast<double>(exact)) < 1e-12);
    }
  }
}

TEST_CASE("frac_mul is exact for large frequencies") {
  // alpha*n loses bits in double arithmetic near 2^60; the integer path does not
  const double alpha = 0.6180339887498949;
  const std::uint64_t n = (std::uint64_t(1) << 60) + 12345;
  const double f = frac_mul(alpha, n);
  CHECK(f >= 0.0);
  CHECK(f < 1.0);
  // against a 128-bit reference computed the same way from first principles
  int e;
  const double mant = std::frexp(alpha, &e);
  const auto m = static_cast<unsigned __int128>(std::ldexp(mant, 53));
  const int shift = 53 - e;
  const unsigned __int128 prod = m * n;
  const unsigned __int128 mask = (static_cast<unsigned __int128>(1) << shift) - 1;
  const double ref = static_cast<double>(prod & mask) * std::ldexp(1.0, -shift);
  CHECK(f == doctest::Approx(ref).epsilon(1e-15));
}

TEST_CASE("uniform01 is deterministic and order-free") {
  CHECK(uniform01(42, 7) == uniform01(42, 7));
  CHECK(uniform01(42, 7) != uniform01(42, 8));
  CHECK(uniform01(43, 7) != uniform01(42, 7));
  double mean = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) mean += uniform01(1, static_cast<std::uint64_t>(i));
  mean /= n;
  CHECK(std::abs(mean - 0.5) < 0.02);
}

TEST_CASE("ipow_u64 guards overflow") {
  CHECK(ipow_u64(10, 6) == 1000000);
  CHECK(ipow_u64(2, 62) == (std::uint64_t(1) << 62));
  CHECK_THROWS_AS(ipow_u64(1000000, 20), BudgetError);
}

TEST_CASE("pairwise_sum and fit_line basics") {
  std::vector<double> v(1000, 0.001);
  CHECK(pairwise_sum(v) == doctest::Approx(1.0).epsilon(1e-12));
  std::vector<double> x, y;
  for (int i = 1; i <= 10; ++i) {
    x.push_back(i);
    y.push_back(3.0 * i - 2.0);
  }
  const auto f = fit_line(x, y);
  CHECK(f.slope == doctest::Approx(3.0));
  CHECK(f.intercept == doctest::Approx(-2.0));
}

TEST_CASE("fft convolution against direct products") {
  std::vector<double> a = {1, 2, 3};
  std::vector<double> b = {4, 0, 5, 1};
  const auto c = convolve_fft(a, b, 6);
  // direct: (1+2x+3x^2)(4+5x^2+x^3)
  CHECK(c[0] == doctest::Approx(4));
  CHECK(c[1] == doctest::Approx(8));
  CHECK(c[2] == doctest::Approx(17));
  CHECK(c[3] == doctest::Approx(11));
  CHECK(c[4] == doctest::Approx(17));
  CHECK(c[5] == doctest::Approx(3));
  const auto sq = self_convolve_fft(a, 2, 5);
  CHECK(sq[2] == doctest::Approx(10));  // 2*1*3 + 2*2
  CHECK(sq[4] == doctest::Approx(9));
}

TEST_CASE("parallel_chunks covers the range once per index") {
  std::vector<int> hits(1000, 0);
  parallel_chunks(1000, 64, 4, [&](std::size_t, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) ++hits[i];
  });
  for (int h : hits) CHECK(h == 1);
}
