#include "waringlab/repcount.hpp"

#include <cmath>
#include <functional>
#include <random>

#include "doctest.h"
#include "waringlab/common.hpp"
#include "waringlab/moments.hpp"
#include "waringlab/smooth.hpp"

using namespace wlab;

namespace {

// nested-loop oracle: ordered tuples over candidate x lists, weighted and
// counted by recursion over non-decreasing value multisets
struct BruteAccum {
  double weighted = 0.0;
  double count = 0.0;
};

void brute_rec(const std::vector<std::uint64_t>& xs, const std::vector<double>& ws, int k,
               int slots, std::size_t start, std::uint64_t target, double wprod,
               std::vector<int>& mults, BruteAccum& acc, double s_fact) {
  if (slots == 0) {
    if (target == 0) {
      double perms = s_fact;
      for (int m : mults) {
        double f = 1.0;
        for (int i = 2; i <= m; ++i) f *= i;
        perms /= f;
      }
      acc.weighted += wprod * perms;
      acc.count += perms;
    }
    return;
  }
  for (std::size_t i = start; i < xs.size(); ++i) {
    const std::uint64_t v = ipow_u64(xs[i], static_cast<unsigned>(k));
    if (v > target) break;
    // use x_i with multiplicity 1..slots
    double wp = wprod;
    std::uint64_t used = 0;
    for (int m = 1; m <= slots; ++m) {
      used += v;
      if (used > target) break;
      wp *= ws[i];
      mults.push_back(m);
      brute_rec(xs, ws, k, slots - m, i + 1, target - used, wp, mults, acc, s_fact);
      mults.pop_back();
    }
  }
}

BruteAccum brute_count(const std::vector<std::uint64_t>& xs, const std::vector<double>& ws,
                       int k, int s, std::uint64_t n) {
  BruteAccum acc;
  std::vector<int> mults;
  double s_fact = 1.0;
  for (int i = 2; i <= s; ++i) s_fact *= i;
  brute_rec(xs, ws, k, s, 0, n, 1.0, mults, acc, s_fact);
  return acc;
}

}  // namespace

TEST_CASE("rep_count minimal anchors") {
  RepQuery q;
  q.k = 2;
  q.s = 5;
  q.n = 5;
  q.big_n = 3;
  q.r = 5;
  const auto res = rep_count(q);
  CHECK(res.weighted == doctest::Approx(1.0));  // only (1,1,1,1,1)
  CHECK(res.tuple_count == 1.0);
  RepQuery empty = q;
  empty.n = 4;  // below s: impossible
  empty.big_n = 2;
  CHECK(rep_count(empty).tuple_count == 0.0);
}

TEST_CASE("engine equals the nested-loop oracle on random small instances") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 100; ++trial) {
    const int k = 2 + static_cast<int>(rng() % 2);
    const int s = 3 + static_cast<int>(rng() % 3);
    const std::uint64_t big_n = 20 + rng() % 120;  // P <= 60-ish
    const std::uint64_t n = big_n + rng() % (big_n + 1);
    const double r = 2.0 + static_cast<double>(rng() % 50);
    RepQuery q;
    q.k = k;
    q.s = s;
    q.n = n;
    q.big_n = big_n;
    q.r = r;
    const auto res = rep_count(q);
    const double p = std::pow(2.0 * static_cast<double>(big_n), 1.0 / k);
    SmoothSet set(p, r);
    std::vector<std::uint64_t> xs;
    std::vector<double> ws;
    for (auto x : set.members()) {
      xs.push_back(x);
      ws.push_back(std::pow(static_cast<double>(x), -1.0 + static_cast<double>(k) / s));
    }
    const auto oracle = brute_count(xs, ws, k, s, n);
    CHECK(res.tuple_count == doctest::Approx(oracle.count).epsilon(1e-12));
    CHECK(res.weighted == doctest::Approx(oracle.weighted).epsilon(1e-9));
  }
}

TEST_CASE("rep_count is monotone in R") {
  RepQuery q;
  q.k = 2;
  q.s = 5;
  q.n = 300;
  q.big_n = 200;
  double prev = 0.0;
  for (double r : {2.0, 3.0, 5.0, 11.0, 20.0}) {
    q.r = r;
    const double cur = rep_count(q).weighted;
    CHECK(cur >= prev - 1e-15);
    prev = cur;
  }
}

TEST_CASE("distinct flag matches a filtered oracle") {
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 30; ++trial) {
    const int s = 3 + static_cast<int>(rng() % 2);
    RepQuery q;
    q.k = 2;
    q.s = s;
    q.big_n = 30 + rng() % 60;
    q.n = q.big_n + rng() % q.big_n;
    q.r = 50;
    q.distinct = true;
    const auto res = rep_count(q);
    // oracle: enumerate strictly increasing tuples, multiply by s!
    const double p = std::pow(2.0 * static_cast<double>(q.big_n), 0.5);
    SmoothSet set(p, q.r);
    double cnt = 0.0, wsum = 0.0;
    const auto& mem = set.members();
    std::function<void(std::size_t, int, std::uint64_t, double)> rec =
        [&](std::size_t start, int left, std::uint64_t target, double wprod) {
          if (left == 0) {
            if (target == 0) {
              cnt += 1.0;
              wsum += wprod;
            }
            return;
          }
          for (std::size_t i = start; i < mem.size(); ++i) {
            const std::uint64_t v = mem[i] * mem[i];
            if (v > target) break;
            rec(i + 1, left - 1, target - v,
                wprod * std::pow(static_cast<double>(mem[i]), -1.0 + 2.0 / s));
          }
        };
    rec(0, s, q.n, 1.0);
    double s_fact = 1.0;
    for (int i = 2; i <= s; ++i) s_fact *= i;
    CHECK(res.tuple_count == doctest::Approx(cnt * s_fact).epsilon(1e-12));
    CHECK(res.weighted == doctest::Approx(wsum * s_fact).epsilon(1e-9));
  }
}

TEST_CASE("inclusion-exclusion identity at the working size") {
  std::mt19937_64 rng(77);
  const std::uint64_t big_n = 2000;
  for (int trial = 0; trial < 5; ++trial) {
    const std::uint64_t n = big_n + 1 + rng() % (big_n - 1);
    const auto rep = inclusion_exclusion_check(2, 9, n, big_n, 8.0);
    CHECK(rep.redundancy_ok);
    CHECK(rep.lhs == doctest::Approx(rep.rhs).epsilon(1e-9));
  }
}

TEST_CASE("inclusion-exclusion degenerate telescoping") {
  // when every solution has all coordinates > P_-, r_j = r_{s,k} for all j
  // and the alternating binomial sum telescopes to r_{s,k}
  const std::uint64_t big_n = 50;
  const int k = 2, s = 3;
  const auto rep = inclusion_exclusion_check(k, s, 2 * big_n, big_n, 10.0);
  CHECK(rep.lhs == doctest::Approx(rep.rhs).epsilon(1e-9));
}

TEST_CASE("f_coefficient single-variable case") {
  // s-d = 1: F is a bare weighted indicator of m = a1 x^k, x > P_-
  const std::uint64_t big_n = 60;  // P ~ 10.95, P_- ~ 1.37
  const int k = 2, s = 5;
  const double p = std::pow(2.0 * 60.0, 0.5);
  const double pm = p_minus(k, s, p);
  for (std::uint64_t x = 1; x <= 10; ++x) {
    const std::uint64_t m = 3 * x * x;
    const double got = f_coefficient(s - 1, {3}, m, big_n, k, s, 60.0);
    if (static_cast<double>(x) > pm) {
      CHECK(got == doctest::Approx(std::pow(static_cast<double>(x), -3.0 / 5.0)));
    } else {
      CHECK(got == 0.0);
    }
  }
  // m with no representation
  CHECK(f_coefficient(s - 1, {3}, 7, big_n, k, s, 60.0) == 0.0);
}

TEST_CASE("f_coefficient equals the r_1-style count with unit dilations") {
  const std::uint64_t big_n = 300;
  const int k = 2, s = 5;
  const std::uint64_t n = 500;
  const double r = 20.0;
  const double got = f_coefficient(0, std::vector<int>(s, 1), n, big_n, k, s, r);
  RepQuery q;
  q.k = k;
  q.s = s;
  q.n = n;
  q.big_n = big_n;
  q.r = r;
  q.j_tilde = 1;
  CHECK(got == doctest::Approx(rep_count(q).weighted).epsilon(1e-9));
}

TEST_CASE("f_coefficient is invariant under permuting equal-slot dilations") {
  const std::uint64_t big_n = 200;
  const int k = 2, s = 6;
  const std::uint64_t m = 350;
  const double a = f_coefficient(2, {1, 2, 3, 2}, m, big_n, k, s, 15.0);
  const double b = f_coefficient(2, {1, 2, 2, 3}, m, big_n, k, s, 15.0);
  CHECK(a == doctest::Approx(b).epsilon(1e-10));
}

TEST_CASE("f_coefficient agrees with direct quadrature") {
  // small instance, grid 2^20 midpoint rule on the defining integral
  const std::uint64_t big_n = 40;  // P ~ 8.9
  const int k = 2, s = 5, d = 3;
  const std::vector<int> dil = {1, 2};
  const double r = 40.0;
  const double p = std::pow(2.0 * static_cast<double>(big_n), 0.5);
  WeylSumSpec tilde{k, s, p, r, WeylVariant::kTruncated};
  WeylSumSpec plain{k, s, p, r, WeylVariant::kWeighted};
  const std::size_t grid = 1 << 20;
  for (std::uint64_t m : {20ull, 36ull, 50ull}) {
    cplx acc(0.0, 0.0);
    for (std::size_t i = 0; i < grid; ++i) {
      const double alpha = (static_cast<double>(i) + 0.5) / static_cast<double>(grid);
      acc += eval(tilde, 1.0 * alpha) * eval(plain, 2.0 * alpha) *
             e2pi(-frac_mul(alpha, m));
    }
    const double quad = acc.real() / static_cast<double>(grid);
    const double exact = f_coefficient(d, dil, m, big_n, k, s, r);
    CHECK(quad == doctest::Approx(exact).epsilon(1e-4));
  }
}

TEST_CASE("rep ordering across nested cutoffs") {
  const std::uint64_t n = 5000;
  const int k = 2, s = 9;
  const double eta = 0.5;
  const auto rep = rep_vs_asymptotic(k, s, eta, {n},
                                     [](double x) { return std::log(x); });
  REQUIRE(rep.rows.size() == 1);
  const auto& row = rep.rows[0];
  CHECK(row.r_plain >= row.r_phi);
  CHECK(row.r_phi >= row.r_phi_eta);
  CHECK(row.sing > 0.0);
  CHECK(row.ratio > 0.0);
  CHECK(rep.hypothesis_ok);
}

TEST_CASE("rep_in_sequence anchors and oracle") {
  CHECK(rep_in_sequence(5, 3, {}) == 0.0);
  CHECK(rep_in_sequence(3, 3, {1}) == 1.0);  // 1+1+1
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::uint64_t> xs;
    for (std::uint64_t x = 1; x <= 12; ++x)
      if (rng() % 2) xs.push_back(x * x * x);
    if (xs.empty()) continue;
    const int s = 3;
    const std::uint64_t n = 30 + rng() % 400;
    double brute = 0.0;
    for (auto a : xs)
      for (auto b : xs)
        for (auto c : xs)
          if (a + b + c == n) brute += 1.0;
    CHECK(rep_in_sequence(n, s, xs) == doctest::Approx(brute));
  }
}
