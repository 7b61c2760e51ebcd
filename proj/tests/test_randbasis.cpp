#include "waringlab/randbasis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "doctest.h"
#include "waringlab/common.hpp"
#include "waringlab/repcount.hpp"
#include "waringlab/singular.hpp"
#include "waringlab/smooth.hpp"

using namespace wlab;

namespace {

BasisParams small_params(std::uint64_t x_max = 100000) {
  BasisParams p;
  p.k = 2;
  p.s = 9;
  p.eta = 0.5;
  p.psi = GrowthFn{1.0, 1.0, {}};
  p.phi = GrowthFn{1.0, 1.0, {}};
  p.x_max = x_max;
  return p;
}

}  // namespace

TEST_CASE("inclusion probability rules") {
  const auto params = small_params();
  CHECK(inclusion_prob(7, params) == 0.0);   // 7 is not self-smooth at eta=1/2
  CHECK(inclusion_prob(1, params) == 0.0);   // psi(1) = 0 under the log family
  const double p4 = inclusion_prob(4, params);
  CHECK(p4 > 0.0);
  CHECK(p4 <= 1.0);
  // formula spot value
  const double c = c_ks(2, 9, 0.5);
  const double want =
      std::pow(4.0, -7.0 / 9.0) * std::pow(std::log(16.0) / c, 1.0 / 9.0);
  CHECK(p4 == doctest::Approx(want).epsilon(1e-12));
  // clamping: a huge psi forces p = 1 at small x
  BasisParams big = params;
  big.psi = GrowthFn{1e12, 1.0, {}};
  CHECK(inclusion_prob(4, big) == 1.0);
  // monotone decreasing past the clamp under the log family
  double prev = 1.0;
  for (std::uint64_t x = 4; x <= 1000; ++x) {
    const double p = inclusion_prob(x, params);
    if (p == 0.0) continue;
    CHECK(p <= prev + 1e-12);
    prev = p;
  }
}

TEST_CASE("sampling is deterministic and order-free") {
  const auto params = small_params();
  const auto a = sample_basis(42, params);
  const auto b = sample_basis(42, params);
  CHECK(a.member_x == b.member_x);
  const auto c = sample_basis(43, params);
  CHECK(a.member_x != c.member_x);
  for (auto x : a.member_x) CHECK(is_self_smooth(x, params.eta));
}

TEST_CASE("doubling psi scales the expected cardinality by 2^{1/s}") {
  const auto params = small_params();
  BasisParams doubled = params;
  doubled.psi.c = 2.0;
  double sum1 = 0.0, sum2 = 0.0;
  bool clamped = false;
  for (std::uint64_t x = 2; x <= 316; ++x) {
    const double p1 = inclusion_prob(x, params);
    const double p2 = inclusion_prob(x, doubled);
    if (p2 >= 1.0 && p2 < std::pow(2.0, 1.0 / 9.0) * p1) clamped = true;
    sum1 += p1;
    sum2 += p2;
  }
  if (!clamped)
    CHECK(sum2 == doctest::Approx(std::pow(2.0, 1.0 / 9.0) * sum1).epsilon(1e-9));
}

TEST_CASE("empirical cardinality within the poisson-binomial band") {
  const auto params = small_params(1000000);
  double mean = 0.0, var = 0.0;
  const auto x_top = static_cast<std::uint64_t>(std::sqrt(1e6));
  for (std::uint64_t x = 1; x <= x_top; ++x) {
    const double p = inclusion_prob(x, params);
    mean += p;
    var += p * (1.0 - p);
  }
  // average count over seeds should live inside the CLT band of the mean
  const int seeds = 50;
  double avg = 0.0;
  for (int sd = 0; sd < seeds; ++sd)
    avg += static_cast<double>(sample_basis(1000 + sd, params).member_x.size());
  avg /= seeds;
  CHECK(std::abs(avg - mean) <= 4.0 * std::sqrt(var / seeds) + 1e-9);
}

TEST_CASE("rep decomposition identities on explicit samples") {
  const auto params = small_params();
  const auto sample = sample_basis(7, params);
  for (std::uint64_t n : {5000ull, 20000ull, 60000ull}) {
    const auto dec = rep_decomposition(n, sample);
    CHECK(dec.r_s == dec.r_plus + dec.r_zero + dec.r_eq);
    CHECK(dec.r_neq == dec.r_plus + dec.r_zero);
    CHECK(dec.r_plus >= 0.0);
    CHECK(dec.r_zero >= 0.0);
    CHECK(dec.r_eq >= 0.0);
  }
  BasisParams tiny = small_params(16);
  BasisSample empty = sample_basis(1, tiny);
  empty.member_x.clear();
  empty.member_powers.clear();
  const auto dec = rep_decomposition(100, empty);
  CHECK(dec.r_s == 0.0);
  CHECK(dec.r_eq == 0.0);
}

TEST_CASE("decomposition against a direct filter oracle") {
  // small explicit sample: count tuples by brute force over member lists
  BasisParams params = small_params(5000);
  const auto sample = sample_basis(3, params);
  REQUIRE(sample.member_x.size() >= 2);
  const auto& pw = sample.member_powers;
  for (std::uint64_t n : {100ull, 500ull, 2000ull}) {
    double rs = 0.0, rneq = 0.0;
    std::function<void(int, std::uint64_t, bool, std::vector<std::size_t>&)> rec =
        [&](int left, std::uint64_t rem, bool distinct, std::vector<std::size_t>& used) {
          if (left == 0) {
            if (rem == 0) {
              rs += 1.0;
              if (distinct) rneq += 1.0;
            }
            return;
          }
          for (std::size_t i = 0; i < pw.size(); ++i) {
            if (pw[i] > rem) break;
            const bool repeat =
                std::find(used.begin(), used.end(), i) != used.end();
            used.push_back(i);
            rec(left - 1, rem - pw[i], distinct && !repeat, used);
            used.pop_back();
          }
        };
    std::vector<std::size_t> used;
    // s=4 keeps the brute force branchable
    BasisParams p4 = params;
    p4.s = 4;
    BasisSample s4 = sample;
    s4.params = p4;
    rec(4, n, true, used);
    const auto dec = rep_decomposition(n, s4);
    CHECK(dec.r_s == doctest::Approx(rs));
    CHECK(dec.r_neq == doctest::Approx(rneq));
  }
}

TEST_CASE("expected distinct matches a tiny hand case") {
  // two eligible values with probabilities p,q: E over distinct ordered pairs
  BasisParams params = small_params(400);
  params.s = 2;
  const double p8 = inclusion_prob(8, params);
  const double p12 = inclusion_prob(12, params);
  REQUIRE(p8 > 0.0);
  REQUIRE(p12 > 0.0);
  // n = 8^2 + 12^2: ordered pairs (8,12),(12,8)
  const auto sweep = expected_distinct_sweep(64 + 144, params, 0);
  CHECK(sweep[64 + 144] == doctest::Approx(2.0 * p8 * p12).epsilon(1e-12));
  // n = 2*64 needs x repeated: distinct expectation is zero there
  CHECK(sweep[128] == doctest::Approx(0.0));
  // total expectation counts the repeat once: E = p8 at n = 128
  const auto total = expected_total_sweep(200, params);
  CHECK(total[128] == doctest::Approx(p8).epsilon(1e-12));
  CHECK(total[64 + 144] == doctest::Approx(2.0 * p8 * p12).epsilon(1e-12));
}

TEST_CASE("expectation linearity across the decomposition") {
  BasisParams params = small_params(3000);
  params.s = 3;
  for (std::uint64_t n : {200ull, 400ull, 800ull}) {
    const auto total = expected_total_sweep(n, params)[n];
    const double split =
        expected_rplus(n, params) + expected_r0(n, params) + expected_req(n, params);
    CHECK(total == doctest::Approx(split).epsilon(1e-9));
  }
}

TEST_CASE("montecarlo agreement with the exact expectations") {
  BasisParams params = small_params(20000);
  params.s = 3;
  const std::uint64_t n = 1000;
  const auto er = expected_rplus(n, params);
  const auto e0 = expected_r0(n, params);
  const auto eq = expected_req(n, params);
  const int seeds = 500;
  std::vector<double> xs_plus, xs_zero, xs_eq;
  for (int sd = 0; sd < seeds; ++sd) {
    const auto sample = sample_basis(90000 + sd, params);
    const auto dec = rep_decomposition(n, sample);
    xs_plus.push_back(dec.r_plus);
    xs_zero.push_back(dec.r_zero);
    xs_eq.push_back(dec.r_eq);
  }
  auto band = [&](const std::vector<double>& xs, double expect) {
    double m = 0.0;
    for (double v : xs) m += v;
    m /= xs.size();
    double var = 0.0;
    for (double v : xs) var += (v - m) * (v - m);
    var /= (xs.size() - 1.0);
    const double se = std::sqrt(var / xs.size());
    CHECK(std::abs(m - expect) <= 3.0 * se + 1e-6);
  };
  band(xs_plus, er);
  band(xs_zero, e0);
  band(xs_eq, eq);
}

TEST_CASE("almost-all experiment produces coherent records") {
  ExperimentConfig cfg;
  cfg.params = small_params(200000);
  cfg.seed = 42;
  cfg.interval = IntervalKind::kShort;
  cfg.big_n = 100000;
  cfg.delta = 0.5;
  const auto rep = almost_all_experiment(cfg);
  CHECK(rep.records.size() ==
        static_cast<std::size_t>(std::floor(std::log(1e5))) + 1);
  for (const auto& rec : rep.records) {
    CHECK(rec.r_s == rec.r_plus + rec.r_zero + rec.r_eq);
    CHECK(rec.sing_psi > 0.0);
  }
  CHECK(rep.exceptional_fraction >= 0.0);
  CHECK(rep.exceptional_fraction <= 1.0);
  CHECK(rep.predicted_density ==
        doctest::Approx(std::exp(-0.25 * cfg.params.psi(1e5))));
  CHECK(rep.l_c > 0.0);
  // delta == 1 degenerates gracefully
  ExperimentConfig deg = cfg;
  deg.delta = 1.0;
  const auto rep2 = almost_all_experiment(deg);
  CHECK(rep2.exceptional_fraction <= 1.0);
}

TEST_CASE("dyadic interval experiment and seed determinism") {
  ExperimentConfig cfg;
  cfg.params = small_params(20000);
  cfg.seed = 7;
  cfg.interval = IntervalKind::kDyadic;
  cfg.big_n = 5000;
  cfg.delta = 0.5;
  const auto a = almost_all_experiment(cfg);
  const auto b = almost_all_experiment(cfg);
  REQUIRE(a.records.size() == b.records.size());
  CHECK(a.records.size() == 5001);
  for (std::size_t i = 0; i < a.records.size(); i += 997) {
    CHECK(a.records[i].r_s == b.records[i].r_s);
    CHECK(a.records[i].sing_psi == b.records[i].sing_psi);
  }
}

TEST_CASE("upper bound monitor emits finite statistics") {
  BasisParams params = small_params(300000);
  params.psi = GrowthFn{1.0, 0.5, {}};  // sqrt(log): o(log) family
  const auto sample = sample_basis(11, params);
  const auto rep = upper_bound_monitor(sample, 300000);
  CHECK(std::isfinite(rep.statistic));
  CHECK(rep.statistic >= 0.0);
  CHECK(!rep.decades.empty());
  CHECK(rep.max_r0 <= 50.0);   // soft ceiling, report-only
  CHECK(rep.max_req <= 50.0);
  // re-seeding keeps the statistic within a loose band
  const auto rep2 =
      upper_bound_monitor(sample_basis(12, params), 300000);
  if (rep.statistic > 0.0 && rep2.statistic > 0.0) {
    const double ratio = rep.statistic / rep2.statistic;
    CHECK(ratio < 3.0);
    CHECK(ratio > 1.0 / 3.0);
  }
}

TEST_CASE("cardinality growth tracks (X psi)^{1/s}") {
  BasisParams params = small_params(1000000);
  std::vector<double> lx, ly;
  for (double cap = 1e4; cap <= 1e6 + 1; cap *= std::pow(10.0, 0.25)) {
    double expect = 0.0;
    const auto x_top = static_cast<std::uint64_t>(std::floor(std::sqrt(cap)));
    for (std::uint64_t x = 1; x <= x_top; ++x) expect += inclusion_prob(x, params);
    lx.push_back(std::log(cap * std::log(cap)));
    ly.push_back(std::log(expect));
  }
  const auto f = fit_line(lx, ly);
  CHECK(std::abs(f.slope - 1.0 / 9.0) < 0.05);
}
