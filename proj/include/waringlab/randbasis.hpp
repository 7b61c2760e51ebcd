#ifndef WARINGLAB_RANDBASIS_HPP
#define WARINGLAB_RANDBASIS_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "waringlab/constants.hpp"

namespace wlab {

// psi(t) = c * (log t)^gamma, the uniform-growth family used throughout;
// gamma = 1 gives c*log, gamma in (0,1) the sub-logarithmic members.  A
// custom function can be plugged in and takes precedence.
struct GrowthFn {
  double c = 1.0;
  double gamma = 1.0;
  std::function<double(double)> custom;

  double operator()(double t) const;
  std::string describe() const;
};

struct BasisParams {
  int k = 2;
  int s = 9;
  double eta = 0.5;
  GrowthFn psi;                  // target representation scale
  GrowthFn phi{1.0, 1.0, {}};    // companion of uniform growth
  std::uint64_t x_max = 1000000;  // members are x^k <= x_max

  double xi(double x) const;  // 1 - psi(x/phi(x))/psi(x)
  // tau0 via the nu-constant chain under the Delta_{s-1}=0 overlay (odd s)
  // or the zero-tail model.
  double tau0() const;
};

// Eq-defined inclusion probability, clamped to [0,1]; zero off the
// self-smooth support.
double inclusion_prob(std::uint64_t x, const BasisParams& params);

struct BasisSample {
  std::uint64_t seed = 0;
  BasisParams params;
  std::vector<std::uint64_t> member_x;       // ascending
  std::vector<std::uint64_t> member_powers;  // x^k, ascending
  std::uint64_t clamp_threshold_x = 0;       // largest x with clamped probability
};

// One Bernoulli draw per eligible x, keyed (seed, x): identical sample for
// any traversal order or worker count.
BasisSample sample_basis(std::uint64_t seed, const BasisParams& params);

struct RepDecomposition {
  double r_s = 0.0;
  double r_neq = 0.0;
  double r_eq = 0.0;
  double r_plus = 0.0;
  double r_zero = 0.0;
};

RepDecomposition rep_decomposition(std::uint64_t n, const BasisSample& sample);

// Whole-range decompositions: arrays indexed by n, 0..n_max.
struct RepArrays {
  std::vector<double> r_s;
  std::vector<double> r_neq;
  std::vector<double> r_plus;
};
RepArrays rep_arrays(const BasisSample& sample, std::uint64_t n_max);

// Exact expectations over the product space (distinct tuples of self-smooth
// x with the clamped probabilities as weights).
double expected_rplus(std::uint64_t n, const BasisParams& params);
double expected_r0(std::uint64_t n, const BasisParams& params);
double expected_req(std::uint64_t n, const BasisParams& params);
std::vector<double> expected_rplus_sweep(std::uint64_t n_max, const BasisParams& params);

// Building blocks of the above: distinct-tuple expectation with a strict
// lower bound on x, and the repeat-collapsed total expectation E(R^s).
std::vector<double> expected_distinct_sweep(std::uint64_t n_max, const BasisParams& params,
                                            std::uint64_t min_x);
std::vector<double> expected_total_sweep(std::uint64_t n_max, const BasisParams& params);

enum class IntervalKind { kDyadic, kShort };

struct ExperimentConfig {
  BasisParams params;
  std::uint64_t seed = 0;
  IntervalKind interval = IntervalKind::kShort;
  std::uint64_t big_n = 1000000;  // dyadic [N,2N] or short [X, X+width(X)]
  double delta = 0.25;
  double big_c = 1.0;  // L_C constant
  double small_c = 1.0;  // M_c constant
  std::uint64_t sing_q = 64;  // local-density truncation for the per-n reference
  int workers = 1;
};

struct ExperimentRecord {
  std::uint64_t n = 0;
  double r_s = 0.0;
  double r_plus = 0.0;
  double r_zero = 0.0;
  double r_eq = 0.0;
  double sing_psi = 0.0;   // S(n) psi(n)
  double deviation = 0.0;  // |R^s - S psi|
  bool exceptional = false;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<ExperimentRecord> records;
  double exceptional_fraction = 0.0;
  double predicted_density = 0.0;  // e^{-delta^2 psi(N)}
  double l_c = 0.0;
  double m_c = 0.0;
  std::uint64_t members_used = 0;
};

ExperimentReport almost_all_experiment(const ExperimentConfig& config);

struct MonitorRow {
  std::uint64_t n_lo = 0;
  std::uint64_t n_hi = 0;
  double max_statistic = 0.0;  // R^s(n) log(log n/psi(n)) / log n
  double max_r0 = 0.0;
  double max_req = 0.0;
};

struct MonitorReport {
  double statistic = 0.0;  // max over the full range
  double max_r0 = 0.0;
  double max_req = 0.0;
  std::vector<MonitorRow> decades;
};

MonitorReport upper_bound_monitor(const BasisSample& sample, std::uint64_t n_max);

}  // namespace wlab

#endif
