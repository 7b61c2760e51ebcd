#ifndef WARINGLAB_MOMENTS_HPP
#define WARINGLAB_MOMENTS_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "waringlab/expsum.hpp"

namespace wlab {

// Frequency-indexed nonnegative weights; Parseval: int_0^1 |sum c_n e(n a)|^2
// = sum c_n^2.
struct CoefficientVector {
  std::vector<std::uint64_t> freqs;  // strictly increasing
  std::vector<double> weights;

  static CoefficientVector from_table(const FrequencyTable& t);
};

CoefficientVector convolve(const CoefficientVector& a, const CoefficientVector& b);

// int_0^1 |g|^{2w} via the self-correlation of the w-fold convolution.
// Dense FFT when w*max_freq <= 2^26 and the budget allows, sorted-merge
// hashing otherwise.
double exact_even_moment(const FrequencyTable& table, unsigned w);

enum class ArcKind { kFull, kMajor, kTruncated, kMinor };

struct ArcSelection {
  ArcKind kind = ArcKind::kFull;
  double q = 1.0;
};

struct QuadMomentResult {
  double value = 0.0;
  bool grid_warning = false;  // grid spacing exceeds the narrowest arc width
};

// Midpoint-rule integral of |eval(spec,.)|^t over the arc union.
QuadMomentResult quad_moment(const WeylSumSpec& spec, double t, ArcSelection sel,
                             std::size_t grid_points, int workers = 1);

enum class ProbeKind { kMajor, kTruncated, kMinor, kPruning };

struct SlopeProbe {
  std::vector<double> abscissa;  // log P (or log Q0 for kPruning)
  std::vector<double> log_moment;
  double slope = 0.0;
  double predicted = 0.0;  // exponent with the Delta-term at the Q-rule; diagnostic only
};

// Least-squares slope of log(moment) against log P with Q = P^theta
// (kPruning: against log Q0 at fixed P, r = 3/2 weight exponent).
SlopeProbe bound_probe(ProbeKind kind, int k, int s, double t,
                       const std::vector<double>& p_values, double theta,
                       std::size_t grid_points, int workers = 1);

}  // namespace wlab

#endif
