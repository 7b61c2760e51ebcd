#ifndef WARINGLAB_EXPSUM_HPP
#define WARINGLAB_EXPSUM_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "waringlab/common.hpp"
#include "waringlab/smooth.hpp"

namespace wlab {

// Complete Gauss sum S(q,a) = sum_{r=1..q} e(a r^k / q); requires gcd(a,q)=1.
cplx gauss_sum(std::uint64_t q, std::uint64_t a, unsigned k);

enum class WeylVariant {
  kFull,       // f:   unit weights over A(P,R)
  kWeighted,   // f_s: weights x^{-1+k/s} over A(P,R)
  kDyadic,     // g_s: weights over A(P,R) \ A(P/2,R)
  kTruncated,  // f~s: weights over A(P,R), x > P_-
};

// (frequency x^k, weight) pairs; frequencies strictly increasing.
struct FrequencyTable {
  std::vector<std::uint64_t> freqs;
  std::vector<double> weights;
  double total_weight = 0.0;
  std::uint64_t max_freq = 0;

  cplx eval(double alpha) const;
  // Values at the N midpoints (i+1/2)/N, phase-rotation recurrence with
  // periodic exact resync; drift below 1e-10.
  std::vector<cplx> eval_grid(std::size_t n, int workers = 1) const;
};

struct WeylSumSpec {
  int k = 2;
  int s = 2;
  double p = 2.0;
  double r = 2.0;
  WeylVariant variant = WeylVariant::kWeighted;
};

long long tilde_i(int k, int s);        // ceil(log 2s / (k log 2))
double p_minus(int k, int s, double p);  // 2^{-tilde_i - 1} P

// Table built from the spec; cached per (k,s,P,R,variant).
std::shared_ptr<const FrequencyTable> frequency_table(const WeylSumSpec& spec);

cplx eval(const WeylSumSpec& spec, double alpha);

// w_s(beta) = (1/k) sum_{1<=x<=P^k} x^{-1+1/s} e(beta x); truncated variant
// sums over P_-^k < x <= P^k.
cplx w_sum(int s, int k, double p, double beta, bool truncated);

struct MajorArcModel {
  cplx model;
  cplx actual;
  double gap = 0.0;
  double normalized_defect = 0.0;  // |gap| * P^{-k/s} * (log P)^{1/2}
  bool hypothesis_ok = true;       // q, alpha and R inside the stated window
};

// Approximant rho(1/eta) q^{-1} S(q,a) w_s(alpha - a/q) against the true sum.
MajorArcModel major_arc_model(const WeylSumSpec& spec, double alpha, std::uint64_t a,
                              std::uint64_t q, double eta);

}  // namespace wlab

#endif
