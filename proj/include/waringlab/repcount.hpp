#ifndef WARINGLAB_REPCOUNT_HPP
#define WARINGLAB_REPCOUNT_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "waringlab/expsum.hpp"

namespace wlab {

// One tuple position: admissible (dilated k-th power, weight) candidates.
struct Slot {
  std::vector<std::uint64_t> values;
  std::vector<double> weights;
};

// arr <- arr (*) slot, truncated to arr.size() entries.
void conv_slot_into(std::vector<double>& arr, const Slot& slot);

// Weighted frequency map of ordered tuples across the given slots, as a
// dense array over sums [0, len).  Split point ceil(s/2): the two halves are
// built independently and combined by complement lookup.
std::vector<double> ordered_tuple_array(const std::vector<Slot>& slots, std::size_t len);

double combine_halves_at(const std::vector<Slot>& slots, std::uint64_t n);

// Ordered tuples with pairwise-distinct values over s identical slots, by
// equality-pattern inclusion-exclusion (set-partition Moebius collapsed to
// integer-partition shapes).  A block of size m uses value m*x^k and weight
// w(x)^m.  s <= 10.
std::vector<double> distinct_tuple_array(const Slot& slot, int s, std::size_t len);

struct RepQuery {
  int k = 2;
  int s = 2;
  std::uint64_t n = 0;
  std::uint64_t big_n = 0;  // n in [N, 2N]; P = (2N)^{1/k}
  double r = 1.0;           // fixed-R mode
  bool self_smooth = false;
  double eta = 0.5;
  double lower_bound = 0.0;  // strict per-variable lower bound on x (all slots)
  int j_tilde = 0;           // first j slots forced x > P_-
  bool distinct = false;
};

struct RepResult {
  double weighted = 0.0;
  double tuple_count = 0.0;  // exact integer below 2^53
};

RepResult rep_count(const RepQuery& query);

struct InclusionExclusionReport {
  double lhs = 0.0;  // r_{s,k}(n,R)
  double rhs = 0.0;  // sum_j (-1)^{j+1} C(s,j) r_j(n,R)
  bool redundancy_ok = false;  // s * P_-^k <= N/2 < n
  std::vector<double> r_j;     // r_1..r_s
};
InclusionExclusionReport inclusion_exclusion_check(int k, int s, std::uint64_t n,
                                                   std::uint64_t big_n, double r);

// F_{d,a}(m): slot 1 truncated (x > P_-), dilations a_1..a_{s-d}, all slots in
// A(P,R), weights x^{-1+k/s}; exact by orthogonality through the tuple engine.
double f_coefficient(int d, const std::vector<int>& dilations, std::uint64_t m,
                     std::uint64_t big_n, int k, int s, double r);

struct TrendRow {
  std::uint64_t n = 0;
  double r_plain = 0.0;
  double r_phi = 0.0;
  double r_phi_eta = 0.0;
  double sing = 0.0;
  double c = 0.0;
  double ratio = 0.0;  // r_plain / (c * sing)
};

struct TrendReport {
  std::vector<TrendRow> rows;
  bool hypothesis_ok = true;  // s >= 4k+1 and Delta*_s < 0 under the chosen model
};

TrendReport rep_vs_asymptotic(int k, int s, double eta, const std::vector<std::uint64_t>& ns,
                              const std::function<double(double)>& phi);

// Ordered s-tuples from the sorted k-th-power sequence X summing to n.
double rep_in_sequence(std::uint64_t n, int s, const std::vector<std::uint64_t>& powers);

}  // namespace wlab

#endif
