#ifndef WARINGLAB_CONSTANTS_HPP
#define WARINGLAB_CONSTANTS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace wlab {

// Principal branch of w*e^w = x, bracketed bisection; |residual| <= 1e-14*max(1,|x|).
double lambert_w0(double x);

enum class ExponentMode { kTranscendental, kZeroTail, kUserTable };

// Smoothed-Weyl admissible exponents Delta_{2v}(k).  Base values solve
// Delta*e^{Delta/k} = k*e^{1-2v/k}; zero-tail mode pins Delta_{2v}=0 for
// v >= k^2+k-2; user tables overlay individual v entries.
struct ExponentModel {
  int k = 2;
  ExponentMode mode = ExponentMode::kTranscendental;
  std::map<long long, double> table;  // v -> Delta_{2v} overrides

  static ExponentModel transcendental(int k);
  static ExponentModel zero_tail(int k);
  static ExponentModel user_table(int k, std::map<long long, double> overrides);

  // Delta_{2s}; s need not be integral in transcendental mode.
  double delta_2s(double s) const;
};

struct TauResult {
  double value = 0.0;
  long long argmax_w = 0;
};

// tau(k) = max_w (k - 2*Delta_{2w})/(4 w^2) over natural w.
TauResult tau(const ExponentModel& model);

// G0(k) = min_{v>=1} (2v + Delta_{2v}/tau(k)).
double g0(const ExponentModel& model);

// Minor-arc exponent Delta*_t = min_{1<=v<=t/2} max(D_{2v}-(t-2v)tau, D_{2v}-(t-2v)k/s).
double delta_star(const ExponentModel& model, long long s, double t);

struct OmegaConstants {
  double omega = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
};
// omega solves w-2-1/w = log w on [1,10]; C1 = 2+log(w^2-3-2/w),
// C2 = (w^2+3w-2)/(w^2-w-2).
OmegaConstants omega_c1_c2();

struct TdParams {
  double t_d = 0.0;
  double c_k = 0.0;
  std::vector<long long> s_t0;  // s_{T0} = 2*floor((s-d-T0)/2) for T0 = 1..floor(T_d)
};
TdParams td_params(long long k, long long s, long long d, double big_d);

struct NuConstants {
  double nu = 0.0;
  double tau0 = 0.0;
  double nu0 = 0.0;
  double tau_d0 = 0.0;       // for the requested d0
  double min_tau_d0 = 0.0;   // min over 1 <= d0 <= s-1
  double delta_star_s = 0.0;
};
// Requires Delta*_s < 0; throws InvariantError otherwise.
NuConstants nu_constants(int k, long long s, const ExponentModel& model, long long d0 = 1);

double tau_d0(const ExponentModel& model, long long s, long long d0);

// H(k) lookup for 14 <= k <= 20.
long long h_table(int k);

struct InequalityCheck {
  std::string name;
  long long k = 0;
  bool passed = false;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct LedgerReport {
  std::vector<InequalityCheck> failures;  // only failing items kept individually
  std::vector<std::string> items;         // "name [kmin,kmax]: pass|fail"
  long long checks_run = 0;
  bool all_passed = true;
};

// Every explicit closing-section inequality over its stated k-range
// (intersected with [k_min,k_max]), plus the stored Delta_{w-1} table checks.
LedgerReport verify_inequalities(long long k_min, long long k_max);

struct ThresholdReport {
  int k = 0;
  double tau = 0.0;
  long long tau_argmax_w = 0;
  double g0 = 0.0;
  long long s_theorem = 0;  // max(floor(G0)+1, 4k+1)
  double c1_bound = 0.0;    // k(log k + 4.20032)
};
ThresholdReport threshold_report(int k);

}  // namespace wlab

#endif
