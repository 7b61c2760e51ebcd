#ifndef WARINGLAB_SMOOTH_HPP
#define WARINGLAB_SMOOTH_HPP

#include <cstdint>
#include <memory>
#include <vector>

namespace wlab {

// A(P,R) = { n in [1,P] : p|n => p <= R }, enumerated by largest-prime-factor
// sieve.  1 is a member by vacuity.  Immutable after construction.
class SmoothSet {
 public:
  SmoothSet(double p, double r, bool keep_lpf_table = false);

  double P() const { return p_; }
  double R() const { return r_; }
  const std::vector<std::uint64_t>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool contains(std::uint64_t n) const;

  // A(P,R) \ A(P/2,R): the members in (P/2, P].
  std::vector<std::uint64_t> tilde_slice() const;

 private:
  double p_;
  double r_;
  std::vector<std::uint64_t> members_;
  std::vector<std::uint32_t> lpf_;  // optional largest-prime-factor table
};

SmoothSet smooth_set(double p, double r);

// Largest prime factor; lpf(1) = 1.
std::uint64_t largest_prime_factor(std::uint64_t x);

// x in A(x, x^eta), i.e. lpf(x) <= x^eta; true for x = 1.
bool is_self_smooth(std::uint64_t x, double eta);

// C_q(P,R)   = { n in A(P,R) : p|n => p|q }
// C_{q,pi}   = { n in C_q(P,R) : p|n => p > pi }
// B(M,pi,R)  = { v in A(M*pi,R) : v > M, pi|v, p|v => p >= pi }
std::vector<std::uint64_t> c_q_set(double p, double r, std::uint64_t q);
std::vector<std::uint64_t> c_q_pi_set(double p, double r, std::uint64_t q, std::uint64_t pi);
std::vector<std::uint64_t> b_set(double m, std::uint64_t pi, double r);

// Dickman rho via the delay equation u*rho'(u) = -rho(u-1), fixed-step
// Simpson grid (classical fourth-order for a pure-time right side), cubic
// interpolation for off-grid delayed values.  Grid cached process-wide.
double dickman_rho(double u);

// Same integrator at a caller-chosen step, for step-halving comparisons.
double dickman_rho_with_step(double u, double h);

struct SmoothDensityReport {
  std::uint64_t smooth_count = 0;
  double rho_model = 0.0;  // rho(1/eta) * P
  double relative_gap = 0.0;
};
SmoothDensityReport smooth_density_check(double p, double eta);

}  // namespace wlab

#endif
