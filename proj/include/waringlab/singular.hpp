#ifndef WARINGLAB_SINGULAR_HPP
#define WARINGLAB_SINGULAR_HPP

#include <cstdint>
#include <vector>

namespace wlab {

// Lanczos gamma (g = 7, 9 terms); |rel err| <= 1e-10 on the positive axis.
double gamma_fn(double z);

// One q-term of the local-density series:
//   a_q(n) = sum_{(a,q)=1} (q^{-1} S(q,a))^s e(-a n / q);
// real by conjugate pairing (imaginary part checked below 1e-9).
double a_q_term(std::uint64_t q, std::uint64_t n, int k, int s);

// a_q(n) for all residues n mod q at once.
std::vector<double> a_q_table(std::uint64_t q, int k, int s);

// Exact count of x_1^k + ... + x_s^k = n (mod q) with x_i in [1,q].
unsigned long long count_mod(std::uint64_t q, std::uint64_t n, int k, int s);

enum class SingularRoute { kQSum, kEulerProduct };

struct SingularResult {
  double value = 0.0;
  bool converged = true;
  long long terms = 0;     // q terms or prime factors consumed
  double last_factor = 0.0;  // Euler route: last chi_p examined
};

struct SingularOptions {
  std::uint64_t q_limit = 500;  // q-sum truncation
  double tolerance = 1e-8;      // Euler stabilization/tail tolerance
  int depth_cap = 6;            // max h in p^h
  std::uint64_t prime_cap = 100000;
};

SingularResult sing_series(std::uint64_t n, int k, int s, SingularRoute route,
                           const SingularOptions& opt = {});

// c_{k,s}(eta) = k^{-s} rho(1/eta)^s Gamma(1/s)^s.
double c_ks(int k, int s, double eta);

// J~(n) = k^{-s} sum_{m_1+...+m_s = n} (m_1...m_s)^{1/s-1}, exact convolution.
double singular_integral(std::uint64_t n, int k, int s);

// The same for every n <= n_max in one sweep.
std::vector<double> singular_integral_sweep(std::uint64_t n_max, int k, int s);

}  // namespace wlab

#endif
