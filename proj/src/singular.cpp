#include "waringlab/singular.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "waringlab/common.hpp"
#include "waringlab/fft.hpp"
#include "waringlab/smooth.hpp"

namespace wlab {

double gamma_fn(double z) {
  // Lanczos, g = 7, 9 coefficients
  static const double g = 7.0;
  static const double coef[9] = {
      0.99999999999980993,     676.5203681218851,      -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,    12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6,  1.5056327351493116e-7};
  if (z < 0.5) {
    const double pi = 3.141592653589793238462643383280;
    return pi / (std::sin(pi * z) * gamma_fn(1.0 - z));
  }
  z -= 1.0;
  double a = coef[0];
  const double t = z + g + 0.5;
  for (int i = 1; i < 9; ++i) a += coef[i] / (z + static_cast<double>(i));
  return std::sqrt(2.0 * 3.141592653589793238462643383280) * std::pow(t, z + 0.5) *
         std::exp(-t) * a;
}

namespace {

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  unsigned __int128 r = 1, base = b % m;
  while (e) {
    if (e & 1) r = r * base % m;
    base = base * base % m;
    e >>= 1;
  }
  return static_cast<std::uint64_t>(r);
}

// counts of r^k mod q over r = 1..q
std::vector<std::uint64_t> power_counts(std::uint64_t q, int k) {
  std::vector<std::uint64_t> cnt(q, 0);
  for (std::uint64_t r = 1; r <= q; ++r) ++cnt[powmod(r, static_cast<std::uint64_t>(k), q)];
  return cnt;
}

}  // namespace

std::vector<double> a_q_table(std::uint64_t q, int k, int s) {
  if (q < 1) throw ConfigError("a_q_table: q >= 1 required");
  require_budget(q * (sizeof(double) * 3 + sizeof(cplx)), "a_q_table");
  const auto cnt = power_counts(q, k);
  std::vector<cplx> acc(q, cplx(0.0, 0.0));
  for (std::uint64_t a = 1; a <= q; ++a) {
    if (std::gcd(a, q) != 1) continue;
    cplx s_qa(0.0, 0.0);
    for (std::uint64_t t = 0; t < q; ++t)
      if (cnt[t])
        s_qa += static_cast<double>(cnt[t]) *
                e2pi(static_cast<double>(a % q * t % q) / static_cast<double>(q));
    cplx term(1.0, 0.0);
    cplx base = s_qa / static_cast<double>(q);
    int e = s;
    while (e) {
      if (e & 1) term *= base;
      base *= base;
      e >>= 1;
    }
    for (std::uint64_t res = 0; res < q; ++res)
      acc[res] += term * e2pi(-static_cast<double>(a * (res % q) % q) / static_cast<double>(q));
  }
  std::vector<double> out(q);
  for (std::uint64_t res = 0; res < q; ++res) {
    if (std::abs(acc[res].imag()) > 1e-9)
      throw InvariantError("a_q_table: conjugate pairing failed, imag = " +
                           std::to_string(acc[res].imag()));
    out[res] = acc[res].real();
  }
  return out;
}

double a_q_term(std::uint64_t q, std::uint64_t n, int k, int s) {
  return a_q_table(q, k, s)[n % q];
}

unsigned long long count_mod(std::uint64_t q, std::uint64_t n, int k, int s) {
  if (q < 1 || s < 1) throw ConfigError("count_mod: q,s >= 1 required");
  if (q > 1000000ULL / static_cast<std::uint64_t>(s))
    throw BudgetError("count_mod: q beyond budget");
  const auto cnt = power_counts(q, k);
  std::vector<unsigned __int128> dist(q, 0);
  dist[0] = 1;
  for (int step = 0; step < s; ++step) {
    std::vector<unsigned __int128> nd(q, 0);
    for (std::uint64_t m = 0; m < q; ++m) {
      if (dist[m] == 0) continue;
      for (std::uint64_t t = 0; t < q; ++t)
        if (cnt[t]) nd[(m + t) % q] += dist[m] * cnt[t];
    }
    dist = std::move(nd);
  }
  const unsigned __int128 v = dist[n % q];
  if (v > static_cast<unsigned __int128>(~0ULL))
    throw BudgetError("count_mod: count exceeds 64 bits");
  return static_cast<unsigned long long>(v);
}

namespace {

// chi_p = lim_h p^{h(1-s)} M_n(p^h), via the normalized distribution so no
// overflow at large p; stabilization-driven depth with cap.
double euler_factor(std::uint64_t p, std::uint64_t n, int k, int s, int depth_cap, double tol,
                    bool* stabilized) {
  double prev = 0.0;
  bool have_prev = false;
  *stabilized = false;
  for (int h = 1; h <= depth_cap; ++h) {
    std::uint64_t q = 1;
    bool overflow = false;
    for (int i = 0; i < h; ++i) {
      if (q > 2000000ULL / p) {
        overflow = true;
        break;
      }
      q *= p;
    }
    if (overflow) break;
    const auto cnt = power_counts(q, k);
    std::vector<double> dist(q, 0.0);
    dist[0] = 1.0;
    const double invq = 1.0 / static_cast<double>(q);
    for (int step = 0; step < s; ++step) {
      std::vector<double> nd(q, 0.0);
      for (std::uint64_t m = 0; m < q; ++m) {
        const double dm = dist[m];
        if (dm == 0.0) continue;
        for (std::uint64_t t = 0; t < q; ++t)
          if (cnt[t]) nd[(m + t) % q] += dm * static_cast<double>(cnt[t]) * invq;
      }
      dist = std::move(nd);
    }
    const double val = static_cast<double>(q) * dist[n % q];
    if (have_prev && std::abs(val - prev) < tol) {
      *stabilized = true;
      return val;
    }
    prev = val;
    have_prev = true;
  }
  return prev;
}

}  // namespace

SingularResult sing_series(std::uint64_t n, int k, int s, SingularRoute route,
                           const SingularOptions& opt) {
  if (s < std::max(5, k + 2))
    throw ConfigError("sing_series: s >= max(5,k+2) required for the defining series");
  SingularResult out;
  if (route == SingularRoute::kQSum) {
    std::vector<double> terms;
    terms.reserve(opt.q_limit);
    for (std::uint64_t q = 1; q <= opt.q_limit; ++q) terms.push_back(a_q_term(q, n, k, s));
    out.value = pairwise_sum(terms);
    out.terms = static_cast<long long>(opt.q_limit);
    return out;
  }
  // Euler product
  double prod = 1.0;
  long long used = 0;
  int calm = 0;
  const std::uint64_t p_floor = static_cast<std::uint64_t>(2 * k) * static_cast<std::uint64_t>(s);
  bool all_stable = true;
  double last = 1.0;
  for (auto p : primes_upto(static_cast<std::uint32_t>(opt.prime_cap))) {
    bool stab = false;
    const double chi = euler_factor(p, n, k, s, opt.depth_cap, opt.tolerance, &stab);
    all_stable = all_stable && stab;
    prod *= chi;
    last = chi;
    ++used;
    if (p > p_floor) {
      if (std::abs(chi - 1.0) < opt.tolerance) {
        if (++calm >= 3) break;
      } else {
        calm = 0;
      }
    }
  }
  out.value = prod;
  out.terms = used;
  out.last_factor = last;
  out.converged = all_stable && calm >= 3;
  return out;
}

double c_ks(int k, int s, double eta) {
  if (eta <= 0.0 || eta > 1.0) throw ConfigError("c_ks: eta in (0,1] required");
  const double rho = dickman_rho(1.0 / eta);
  const double g = gamma_fn(1.0 / static_cast<double>(s));
  return std::pow(rho * g / static_cast<double>(k), static_cast<double>(s));
}

std::vector<double> singular_integral_sweep(std::uint64_t n_max, int k, int s) {
  if (s < 1) throw ConfigError("singular_integral_sweep: s >= 1 required");
  require_budget((n_max + 1) * sizeof(double) * 6, "singular_integral_sweep");
  std::vector<double> a(n_max + 1, 0.0);
  const double ex = 1.0 / static_cast<double>(s) - 1.0;
  for (std::uint64_t m = 1; m <= n_max; ++m)
    a[m] = std::pow(static_cast<double>(m), ex);
  std::vector<double> acc = a;
  for (int i = 1; i < s; ++i) acc = convolve_fft(acc, a, n_max + 1);
  const double scale = std::pow(static_cast<double>(k), -static_cast<double>(s));
  for (auto& v : acc) v *= scale;
  return acc;
}

double singular_integral(std::uint64_t n, int k, int s) {
  if (s == 1) return 1.0 / static_cast<double>(k);
  // direct nested convolution at one point for small s*n, sweep otherwise
  return singular_integral_sweep(n, k, s)[n];
}

}  // namespace wlab
