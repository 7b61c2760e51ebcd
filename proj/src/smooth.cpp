#include "waringlab/smooth.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "waringlab/common.hpp"

namespace wlab {

namespace {

std::vector<std::uint32_t> lpf_table(std::uint64_t limit) {
  require_budget((limit + 1) * sizeof(std::uint32_t), "lpf sieve");
  std::vector<std::uint32_t> lpf(limit + 1, 0);
  if (limit >= 1) lpf[1] = 1;
  for (std::uint64_t p = 2; p <= limit; ++p)
    if (lpf[p] == 0)  // p prime: overwrite multiples, last writer is the largest factor
      for (std::uint64_t j = p; j <= limit; j += p) lpf[j] = static_cast<std::uint32_t>(p);
  return lpf;
}

}  // namespace

SmoothSet::SmoothSet(double p, double r, bool keep_lpf_table) : p_(p), r_(r) {
  if (p < 1.0 || r < 1.0) throw ConfigError("SmoothSet: P >= 1 and R >= 1 required");
  const auto limit = static_cast<std::uint64_t>(std::floor(p));
  auto lpf = lpf_table(limit);
  members_.reserve(limit / 4 + 1);
  for (std::uint64_t n = 1; n <= limit; ++n)
    if (static_cast<double>(lpf[n]) <= r) members_.push_back(n);
  if (keep_lpf_table) lpf_ = std::move(lpf);
}

bool SmoothSet::contains(std::uint64_t n) const {
  return std::binary_search(members_.begin(), members_.end(), n);
}

std::vector<std::uint64_t> SmoothSet::tilde_slice() const {
  std::vector<std::uint64_t> out;
  const double half = p_ / 2.0;
  for (auto n : members_)
    if (static_cast<double>(n) > half) out.push_back(n);
  return out;
}

SmoothSet smooth_set(double p, double r) { return SmoothSet(p, r); }

std::uint64_t largest_prime_factor(std::uint64_t x) {
  if (x <= 1) return 1;
  std::uint64_t best = 1;
  for (std::uint64_t d = 2; d * d <= x; d += (d == 2 ? 1 : 2))
    while (x % d == 0) {
      best = d;
      x /= d;
    }
  return x > 1 ? x : best;
}

bool is_self_smooth(std::uint64_t x, double eta) {
  if (eta <= 0.0 || eta > 1.0) throw ConfigError("is_self_smooth: eta in (0,1] required");
  if (x <= 1) return true;
  const double bound = std::pow(static_cast<double>(x), eta);
  return static_cast<double>(largest_prime_factor(x)) <= bound;
}

namespace {

void gen_products(const std::vector<std::uint64_t>& primes, std::size_t idx, std::uint64_t cur,
                  double limit, std::vector<std::uint64_t>& out) {
  out.push_back(cur);
  for (std::size_t i = idx; i < primes.size(); ++i) {
    if (static_cast<double>(cur) * static_cast<double>(primes[i]) > limit) continue;
    gen_products(primes, i, cur * primes[i], limit, out);
  }
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t q) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= q; d += (d == 2 ? 1 : 2))
    if (q % d == 0) {
      out.push_back(d);
      while (q % d == 0) q /= d;
    }
  if (q > 1) out.push_back(q);
  return out;
}

}  // namespace

std::vector<std::uint64_t> c_q_set(double p, double r, std::uint64_t q) {
  if (p < 1.0 || q < 1) throw ConfigError("c_q_set: P >= 1 and q >= 1 required");
  std::vector<std::uint64_t> primes;
  for (auto d : prime_divisors(q))
    if (static_cast<double>(d) <= r) primes.push_back(d);
  std::vector<std::uint64_t> out;
  gen_products(primes, 0, 1, p, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint64_t> c_q_pi_set(double p, double r, std::uint64_t q, std::uint64_t pi) {
  std::vector<std::uint64_t> primes;
  for (auto d : prime_divisors(q))
    if (static_cast<double>(d) <= r && d > pi) primes.push_back(d);
  std::vector<std::uint64_t> out;
  gen_products(primes, 0, 1, p, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint64_t> b_set(double m, std::uint64_t pi, double r) {
  if (m < 1.0) throw ConfigError("b_set: M >= 1 required");
  if (static_cast<double>(pi) > r) return {};
  const double limit = m * static_cast<double>(pi);
  std::vector<std::uint64_t> primes;
  for (auto p : primes_upto(static_cast<std::uint32_t>(std::min(r, limit))))
    if (p >= pi) primes.push_back(p);
  std::vector<std::uint64_t> all;
  gen_products(primes, 0, pi, limit, all);  // v = pi * (product of primes >= pi)
  std::vector<std::uint64_t> out;
  for (auto v : all)
    if (static_cast<double>(v) > m) out.push_back(v);
  std::sort(out.begin(), out.end());
  return out;
}

// ---- Dickman rho ----------------------------------------------------------

namespace {

// rho' = g(u) = -rho(u-1)/u depends on u alone within one unit interval, so a
// Simpson step is the classical RK4 update.  On [0,2] the closed forms
// rho = 1 and rho = 1 - log u are used; past that, delayed midpoint values
// come from 4-point Lagrange interpolation on the already-computed grid
// (rho' is continuous for u > 1, so the stencil keeps the step's order).
struct RhoGrid {
  double h;
  std::vector<double> vals;  // vals[j] = rho(j*h), j*h spanning [0, umax]

  explicit RhoGrid(double step, double umax) : h(step) {
    const auto n = static_cast<std::size_t>(std::ceil(std::max(umax, 2.0 + step) / h)) + 1;
    vals.assign(n, 0.0);
    const auto two = static_cast<std::size_t>(std::llround(2.0 / h));
    for (std::size_t j = 0; j < n && j <= two; ++j) vals[j] = closed_form(static_cast<double>(j) * h);
    for (std::size_t j = two; j + 1 < n; ++j) {
      const double u = static_cast<double>(j) * h;
      const double g0 = -at(u - 1.0, j) / u;
      const double gm = -at(u - 1.0 + 0.5 * h, j) / (u + 0.5 * h);
      const double g1 = -at(u - 1.0 + h, j) / (u + h);
      vals[j + 1] = vals[j] + h / 6.0 * (g0 + 4.0 * gm + g1);
      if (vals[j + 1] < 0.0) vals[j + 1] = 0.0;  // underflow guard deep in the tail
    }
  }

  static double closed_form(double t) {
    if (t <= 1.0) return 1.0;
    return 1.0 - std::log(t);  // valid through t = 2
  }

  // value at arbitrary t <= computed frontier j_max*h
  double at(double t, std::size_t frontier) const {
    if (t <= 2.0) return closed_form(t);
    const double x = t / h;
    auto j = static_cast<std::size_t>(std::floor(x));
    if (j >= frontier) j = frontier - 1;
    const double fr = x - static_cast<double>(j);
    if (fr < 1e-12) return vals[j];
    if (fr > 1.0 - 1e-12 && j + 1 <= frontier) return vals[j + 1];
    if (j == 0 || j + 2 > frontier) return vals[j] + fr * (vals[std::min(j + 1, frontier)] - vals[j]);
    // cubic through j-1..j+2
    const double ym1 = vals[j - 1], y0 = vals[j], y1 = vals[j + 1], y2 = vals[j + 2];
    const double t0 = fr;
    return ym1 * (-(t0) * (t0 - 1.0) * (t0 - 2.0) / 6.0) +
           y0 * ((t0 + 1.0) * (t0 - 1.0) * (t0 - 2.0) / 2.0) +
           y1 * (-(t0 + 1.0) * t0 * (t0 - 2.0) / 2.0) +
           y2 * ((t0 + 1.0) * t0 * (t0 - 1.0) / 6.0);
  }

  double eval(double u) const {
    if (u <= 2.0) return closed_form(u);
    const double top = static_cast<double>(vals.size() - 1) * h;
    if (u >= top) return 0.0;
    return at(u, vals.size() - 1);
  }
};

constexpr double kRhoStep = 1.0 / 4096.0;
constexpr double kRhoMaxU = 128.0;

const RhoGrid& cached_grid() {
  static const RhoGrid grid(kRhoStep, kRhoMaxU);
  return grid;
}

}  // namespace

double dickman_rho(double u) {
  if (u < 0.0) throw ConfigError("dickman_rho: u >= 0 required");
  return cached_grid().eval(u);
}

double dickman_rho_with_step(double u, double h) {
  if (u < 0.0 || h <= 0.0) throw ConfigError("dickman_rho_with_step: bad arguments");
  const RhoGrid grid(h, std::max(4.0, u + 2.0 * h));
  return grid.eval(u);
}

SmoothDensityReport smooth_density_check(double p, double eta) {
  if (eta <= 0.0 || eta >= 1.0000000001) throw ConfigError("smooth_density_check: eta in (0,1]");
  SmoothDensityReport rep;
  const double r = std::pow(p, eta);
  SmoothSet s(p, r);
  rep.smooth_count = s.size();
  rep.rho_model = dickman_rho(1.0 / eta) * std::floor(p);
  rep.relative_gap = std::abs(static_cast<double>(rep.smooth_count) - rep.rho_model) /
                     std::max(1.0, rep.rho_model);
  return rep;
}

}  // namespace wlab
