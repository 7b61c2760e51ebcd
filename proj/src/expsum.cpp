#include "waringlab/expsum.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <tuple>

namespace wlab {

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

}  // namespace

cplx gauss_sum(std::uint64_t q, std::uint64_t a, unsigned k) {
  if (q < 1) throw ConfigError("gauss_sum: q >= 1 required");
  if (std::gcd(a % q, q) != 1 && q > 1) throw ConfigError("gauss_sum: gcd(a,q) = 1 required");
  cplx total(0.0, 0.0);
  for (std::uint64_t r = 1; r <= q; ++r) {
    const std::uint64_t res = powmod(r, k, q);
    const std::uint64_t num = (res % q) * (a % q) % q;
    total += e2pi(static_cast<double>(num) / static_cast<double>(q));
  }
  return total;
}

long long tilde_i(int k, int s) {
  return static_cast<long long>(
      std::ceil(std::log(2.0 * static_cast<double>(s)) / (static_cast<double>(k) * std::log(2.0))));
}

double p_minus(int k, int s, double p) {
  return std::ldexp(p, static_cast<int>(-tilde_i(k, s) - 1));
}

cplx FrequencyTable::eval(double alpha) const {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < freqs.size(); ++i) {
    const cplx z = e2pi(frac_mul(alpha, freqs[i]));
    re += weights[i] * z.real();
    im += weights[i] * z.imag();
  }
  return {re, im};
}

std::vector<cplx> FrequencyTable::eval_grid(std::size_t n, int workers) const {
  if (n == 0) throw ConfigError("eval_grid: n >= 1 required");
  require_budget(n * sizeof(cplx) * static_cast<std::uint64_t>(std::max(workers, 1) + 1),
                 "eval_grid");
  std::vector<cplx> acc(n, cplx(0.0, 0.0));
  const double inv_n = 1.0 / static_cast<double>(n);
  constexpr std::size_t kResync = 1024;  // bound rotation drift well under 1e-10
  // split the grid into contiguous blocks; each block owned by one chunk
  const std::size_t block = std::max<std::size_t>(n / (16 * std::max(workers, 1)), 4096);
  parallel_chunks(n, block, workers, [&](std::size_t, std::size_t lo, std::size_t hi) {
    for (std::size_t t = 0; t < freqs.size(); ++t) {
      const std::uint64_t f = freqs[t];
      const double w = weights[t];
      const double step_phase = frac_mul(inv_n, f);
      const cplx step = e2pi(step_phase);
      cplx z;
      for (std::size_t i = lo; i < hi; ++i) {
        if ((i - lo) % kResync == 0)
          z = e2pi(frac_mul((static_cast<double>(i) + 0.5) * inv_n, f));
        acc[i] += w * z;
        z *= step;
      }
    }
  });
  return acc;
}

namespace {

std::shared_ptr<const FrequencyTable> build_table(const WeylSumSpec& spec) {
  if (spec.k < 2 || spec.s < 2 || spec.p < 1.0 || spec.r < 1.0)
    throw ConfigError("WeylSumSpec: k,s >= 2 and P,R >= 1 required");
  SmoothSet set(spec.p, spec.r);
  auto table = std::make_shared<FrequencyTable>();
  const double wexp = -1.0 + static_cast<double>(spec.k) / static_cast<double>(spec.s);
  const double lower = spec.variant == WeylVariant::kDyadic ? spec.p / 2.0
                       : spec.variant == WeylVariant::kTruncated
                           ? p_minus(spec.k, spec.s, spec.p)
                           : 0.0;
  for (auto x : set.members()) {
    if (static_cast<double>(x) <= lower) continue;
    table->freqs.push_back(ipow_u64(x, static_cast<unsigned>(spec.k)));
    table->weights.push_back(spec.variant == WeylVariant::kFull
                                 ? 1.0
                                 : std::pow(static_cast<double>(x), wexp));
  }
  for (auto w : table->weights) table->total_weight += w;
  if (!table->freqs.empty()) table->max_freq = table->freqs.back();
  return table;
}

std::shared_ptr<const FrequencyTable> cached_table(const WeylSumSpec& spec) {
  using Key = std::tuple<int, int, double, double, int>;
  static std::map<Key, std::shared_ptr<const FrequencyTable>> cache;
  static std::mutex mu;
  const Key key{spec.k, spec.s, spec.p, spec.r, static_cast<int>(spec.variant)};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto table = build_table(spec);
  std::lock_guard<std::mutex> lock(mu);
  if (cache.size() > 64) cache.clear();
  cache[key] = table;
  return table;
}

}  // namespace

std::shared_ptr<const FrequencyTable> frequency_table(const WeylSumSpec& spec) {
  return cached_table(spec);
}

cplx eval(const WeylSumSpec& spec, double alpha) { return frequency_table(spec)->eval(alpha); }

cplx w_sum(int s, int k, double p, double beta, bool truncated) {
  if (s < 1 || k < 1 || p < 1.0) throw ConfigError("w_sum: bad arguments");
  const double pk = std::pow(p, static_cast<double>(k));
  if (pk > 4.0e9) throw BudgetError("w_sum: P^k beyond term budget");
  const auto hi = static_cast<std::uint64_t>(std::floor(pk));
  std::uint64_t lo = 1;
  if (truncated) {
    const double pmk = std::pow(p_minus(k, s, p), static_cast<double>(k));
    lo = static_cast<std::uint64_t>(std::floor(pmk)) + 1;
  }
  const double ex = -1.0 + 1.0 / static_cast<double>(s);
  // blocked compensated accumulation
  double re = 0.0, im = 0.0, cre = 0.0, cim = 0.0;
  for (std::uint64_t x = lo; x <= hi; ++x) {
    const cplx z = e2pi(frac_mul(beta, x));
    const double w = std::pow(static_cast<double>(x), ex);
    double y = w * z.real() - cre;
    double t = re + y;
    cre = (t - re) - y;
    re = t;
    y = w * z.imag() - cim;
    t = im + y;
    cim = (t - im) - y;
    im = t;
  }
  const double invk = 1.0 / static_cast<double>(k);
  return {re * invk, im * invk};
}

MajorArcModel major_arc_model(const WeylSumSpec& spec, double alpha, std::uint64_t a,
                              std::uint64_t q, double eta) {
  if (eta <= 0.0 || eta > 1.0) throw ConfigError("major_arc_model: eta in (0,1] required");
  MajorArcModel out;
  const double logp = std::log(spec.p);
  const double qcap = std::pow(logp, 1.0 / 8.0);
  const double beta = alpha - static_cast<double>(a) / static_cast<double>(q);
  const double r_lo = std::pow(spec.p, eta) *
                      std::exp(-eta * std::sqrt(logp / static_cast<double>(spec.k)));
  const double r_hi = std::pow(spec.p, eta);
  out.hypothesis_ok = static_cast<double>(q) <= qcap &&
                      std::abs(beta) <= qcap * std::pow(spec.p, -static_cast<double>(spec.k)) &&
                      spec.r >= r_lo && spec.r <= r_hi;
  const bool trunc = spec.variant == WeylVariant::kTruncated;
  const cplx s_qa = gauss_sum(q, a % q == 0 ? q : a % q, static_cast<unsigned>(spec.k));
  out.model = dickman_rho(1.0 / eta) / static_cast<double>(q) * s_qa *
              w_sum(spec.s, spec.k, spec.p, beta, trunc);
  out.actual = eval(spec, alpha);
  out.gap = std::abs(out.actual - out.model);
  out.normalized_defect = out.gap *
                          std::pow(spec.p, -static_cast<double>(spec.k) / spec.s) *
                          std::sqrt(logp);
  return out;
}

}  // namespace wlab
