#include "waringlab/randbasis.hpp"

#include <algorithm>
#include <cmath>

#include "waringlab/repcount.hpp"
#include "waringlab/singular.hpp"
#include "waringlab/smooth.hpp"

namespace wlab {

double GrowthFn::operator()(double t) const {
  if (custom) return custom(t);
  if (t <= 1.0) return 0.0;
  return c * std::pow(std::log(t), gamma);
}

std::string GrowthFn::describe() const {
  if (custom) return "custom";
  return std::to_string(c) + "*(log t)^" + std::to_string(gamma);
}

double BasisParams::xi(double x) const {
  const double ph = std::max(1.0, phi(x));
  const double top = psi(x);
  if (top <= 0.0) return 0.0;
  return 1.0 - psi(x / ph) / top;
}

double BasisParams::tau0() const {
  ExponentModel model = ExponentModel::zero_tail(k);
  if (delta_star(model, s, static_cast<double>(s)) >= 0.0 && s % 2 == 1)
    model = ExponentModel::user_table(k, {{(s - 1) / 2, 0.0}});
  return nu_constants(k, s, model).tau0;
}

double inclusion_prob(std::uint64_t x, const BasisParams& params) {
  if (x < 1) return 0.0;
  if (!is_self_smooth(x, params.eta)) return 0.0;
  const double xd = static_cast<double>(x);
  const double xk = std::pow(xd, static_cast<double>(params.k));
  const double psi_val = params.psi(xk);
  if (psi_val <= 0.0) return 0.0;
  const double c = c_ks(params.k, params.s, params.eta);
  const double v = std::pow(xd, -1.0 + static_cast<double>(params.k) / params.s) *
                   std::pow(psi_val / c, 1.0 / params.s);
  return std::min(1.0, v);
}

BasisSample sample_basis(std::uint64_t seed, const BasisParams& params) {
  BasisSample sample;
  sample.seed = seed;
  sample.params = params;
  auto x_top = static_cast<std::uint64_t>(
      std::floor(std::pow(static_cast<double>(params.x_max), 1.0 / params.k)));
  while (ipow_u64(x_top + 1, static_cast<unsigned>(params.k)) <= params.x_max) ++x_top;
  while (x_top > 0 && ipow_u64(x_top, static_cast<unsigned>(params.k)) > params.x_max) --x_top;
  for (std::uint64_t x = 1; x <= x_top; ++x) {
    const double p = inclusion_prob(x, params);
    if (p <= 0.0) continue;
    if (p >= 1.0) sample.clamp_threshold_x = std::max(sample.clamp_threshold_x, x);
    if (uniform01(seed, x) < p) {
      sample.member_x.push_back(x);
      sample.member_powers.push_back(ipow_u64(x, static_cast<unsigned>(params.k)));
    }
  }
  return sample;
}

namespace {

Slot member_slot(const BasisSample& sample, std::uint64_t n_max, std::uint64_t min_x) {
  Slot slot;
  for (std::size_t i = 0; i < sample.member_x.size(); ++i) {
    if (sample.member_x[i] <= min_x) continue;
    if (sample.member_powers[i] > n_max) break;
    slot.values.push_back(sample.member_powers[i]);
    slot.weights.push_back(1.0);
  }
  return slot;
}

// strict threshold floor(n^{tau0/k}): constant across the whole n range at
// these scales, but grouped per value anyway
std::uint64_t threshold_x(std::uint64_t n, const BasisParams& params, double tau0) {
  return static_cast<std::uint64_t>(
      std::floor(std::pow(static_cast<double>(n), tau0 / params.k)));
}

}  // namespace

RepArrays rep_arrays(const BasisSample& sample, std::uint64_t n_max) {
  const std::size_t len = static_cast<std::size_t>(n_max) + 1;
  require_budget(5 * len * sizeof(double), "rep_arrays");
  RepArrays out;
  const int s = sample.params.s;
  const Slot all = member_slot(sample, n_max, 0);
  std::vector<Slot> slots(static_cast<std::size_t>(s), all);
  out.r_s = ordered_tuple_array(slots, len);
  out.r_neq = distinct_tuple_array(all, s, len);
  const double tau0 = sample.params.tau0();
  out.r_plus.assign(len, 0.0);
  std::uint64_t lo = 1;
  while (lo < len) {
    const std::uint64_t t = threshold_x(lo, sample.params, tau0);
    std::uint64_t hi = lo;
    while (hi + 1 < len && threshold_x(hi + 1, sample.params, tau0) == t) ++hi;
    const auto part = distinct_tuple_array(member_slot(sample, n_max, t), s, len);
    for (std::uint64_t n = lo; n <= hi; ++n) out.r_plus[n] = part[n];
    lo = hi + 1;
  }
  return out;
}

RepDecomposition rep_decomposition(std::uint64_t n, const BasisSample& sample) {
  if (n == 0) throw ConfigError("rep_decomposition: n >= 1 required");
  const std::size_t len = static_cast<std::size_t>(n) + 1;
  require_budget(4 * len * sizeof(double), "rep_decomposition");
  const int s = sample.params.s;
  RepDecomposition out;
  const Slot all = member_slot(sample, n, 0);
  if (all.values.empty()) return out;
  const std::vector<Slot> slots(static_cast<std::size_t>(s), all);
  out.r_s = combine_halves_at(slots, n);
  out.r_neq = distinct_tuple_array(all, s, len)[n];
  const double tau0 = sample.params.tau0();
  const Slot big = member_slot(sample, n, threshold_x(n, sample.params, tau0));
  out.r_plus = distinct_tuple_array(big, s, len)[n];
  out.r_zero = out.r_neq - out.r_plus;
  out.r_eq = out.r_s - out.r_neq;
  if (out.r_zero < -1e-9 || out.r_eq < -1e-9)
    throw InvariantError("rep_decomposition: accounting identity violated");
  return out;
}

namespace {

Slot probability_slot(const BasisParams& params, std::uint64_t n_max, std::uint64_t min_x) {
  Slot slot;
  const auto x_top = static_cast<std::uint64_t>(
      std::floor(std::pow(static_cast<double>(n_max), 1.0 / params.k)));
  for (std::uint64_t x = min_x + 1; x <= x_top; ++x) {
    const double p = inclusion_prob(x, params);
    if (p <= 0.0) continue;
    slot.values.push_back(ipow_u64(x, static_cast<unsigned>(params.k)));
    slot.weights.push_back(p);
  }
  return slot;
}

// coefficients of log(1 + p(e^t - 1)) up to t^s: the per-value generating
// series whose exp over all x yields the repeat-collapsed expectation
std::vector<double> log_series(double p, int s) {
  std::vector<double> v(static_cast<std::size_t>(s) + 1, 0.0);  // p(e^t-1)
  double fact = 1.0;
  for (int j = 1; j <= s; ++j) {
    fact *= j;
    v[j] = p / fact;
  }
  std::vector<double> out(v.size(), 0.0);
  std::vector<double> pow_v = v;  // v^m, truncated
  double sign = 1.0;
  for (int m = 1; m <= s; ++m) {
    for (int j = 0; j <= s; ++j) out[j] += sign * pow_v[j] / static_cast<double>(m);
    // pow_v *= v
    std::vector<double> next(v.size(), 0.0);
    for (int a = m; a <= s; ++a)
      for (int b = 1; a + b <= s; ++b) next[a + b] += pow_v[a] * v[b];
    pow_v = std::move(next);
    sign = -sign;
  }
  return out;
}

}  // namespace

std::vector<double> expected_distinct_sweep(std::uint64_t n_max, const BasisParams& params,
                                            std::uint64_t min_x) {
  const std::size_t len = static_cast<std::size_t>(n_max) + 1;
  return distinct_tuple_array(probability_slot(params, n_max, min_x), params.s, len);
}

std::vector<double> expected_total_sweep(std::uint64_t n_max, const BasisParams& params) {
  const std::size_t len = static_cast<std::size_t>(n_max) + 1;
  const int s = params.s;
  require_budget((static_cast<std::uint64_t>(s) + 2) * len * sizeof(double),
                 "expected_total_sweep");
  // sparse series coefficient arrays b_i, i = 1..s
  std::vector<Slot> b(static_cast<std::size_t>(s) + 1);
  const auto x_top = static_cast<std::uint64_t>(
      std::floor(std::pow(static_cast<double>(n_max), 1.0 / params.k)));
  for (std::uint64_t x = 1; x <= x_top; ++x) {
    const double p = inclusion_prob(x, params);
    if (p <= 0.0) continue;
    const auto coefs = log_series(p, s);
    const std::uint64_t xk = ipow_u64(x, static_cast<unsigned>(params.k));
    for (int i = 1; i <= s; ++i) {
      const std::uint64_t f = xk * static_cast<std::uint64_t>(i);
      if (f > n_max || coefs[i] == 0.0) continue;
      b[i].values.push_back(f);
      b[i].weights.push_back(coefs[i]);
    }
  }
  // A = exp(B): j A_j = sum_i i * b_i (*) A_{j-i}
  std::vector<std::vector<double>> a(static_cast<std::size_t>(s) + 1);
  a[0].assign(len, 0.0);
  a[0][0] = 1.0;
  for (int j = 1; j <= s; ++j) {
    std::vector<double> acc(len, 0.0);
    for (int i = 1; i <= j; ++i) {
      if (b[i].values.empty()) continue;
      std::vector<double> term = a[j - i];
      conv_slot_into(term, b[i]);
      const double scale = static_cast<double>(i);
      for (std::size_t t = 0; t < len; ++t) acc[t] += scale * term[t];
    }
    const double inv = 1.0 / static_cast<double>(j);
    for (auto& v : acc) v *= inv;
    a[j] = std::move(acc);
  }
  double fact = 1.0;
  for (int i = 2; i <= s; ++i) fact *= i;
  for (auto& v : a[s]) v *= fact;
  return a[s];
}

double expected_rplus(std::uint64_t n, const BasisParams& params) {
  const double tau0 = params.tau0();
  return expected_distinct_sweep(n, params, threshold_x(n, params, tau0))[n];
}

std::vector<double> expected_rplus_sweep(std::uint64_t n_max, const BasisParams& params) {
  const double tau0 = params.tau0();
  std::vector<double> out(static_cast<std::size_t>(n_max) + 1, 0.0);
  std::uint64_t lo = 1;
  while (lo <= n_max) {
    const std::uint64_t t = threshold_x(lo, params, tau0);
    std::uint64_t hi = lo;
    while (hi < n_max && threshold_x(hi + 1, params, tau0) == t) ++hi;
    const auto part = expected_distinct_sweep(n_max, params, t);
    for (std::uint64_t n = lo; n <= hi; ++n) out[n] = part[n];
    lo = hi + 1;
  }
  return out;
}

double expected_r0(std::uint64_t n, const BasisParams& params) {
  const double tau0 = params.tau0();
  const auto no_cut = expected_distinct_sweep(n, params, 0);
  const auto cut = expected_distinct_sweep(n, params, threshold_x(n, params, tau0));
  return no_cut[n] - cut[n];
}

double expected_req(std::uint64_t n, const BasisParams& params) {
  const auto total = expected_total_sweep(n, params);
  const auto distinct = expected_distinct_sweep(n, params, 0);
  return total[n] - distinct[n];
}

ExperimentReport almost_all_experiment(const ExperimentConfig& config) {
  ExperimentReport rep;
  rep.config = config;
  const auto& params = config.params;
  const double big_n = static_cast<double>(config.big_n);
  const double psi_n = params.psi(big_n);
  rep.predicted_density = std::exp(-config.delta * config.delta * psi_n);
  rep.l_c = std::floor(config.big_c * std::log(big_n) /
                       std::max(1e-300, psi_n * config.delta * config.delta));
  rep.m_c = std::log(big_n) *
            std::exp(config.small_c * config.delta * config.delta * psi_n);

  std::uint64_t n_lo, n_hi;
  if (config.interval == IntervalKind::kDyadic) {
    n_lo = config.big_n;
    n_hi = 2 * config.big_n;
  } else {
    const auto width = static_cast<std::uint64_t>(std::floor(std::log(big_n)));
    n_lo = config.big_n;
    n_hi = config.big_n + width;
  }
  BasisParams sampling = params;
  sampling.x_max = std::max(sampling.x_max, n_hi);
  const auto sample = sample_basis(config.seed, sampling);
  rep.members_used = sample.member_x.size();
  const auto arrays = rep_arrays(sample, n_hi);

  // per-n local densities via residue tables; per-q results land in fixed
  // indices so the worker count cannot change anything
  std::vector<std::vector<double>> tables(config.sing_q);
  parallel_chunks(config.sing_q, 4, config.workers,
                  [&](std::size_t, std::size_t lo, std::size_t hi) {
                    for (std::size_t i = lo; i < hi; ++i)
                      tables[i] = a_q_table(i + 1, params.k, params.s);
                  });

  std::uint64_t exceptional = 0;
  for (std::uint64_t n = n_lo; n <= n_hi; ++n) {
    ExperimentRecord rec;
    rec.n = n;
    rec.r_s = arrays.r_s[n];
    rec.r_plus = arrays.r_plus[n];
    rec.r_zero = arrays.r_neq[n] - arrays.r_plus[n];
    rec.r_eq = arrays.r_s[n] - arrays.r_neq[n];
    if (rec.r_zero < -1e-9 || rec.r_eq < -1e-9)
      throw InvariantError("almost_all_experiment: accounting identity violated");
    double sing = 0.0;
    for (std::uint64_t q = 1; q <= config.sing_q; ++q)
      sing += tables[q - 1][n % q];
    const double psi_here = params.psi(static_cast<double>(n));
    rec.sing_psi = sing * psi_here;
    rec.deviation = std::abs(rec.r_s - rec.sing_psi);
    rec.exceptional = rec.deviation > 3.0 * config.delta * psi_here * sing;
    if (rec.exceptional) ++exceptional;
    rep.records.push_back(rec);
  }
  rep.exceptional_fraction =
      static_cast<double>(exceptional) / static_cast<double>(rep.records.size());
  return rep;
}

MonitorReport upper_bound_monitor(const BasisSample& sample, std::uint64_t n_max) {
  MonitorReport rep;
  const auto arrays = rep_arrays(sample, n_max);
  const auto& params = sample.params;
  std::uint64_t lo = 10;
  while (lo < n_max) {
    const std::uint64_t hi = std::min(n_max, lo * 10);
    MonitorRow row;
    row.n_lo = lo;
    row.n_hi = hi;
    for (std::uint64_t n = lo; n <= hi; ++n) {
      const double psi_here = params.psi(static_cast<double>(n));
      const double logn = std::log(static_cast<double>(n));
      const double r0 = arrays.r_neq[n] - arrays.r_plus[n];
      const double req = arrays.r_s[n] - arrays.r_neq[n];
      row.max_r0 = std::max(row.max_r0, r0);
      row.max_req = std::max(row.max_req, req);
      if (psi_here <= 0.0 || logn / psi_here <= 1.0) continue;
      const double stat = arrays.r_s[n] * std::log(logn / psi_here) / logn;
      row.max_statistic = std::max(row.max_statistic, stat);
    }
    rep.decades.push_back(row);
    rep.statistic = std::max(rep.statistic, row.max_statistic);
    rep.max_r0 = std::max(rep.max_r0, row.max_r0);
    rep.max_req = std::max(rep.max_req, row.max_req);
    lo = hi;
  }
  return rep;
}

}  // namespace wlab
