#include "waringlab/constants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "waringlab/common.hpp"

namespace wlab {

namespace {
constexpr double kBigD = 9.027901;  // minor-arc height constant, valid for k > 20
}

double lambert_w0(double x) {
  constexpr double kInvE = 0.36787944117144232;
  if (x < -kInvE - 1e-15) throw ConfigError("lambert_w0: x < -1/e");
  if (x == 0.0) return 0.0;
  double lo, hi;
  if (x < 0.0) {
    lo = -1.0;
    hi = 0.0;
  } else {
    lo = 0.0;
    hi = 1.0 + std::log1p(x);  // w*e^w >= e*(1+x) > x there
  }
  auto f = [x](double w) { return w * std::exp(w) - x; };
  // monotone on [-1, inf): plain bisection, ~90 halvings reach ulp scale
  for (int it = 0; it < 200 && hi - lo > 1e-17 * std::max(1.0, std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) <= 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

ExponentModel ExponentModel::transcendental(int k) {
  ExponentModel m;
  m.k = k;
  m.mode = ExponentMode::kTranscendental;
  return m;
}

ExponentModel ExponentModel::zero_tail(int k) {
  ExponentModel m;
  m.k = k;
  m.mode = ExponentMode::kZeroTail;
  return m;
}

ExponentModel ExponentModel::user_table(int k, std::map<long long, double> overrides) {
  ExponentModel m;
  m.k = k;
  m.mode = ExponentMode::kUserTable;
  m.table = std::move(overrides);
  return m;
}

double ExponentModel::delta_2s(double s) const {
  if (s < 0.0) throw ConfigError("delta_2s: s >= 0 required");
  if (k < 2) throw ConfigError("delta_2s: k >= 2 required");
  const bool integral = s == std::floor(s);
  if (mode == ExponentMode::kUserTable && integral) {
    auto it = table.find(static_cast<long long>(s));
    if (it != table.end()) return it->second;
  }
  if (mode == ExponentMode::kZeroTail && integral &&
      s >= static_cast<double>(k) * k + k - 2)
    return 0.0;
  const double kk = static_cast<double>(k);
  return kk * lambert_w0(std::exp(1.0 - 2.0 * s / kk));
}

TauResult tau(const ExponentModel& model) {
  const int k = model.k;
  if (k < 2) throw ConfigError("tau: k >= 2 required");
  const auto cap =
      static_cast<long long>(std::ceil(k * (std::log(static_cast<double>(k)) + 10.0)));
  TauResult best;
  best.value = -std::numeric_limits<double>::infinity();
  for (long long w = 1; w <= cap; ++w) {
    const double d = model.delta_2s(static_cast<double>(w));
    const double term = (k - 2.0 * d) / (4.0 * static_cast<double>(w) * static_cast<double>(w));
    if (term > best.value) {
      best.value = term;
      best.argmax_w = w;
    }
  }
  // beyond the cap every term is at most k/(4w^2) < incumbent
  if (k / (4.0 * static_cast<double>(cap) * static_cast<double>(cap)) >= best.value)
    throw InvariantError("tau: search cap too small for k=" + std::to_string(k));
  return best;
}

double g0(const ExponentModel& model) {
  const double tk = tau(model).value;
  if (!(tk > 0.0)) throw InvariantError("g0: tau(k) <= 0");
  double best = std::numeric_limits<double>::infinity();
  for (long long v = 1; 2.0 * static_cast<double>(v) < best; ++v) {
    const double c = 2.0 * static_cast<double>(v) + model.delta_2s(static_cast<double>(v)) / tk;
    best = std::min(best, c);
  }
  return best;
}

double delta_star(const ExponentModel& model, long long s, double t) {
  if (t < 2.0) throw ConfigError("delta_star: t >= 2 required");
  if (s < 1) throw ConfigError("delta_star: s >= 1 required");
  const double tk = tau(model).value;
  const double ks = static_cast<double>(model.k) / static_cast<double>(s);
  double best = std::numeric_limits<double>::infinity();
  const auto vmax = static_cast<long long>(std::floor(t / 2.0));
  for (long long v = 1; v <= vmax; ++v) {
    const double d = model.delta_2s(static_cast<double>(v));
    const double gap = t - 2.0 * static_cast<double>(v);
    best = std::min(best, std::max(d - gap * tk, d - gap * ks));
  }
  return best;
}

OmegaConstants omega_c1_c2() {
  auto f = [](double w) { return w - 2.0 - 1.0 / w - std::log(w); };
  double lo = 1.0, hi = 10.0;  // f(1) = -2 < 0 < f(10); f' > 0 on (0,inf)
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) <= 0.0)
      lo = mid;
    else
      hi = mid;
  }
  OmegaConstants out;
  out.omega = 0.5 * (lo + hi);
  const double w = out.omega;
  out.c1 = 2.0 + std::log(w * w - 3.0 - 2.0 / w);
  out.c2 = (w * w + 3.0 * w - 2.0) / (w * w - w - 2.0);
  return out;
}

TdParams td_params(long long k, long long s, long long d, double big_d) {
  if (k < 1 || s < 1 || d < 1 || big_d <= 0.0) throw ConfigError("td_params: bad arguments");
  const double kk = static_cast<double>(k), ss = static_cast<double>(s),
               dd = static_cast<double>(d);
  TdParams out;
  out.c_k = (39.0 * dd / 40.0) * (1.0 - (dd + 1.0) * ss / (kk * kk) - dd / kk) * ss /
            (2.0 * ss / big_d + dd * kk);
  if (out.c_k <= 0.0)
    throw InvariantError("td_params: c_k <= 0 (hypotheses fail for k=" + std::to_string(k) +
                         ", s=" + std::to_string(s) + ", d=" + std::to_string(d) + ")");
  out.t_d = ss * ss * ss * dd / (2.0 * out.c_k * kk * kk * kk);
  for (long long t0 = 1; t0 <= static_cast<long long>(std::floor(out.t_d)); ++t0)
    out.s_t0.push_back(2 * ((s - d - t0) / 2));
  return out;
}

double tau_d0(const ExponentModel& model, long long s, long long d0) {
  if (d0 < 1 || d0 > s - 1) throw ConfigError("tau_d0: 1 <= d0 <= s-1 required");
  const double delta = model.delta_2s(std::floor(static_cast<double>(s - d0) / 2.0));
  const double kk = model.k;
  const double ss = static_cast<double>(s);
  return std::abs(delta - static_cast<double>(d0) * kk / ss) /
         (2.0 * kk * (ss - static_cast<double>(d0)));
}

NuConstants nu_constants(int k, long long s, const ExponentModel& model, long long d0) {
  NuConstants out;
  out.delta_star_s = delta_star(model, s, static_cast<double>(s));
  if (out.delta_star_s >= 0.0)
    throw InvariantError("nu_constants: Delta*_s >= 0, constants undefined");
  const double ss = static_cast<double>(s), kk = k;
  out.nu = std::min(std::abs(out.delta_star_s) / (2.0 * ss * kk), 1.0 / (107.0 * ss * kk));
  out.min_tau_d0 = std::numeric_limits<double>::infinity();
  for (long long d = 1; d <= s - 1; ++d)
    out.min_tau_d0 = std::min(out.min_tau_d0, wlab::tau_d0(model, s, d));
  out.tau_d0 = wlab::tau_d0(model, s, d0);
  out.tau0 = std::min({out.nu / 16.0, ss * out.min_tau_d0 / 2.0, kk / (8.0 * ss * ss)});
  out.nu0 = 2.0 * out.tau0 / ss;
  return out;
}

long long h_table(int k) {
  switch (k) {
    case 14: return 89;
    case 15: return 97;
    case 16: return 105;
    case 17: return 113;
    case 18: return 121;
    case 19: return 129;
    case 20: return 137;
    default: throw ConfigError("h_table: k must be in [14,20]");
  }
}

ThresholdReport threshold_report(int k) {
  ThresholdReport r;
  r.k = k;
  const auto model = ExponentModel::transcendental(k);
  const auto t = tau(model);
  r.tau = t.value;
  r.tau_argmax_w = t.argmax_w;
  r.g0 = g0(model);
  r.s_theorem = std::max(static_cast<long long>(std::floor(r.g0)) + 1,
                         static_cast<long long>(4) * k + 1);
  r.c1_bound = k * (std::log(static_cast<double>(k)) + 4.20032);
  return r;
}

namespace {

struct DeltaTableRow {
  long long w;
  double delta_wm1;
};

const std::map<int, DeltaTableRow>& stored_delta_rows() {
  static const std::map<int, DeltaTableRow> rows = {
      {14, {75, 0.1281620}},  {15, {81, 0.1355287}}, {16, {87, 0.1426626}},
      {17, {95, 0.1318848}},  {18, {101, 0.1390360}}, {19, {109, 0.1306147}},
      {20, {117, 0.1238487}},
  };
  return rows;
}

struct LedgerItem {
  const char* name;
  long long k_lo;
  long long k_hi;  // -1 = unbounded above (caller caps)
  // returns (lhs, rhs, pass)
  InequalityCheck (*eval)(long long k);
};

InequalityCheck mk(const char* name, long long k, double lhs, double rhs, bool pass) {
  InequalityCheck c;
  c.name = name;
  c.k = k;
  c.lhs = lhs;
  c.rhs = rhs;
  c.passed = pass;
  return c;
}

InequalityCheck eval_close_gap(long long k) {
  const double kk = static_cast<double>(k);
  const double lhs = 2.0 * kk * (std::log(kk * kBigD) + 1.0) * (1.0 - 1.0 / (kBigD * kk)) -
                     2.0 * kk - 0.5;
  const double rhs = kk * (std::log(kk * kBigD) + 2.0) + 1.0;
  return mk("two_extra_vars_gap", k, lhs, rhs, lhs > rhs);
}

InequalityCheck eval_logkd_quarter(long long k) {
  const double kk = static_cast<double>(k);
  const double lhs = std::log(kk * kBigD) + 2.0;
  const double rhs = kBigD * (kk - 5.0) / 4.0;
  return mk("logkd_vs_quarter", k, lhs, rhs, lhs <= rhs);
}

InequalityCheck eval_cube_1053(long long k) {
  const double kk = static_cast<double>(k);
  const double l = std::log(2.0 * kk * kBigD) + 1.0 + 2.0 / kk;
  const double lhs = 1600.0 * l * l * (l + kBigD / 2.0);
  const double rhs = 1053.0 * kBigD * kk;
  return mk("cube_1053", k, lhs, rhs, lhs <= rhs);
}

InequalityCheck eval_vax(long long k) {
  const double kk = static_cast<double>(k);
  const double smax = kk * std::log(2.0 * std::exp(1.0) * kk * kBigD) + 2.0;
  const double lhs = 1.0 / kk + 2.0 * smax / (kk * kk);
  return mk("one_tenth_margin", k, lhs, 0.1, lhs <= 0.1);
}

InequalityCheck eval_d0_quarter(long long k) {
  const double kk = static_cast<double>(k);
  const double lhs = (std::log(kk * kBigD) + 2.0) / kBigD + 2.25;
  const double rhs = kk / 4.0;
  return mk("d0_quarter", k, lhs, rhs, lhs <= rhs);
}

InequalityCheck eval_restr(long long k) {
  const double kk = static_cast<double>(k);
  const double l = std::log(kk * kBigD) + 2.0;
  const double lhs = 2.0 / kk + l * l / (kBigD * kk) + (kBigD + 1.0) * l / (kBigD * kk);
  return mk("restr_500th", k, lhs, 1.0 / 500.0, lhs <= 1.0 / 500.0);
}

InequalityCheck eval_sq_58383(long long k) {
  const double kk = static_cast<double>(k);
  const double l = std::log(kk * kBigD) + 2.0;
  const double lhs = l * l * (1.5 * l + kBigD / 8.0);
  const double rhs = 58383.0 * kBigD * kk / 80000.0;
  return mk("sq_58383", k, lhs, rhs, lhs <= rhs);
}

InequalityCheck eval_cube_64(long long k) {
  const double kk = static_cast<double>(k);
  const double l = std::log(kk * kBigD) + 2.0;
  const double lhs = 64.0 * l * l * l;
  return mk("cube_64", k, lhs, kBigD * kk, lhs <= kBigD * kk);
}

InequalityCheck eval_exists_s(long long k) {
  const double kk = static_cast<double>(k);
  const double lhs = std::log(kk * kBigD) + 1.0;
  const double rhs = kBigD * std::exp(-2.0 / kk);
  return mk("small_k_window", k, lhs, rhs, lhs < rhs);
}

InequalityCheck eval_entails_1e5(long long k) {
  const double kk = static_cast<double>(k);
  const double lhs = 2.0 * kBigD * (std::log(kk * kBigD) + 7.0 / 8.0);
  const double l = std::log(kk * kBigD) + 2.0;
  return mk("entails_1e5", k, lhs, l * l, lhs <= l * l);
}

InequalityCheck eval_tau_upper(long long k) {
  const auto t = tau(ExponentModel::transcendental(static_cast<int>(k)));
  return mk("tau_upper", k, t.value, 1.0 / (4.0 * static_cast<double>(k)),
            t.value <= 1.0 / (4.0 * static_cast<double>(k)));
}

InequalityCheck eval_tau_lower(long long k) {
  const auto t = tau(ExponentModel::transcendental(static_cast<int>(k)));
  return mk("tau_lower", k, t.value, 1.0 / (kBigD * static_cast<double>(k)),
            t.value >= 1.0 / (kBigD * static_cast<double>(k)));
}

InequalityCheck eval_g0_vs_c1bound(long long k) {
  const double bound = static_cast<double>(k) * (std::log(static_cast<double>(k)) + 4.20032);
  const double g = g0(ExponentModel::transcendental(static_cast<int>(k)));
  return mk("g0_within_c1_bound", k, g, bound, bound >= g);
}

InequalityCheck eval_delta_row(long long k) {
  const auto& row = stored_delta_rows().at(static_cast<int>(k));
  const auto s_max = static_cast<long long>(
      std::floor(k * (std::log(static_cast<double>(k)) + 4.20032)));
  bool ok = true;
  double worst = 0.0;
  for (long long s = row.w; s <= s_max; ++s) {
    const double v = static_cast<double>(s) * row.delta_wm1;
    worst = std::max(worst, v);
    if (!(v < static_cast<double>(k))) ok = false;
  }
  return mk("stored_delta_row", k, worst, static_cast<double>(k), ok);
}

const LedgerItem kLedger[] = {
    {"tau_upper", 2, 200, eval_tau_upper},
    {"tau_lower", 21, 200, eval_tau_lower},
    {"g0_within_c1_bound", 21, 200, eval_g0_vs_c1bound},
    {"two_extra_vars_gap", 100, -1, eval_close_gap},
    {"logkd_vs_quarter", 100, -1, eval_logkd_quarter},
    {"cube_1053", 200, -1, eval_cube_1053},
    {"one_tenth_margin", 200, -1, eval_vax},
    {"d0_quarter", 100000, -1, eval_d0_quarter},
    {"restr_500th", 100000, -1, eval_restr},
    {"sq_58383", 100000, -1, eval_sq_58383},
    {"cube_64", 100000, -1, eval_cube_64},
    {"small_k_window", 1, 300, eval_exists_s},
    {"entails_1e5", 100000, -1, eval_entails_1e5},
    {"stored_delta_row", 14, 20, eval_delta_row},
};

}  // namespace

LedgerReport verify_inequalities(long long k_min, long long k_max) {
  if (k_min > k_max) throw ConfigError("verify_inequalities: empty range");
  LedgerReport rep;
  for (const auto& item : kLedger) {
    const long long lo = std::max(k_min, item.k_lo);
    const long long hi = item.k_hi < 0 ? k_max : std::min(k_max, item.k_hi);
    if (lo > hi) continue;
    bool pass = true;
    for (long long k = lo; k <= hi; ++k) {
      auto c = item.eval(k);
      ++rep.checks_run;
      if (!c.passed) {
        pass = false;
        rep.failures.push_back(c);
      }
    }
    rep.items.push_back(std::string(item.name) + " [" + std::to_string(lo) + "," +
                        std::to_string(hi) + "]: " + (pass ? "pass" : "fail"));
    rep.all_passed = rep.all_passed && pass;
  }
  return rep;
}

}  // namespace wlab
