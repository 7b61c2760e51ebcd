#include "waringlab/arcs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "waringlab/common.hpp"

namespace wlab {

namespace {

double qerr(double alpha, std::int64_t a, std::int64_t q) {
  return std::abs(static_cast<double>(q) * alpha - static_cast<double>(a));
}

}  // namespace

RationalApprox best_approx(double alpha, double big_q) {
  if (alpha < 0.0 || alpha >= 1.0) throw ConfigError("best_approx: alpha in [0,1) required");
  if (big_q < 1.0) throw ConfigError("best_approx: Q >= 1 required");
  const auto qmax = static_cast<std::int64_t>(std::floor(big_q));
  RationalApprox best{0, 1, qerr(alpha, 0, 1)};
  auto consider = [&](std::int64_t a, std::int64_t q) {
    if (q < 1 || q > qmax || a < 0 || a > q) return;
    if (std::gcd(a, q) != 1) return;
    const double e = qerr(alpha, a, q);
    if (e < best.err || (e == best.err && q < best.q)) best = {a, q, e};
  };
  consider(1, 1);
  // convergents p_m/q_m of alpha plus the intermediate fractions of the next level
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;  // seeds at indices -2 and -1
  double x = alpha;
  for (int it = 0; it < 64; ++it) {
    const double fl = std::floor(x);
    if (fl * static_cast<double>(q1) + static_cast<double>(q0) > static_cast<double>(qmax)) {
      // intermediate fractions t*p1+p0 / t*q1+q0 with the largest t <= qmax
      if (q1 > 0) {
        const std::int64_t t = (qmax - q0) / q1;
        if (t >= 1) consider(t * p1 + p0, t * q1 + q0);
      }
      break;
    }
    const auto a0 = static_cast<std::int64_t>(fl);
    const std::int64_t p2 = a0 * p1 + p0;
    const std::int64_t q2 = a0 * q1 + q0;
    consider(p2, q2);
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const double frac = x - fl;
    if (frac < 1e-18) break;  // alpha is (numerically) rational, expansion ended
    x = 1.0 / frac;
  }
  return best;
}

ArcLabel classify(double alpha, double big_q, double p, int k) {
  if (big_q < 1.0 || p < 1.0) throw ConfigError("classify: Q >= 1 and P >= 1 required");
  ArcLabel out;
  const auto ap = best_approx(alpha, big_q);
  const double halfwidth = big_q * std::pow(p, -static_cast<double>(k));
  if (ap.err <= halfwidth) {
    out.major = true;
    out.approx = ap;
  }
  return out;
}

bool in_truncated(double alpha, double big_q, double p, int k) {
  if (!classify(alpha, big_q, p, k).major) return false;
  if (big_q / 2.0 < 1.0) return true;  // M(Q/2) empty below q = 1
  return !classify(alpha, big_q / 2.0, p, k).major;
}

std::optional<RationalApprox> in_log_arcs(double alpha, double p, int k) {
  const double t = std::pow(std::log(p), 1.0 / 8.0);
  const double width = t * std::pow(p, -static_cast<double>(k));
  const auto qmax = static_cast<std::int64_t>(std::floor(t));
  RationalApprox best;
  bool found = false;
  for (std::int64_t q = 1; q <= qmax; ++q) {
    const auto a = static_cast<std::int64_t>(std::llround(alpha * static_cast<double>(q)));
    if (a < 0 || a > q || std::gcd(a, q) != 1) continue;
    const double err = std::abs(alpha - static_cast<double>(a) / static_cast<double>(q));
    if (err <= width && (!found || err < best.err)) {
      best = {a, q, qerr(alpha, a, q)};
      found = true;
    }
  }
  if (!found) return std::nullopt;
  return best;
}

MajorMeasure measure_major(double big_q, double p, int k) {
  if (big_q < 1.0 || p < 1.0) throw ConfigError("measure_major: Q >= 1 and P >= 1 required");
  MajorMeasure out;
  const double pk = std::pow(p, static_cast<double>(k));
  const auto qmax = static_cast<std::int64_t>(std::floor(big_q));
  out.overlapped = big_q > 0.5 * std::pow(p, k / 2.0);
  if (!out.overlapped) {
    double total = 0.0;
    for (std::int64_t q = 1; q <= qmax; ++q) {
      // phi(q) arcs of width 2Q/(q P^k); a=0,q merge across the torus into one
      std::int64_t phi = q, m = q;
      for (std::int64_t d = 2; d * d <= m; ++d)
        if (m % d == 0) {
          phi -= phi / d;
          while (m % d == 0) m /= d;
        }
      if (m > 1) phi -= phi / m;
      total += static_cast<double>(phi) * 2.0 * big_q / (static_cast<double>(q) * pk);
    }
    out.measure = total;
    return out;
  }
  // overlap regime: collect arcs and merge intervals on the torus
  require_budget(static_cast<std::uint64_t>(big_q * big_q * 2.0 * sizeof(double) * 2),
                 "measure_major interval union");
  std::vector<std::pair<double, double>> iv;
  for (std::int64_t q = 1; q <= qmax; ++q) {
    const double w = big_q / (static_cast<double>(q) * pk);
    for (std::int64_t a = 0; a <= q; ++a) {
      if (std::gcd(a, q) != 1) continue;
      const double c = static_cast<double>(a) / static_cast<double>(q);
      iv.emplace_back(std::max(0.0, c - w), std::min(1.0, c + w));
    }
  }
  std::sort(iv.begin(), iv.end());
  double total = 0.0, cur_lo = 0.0, cur_hi = -1.0;
  for (const auto& [lo, hi] : iv) {
    if (hi <= cur_hi) continue;
    if (lo > cur_hi) {
      if (cur_hi > cur_lo) total += cur_hi - cur_lo;
      cur_lo = lo;
      cur_hi = hi;
    } else {
      cur_hi = hi;
    }
  }
  if (cur_hi > cur_lo) total += cur_hi - cur_lo;
  out.measure = total;
  return out;
}

std::vector<ArcShell> dyadic_cover(double big_q, double p, int k) {
  if (big_q < 1.0 || p < 1.0) throw ConfigError("dyadic_cover: Q >= 1 and P >= 1 required");
  const double top = std::pow(p, k / 2.0);
  const auto j_q = static_cast<long long>(std::ceil(std::log2(std::max(1.0, top / big_q))));
  std::vector<ArcShell> shells;
  for (long long j = 0; j <= j_q; ++j) shells.push_back({std::ldexp(top, static_cast<int>(-j))});
  return shells;
}

double upsilon(double alpha, double p, int k) {
  const double q_half = 0.5 * std::pow(p, k / 2.0);
  if (q_half < 1.0) return 0.0;
  const auto lab = classify(alpha, q_half, p, k);
  if (!lab.major) return 0.0;
  const double q = static_cast<double>(lab.approx.q);
  const double offset = std::abs(alpha - static_cast<double>(lab.approx.a) / q);
  const double pk = std::pow(p, static_cast<double>(k));
  return 1.0 / (q * q * (1.0 + pk * offset));
}

}  // namespace wlab
