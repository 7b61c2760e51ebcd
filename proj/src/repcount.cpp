#include "waringlab/repcount.hpp"

#include <algorithm>
#include <cmath>

#include "waringlab/constants.hpp"
#include "waringlab/singular.hpp"
#include "waringlab/smooth.hpp"

namespace wlab {

void conv_slot_into(std::vector<double>& arr, const Slot& slot) {
  const std::size_t len = arr.size();
  std::vector<double> out(len, 0.0);
  for (std::size_t t = 0; t < slot.values.size(); ++t) {
    const std::uint64_t off = slot.values[t];
    if (off >= len) continue;
    const double w = slot.weights[t];
    const double* src = arr.data();
    double* dst = out.data() + off;
    const std::size_t m = len - static_cast<std::size_t>(off);
    for (std::size_t i = 0; i < m; ++i) dst[i] += w * src[i];
  }
  arr = std::move(out);
}

std::vector<double> ordered_tuple_array(const std::vector<Slot>& slots, std::size_t len) {
  require_budget(2 * len * sizeof(double), "ordered_tuple_array");
  std::vector<double> arr(len, 0.0);
  arr[0] = 1.0;
  for (const auto& slot : slots) conv_slot_into(arr, slot);
  return arr;
}

double combine_halves_at(const std::vector<Slot>& slots, std::uint64_t n) {
  const std::size_t len = static_cast<std::size_t>(n) + 1;
  const std::size_t s1 = (slots.size() + 1) / 2;
  const std::vector<Slot> first(slots.begin(), slots.begin() + static_cast<std::ptrdiff_t>(s1));
  const std::vector<Slot> second(slots.begin() + static_cast<std::ptrdiff_t>(s1), slots.end());
  const auto a = ordered_tuple_array(first, len);
  if (second.empty()) return a[n];
  const auto b = ordered_tuple_array(second, len);
  std::vector<double> terms;
  terms.reserve(len);
  for (std::size_t m = 0; m < len; ++m)
    if (a[m] != 0.0 && b[len - 1 - m] != 0.0) terms.push_back(a[m] * b[len - 1 - m]);
  return pairwise_sum(terms);
}

namespace {

// integer partitions of s with the set-partition count and Moebius sign
struct Shape {
  std::vector<int> parts;
  double coefficient;  // (#set partitions of this shape) * prod (-1)^{m-1}(m-1)!
};

void gen_partitions(int remaining, int max_part, std::vector<int>& cur,
                    std::vector<std::vector<int>>& out) {
  if (remaining == 0) {
    out.push_back(cur);
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    cur.push_back(part);
    gen_partitions(remaining - part, part, cur, out);
    cur.pop_back();
  }
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

std::vector<Shape> partition_shapes(int s) {
  std::vector<std::vector<int>> parts;
  std::vector<int> cur;
  gen_partitions(s, s, cur, parts);
  std::vector<Shape> shapes;
  for (auto& p : parts) {
    Shape sh;
    sh.parts = p;
    double denom = 1.0;
    for (int m : p) denom *= factorial(m);
    int run = 1;
    for (std::size_t i = 1; i <= p.size(); ++i) {
      if (i < p.size() && p[i] == p[i - 1]) {
        ++run;
      } else {
        denom *= factorial(run);
        run = 1;
      }
    }
    double coef = factorial(s) / denom;  // number of set partitions of shape p
    for (int m : p) coef *= (m % 2 == 0 ? -1.0 : 1.0) * factorial(m - 1);
    sh.coefficient = coef;
    shapes.push_back(std::move(sh));
  }
  return shapes;
}

Slot powered_slot(const Slot& slot, int m, std::size_t len) {
  Slot out;
  for (std::size_t i = 0; i < slot.values.size(); ++i) {
    const std::uint64_t v = slot.values[i] * static_cast<std::uint64_t>(m);
    if (v >= len) continue;
    out.values.push_back(v);
    out.weights.push_back(std::pow(slot.weights[i], m));
  }
  return out;
}

}  // namespace

std::vector<double> distinct_tuple_array(const Slot& slot, int s, std::size_t len) {
  if (s < 1 || s > 10) throw ConfigError("distinct_tuple_array: 1 <= s <= 10 required");
  require_budget(3 * len * sizeof(double), "distinct_tuple_array");
  std::vector<double> total(len, 0.0);
  for (const auto& shape : partition_shapes(s)) {
    std::vector<double> arr(len, 0.0);
    arr[0] = 1.0;
    for (int m : shape.parts) conv_slot_into(arr, powered_slot(slot, m, len));
    for (std::size_t i = 0; i < len; ++i) total[i] += shape.coefficient * arr[i];
  }
  return total;
}

namespace {

Slot build_slot(const RepQuery& q, bool tilde, bool unit_weights) {
  const double p = std::pow(2.0 * static_cast<double>(q.big_n), 1.0 / q.k);
  const double wexp = -1.0 + static_cast<double>(q.k) / q.s;
  double lo = q.lower_bound;
  if (tilde) lo = std::max(lo, p_minus(q.k, q.s, p));
  Slot slot;
  const auto xmax = static_cast<std::uint64_t>(std::floor(p));
  if (q.self_smooth) {
    for (std::uint64_t x = 1; x <= xmax; ++x) {
      if (static_cast<double>(x) <= lo || !is_self_smooth(x, q.eta)) continue;
      slot.values.push_back(ipow_u64(x, static_cast<unsigned>(q.k)));
      slot.weights.push_back(unit_weights ? 1.0 : std::pow(static_cast<double>(x), wexp));
    }
  } else {
    SmoothSet set(p, q.r);
    for (auto x : set.members()) {
      if (static_cast<double>(x) <= lo) continue;
      slot.values.push_back(ipow_u64(x, static_cast<unsigned>(q.k)));
      slot.weights.push_back(unit_weights ? 1.0 : std::pow(static_cast<double>(x), wexp));
    }
  }
  return slot;
}

}  // namespace

RepResult rep_count(const RepQuery& q) {
  if (q.k < 1 || q.s < 1 || q.big_n < 1) throw ConfigError("rep_count: bad query");
  if (q.n < q.big_n || q.n > 2 * q.big_n)
    throw ConfigError("rep_count: n in [N, 2N] required");
  RepResult out;
  if (q.n < static_cast<std::uint64_t>(q.s)) return out;  // each x_i >= 1
  if (q.distinct) {
    if (q.j_tilde != 0)
      throw ConfigError("rep_count: distinctness requires homogeneous slots");
    const Slot w = build_slot(q, false, false);
    const Slot c = build_slot(q, false, true);
    const std::size_t len = static_cast<std::size_t>(q.n) + 1;
    out.weighted = distinct_tuple_array(w, q.s, len)[q.n];
    out.tuple_count = std::llround(distinct_tuple_array(c, q.s, len)[q.n]);
    return out;
  }
  std::vector<Slot> wslots, cslots;
  for (int i = 0; i < q.s; ++i) {
    const bool tilde = i < q.j_tilde;
    wslots.push_back(build_slot(q, tilde, false));
    cslots.push_back(build_slot(q, tilde, true));
  }
  out.weighted = combine_halves_at(wslots, q.n);
  out.tuple_count = std::llround(combine_halves_at(cslots, q.n));
  return out;
}

InclusionExclusionReport inclusion_exclusion_check(int k, int s, std::uint64_t n,
                                                   std::uint64_t big_n, double r) {
  InclusionExclusionReport rep;
  const double p = std::pow(2.0 * static_cast<double>(big_n), 1.0 / k);
  const double pmk = std::pow(p_minus(k, s, p), static_cast<double>(k));
  rep.redundancy_ok = static_cast<double>(s) * pmk <= static_cast<double>(big_n) / 2.0 &&
                      static_cast<double>(big_n) / 2.0 < static_cast<double>(n);
  RepQuery q;
  q.k = k;
  q.s = s;
  q.n = n;
  q.big_n = big_n;
  q.r = r;
  rep.lhs = rep_count(q).weighted;
  // incremental partial maps: free slots and tilde slots share one base each
  const std::size_t len = static_cast<std::size_t>(n) + 1;
  require_budget((static_cast<std::uint64_t>(s) + 3) * len * sizeof(double),
                 "inclusion_exclusion_check");
  const Slot free_slot = [&] {
    RepQuery base = q;
    return build_slot(base, false, false);
  }();
  const Slot big_slot = [&] {
    RepQuery base = q;
    return build_slot(base, true, false);
  }();
  std::vector<std::vector<double>> free_pow(static_cast<std::size_t>(s) + 1);
  free_pow[0].assign(len, 0.0);
  free_pow[0][0] = 1.0;
  for (int m = 1; m <= s; ++m) {
    free_pow[m] = free_pow[m - 1];
    conv_slot_into(free_pow[m], free_slot);
  }
  std::vector<double> big(len, 0.0);
  big[0] = 1.0;
  double binom = 1.0;
  double rhs = 0.0;
  for (int j = 1; j <= s; ++j) {
    conv_slot_into(big, big_slot);
    binom = binom * static_cast<double>(s - j + 1) / static_cast<double>(j);
    std::vector<double> terms;
    terms.reserve(len);
    const auto& fr = free_pow[s - j];
    for (std::size_t m = 0; m < len; ++m)
      if (big[m] != 0.0 && fr[len - 1 - m] != 0.0) terms.push_back(big[m] * fr[len - 1 - m]);
    const double rj = pairwise_sum(terms);
    rep.r_j.push_back(rj);
    rhs += (j % 2 == 1 ? 1.0 : -1.0) * binom * rj;
  }
  rep.rhs = rhs;
  return rep;
}

double f_coefficient(int d, const std::vector<int>& dilations, std::uint64_t m,
                     std::uint64_t big_n, int k, int s, double r) {
  if (d < 0 || d >= s) throw ConfigError("f_coefficient: 0 <= d < s required");
  if (dilations.size() != static_cast<std::size_t>(s - d))
    throw ConfigError("f_coefficient: need s-d dilation entries");
  for (auto a : dilations)
    if (a < 1 || a > s) throw ConfigError("f_coefficient: dilations in [1,s]");
  const double p = std::pow(2.0 * static_cast<double>(big_n), 1.0 / k);
  const double pm = p_minus(k, s, p);
  const double wexp = -1.0 + static_cast<double>(k) / s;
  SmoothSet set(p, r);
  std::vector<Slot> slots;
  for (std::size_t i = 0; i < dilations.size(); ++i) {
    Slot slot;
    const double lo = i == 0 ? pm : 0.0;
    for (auto x : set.members()) {
      if (static_cast<double>(x) <= lo) continue;
      const std::uint64_t v =
          ipow_u64(x, static_cast<unsigned>(k)) * static_cast<std::uint64_t>(dilations[i]);
      slot.values.push_back(v);
      slot.weights.push_back(std::pow(static_cast<double>(x), wexp));
    }
    slots.push_back(std::move(slot));
  }
  return combine_halves_at(slots, m);
}

TrendReport rep_vs_asymptotic(int k, int s, double eta, const std::vector<std::uint64_t>& ns,
                              const std::function<double(double)>& phi) {
  TrendReport rep;
  // Delta*_s < 0 under any of: transcendental, zero-tail, Delta_{s-1}=0 table
  bool star_neg = delta_star(ExponentModel::transcendental(k), s, s) < 0.0 ||
                  delta_star(ExponentModel::zero_tail(k), s, s) < 0.0;
  if (!star_neg && s % 2 == 1) {
    const auto tab = ExponentModel::user_table(k, {{(s - 1) / 2, 0.0}});
    star_neg = delta_star(tab, s, s) < 0.0;
  }
  rep.hypothesis_ok = s >= 4 * k + 1 && star_neg;
  for (auto n : ns) {
    TrendRow row;
    row.n = n;
    const std::uint64_t big_n = (n + 1) / 2;
    const double p = std::pow(2.0 * static_cast<double>(big_n), 1.0 / k);
    RepQuery q;
    q.k = k;
    q.s = s;
    q.n = n;
    q.big_n = big_n;
    q.r = std::pow(p, eta);
    row.r_plain = rep_count(q).weighted;
    const double cutoff =
        std::pow(static_cast<double>(n) / phi(static_cast<double>(n)), 1.0 / k);
    RepQuery qphi = q;
    qphi.lower_bound = cutoff;
    row.r_phi = rep_count(qphi).weighted;
    RepQuery qss = qphi;
    qss.self_smooth = true;
    qss.eta = eta;
    row.r_phi_eta = rep_count(qss).weighted;
    SingularOptions opt;
    row.sing = sing_series(n, k, s, SingularRoute::kEulerProduct, opt).value;
    row.c = c_ks(k, s, eta);
    row.ratio = row.r_plain / (row.c * row.sing);
    rep.rows.push_back(row);
  }
  return rep;
}

double rep_in_sequence(std::uint64_t n, int s, const std::vector<std::uint64_t>& powers) {
  if (s < 1) throw ConfigError("rep_in_sequence: s >= 1 required");
  if (powers.empty() || n == 0) return 0.0;
  if (!std::is_sorted(powers.begin(), powers.end()))
    throw ConfigError("rep_in_sequence: sequence must be sorted");
  Slot slot;
  for (auto v : powers) {
    if (v > n) break;
    slot.values.push_back(v);
    slot.weights.push_back(1.0);
  }
  if (slot.values.empty()) return 0.0;
  const std::vector<Slot> slots(static_cast<std::size_t>(s), slot);
  return std::llround(combine_halves_at(slots, n));
}

}  // namespace wlab
