#include "waringlab/moments.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "waringlab/arcs.hpp"
#include "waringlab/constants.hpp"
#include "waringlab/fft.hpp"

namespace wlab {

CoefficientVector CoefficientVector::from_table(const FrequencyTable& t) {
  CoefficientVector c;
  c.freqs = t.freqs;
  c.weights = t.weights;
  return c;
}

CoefficientVector convolve(const CoefficientVector& a, const CoefficientVector& b) {
  if (static_cast<std::uint64_t>(a.freqs.size()) * b.freqs.size() > 200000000ULL)
    throw BudgetError("sparse convolve: term product too large");
  std::unordered_map<std::uint64_t, double> acc;
  acc.reserve(a.freqs.size() * 2);
  for (std::size_t i = 0; i < a.freqs.size(); ++i)
    for (std::size_t j = 0; j < b.freqs.size(); ++j)
      acc[a.freqs[i] + b.freqs[j]] += a.weights[i] * b.weights[j];
  CoefficientVector out;
  out.freqs.reserve(acc.size());
  for (const auto& [f, _] : acc) out.freqs.push_back(f);
  std::sort(out.freqs.begin(), out.freqs.end());
  out.weights.reserve(acc.size());
  for (auto f : out.freqs) out.weights.push_back(acc[f]);
  return out;
}

namespace {

constexpr std::uint64_t kDenseCutoff = std::uint64_t(1) << 26;

double moment_dense(const FrequencyTable& table, unsigned w) {
  const std::uint64_t len = table.max_freq * w + 1;
  std::vector<double> c(static_cast<std::size_t>(table.max_freq) + 1, 0.0);
  for (std::size_t i = 0; i < table.freqs.size(); ++i)
    c[static_cast<std::size_t>(table.freqs[i])] += table.weights[i];
  const auto cw = self_convolve_fft(c, w, static_cast<std::size_t>(len));
  std::vector<double> sq(cw.size());
  for (std::size_t i = 0; i < cw.size(); ++i) sq[i] = cw[i] * cw[i];
  return pairwise_sum(sq);
}

double moment_sparse(const FrequencyTable& table, unsigned w) {
  CoefficientVector acc = CoefficientVector::from_table(table);
  const CoefficientVector base = acc;
  for (unsigned i = 1; i < w; ++i) acc = convolve(acc, base);
  std::vector<double> sq(acc.weights.size());
  for (std::size_t i = 0; i < acc.weights.size(); ++i) sq[i] = acc.weights[i] * acc.weights[i];
  return pairwise_sum(sq);
}

}  // namespace

double exact_even_moment(const FrequencyTable& table, unsigned w) {
  if (w < 1) throw ConfigError("exact_even_moment: w >= 1 required");
  if (table.freqs.empty()) return 0.0;
  const std::uint64_t len = table.max_freq * static_cast<std::uint64_t>(w) + 1;
  const std::uint64_t fft_bytes = 4 * len * sizeof(cplx);  // transform plus padding headroom
  if (table.max_freq * w <= kDenseCutoff && fft_bytes <= memory_budget())
    return moment_dense(table, w);
  return moment_sparse(table, w);
}

QuadMomentResult quad_moment(const WeylSumSpec& spec, double t, ArcSelection sel,
                             std::size_t grid_points, int workers) {
  if (t < 2.0) throw ConfigError("quad_moment: t >= 2 required");
  if (grid_points < (std::size_t(1) << 10))
    throw ConfigError("quad_moment: grid_points >= 2^10 required");
  QuadMomentResult out;
  if (sel.kind != ArcKind::kFull) {
    const double narrowest = 2.0 * sel.q * std::pow(spec.p, -static_cast<double>(spec.k)) / sel.q;
    out.grid_warning = 1.0 / static_cast<double>(grid_points) > narrowest;
  }
  const auto table = frequency_table(spec);
  const auto vals = table->eval_grid(grid_points, workers);
  const double inv_n = 1.0 / static_cast<double>(grid_points);
  // fixed-size chunks with an ordered pairwise reduction: scheduling-independent
  constexpr std::size_t kChunk = 8192;
  const std::size_t nchunks = (grid_points + kChunk - 1) / kChunk;
  std::vector<double> partial(nchunks, 0.0);
  parallel_chunks(grid_points, kChunk, workers, [&](std::size_t c, std::size_t lo, std::size_t hi) {
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      const double alpha = (static_cast<double>(i) + 0.5) * inv_n;
      bool member = true;
      switch (sel.kind) {
        case ArcKind::kFull: break;
        case ArcKind::kMajor: member = classify(alpha, sel.q, spec.p, spec.k).major; break;
        case ArcKind::kTruncated: member = in_truncated(alpha, sel.q, spec.p, spec.k); break;
        case ArcKind::kMinor: member = !classify(alpha, sel.q, spec.p, spec.k).major; break;
      }
      if (!member) continue;
      acc += std::pow(std::norm(vals[i]), t * 0.5);
    }
    partial[c] = acc;
  });
  out.value = pairwise_sum(partial) * inv_n;
  return out;
}

SlopeProbe bound_probe(ProbeKind kind, int k, int s, double t,
                       const std::vector<double>& p_values, double theta,
                       std::size_t grid_points, int workers) {
  if (p_values.size() < 2) throw ConfigError("bound_probe: need >= 2 P values");
  SlopeProbe probe;
  const auto model = ExponentModel::transcendental(k);
  if (kind == ProbeKind::kPruning) {
    // integral of Upsilon^{3/2} over M(Q1)\M(Q0) against log Q0, fixed P = max
    const double p = p_values.back();
    const double q1 = 0.5 * std::pow(p, k / 2.0);
    for (auto q0 : p_values) {  // abscissa doubles as the Q0 grid here
      if (q0 >= q1) continue;
      std::vector<double> partial((grid_points + 8191) / 8192, 0.0);
      parallel_chunks(grid_points, 8192, workers, [&](std::size_t c, std::size_t lo, std::size_t hi) {
        double acc = 0.0;
        for (std::size_t i = lo; i < hi; ++i) {
          const double alpha = (static_cast<double>(i) + 0.5) / static_cast<double>(grid_points);
          if (classify(alpha, q0, p, k).major) continue;
          const double u = upsilon(alpha, p, k);
          if (u > 0.0) acc += std::pow(u, 1.5);
        }
        partial[c] = acc;
      });
      const double integral = pairwise_sum(partial) / static_cast<double>(grid_points);
      if (integral <= 0.0) continue;
      probe.abscissa.push_back(std::log(q0));
      probe.log_moment.push_back(std::log(integral));
    }
    probe.predicted = 1.0 - 1.5;  // Q0^{1-r} with r = 3/2
  } else {
    for (auto p : p_values) {
      WeylSumSpec spec{k, s, p, std::sqrt(p), WeylVariant::kDyadic};
      const double q = std::pow(p, theta);
      ArcSelection sel;
      sel.q = std::max(1.0, q);
      switch (kind) {
        case ProbeKind::kMajor: sel.kind = ArcKind::kMajor; break;
        case ProbeKind::kTruncated: sel.kind = ArcKind::kTruncated; break;
        case ProbeKind::kMinor: sel.kind = ArcKind::kMinor; break;
        default: break;
      }
      const double m = quad_moment(spec, t, sel, grid_points, workers).value;
      if (m <= 0.0) continue;
      probe.abscissa.push_back(std::log(p));
      probe.log_moment.push_back(std::log(m));
    }
    const double kk = k, ss = s;
    const double base = t * kk / ss - kk;
    switch (kind) {
      case ProbeKind::kMajor:
        probe.predicted = base + 2.0 * model.delta_2s(t / 2.0) * theta / kk;
        break;
      case ProbeKind::kTruncated:
        probe.predicted = base + 2.0 * delta_star(model, s, t) * theta / kk;
        break;
      case ProbeKind::kMinor:
        probe.predicted = base - theta / (53.0 * kk);
        break;
      default: break;
    }
  }
  if (probe.abscissa.size() >= 2) probe.slope = fit_line(probe.abscissa, probe.log_moment).slope;
  return probe;
}

}  // namespace wlab
