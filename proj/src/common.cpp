#include "waringlab/common.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace wlab {

std::uint64_t memory_budget() {
  static const std::uint64_t v = [] {
    if (const char* env = std::getenv("WLAB_MEM_BUDGET")) {
      char* end = nullptr;
      unsigned long long b = std::strtoull(env, &end, 10);
      if (end != env && b > 0) return static_cast<std::uint64_t>(b);
    }
    return std::uint64_t(2) << 30;
  }();
  return v;
}

void require_budget(std::uint64_t bytes, const char* what) {
  if (bytes > memory_budget())
    throw BudgetError(std::string(what) + ": needs " + std::to_string(bytes) +
                      " bytes, budget " + std::to_string(memory_budget()));
}

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double uniform01(std::uint64_t seed, std::uint64_t key) {
  std::uint64_t z = splitmix64(seed ^ (key * 0xD1342543DE82EF95ULL + 0x2545F4914F6CDD1DULL));
  z = splitmix64(z + key);
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

double frac_mul(double alpha, std::uint64_t n) {
  if (n == 0 || alpha == 0.0) return 0.0;
  const bool neg = alpha < 0.0;
  double a = std::abs(alpha);
  int e;
  const double mant = std::frexp(a, &e);  // a = mant*2^e, mant in [0.5,1)
  const auto m = static_cast<std::uint64_t>(std::ldexp(mant, 53));  // exact 53-bit integer
  const int shift = 53 - e;  // a = m / 2^shift
  double f;
  if (shift <= 0) {
    // a is an integer (times a power of two >= 1): a*n is an integer
    f = 0.0;
  } else if (shift >= 120) {
    // a*n < 2^{64-120+53} << 1, direct product is already exact enough
    f = a * static_cast<double>(n);
  } else {
    const unsigned __int128 prod = static_cast<unsigned __int128>(m) * n;
    const unsigned __int128 mask = (static_cast<unsigned __int128>(1) << shift) - 1;
    f = static_cast<double>(prod & mask) * std::ldexp(1.0, -shift);
  }
  if (neg && f != 0.0) f = 1.0 - f;
  return f;
}

cplx e2pi(double phase) {
  const double t = 6.283185307179586476925286766559 * phase;
  return {std::cos(t), std::sin(t)};
}

std::uint64_t ipow_u64(std::uint64_t x, unsigned k) {
  unsigned __int128 r = 1;
  for (unsigned i = 0; i < k; ++i) {
    r *= x;
    if (r > (static_cast<unsigned __int128>(1) << 63))
      throw BudgetError("ipow_u64: " + std::to_string(x) + "^" + std::to_string(k) +
                        " exceeds 2^63");
  }
  return static_cast<std::uint64_t>(r);
}

double pairwise_sum(const std::vector<double>& v) {
  // fixed tree order -> result independent of traversal scheduling
  std::function<double(std::size_t, std::size_t)> rec = [&](std::size_t lo,
                                                            std::size_t hi) -> double {
    if (hi - lo <= 8) {
      double s = 0.0;
      for (std::size_t i = lo; i < hi; ++i) s += v[i];
      return s;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    return rec(lo, mid) + rec(mid, hi);
  };
  return v.empty() ? 0.0 : rec(0, v.size());
}

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw ConfigError("fit_line: need >= 2 points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double det = n * sxx - sx * sx;
  if (det == 0.0) throw ConfigError("fit_line: degenerate abscissae");
  LinearFit f;
  f.slope = (n * sxy - sx * sy) / det;
  f.intercept = (sy - f.slope * sx) / n;
  return f;
}

std::vector<std::uint32_t> primes_upto(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  if (n < 2) return out;
  std::vector<bool> comp(n + 1, false);
  for (std::uint32_t p = 2; p <= n; ++p) {
    if (!comp[p]) {
      out.push_back(p);
      for (std::uint64_t q = static_cast<std::uint64_t>(p) * p; q <= n; q += p) comp[q] = true;
    }
  }
  return out;
}

int hardware_workers() {
  const unsigned h = std::thread::hardware_concurrency();
  return h == 0 ? 1 : static_cast<int>(h);
}

void parallel_chunks(std::size_t n, std::size_t chunk_size, int workers,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
  if (n == 0) return;
  if (chunk_size == 0) chunk_size = 1;
  const std::size_t nchunks = (n + chunk_size - 1) / chunk_size;
  if (workers <= 1 || nchunks <= 1) {
    for (std::size_t c = 0; c < nchunks; ++c)
      fn(c, c * chunk_size, std::min(n, (c + 1) * chunk_size));
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= nchunks) break;
      fn(c, c * chunk_size, std::min(n, (c + 1) * chunk_size));
    }
  };
  std::vector<std::thread> pool;
  const int nw = std::min<std::size_t>(static_cast<std::size_t>(workers), nchunks);
  pool.reserve(nw);
  for (int i = 0; i < nw; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

}  // namespace wlab
