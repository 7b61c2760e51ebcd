#include "waringlab/fft.hpp"

#include <cmath>

namespace wlab {

namespace {

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace

void fft(std::vector<cplx>& a, bool inverse) {
  const std::size_t n = a.size();
  if (n == 0 || (n & (n - 1)) != 0) throw ConfigError("fft: size must be a power of two");
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = (inverse ? 2.0 : -2.0) * 3.141592653589793238462643383280 /
                       static_cast<double>(len);
    const cplx wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      cplx w(1.0, 0.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        const cplx u = a[i + j];
        const cplx v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wl;
      }
    }
  }
  if (inverse) {
    const double inv = 1.0 / static_cast<double>(n);
    for (auto& z : a) z *= inv;
  }
}

std::vector<double> convolve_fft(const std::vector<double>& a, const std::vector<double>& b,
                                 std::size_t out_len) {
  if (a.empty() || b.empty() || out_len == 0) return std::vector<double>(out_len, 0.0);
  const std::size_t full = std::min(out_len, a.size() + b.size() - 1);
  const std::size_t n = next_pow2(a.size() + b.size() - 1);
  require_budget(2 * n * sizeof(cplx), "convolve_fft");
  std::vector<cplx> fa(n), fb(n);
  for (std::size_t i = 0; i < a.size(); ++i) fa[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) fb[i] = b[i];
  fft(fa, false);
  fft(fb, false);
  for (std::size_t i = 0; i < n; ++i) fa[i] *= fb[i];
  fft(fa, true);
  std::vector<double> out(out_len, 0.0);
  for (std::size_t i = 0; i < full; ++i) out[i] = fa[i].real();
  return out;
}

std::vector<double> self_convolve_fft(const std::vector<double>& c, unsigned w,
                                      std::size_t out_len) {
  if (w == 0) throw ConfigError("self_convolve_fft: w >= 1");
  if (c.empty() || out_len == 0) return std::vector<double>(out_len, 0.0);
  const std::size_t full = std::min<std::size_t>(out_len, w * (c.size() - 1) + 1);
  const std::size_t n = next_pow2(w * (c.size() - 1) + 1);
  require_budget(n * sizeof(cplx), "self_convolve_fft");
  std::vector<cplx> f(n);
  for (std::size_t i = 0; i < c.size(); ++i) f[i] = c[i];
  fft(f, false);
  for (auto& z : f) {
    cplx p(1.0, 0.0);
    cplx base = z;
    unsigned e = w;
    while (e) {
      if (e & 1) p *= base;
      base *= base;
      e >>= 1;
    }
    z = p;
  }
  fft(f, true);
  std::vector<double> out(out_len, 0.0);
  for (std::size_t i = 0; i < full; ++i) out[i] = f[i].real();
  return out;
}

}  // namespace wlab
