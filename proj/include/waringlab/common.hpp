#ifndef WARINGLAB_COMMON_HPP
#define WARINGLAB_COMMON_HPP

#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wlab {

using cplx = std::complex<double>;

// Error taxonomy mapped to CLI exit codes: config=2, budget=3, invariant=4.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& m) : std::runtime_error(m) {}
};
struct BudgetError : std::runtime_error {
  explicit BudgetError(const std::string& m) : std::runtime_error(m) {}
};
struct InvariantError : std::runtime_error {
  explicit InvariantError(const std::string& m) : std::runtime_error(m) {}
};

// Memory budget in bytes, WLAB_MEM_BUDGET env override. Default 2 GiB.
std::uint64_t memory_budget();
void require_budget(std::uint64_t bytes, const char* what);

std::uint64_t splitmix64(std::uint64_t z);

// Counter-based uniform draw keyed by (seed, key); order-independent.
double uniform01(std::uint64_t seed, std::uint64_t key);

// Fractional part of alpha*n computed through the integer decomposition of
// the double alpha, so e(frac_mul(a,n)) is exact for integer frequencies n.
double frac_mul(double alpha, std::uint64_t n);

cplx e2pi(double phase);

// x^k with overflow guard; throws BudgetError past 2^63.
std::uint64_t ipow_u64(std::uint64_t x, unsigned k);

double pairwise_sum(const std::vector<double>& v);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
};
LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

std::vector<std::uint32_t> primes_upto(std::uint32_t n);

int hardware_workers();

// Chunked deterministic parallel map: fn(chunk) runs on [chunk*chunk_size,
// min((chunk+1)*chunk_size, n)); results must be deposited per chunk index.
void parallel_chunks(std::size_t n, std::size_t chunk_size, int workers,
                     const std::function<void(std::size_t chunk_begin, std::size_t begin,
                                              std::size_t end)>& fn);

}  // namespace wlab

#endif
