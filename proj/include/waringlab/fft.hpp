#ifndef WARINGLAB_FFT_HPP
#define WARINGLAB_FFT_HPP

#include <cstddef>
#include <vector>

#include "waringlab/common.hpp"

namespace wlab {

// In-place iterative radix-2 transform; a.size() must be a power of two.
void fft(std::vector<cplx>& a, bool inverse);

// Linear convolution of real sequences, truncated to out_len entries.
std::vector<double> convolve_fft(const std::vector<double>& a, const std::vector<double>& b,
                                 std::size_t out_len);

// c^{*w} truncated to out_len entries (w >= 1).
std::vector<double> self_convolve_fft(const std::vector<double>& c, unsigned w,
                                      std::size_t out_len);

}  // namespace wlab

#endif
