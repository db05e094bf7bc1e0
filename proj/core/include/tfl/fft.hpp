#pragma once

#include <complex>
#include <vector>

namespace tfl {

/// In-place complex DFT of power-of-two length.
/// sign = -1: forward (sum x_j e^{-2 pi i jk/N}); sign = +1: inverse WITHOUT
/// the 1/N normalization.  Plans are cached per (length, sign) and the cache
/// is safe under concurrent callers.
void fft_inplace(std::vector<std::complex<double>>& data, int sign);

/// Forward then backward round trip helpers with 1/N applied on the inverse.
void fft_forward(std::vector<std::complex<double>>& data);
void fft_inverse(std::vector<std::complex<double>>& data);

/// Smallest power of two >= n.
std::size_t next_pow2(std::size_t n);

}  // namespace tfl
