#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace amalgam::detail {

enum class FftSign { forward = -1, backward = 1 };

// Unnormalized in-place DFT over an n-dimensional cube of side N (row-major).
void fft_cube(std::complex<double>* data, int n, std::size_t N, FftSign sign);

// Unnormalized in-place 1-D DFT of arbitrary length.
void fft_1d(std::complex<double>* data, std::size_t len, FftSign sign);

} // namespace amalgam::detail
