/// @file fft.hpp
/// @brief Thin FFTW wrapper: whole-grid and per-axis complex transforms.
///
/// Transforms are unnormalized in the forward direction; the inverse helpers
/// divide by the transformed length. Plans are cached per shape and built with
/// FFTW_ESTIMATE so repeated calls are bit-reproducible.

#pragma once

#include "onsager/grid.hpp"

#include <complex>
#include <vector>

namespace onsager {

using Complex = std::complex<double>;
using ComplexField = std::vector<Complex>;

/// Forward DFT over every axis of the grid (exponent sign -1).
ComplexField fft_forward(const Grid& grid, const ScalarField& f);
ComplexField fft_forward(const Grid& grid, const ComplexField& f);

/// Inverse DFT over every axis, scaled by 1/size; real part returned.
ScalarField fft_inverse_real(const Grid& grid, const ComplexField& fhat);

/// In-place unnormalized 1D DFT of every line along `axis`; sign is -1 or +1.
void fft_axis(const Grid& grid, ComplexField& data, int axis, int sign);

/// Signed mode number in (-n/2, n/2] for storage index m.
long signed_mode(std::size_t m, std::size_t n);

/// Angular wavenumber 2*pi*m'/L of storage index m along a periodic axis.
double wavenumber(const Grid& grid, int axis, std::size_t m);

/// True when m is the unpaired Nyquist index of an even-length axis.
inline bool is_nyquist(std::size_t m, std::size_t n) { return n % 2 == 0 && m == n / 2; }

/// Spectral first derivative along a periodic axis (Nyquist mode dropped).
ScalarField spectral_derivative(const Grid& grid, const ScalarField& f, int axis);

} // namespace onsager
