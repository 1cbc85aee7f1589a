#ifndef SCAT_ENGINE_HPP
#define SCAT_ENGINE_HPP

#include "scat/array2d.hpp"
#include "scat/fft.hpp"

namespace scat {

/// A filter held as its (real-valued) frequency response on the full grid.
using FreqFilter = Array2D<double>;

/// Circular convolution computed as inverse-FFT(FFT(signal) * filter).
ComplexImage fft_convolve(const RealImage& signal, const FreqFilter& filter_freq);
ComplexImage fft_convolve(const ComplexImage& signal, const FreqFilter& filter_freq);

/// Pointwise |z|. Output is real and nonnegative.
RealImage modulus(const ComplexImage& signal);

/// Keep every step-th sample in each dimension. step must be a power of two
/// dividing both dimensions.
RealImage subsample(const RealImage& signal, int step);

/// Smallest power of two >= n.
int next_pow2(int n);

/// Mirror-pad to a target square grid. The original image sits at the
/// top-left corner; the margin on the high side holds the half-sample
/// mirror extension (..., x[n-2], x[n-1] | x[n-1], x[n-2], ...). target must
/// be >= both dimensions.
RealImage mirror_pad(const RealImage& img, int target);

/// Circular shift: out(r, c) = in(r - dr mod rows, c - dc mod cols).
RealImage circular_shift(const RealImage& img, int dr, int dc);

}  // namespace scat

#endif
