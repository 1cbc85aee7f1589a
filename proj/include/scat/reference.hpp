#ifndef SCAT_REFERENCE_HPP
#define SCAT_REFERENCE_HPP

#include "scat/scattering.hpp"

namespace scat::reference {

// Serial reference implementations. Deliberately straightforward
// (spatial-domain sums, no FFT, no parallelism); the test suites and the
// benchmark compare the production kernels against these.

/// Direct O(N^2) circular convolution of two equal-shape signals.
ComplexImage direct_convolve(const ComplexImage& signal, const ComplexImage& kernel);
ComplexImage direct_convolve(const RealImage& signal, const RealImage& kernel);

/// Spatial kernel of a frequency-domain filter (inverse DFT by direct
/// summation).
ComplexImage spatial_kernel(const FreqFilter& filter_freq);

/// Full scattering transform computed with direct convolutions only.
/// Matches ScatteringTransform (exact cascade, no intermediate
/// subsampling) up to FFT round-off.
ScatteringVector scatter(const RealImage& image, const ScatteringConfig& config);

}  // namespace scat::reference

#endif
