#ifndef SCAT_FFT_HPP
#define SCAT_FFT_HPP

#include <memory>

#include "scat/array2d.hpp"

namespace scat {

/// Complex 2-D FFT for one fixed shape, backed by FFTW.
///
/// Normalization: forward is unnormalized, inverse is scaled by 1/(rows*cols),
/// so inverse(forward(x)) == x and Parseval reads ||FFT(f)||^2 = N*||f||^2.
///
/// Plan creation is serialized internally; execution is safe from the owning
/// thread. Workers that transform concurrently each hold their own Fft2D.
class Fft2D {
public:
  Fft2D(int rows, int cols);
  ~Fft2D();
  Fft2D(const Fft2D&) = delete;
  Fft2D& operator=(const Fft2D&) = delete;

  int rows() const;
  int cols() const;

  ComplexImage forward(const ComplexImage& in) const;
  ComplexImage forward(const RealImage& in) const;
  ComplexImage inverse(const ComplexImage& in) const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace scat

#endif
