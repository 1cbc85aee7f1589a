#ifndef SCAT_TESTS_SUPPORT_TEST_RNG_HPP
#define SCAT_TESTS_SUPPORT_TEST_RNG_HPP

#include <random>

#include "scat/array2d.hpp"
#include "scat/engine.hpp"
#include "scat/filterbank.hpp"

namespace scat::testing {

inline RealImage random_image(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> dist;
  RealImage img(rows, cols);
  for (double& v : img.data) v = dist(rng);
  return img;
}

inline ComplexImage random_complex(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> dist;
  ComplexImage img(rows, cols);
  for (auto& v : img.data) v = {dist(rng), dist(rng)};
  return img;
}

/// Gaussian-blurred white noise (spatial blur std sigma_b), periodic.
inline RealImage smooth_image(int n, double sigma_b, std::mt19937_64& rng) {
  RealImage noise = random_image(n, n, rng);
  FreqFilter g(n, n);
  for (int r = 0; r < n; ++r) {
    const double w1 = grid_frequency(r, n);
    for (int c = 0; c < n; ++c) {
      const double w2 = grid_frequency(c, n);
      g(r, c) = std::exp(-sigma_b * sigma_b * (w1 * w1 + w2 * w2) / 2.0);
    }
  }
  const ComplexImage out = fft_convolve(noise, g);
  RealImage res(n, n);
  for (std::size_t i = 0; i < res.size(); ++i) res.data[i] = out.data[i].real();
  return res;
}

}  // namespace scat::testing

#endif
