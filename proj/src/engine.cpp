#include "scat/engine.hpp"

#include <cmath>
#include <string>

namespace scat {

namespace {

void check_shapes(int sr, int sc, const FreqFilter& f) {
  if (sr != f.rows || sc != f.cols)
    throw DimensionError("fft_convolve: signal " + std::to_string(sr) + "x" + std::to_string(sc) +
                         " vs filter " + std::to_string(f.rows) + "x" + std::to_string(f.cols));
}

ComplexImage convolve_spectrum(Fft2D& fft, ComplexImage spec, const FreqFilter& filter_freq) {
  for (std::size_t i = 0; i < spec.size(); ++i) spec.data[i] *= filter_freq.data[i];
  return fft.inverse(spec);
}

}  // namespace

ComplexImage fft_convolve(const RealImage& signal, const FreqFilter& filter_freq) {
  check_shapes(signal.rows, signal.cols, filter_freq);
  Fft2D fft(signal.rows, signal.cols);
  return convolve_spectrum(fft, fft.forward(signal), filter_freq);
}

ComplexImage fft_convolve(const ComplexImage& signal, const FreqFilter& filter_freq) {
  check_shapes(signal.rows, signal.cols, filter_freq);
  Fft2D fft(signal.rows, signal.cols);
  return convolve_spectrum(fft, fft.forward(signal), filter_freq);
}

RealImage modulus(const ComplexImage& signal) {
  RealImage out(signal.rows, signal.cols);
  for (std::size_t i = 0; i < signal.size(); ++i) out.data[i] = std::abs(signal.data[i]);
  return out;
}

RealImage subsample(const RealImage& signal, int step) {
  if (step <= 0 || (step & (step - 1)) != 0)
    throw DimensionError("subsample: step must be a positive power of two, got " + std::to_string(step));
  if (signal.rows % step != 0 || signal.cols % step != 0)
    throw DimensionError("subsample: step " + std::to_string(step) + " does not divide " +
                         std::to_string(signal.rows) + "x" + std::to_string(signal.cols));
  RealImage out(signal.rows / step, signal.cols / step);
  for (int r = 0; r < out.rows; ++r)
    for (int c = 0; c < out.cols; ++c) out(r, c) = signal(r * step, c * step);
  return out;
}

int next_pow2(int n) {
  int p = 1;
  while (p < n) p <<= 1;
  return p;
}

RealImage mirror_pad(const RealImage& img, int target) {
  if (target < img.rows || target < img.cols)
    throw DimensionError("mirror_pad: target smaller than image");
  auto reflect = [](int i, int n) {
    int m = i % (2 * n);
    return m < n ? m : 2 * n - 1 - m;
  };
  RealImage out(target, target);
  for (int r = 0; r < target; ++r) {
    const int sr = reflect(r, img.rows);
    for (int c = 0; c < target; ++c) out(r, c) = img(sr, reflect(c, img.cols));
  }
  return out;
}

RealImage circular_shift(const RealImage& img, int dr, int dc) {
  RealImage out(img.rows, img.cols);
  auto wrap = [](int i, int n) { return ((i % n) + n) % n; };
  for (int r = 0; r < img.rows; ++r)
    for (int c = 0; c < img.cols; ++c) out(r, c) = img(wrap(r - dr, img.rows), wrap(c - dc, img.cols));
  return out;
}

}  // namespace scat
