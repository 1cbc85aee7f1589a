#include <doctest.h>

#include <cmath>
#include <random>

#include "scat/engine.hpp"
#include "scat/fft.hpp"
#include "scat/reference.hpp"
#include "support/test_rng.hpp"

using namespace scat;
using testing::random_image;

namespace {

double max_abs_diff(const ComplexImage& a, const ComplexImage& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data[i] - b.data[i]));
  return m;
}

}  // namespace

TEST_CASE("identity frequency filter leaves the signal unchanged") {
  std::mt19937_64 rng(1);
  const RealImage sig = random_image(16, 16, rng);
  const FreqFilter ones(16, 16, 1.0);
  const ComplexImage out = fft_convolve(sig, ones);
  for (int r = 0; r < 16; ++r)
    for (int c = 0; c < 16; ++c) {
      CHECK(std::abs(out(r, c).real() - sig(r, c)) < 1e-12);
      CHECK(std::abs(out(r, c).imag()) < 1e-12);
    }
}

TEST_CASE("fft convolution matches the direct spatial oracle") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 5; ++trial) {
    const RealImage sig = random_image(16, 16, rng);
    const RealImage ker = random_image(16, 16, rng);
    // express the kernel as a frequency filter via the forward FFT
    Fft2D fft(16, 16);
    const ComplexImage ker_hat = fft.forward(ker);
    FreqFilter filt(16, 16);
    ComplexImage expected_spec = fft.forward(sig);
    for (std::size_t i = 0; i < expected_spec.size(); ++i) expected_spec.data[i] *= ker_hat.data[i];
    const ComplexImage via_fft = fft.inverse(expected_spec);
    const ComplexImage direct = reference::direct_convolve(sig, ker);
    CHECK(max_abs_diff(via_fft, direct) < 1e-10);
  }
}

TEST_CASE("Dirac input reproduces the filter's spatial kernel") {
  std::mt19937_64 rng(3);
  FreqFilter filt(8, 8);
  for (double& v : filt.data) v = std::uniform_real_distribution<double>(-1, 1)(rng);
  RealImage dirac(8, 8, 0.0);
  dirac(0, 0) = 1.0;
  const ComplexImage out = fft_convolve(dirac, filt);
  const ComplexImage kernel = reference::spatial_kernel(filt);
  CHECK(max_abs_diff(out, kernel) < 1e-10);
}

TEST_CASE("fft_convolve rejects shape mismatches") {
  const RealImage sig(8, 8, 0.0);
  const FreqFilter filt(16, 16, 1.0);
  CHECK_THROWS_AS(fft_convolve(sig, filt), DimensionError);
}

TEST_CASE("modulus of a real signal is its absolute value") {
  ComplexImage z(4, 4);
  z(0, 0) = -3.0;
  z(1, 2) = 2.5;
  const RealImage m = modulus(z);
  CHECK(m(0, 0) == doctest::Approx(3.0));
  CHECK(m(1, 2) == doctest::Approx(2.5));
  CHECK(m(3, 3) == doctest::Approx(0.0));
}

TEST_CASE("modulus is invariant to a global phase") {
  std::mt19937_64 rng(4);
  const ComplexImage z = testing::random_complex(8, 8, rng);
  const std::complex<double> phase = std::polar(1.0, 1.234);
  ComplexImage zr = z;
  for (auto& v : zr.data) v *= phase;
  const RealImage a = modulus(z), b = modulus(zr);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.data[i] == doctest::Approx(b.data[i]).epsilon(1e-12));
}

TEST_CASE("modulus satisfies the reverse triangle inequality") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    const ComplexImage a = testing::random_complex(4, 4, rng);
    const ComplexImage b = testing::random_complex(4, 4, rng);
    const RealImage ma = modulus(a), mb = modulus(b);
    double lhs = 0.0, rhs = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      lhs += (ma.data[i] - mb.data[i]) * (ma.data[i] - mb.data[i]);
      rhs += std::norm(a.data[i] - b.data[i]);
    }
    CHECK(lhs <= rhs * (1 + 1e-12));
  }
}

TEST_CASE("subsample semantics") {
  std::mt19937_64 rng(6);
  const RealImage sig = random_image(32, 32, rng);
  SUBCASE("step 1 is the identity") {
    const RealImage out = subsample(sig, 1);
    CHECK(out.data == sig.data);
  }
  SUBCASE("32x32 at step 8 gives 4x4") {
    const RealImage out = subsample(sig, 8);
    CHECK(out.rows == 4);
    CHECK(out.cols == 4);
    CHECK(out(1, 2) == sig(8, 16));
  }
  SUBCASE("constant image stays constant") {
    const RealImage con(16, 16, 3.25);
    const RealImage out = subsample(con, 4);
    for (double v : out.data) CHECK(v == doctest::Approx(3.25));
  }
  SUBCASE("non-divisible step throws") {
    CHECK_THROWS_AS(subsample(random_image(12, 12, rng), 8), DimensionError);
    CHECK_THROWS_AS(subsample(sig, 3), DimensionError);
  }
}

TEST_CASE("Parseval under the documented normalization") {
  std::mt19937_64 rng(7);
  const RealImage sig = random_image(32, 32, rng);
  Fft2D fft(32, 32);
  const ComplexImage spec = fft.forward(sig);
  const double lhs = sum_sq(spec);
  const double rhs = 32.0 * 32.0 * sum_sq(sig);
  CHECK(std::abs(lhs - rhs) < 1e-10 * rhs);
}

TEST_CASE("fft_convolve is linear") {
  std::mt19937_64 rng(8);
  const RealImage f = random_image(16, 16, rng);
  const RealImage g = random_image(16, 16, rng);
  FreqFilter h(16, 16);
  for (double& v : h.data) v = std::uniform_real_distribution<double>(-1, 1)(rng);
  const double alpha = 2.75;
  RealImage combo(16, 16);
  for (std::size_t i = 0; i < combo.size(); ++i) combo.data[i] = alpha * f.data[i] + g.data[i];
  const ComplexImage lhs = fft_convolve(combo, h);
  const ComplexImage cf = fft_convolve(f, h);
  const ComplexImage cg = fft_convolve(g, h);
  double err = 0.0;
  for (std::size_t i = 0; i < lhs.size(); ++i)
    err = std::max(err, std::abs(lhs.data[i] - (alpha * cf.data[i] + cg.data[i])));
  CHECK(err < 1e-10);
}

TEST_CASE("translation covariance under periodic boundary") {
  std::mt19937_64 rng(9);
  const RealImage f = random_image(16, 16, rng);
  FreqFilter h(16, 16);
  for (double& v : h.data) v = std::uniform_real_distribution<double>(-1, 1)(rng);
  const ComplexImage a = fft_convolve(circular_shift(f, 3, 5), h);
  ComplexImage conv = fft_convolve(f, h);
  RealImage conv_re(16, 16), conv_im(16, 16);
  for (std::size_t i = 0; i < conv.size(); ++i) {
    conv_re.data[i] = conv.data[i].real();
    conv_im.data[i] = conv.data[i].imag();
  }
  const RealImage b_re = circular_shift(conv_re, 3, 5);
  const RealImage b_im = circular_shift(conv_im, 3, 5);
  double err = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    err = std::max({err, std::abs(a.data[i].real() - b_re.data[i]),
                    std::abs(a.data[i].imag() - b_im.data[i])});
  CHECK(err < 1e-12);
}

TEST_CASE("mirror padding") {
  RealImage img(3, 3);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) img(r, c) = r * 3 + c;
  const RealImage out = mirror_pad(img, 4);
  CHECK(out.rows == 4);
  // original content sits top-left
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) CHECK(out(r, c) == doctest::Approx(img(r, c)));
  // high-side margin reflects the last samples
  CHECK(out(3, 0) == doctest::Approx(img(2, 0)));
  CHECK(out(0, 3) == doctest::Approx(img(0, 2)));
  CHECK(out(3, 3) == doctest::Approx(img(2, 2)));
  CHECK_THROWS_AS(mirror_pad(img, 2), DimensionError);
}

TEST_CASE("next_pow2") {
  CHECK(next_pow2(1) == 1);
  CHECK(next_pow2(28) == 32);
  CHECK(next_pow2(32) == 32);
  CHECK(next_pow2(200) == 256);
}
