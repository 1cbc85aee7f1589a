#include "scat/fft.hpp"

#include <fftw3.h>

#include <mutex>

namespace scat {

namespace {
// FFTW plan creation/destruction is not thread-safe.
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct Fft2D::Impl {
  int rows, cols;
  fftw_complex* buf_in;
  fftw_complex* buf_out;
  fftw_plan fwd;
  fftw_plan bwd;

  Impl(int r, int c) : rows(r), cols(c) {
    if (r <= 0 || c <= 0) throw DimensionError("Fft2D: shape must be positive");
    const std::size_t n = static_cast<std::size_t>(r) * c;
    buf_in = fftw_alloc_complex(n);
    buf_out = fftw_alloc_complex(n);
    std::lock_guard<std::mutex> lock(plan_mutex());
    fwd = fftw_plan_dft_2d(r, c, buf_in, buf_out, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_2d(r, c, buf_in, buf_out, FFTW_BACKWARD, FFTW_ESTIMATE);
  }

  ~Impl() {
    std::lock_guard<std::mutex> lock(plan_mutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
    fftw_free(buf_in);
    fftw_free(buf_out);
  }

  void check(int r, int c) const {
    if (r != rows || c != cols) throw DimensionError("Fft2D: input shape does not match plan");
  }
};

Fft2D::Fft2D(int rows, int cols) : impl_(std::make_unique<Impl>(rows, cols)) {}
Fft2D::~Fft2D() = default;

int Fft2D::rows() const { return impl_->rows; }
int Fft2D::cols() const { return impl_->cols; }

ComplexImage Fft2D::forward(const ComplexImage& in) const {
  impl_->check(in.rows, in.cols);
  auto* b = impl_->buf_in;
  for (std::size_t i = 0; i < in.size(); ++i) {
    b[i][0] = in.data[i].real();
    b[i][1] = in.data[i].imag();
  }
  fftw_execute(impl_->fwd);
  ComplexImage out(in.rows, in.cols);
  for (std::size_t i = 0; i < out.size(); ++i)
    out.data[i] = {impl_->buf_out[i][0], impl_->buf_out[i][1]};
  return out;
}

ComplexImage Fft2D::forward(const RealImage& in) const {
  impl_->check(in.rows, in.cols);
  auto* b = impl_->buf_in;
  for (std::size_t i = 0; i < in.size(); ++i) {
    b[i][0] = in.data[i];
    b[i][1] = 0.0;
  }
  fftw_execute(impl_->fwd);
  ComplexImage out(in.rows, in.cols);
  for (std::size_t i = 0; i < out.size(); ++i)
    out.data[i] = {impl_->buf_out[i][0], impl_->buf_out[i][1]};
  return out;
}

ComplexImage Fft2D::inverse(const ComplexImage& in) const {
  impl_->check(in.rows, in.cols);
  auto* b = impl_->buf_in;
  for (std::size_t i = 0; i < in.size(); ++i) {
    b[i][0] = in.data[i].real();
    b[i][1] = in.data[i].imag();
  }
  fftw_execute(impl_->bwd);
  ComplexImage out(in.rows, in.cols);
  const double scale = 1.0 / static_cast<double>(in.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out.data[i] = {impl_->buf_out[i][0] * scale, impl_->buf_out[i][1] * scale};
  return out;
}

}  // namespace scat
