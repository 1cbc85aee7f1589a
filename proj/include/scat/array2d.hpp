#ifndef SCAT_ARRAY2D_HPP
#define SCAT_ARRAY2D_HPP

#include <complex>
#include <cstddef>
#include <vector>

#include "scat/errors.hpp"

namespace scat {

/// Dense row-major 2-D array. Rows index the first image dimension.
template <typename T>
struct Array2D {
  int rows = 0;
  int cols = 0;
  std::vector<T> data;

  Array2D() = default;
  Array2D(int r, int c, T fill = T{}) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, fill) {
    if (r < 0 || c < 0) throw DimensionError("Array2D: negative shape");
  }

  T& operator()(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
  const T& operator()(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }

  std::size_t size() const { return data.size(); }
  bool same_shape(const Array2D& o) const { return rows == o.rows && cols == o.cols; }
};

using RealImage = Array2D<double>;
using ComplexImage = Array2D<std::complex<double>>;

inline double sum_sq(const RealImage& a) {
  double s = 0.0;
  for (double v : a.data) s += v * v;
  return s;
}

inline double sum_sq(const ComplexImage& a) {
  double s = 0.0;
  for (const auto& v : a.data) s += std::norm(v);
  return s;
}

}  // namespace scat

#endif
