#include "scat/reference.hpp"

#include <cmath>
#include <map>

namespace scat::reference {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

ComplexImage direct_convolve(const ComplexImage& signal, const ComplexImage& kernel) {
  if (!signal.same_shape(kernel)) throw DimensionError("direct_convolve: shape mismatch");
  const int R = signal.rows, C = signal.cols;
  ComplexImage out(R, C);
  for (int r = 0; r < R; ++r)
    for (int c = 0; c < C; ++c) {
      std::complex<double> acc = 0.0;
      for (int kr = 0; kr < R; ++kr)
        for (int kc = 0; kc < C; ++kc)
          acc += signal(kr, kc) * kernel(((r - kr) % R + R) % R, ((c - kc) % C + C) % C);
      out(r, c) = acc;
    }
  return out;
}

ComplexImage direct_convolve(const RealImage& signal, const RealImage& kernel) {
  ComplexImage s(signal.rows, signal.cols), k(kernel.rows, kernel.cols);
  for (std::size_t i = 0; i < s.size(); ++i) s.data[i] = signal.data[i];
  for (std::size_t i = 0; i < k.size(); ++i) k.data[i] = kernel.data[i];
  return direct_convolve(s, k);
}

ComplexImage spatial_kernel(const FreqFilter& filter_freq) {
  const int R = filter_freq.rows, C = filter_freq.cols;
  ComplexImage out(R, C);
  for (int r = 0; r < R; ++r)
    for (int c = 0; c < C; ++c) {
      std::complex<double> acc = 0.0;
      for (int kr = 0; kr < R; ++kr)
        for (int kc = 0; kc < C; ++kc) {
          const double phase =
              2.0 * kPi * (static_cast<double>(r) * kr / R + static_cast<double>(c) * kc / C);
          acc += filter_freq(kr, kc) * std::complex<double>(std::cos(phase), std::sin(phase));
        }
      out(r, c) = acc / static_cast<double>(R * C);
    }
  return out;
}

namespace {

RealImage convolve_with(const RealImage& sig, const ComplexImage& kernel, bool take_modulus) {
  ComplexImage s(sig.rows, sig.cols);
  for (std::size_t i = 0; i < s.size(); ++i) s.data[i] = sig.data[i];
  const ComplexImage conv = direct_convolve(s, kernel);
  RealImage out(sig.rows, sig.cols);
  for (std::size_t i = 0; i < out.size(); ++i)
    out.data[i] = take_modulus ? std::abs(conv.data[i]) : conv.data[i].real();
  return out;
}

}  // namespace

ScatteringVector scatter(const RealImage& image, const ScatteringConfig& config) {
  const int J = config.scale();
  const int padded = next_pow2(std::max({image.rows, image.cols, 1 << J}));
  const FilterBank bank = build_filterbank(config.params, {padded, padded});

  ScatteringVector sv;
  sv.config = config;
  sv.config.fast_intermediate_subsampling = false;
  sv.source_rows = image.rows;
  sv.source_cols = image.cols;
  sv.padded = padded;
  sv.grid_rows = (image.rows - 1) / (1 << J) + 1;
  sv.grid_cols = (image.cols - 1) / (1 << J) + 1;
  sv.paths = enumerate_paths(sv.config);
  sv.coeffs.assign(sv.path_count() * sv.samples_per_path(), 0.0);

  std::map<Path, std::size_t> index;
  for (std::size_t i = 0; i < sv.paths.size(); ++i) index.emplace(sv.paths[i], i);

  std::vector<ComplexImage> band_kernels;
  for (const FreqFilter& f : bank.bandpass) band_kernels.push_back(spatial_kernel(f));
  const ComplexImage low_kernel = spatial_kernel(bank.lowpass);

  const RealImage padded_img = mirror_pad(image, padded);
  double tail = 0.0;

  // Depth-first over paths; each node is one direct convolution per child.
  auto rec = [&](auto&& self, const RealImage& sig, const Path& p) -> void {
    const RealImage avg = convolve_with(sig, low_kernel, false);
    double* out = sv.coeffs.data() + index.at(p) * sv.samples_per_path();
    for (int r = 0; (r << J) < sv.source_rows; ++r)
      for (int c = 0; (c << J) < sv.source_cols; ++c) *out++ = avg(r << J, c << J);
    if (static_cast<int>(p.size()) == config.max_order) {
      tail += sum_sq(sig);
      return;
    }
    const int last_j = p.empty() ? -1 : p.back().j;
    for (int j = last_j + 1; j < J; ++j)
      for (int g = 0; g < config.params.num_orientations; ++g) {
        const RealImage u =
            convolve_with(sig, band_kernels[static_cast<std::size_t>(j) * config.params.num_orientations + g], true);
        Path q = p;
        q.push_back({j, g});
        self(self, u, q);
      }
  };
  rec(rec, padded_img, Path{});
  sv.tail_energy = tail;
  return sv;
}

}  // namespace scat::reference
