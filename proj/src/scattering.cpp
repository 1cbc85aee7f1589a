#include "scat/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace scat {

namespace {

void validate(const ScatteringConfig& cfg) {
  if (cfg.max_order < 0 || cfg.max_order > 3)
    throw ConfigError("ScatteringConfig: max_order must be in [0, 3], got " +
                      std::to_string(cfg.max_order));
}

// Per-thread FFT workspaces, one per grid size encountered.
class FftCache {
public:
  Fft2D& get(int n) {
    auto it = plans_.find(n);
    if (it == plans_.end()) it = plans_.emplace(n, std::make_unique<Fft2D>(n, n)).first;
    return *it->second;
  }

private:
  std::unordered_map<int, std::unique_ptr<Fft2D>> plans_;
};

}  // namespace

std::vector<Path> enumerate_paths(const ScatteringConfig& config) {
  validate(config);
  const int J = config.scale();
  const int nG = config.params.num_orientations;
  std::vector<Path> all{Path{}};
  std::vector<Path> layer{Path{}};
  for (int len = 1; len <= config.max_order; ++len) {
    std::vector<Path> next;
    for (const Path& p : layer) {
      const int j_min = p.empty() ? 0 : p.back().j + 1;
      for (int j = j_min; j < J; ++j)
        for (int g = 0; g < nG; ++g) {
          Path q = p;
          q.push_back({j, g});
          next.push_back(std::move(q));
        }
    }
    all.insert(all.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  std::sort(all.begin(), all.end(), [](const Path& a, const Path& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return all;
}

Propagated propagate(const RealImage& signal, const FilterBank& bank) {
  if (signal.rows != bank.rows || signal.cols != bank.cols)
    throw DimensionError("propagate: signal " + std::to_string(signal.rows) + "x" +
                         std::to_string(signal.cols) + " does not match bank grid " +
                         std::to_string(bank.rows) + "x" + std::to_string(bank.cols));
  Fft2D fft(signal.rows, signal.cols);
  const ComplexImage spec = fft.forward(signal);

  auto convolved = [&](const FreqFilter& f) {
    ComplexImage s = spec;
    for (std::size_t i = 0; i < s.size(); ++i) s.data[i] *= f.data[i];
    return fft.inverse(s);
  };

  Propagated out;
  const ComplexImage low = convolved(bank.lowpass);
  out.lowpass = RealImage(signal.rows, signal.cols);
  for (std::size_t i = 0; i < low.size(); ++i) out.lowpass.data[i] = low.data[i].real();
  for (int j = 0; j < bank.scale_count(); ++j)
    for (int g = 0; g < bank.orientation_count(); ++g)
      out.children.emplace(std::make_pair(j, g), modulus(convolved(bank.band(j, g))));
  return out;
}

struct ScatteringTransform::Impl {
  ScatteringConfig cfg;
  int source_rows, source_cols;
  int padded;
  std::vector<Path> path_table;
  std::map<Path, std::size_t> path_index;
  FilterBank bank;  // on the padded grid
  // Banks for the fast path, one per internal resolution r >= 1; the filter
  // for absolute scale j on a grid subsampled by 2^r is sub_banks[r-1]'s
  // filter at index j - r, with the bandpass amplitude inherited from the
  // main bank so all resolutions sample the same continuous family.
  std::vector<FilterBank> sub_banks;

  Impl(const ScatteringConfig& c, int sr, int sc) : cfg(c), source_rows(sr), source_cols(sc) {
    validate(cfg);
    if (sr < 1 || sc < 1) throw DimensionError("ScatteringTransform: empty source shape");
    const int J = cfg.scale();
    padded = next_pow2(std::max({sr, sc, 1 << J}));
    bank = build_filterbank(cfg.params, {padded, padded});
    path_table = enumerate_paths(cfg);
    for (std::size_t i = 0; i < path_table.size(); ++i) path_index.emplace(path_table[i], i);
    if (cfg.fast_intermediate_subsampling) {
      for (int r = 1; r <= J - 1; ++r) {
        GaborParams p = cfg.params;
        p.max_scale = J - r;
        FilterBank sub = build_filterbank(p, {padded >> r, padded >> r});
        const double rescale = bank.amplitude / sub.amplitude;
        for (FreqFilter& f : sub.bandpass)
          for (double& v : f.data) v *= rescale;
        sub_banks.push_back(std::move(sub));
      }
    }
  }

  const FilterBank& bank_at(int res) const { return res == 0 ? bank : sub_banks[res - 1]; }

  // Averages sig (held at internal subsampling 2^res) by phi_J, samples the
  // result at absolute stride 2^J inside the original extent, and writes it
  // to the path's slot. Top-left padding keeps every stride aligned with
  // pixel (0, 0) regardless of res.
  void emit_lowpass(const ComplexImage& spec, int res, Fft2D& fft, const Path& p,
                    ScatteringVector& sv) const {
    const FilterBank& b = bank_at(res);
    ComplexImage s = spec;
    for (std::size_t i = 0; i < s.size(); ++i) s.data[i] *= b.lowpass.data[i];
    const ComplexImage avg = fft.inverse(s);
    const int J = cfg.scale();
    const int stride = 1 << (J - res);  // on the current grid
    double* out = sv.coeffs.data() + path_index.at(p) * sv.samples_per_path();
    for (int r = 0; (r << J) < source_rows; ++r)
      for (int c = 0; (c << J) < source_cols; ++c)
        *out++ = avg(r * stride, c * stride).real();
  }

  void cascade(const RealImage& sig, int res, const Path& p, FftCache& cache,
               ScatteringVector& sv, double& tail) const {
    Fft2D& fft = cache.get(sig.rows);
    const ComplexImage spec = fft.forward(sig);
    emit_lowpass(spec, res, fft, p, sv);
    if (static_cast<int>(p.size()) == cfg.max_order) {
      tail += sum_sq(sig) * std::pow(4.0, res);
      return;
    }
    const int J = cfg.scale();
    const int last_j = p.empty() ? -1 : p.back().j;
    for (int j = last_j + 1; j < J; ++j) {
      // next internal resolution for children of scale j
      int next_res = res;
      if (cfg.fast_intermediate_subsampling) next_res = std::max(res, std::min(j - 1, J - 1));
      for (int g = 0; g < cfg.params.num_orientations; ++g) {
        const FreqFilter& filt = bank_at(res).band(j - res, g);
        ComplexImage s = spec;
        for (std::size_t i = 0; i < s.size(); ++i) s.data[i] *= filt.data[i];
        RealImage u = modulus(fft.inverse(s));
        if (next_res > res) u = subsample(u, 1 << (next_res - res));
        Path q = p;
        q.push_back({j, g});
        cascade(u, next_res, q, cache, sv, tail);
      }
    }
  }

  ScatteringVector run(const RealImage& image, FftCache& cache) const {
    if (image.rows != source_rows || image.cols != source_cols)
      throw DimensionError("scatter: image " + std::to_string(image.rows) + "x" +
                           std::to_string(image.cols) + " does not match transform source " +
                           std::to_string(source_rows) + "x" + std::to_string(source_cols));
    for (double v : image.data)
      if (!std::isfinite(v)) throw DataError("scatter: image contains non-finite values");

    ScatteringVector sv;
    sv.config = cfg;
    sv.source_rows = source_rows;
    sv.source_cols = source_cols;
    sv.padded = padded;
    const int J = cfg.scale();
    sv.grid_rows = (source_rows - 1) / (1 << J) + 1;
    sv.grid_cols = (source_cols - 1) / (1 << J) + 1;
    sv.paths = path_table;
    sv.coeffs.assign(sv.path_count() * sv.samples_per_path(), 0.0);

    const RealImage padded_img = mirror_pad(image, padded);
    double tail = 0.0;
    cascade(padded_img, 0, Path{}, cache, sv, tail);
    sv.tail_energy = tail;
    return sv;
  }
};

ScatteringTransform::ScatteringTransform(const ScatteringConfig& config, int source_rows,
                                         int source_cols)
    : impl_(std::make_unique<Impl>(config, source_rows, source_cols)) {}
ScatteringTransform::~ScatteringTransform() = default;

ScatteringVector ScatteringTransform::operator()(const RealImage& image) const {
  FftCache cache;
  return impl_->run(image, cache);
}

const ScatteringConfig& ScatteringTransform::config() const { return impl_->cfg; }
const FilterBank& ScatteringTransform::bank() const { return impl_->bank; }
const std::vector<Path>& ScatteringTransform::paths() const { return impl_->path_table; }
int ScatteringTransform::padded_size() const { return impl_->padded; }

ScatteringVector scatter(const RealImage& image, const ScatteringConfig& config) {
  ScatteringTransform t(config, image.rows, image.cols);
  return t(image);
}

namespace {

std::vector<ScatteringVector> batch_impl(const std::vector<RealImage>& images,
                                         const ScatteringConfig& config, bool parallel) {
  if (images.empty()) return {};
  ScatteringTransform t(config, images[0].rows, images[0].cols);
  std::vector<ScatteringVector> out(images.size());
#ifdef _OPENMP
#pragma omp parallel if (parallel)
  {
    FftCache cache;
#pragma omp for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(images.size()); ++i) {
      ScatteringVector sv = t(images[i]);
      out[i] = std::move(sv);
    }
  }
#else
  (void)parallel;
  for (std::size_t i = 0; i < images.size(); ++i) out[i] = t(images[i]);
#endif
  return out;
}

}  // namespace

std::vector<ScatteringVector> scatter_batch(const std::vector<RealImage>& images,
                                            const ScatteringConfig& config) {
  return batch_impl(images, config, true);
}

std::vector<ScatteringVector> scatter_batch_serial(const std::vector<RealImage>& images,
                                                   const ScatteringConfig& config) {
  return batch_impl(images, config, false);
}

namespace {

void check_compatible(const ScatteringVector& a, const ScatteringVector& b) {
  if (!(a.config == b.config) || a.source_rows != b.source_rows || a.source_cols != b.source_cols ||
      a.coeffs.size() != b.coeffs.size())
    throw IncompatibilityError("scattering_distance: vectors built under different configurations");
}

}  // namespace

double scattering_distance(const ScatteringVector& a, const ScatteringVector& b) {
  check_compatible(a, b);
  double d2 = 0.0;
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    const double d = a.coeffs[i] - b.coeffs[i];
    d2 += d * d;
  }
  return std::sqrt(d2 * std::pow(4.0, a.config.scale()));
}

double scattering_norm(const ScatteringVector& a) {
  double s = 0.0;
  for (double v : a.coeffs) s += v * v;
  return std::sqrt(s * std::pow(4.0, a.config.scale()));
}

}  // namespace scat
