#ifndef SCAT_SCATTERING_HPP
#define SCAT_SCATTERING_HPP

#include <map>
#include <memory>
#include <span>
#include <vector>

#include "scat/filterbank.hpp"

namespace scat {

/// One cascade step: wavelet scale and orientation indices.
struct PathStep {
  int j = 0;
  int gamma = 0;
  auto operator<=>(const PathStep&) const = default;
};

/// Ordered list of wavelet indices selecting one cascade branch. Scales are
/// strictly increasing along a path (frequency-decreasing branches).
using Path = std::vector<PathStep>;

struct ScatteringConfig {
  GaborParams params;  ///< wavelet family; params.max_scale is J
  int max_order = 2;   ///< m0, the maximum path length (0..3)
  /// Subsample wavelet-modulus outputs at intervals 2^(j-1) inside the
  /// cascade. Faster, slightly lossy; off by default.
  bool fast_intermediate_subsampling = false;

  int scale() const { return params.max_scale; }
  bool operator==(const ScatteringConfig&) const = default;
};

/// All admissible paths in canonical order: by length, then lexicographic on
/// the (j, gamma) steps. Includes the empty path. The count is
/// sum_{n=0}^{m0} |Gamma|^n * C(J, n).
std::vector<Path> enumerate_paths(const ScatteringConfig& config);

/// Scattering coefficients of one image: for every path, the cascade output
/// averaged by phi_J and sampled at stride 2^J, restricted to the original
/// (pre-padding) extent. Coefficients are stored path-major in canonical
/// path order; every path carries the same grid_rows x grid_cols block.
struct ScatteringVector {
  ScatteringConfig config;
  int source_rows = 0;
  int source_cols = 0;
  int padded = 0;      ///< internal square grid after mirror padding
  int grid_rows = 0;   ///< output samples per path, row direction
  int grid_cols = 0;
  std::vector<Path> paths;
  std::vector<double> coeffs;
  /// Sum of ||U_p f||^2 over the deepest (unaveraged) layer |p| = m0,
  /// measured on the padded grid. Diagnostic for energy accounting.
  double tail_energy = 0.0;

  std::size_t path_count() const { return paths.size(); }
  std::size_t samples_per_path() const {
    return static_cast<std::size_t>(grid_rows) * grid_cols;
  }
  std::span<const double> path_coeffs(std::size_t path_index) const {
    return {coeffs.data() + path_index * samples_per_path(), samples_per_path()};
  }
};

/// One application of the wavelet-modulus propagator at full resolution:
/// lowpass = f * phi_J (real part), children[(j,gamma)] = |f * psi_{j,gamma}|.
struct Propagated {
  RealImage lowpass;
  std::map<std::pair<int, int>, RealImage> children;
};

Propagated propagate(const RealImage& signal, const FilterBank& bank);

/// Reusable scattering operator for a fixed config and source shape. Holds
/// the filter bank(s); immutable after construction and safe to share across
/// threads (each worker transforms with its own FFT workspace internally).
class ScatteringTransform {
public:
  ScatteringTransform(const ScatteringConfig& config, int source_rows, int source_cols);
  ~ScatteringTransform();
  ScatteringTransform(const ScatteringTransform&) = delete;
  ScatteringTransform& operator=(const ScatteringTransform&) = delete;

  ScatteringVector operator()(const RealImage& image) const;

  const ScatteringConfig& config() const;
  const FilterBank& bank() const;
  const std::vector<Path>& paths() const;
  int padded_size() const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Convenience single-image transform.
ScatteringVector scatter(const RealImage& image, const ScatteringConfig& config);

/// Transform a batch. The OpenMP variant parallelizes across images with a
/// shared bank; outputs are written to disjoint slots, so results are
/// identical to the serial variant bit-for-bit.
std::vector<ScatteringVector> scatter_batch(const std::vector<RealImage>& images,
                                            const ScatteringConfig& config);
std::vector<ScatteringVector> scatter_batch_serial(const std::vector<RealImage>& images,
                                                   const ScatteringConfig& config);

/// Euclidean scattering metric. Each coefficient is weighted by 2^(2J) (its
/// grid-cell area at stride 2^J) so the discrete sum approximates the
/// image-domain squared norm; distances compare directly with ||f - g||
/// taken as the plain pixel sum of squares.
double scattering_distance(const ScatteringVector& a, const ScatteringVector& b);

/// Weighted norm sqrt(2^(2J) * sum coeffs^2) under the same convention.
double scattering_norm(const ScatteringVector& a);

}  // namespace scat

#endif
