#ifndef SCAT_FILTERBANK_HPP
#define SCAT_FILTERBANK_HPP

#include <utility>
#include <vector>

#include "scat/engine.hpp"

namespace scat {

/// Parameters of the oriented Gabor family and its lowpass companion.
///
/// Defaults follow the reference parameterization: xi = 3*pi/4, sigma = 1,
/// 6 orientations, J = 3, lowpass Gaussian std 2/3. The lowpass std is the
/// scale-0 mother value; the lowpass used at scale J is its dilation by 2^J.
struct GaborParams {
  double xi = 3.0 * 3.14159265358979323846 / 4.0;  ///< radial center frequency (rad/pixel)
  double sigma = 1.0;                               ///< Gaussian envelope std (pixels)
  int num_orientations = 6;                         ///< |Gamma|
  int max_scale = 3;                                ///< J; bandpass scales are j = 0..J-1
  bool dc_correction = true;                        ///< subtract envelope so psi_hat(0) = 0
  double lowpass_sigma = 2.0 / 3.0;                 ///< mother std of the lowpass Gaussian

  bool operator==(const GaborParams&) const = default;
};

/// Per-frequency Littlewood-Paley energy map
///   S(w) = |phi_hat(2^J w)|^2 + 1/2 sum_{j<J,g} (|psi_hat_{j,g}(w)|^2 + |psi_hat_{j,g}(-w)|^2)
/// together with the extrema that define the frame defect.
struct LittlewoodPaleyProfile {
  RealImage values;
  double max_value = 0.0;       ///< sup over the full grid
  double min_disc = 0.0;        ///< inf over the Nyquist disc |w| <= pi
  double min_resolved = 0.0;    ///< inf over the resolved annulus (see below)
  double frame_defect = 0.0;    ///< 1 - min_resolved (0 when J = 0)
};

/// Frequency-domain Gabor wavelet family.
///
/// Filters are sampled analytically on the periodized grid (aliases summed
/// over 3 periods per dimension) and are real-valued by construction. The
/// bandpass amplitudes carry one global constant chosen so the
/// Littlewood-Paley profile maximum equals 1; the lowpass is untouched and
/// satisfies phi_hat(0) = 1.
///
/// The "resolved annulus" used for the frame defect is the band of wavelet
/// center frequencies, xi*2^(1-J) <= |w| <= xi (widened to the nearest grid
/// samples when the band contains no grid point).
struct FilterBank {
  GaborParams params;
  int rows = 0;
  int cols = 0;
  std::vector<FreqFilter> bandpass;  ///< indexed j*|Gamma| + gamma
  FreqFilter lowpass;
  double amplitude = 1.0;   ///< normalization constant applied to the bandpass family
  double frame_defect = 0.0;

  const FreqFilter& band(int j, int gamma) const {
    return bandpass[static_cast<std::size_t>(j) * params.num_orientations + gamma];
  }
  int scale_count() const { return params.max_scale; }
  int orientation_count() const { return params.num_orientations; }
};

/// Build all J*|Gamma| bandpass filters plus the scale-2^J lowpass on the
/// given grid, normalize, and measure the frame defect.
FilterBank build_filterbank(const GaborParams& params, std::pair<int, int> grid_shape);

/// Recompute the Littlewood-Paley profile of a built bank. Deterministic:
/// repeated calls reproduce FilterBank::frame_defect bit-exactly.
LittlewoodPaleyProfile littlewood_paley_profile(const FilterBank& bank);

/// Signed grid frequency (rad/pixel) for index k of an n-point dimension.
inline double grid_frequency(int k, int n) {
  const int signed_k = (k <= (n - 1) / 2) ? k : k - n;
  return 2.0 * 3.14159265358979323846 * signed_k / n;
}

}  // namespace scat

#endif
