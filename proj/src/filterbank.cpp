#include "scat/filterbank.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace scat {

namespace {

constexpr double kPi = 3.14159265358979323846;

void validate(const GaborParams& p, int rows, int cols) {
  if (p.xi <= 0 || p.sigma <= 0 || p.lowpass_sigma <= 0)
    throw ConfigError("GaborParams: xi, sigma and lowpass_sigma must be positive");
  if (p.num_orientations < 1) throw ConfigError("GaborParams: need at least one orientation");
  if (p.max_scale < 0) throw ConfigError("GaborParams: max_scale must be >= 0");
  const int coarsest = 1 << p.max_scale;
  if (rows < coarsest || cols < coarsest)
    throw ConfigError("build_filterbank: grid " + std::to_string(rows) + "x" + std::to_string(cols) +
                      " too small for J=" + std::to_string(p.max_scale));
}

// Periodized Gaussian bump in frequency: sum over aliases within 3 periods of
// exp(-sigma^2 |2^j (w + 2 pi a) - center|^2 / 2).
double periodized_bump(double w1, double w2, double dilation, double sigma, double cx, double cy) {
  double s = 0.0;
  for (int a = -1; a <= 1; ++a) {
    for (int b = -1; b <= 1; ++b) {
      const double u1 = dilation * (w1 + 2.0 * kPi * a) - cx;
      const double u2 = dilation * (w2 + 2.0 * kPi * b) - cy;
      s += std::exp(-sigma * sigma * (u1 * u1 + u2 * u2) / 2.0);
    }
  }
  return s;
}

// Mirror index of k on an n-periodic grid: frequency -w(k).
inline int mirror_index(int k, int n) { return k == 0 ? 0 : n - k; }

struct RawProfile {
  RealImage lowpass_sq;   // |phi_hat|^2 per grid point
  RealImage bandpass_sum; // 1/2 sum_{j,g} (F^2 + F(-w)^2), unnormalized amplitudes
};

RawProfile raw_profile(const FilterBank& bank) {
  const int rows = bank.rows, cols = bank.cols;
  RawProfile p{RealImage(rows, cols), RealImage(rows, cols)};
  for (std::size_t i = 0; i < bank.lowpass.size(); ++i)
    p.lowpass_sq.data[i] = bank.lowpass.data[i] * bank.lowpass.data[i];
  for (const FreqFilter& f : bank.bandpass) {
    for (int r = 0; r < rows; ++r) {
      const int rm = mirror_index(r, rows);
      for (int c = 0; c < cols; ++c) {
        const double v = f(r, c);
        const double vm = f(rm, mirror_index(c, cols));
        p.bandpass_sum(r, c) += 0.5 * (v * v + vm * vm);
      }
    }
  }
  return p;
}

}  // namespace

FilterBank build_filterbank(const GaborParams& params, std::pair<int, int> grid_shape) {
  const int rows = grid_shape.first, cols = grid_shape.second;
  validate(params, rows, cols);

  FilterBank bank;
  bank.params = params;
  bank.rows = rows;
  bank.cols = cols;

  const int J = params.max_scale;
  const int nG = params.num_orientations;

  bank.bandpass.reserve(static_cast<std::size_t>(J) * nG);
  for (int j = 0; j < J; ++j) {
    const double dil = static_cast<double>(1 << j);
    for (int g = 0; g < nG; ++g) {
      const double theta = kPi * g / nG;
      const double cx = params.xi * std::cos(theta);
      const double cy = params.xi * std::sin(theta);
      FreqFilter main(rows, cols), env(rows, cols);
      for (int r = 0; r < rows; ++r) {
        const double w1 = grid_frequency(r, rows);
        for (int c = 0; c < cols; ++c) {
          const double w2 = grid_frequency(c, cols);
          main(r, c) = periodized_bump(w1, w2, dil, params.sigma, cx, cy);
          env(r, c) = periodized_bump(w1, w2, dil, params.sigma, 0.0, 0.0);
        }
      }
      if (params.dc_correction) {
        // kappa from the periodized values so the grid filter is exactly
        // zero-mean; correcting the continuous mother would leave the
        // wrapped tails of the j=0 filter at omega = 0.
        const double kappa = main(0, 0) / env(0, 0);
        for (std::size_t i = 0; i < main.size(); ++i) main.data[i] -= kappa * env.data[i];
      }
      bank.bandpass.push_back(std::move(main));
    }
  }

  bank.lowpass = FreqFilter(rows, cols);
  const double lp_dil = static_cast<double>(1 << J);
  for (int r = 0; r < rows; ++r) {
    const double w1 = grid_frequency(r, rows);
    for (int c = 0; c < cols; ++c)
      bank.lowpass(r, c) =
          periodized_bump(w1, grid_frequency(c, cols), lp_dil, params.lowpass_sigma, 0.0, 0.0);
  }
  // pin unit DC gain: the alias sum leaves phi_hat(0) slightly above 1 at
  // small J, and constants must be preserved exactly by the averaging
  const double dc = bank.lowpass(0, 0);
  for (double& v : bank.lowpass.data) v /= dc;

  // Single bandpass amplitude so the profile maximum is exactly 1. The
  // lowpass stays untouched (phi_hat(0) = 1). At omega = 0 the corrected
  // bandpass terms vanish and the profile already equals 1.
  if (!bank.bandpass.empty()) {
    const RawProfile raw = raw_profile(bank);
    double amp2 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < raw.bandpass_sum.size(); ++i) {
      const double b = raw.bandpass_sum.data[i];
      const double headroom = 1.0 - raw.lowpass_sq.data[i];
      if (b > 0.0 && headroom > 0.0) amp2 = std::min(amp2, headroom / b);
    }
    bank.amplitude = std::isfinite(amp2) ? std::sqrt(amp2) : 1.0;
    for (FreqFilter& f : bank.bandpass)
      for (double& v : f.data) v *= bank.amplitude;
  }

  bank.frame_defect = littlewood_paley_profile(bank).frame_defect;
  return bank;
}

LittlewoodPaleyProfile littlewood_paley_profile(const FilterBank& bank) {
  const int rows = bank.rows, cols = bank.cols;
  const RawProfile raw = raw_profile(bank);

  LittlewoodPaleyProfile prof;
  prof.values = RealImage(rows, cols);
  for (std::size_t i = 0; i < prof.values.size(); ++i)
    prof.values.data[i] = raw.lowpass_sq.data[i] + raw.bandpass_sum.data[i];

  prof.max_value = -std::numeric_limits<double>::infinity();
  prof.min_disc = std::numeric_limits<double>::infinity();
  for (int r = 0; r < rows; ++r) {
    const double w1 = grid_frequency(r, rows);
    for (int c = 0; c < cols; ++c) {
      const double w2 = grid_frequency(c, cols);
      const double v = prof.values(r, c);
      prof.max_value = std::max(prof.max_value, v);
      if (w1 * w1 + w2 * w2 <= kPi * kPi * (1.0 + 1e-12))
        prof.min_disc = std::min(prof.min_disc, v);
    }
  }

  if (bank.params.max_scale == 0) {
    // No wavelet band to measure; the profile is the lowpass response alone.
    prof.min_resolved = 1.0;
    prof.frame_defect = 0.0;
    return prof;
  }

  // Resolved annulus: the band of wavelet center frequencies, widened by
  // half grid cells until it contains at least one sample (J = 1 on small
  // grids degenerates to a single radius).
  const double xi = bank.params.xi;
  double r_in = xi * std::pow(2.0, 1 - bank.params.max_scale);
  double r_out = xi;
  const double half_cell = kPi * std::sqrt(1.0 / (static_cast<double>(rows) * rows) +
                                           1.0 / (static_cast<double>(cols) * cols));
  double min_res = std::numeric_limits<double>::infinity();
  while (!std::isfinite(min_res)) {
    for (int r = 0; r < rows; ++r) {
      const double w1 = grid_frequency(r, rows);
      for (int c = 0; c < cols; ++c) {
        const double w2 = grid_frequency(c, cols);
        const double rad = std::sqrt(w1 * w1 + w2 * w2);
        if (rad >= r_in && rad <= r_out) min_res = std::min(min_res, prof.values(r, c));
      }
    }
    r_in -= half_cell;
    r_out += half_cell;
  }
  prof.min_resolved = min_res;
  prof.frame_defect = 1.0 - min_res;
  return prof;
}

}  // namespace scat
