#ifndef SCAT_MODELS_HPP
#define SCAT_MODELS_HPP

#include <Eigen/Dense>
#include <vector>

#include "scat/errors.hpp"

namespace scat {

/// Per-class affine space model: centroid plus the leading eigenvectors of
/// the empirical covariance (1/T normalization) in feature space.
struct AffineModel {
  int class_id = 0;
  int train_count = 0;
  Eigen::VectorXd mean;
  Eigen::MatrixXd eigenvectors;  ///< dim x rank, orthonormal columns
  Eigen::VectorXd eigenvalues;   ///< rank, nonincreasing, >= 0

  int rank() const { return static_cast<int>(eigenvectors.cols()); }
  int dim() const { return static_cast<int>(mean.size()); }
};

/// Fit mean and top-K covariance eigenstructure from the rows of
/// `features` (T x N). The covariance is never materialized: the centered
/// data matrix is decomposed with a thin SVD. At most min(K, T-1, N)
/// directions are kept; directions with singular value below 1e-10 times the
/// largest are dropped. Eigenvector signs are fixed by making the
/// largest-magnitude entry positive (lowest index on ties).
AffineModel fit_affine_model(const Eigen::MatrixXd& features, int K, int class_id = 0);

/// Squared distance from `feature` to the k-dimensional affine space:
/// ||x - mu||^2 - sum_{l<=k} <x - mu, e_l>^2, clamped at 0.
double projection_error(const AffineModel& model, const Eigen::VectorXd& feature, int k);

/// Coordinates <x - mu, e_l> for l = 1..rank.
Eigen::VectorXd model_coordinates(const AffineModel& model, const Eigen::VectorXd& feature);

/// Relative intra-class (In) and outer-class (Out) approximation error
/// curves, indexed [class][k] for k = 0..k_max. In(i,k) is the ratio of the
/// summed projection errors of class-i samples onto the class-i model to
/// their summed squared norms; Out(i,k) uses all samples of other classes.
struct InOutCurves {
  std::vector<std::vector<double>> in_curve;
  std::vector<std::vector<double>> out_curve;
  int k_max = 0;
};

InOutCurves in_out_curves(const std::vector<AffineModel>& models, const Eigen::MatrixXd& features,
                          const std::vector<int>& labels, int k_max);

}  // namespace scat

#endif
