#ifndef SCAT_PIPELINE_HPP
#define SCAT_PIPELINE_HPP

#include <Eigen/Dense>
#include <optional>

#include "scat/datasets.hpp"
#include "scat/scattering.hpp"

namespace scat {

/// Scattering features of a whole dataset split: one row per image, columns
/// in path-major canonical layout.
struct FeatureSet {
  ScatteringConfig config;
  int source_rows = 0;
  int source_cols = 0;
  int padded = 0;
  int grid_rows = 0;
  int grid_cols = 0;
  std::vector<Path> paths;
  Eigen::MatrixXd features;  ///< count x dim
  std::vector<int> labels;   ///< empty when unlabeled
  int class_count = 0;

  std::size_t count() const { return static_cast<std::size_t>(features.rows()); }
  std::size_t dim() const { return static_cast<std::size_t>(features.cols()); }
};

/// Scatter every image of a dataset (OpenMP across images).
FeatureSet compute_features(const LabeledDataset& dataset, const ScatteringConfig& config);

/// Rows of `set.features` selected by index.
Eigen::MatrixXd select_rows(const Eigen::MatrixXd& m, const std::vector<std::size_t>& idx);

}  // namespace scat

#endif
