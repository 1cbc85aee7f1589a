#include "scat/pipeline.hpp"

namespace scat {

FeatureSet compute_features(const LabeledDataset& dataset, const ScatteringConfig& config) {
  if (dataset.images.empty()) throw DataError("compute_features: empty dataset");
  const std::vector<ScatteringVector> svs = scatter_batch(dataset.images, config);

  FeatureSet out;
  out.config = config;
  out.source_rows = svs[0].source_rows;
  out.source_cols = svs[0].source_cols;
  out.padded = svs[0].padded;
  out.grid_rows = svs[0].grid_rows;
  out.grid_cols = svs[0].grid_cols;
  out.paths = svs[0].paths;
  out.labels = dataset.labels;
  out.class_count = dataset.class_count;
  out.features.resize(static_cast<Eigen::Index>(svs.size()),
                      static_cast<Eigen::Index>(svs[0].coeffs.size()));
  for (std::size_t i = 0; i < svs.size(); ++i)
    for (std::size_t c = 0; c < svs[i].coeffs.size(); ++c)
      out.features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = svs[i].coeffs[c];
  return out;
}

Eigen::MatrixXd select_rows(const Eigen::MatrixXd& m, const std::vector<std::size_t>& idx) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(idx.size()), m.cols());
  for (std::size_t i = 0; i < idx.size(); ++i)
    out.row(static_cast<Eigen::Index>(i)) = m.row(static_cast<Eigen::Index>(idx[i]));
  return out;
}

}  // namespace scat
