#include "scat/models.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace scat {

AffineModel fit_affine_model(const Eigen::MatrixXd& features, int K, int class_id) {
  const auto T = features.rows();
  const auto N = features.cols();
  if (T < 1) throw DataError("fit_affine_model: empty training set");
  if (K < 0) throw ArgumentError("fit_affine_model: K must be >= 0");

  AffineModel model;
  model.class_id = class_id;
  model.train_count = static_cast<int>(T);
  model.mean = features.colwise().mean();

  const int max_rank = std::min<Eigen::Index>({static_cast<Eigen::Index>(K), T - 1, N});
  if (max_rank <= 0) {
    model.eigenvectors = Eigen::MatrixXd(N, 0);
    model.eigenvalues = Eigen::VectorXd(0);
    return model;
  }

  const Eigen::MatrixXd centered = features.rowwise() - model.mean.transpose();
  Eigen::BDCSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();

  int rank = 0;
  const double cutoff = 1e-10 * (sv.size() > 0 ? sv(0) : 0.0);
  while (rank < max_rank && sv(rank) > cutoff) ++rank;

  model.eigenvectors = svd.matrixV().leftCols(rank);
  model.eigenvalues = Eigen::VectorXd(rank);
  for (int l = 0; l < rank; ++l)
    model.eigenvalues(l) = sv(l) * sv(l) / static_cast<double>(T);

  // deterministic sign: largest-magnitude entry positive, lowest index wins ties
  for (int l = 0; l < rank; ++l) {
    auto col = model.eigenvectors.col(l);
    int arg = 0;
    double best = std::abs(col(0));
    for (int i = 1; i < col.size(); ++i) {
      const double a = std::abs(col(i));
      if (a > best) {
        best = a;
        arg = i;
      }
    }
    if (col(arg) < 0) col = -col;
  }
  return model;
}

double projection_error(const AffineModel& model, const Eigen::VectorXd& feature, int k) {
  if (k < 0 || k > model.rank())
    throw ArgumentError("projection_error: k=" + std::to_string(k) + " outside [0, " +
                        std::to_string(model.rank()) + "]");
  if (feature.size() != model.mean.size())
    throw DataError("projection_error: feature dimension mismatch");
  const Eigen::VectorXd d = feature - model.mean;
  double err = d.squaredNorm();
  if (k > 0) err -= (model.eigenvectors.leftCols(k).transpose() * d).squaredNorm();
  return std::max(err, 0.0);
}

Eigen::VectorXd model_coordinates(const AffineModel& model, const Eigen::VectorXd& feature) {
  if (feature.size() != model.mean.size())
    throw DataError("model_coordinates: feature dimension mismatch");
  return model.eigenvectors.transpose() * (feature - model.mean);
}

InOutCurves in_out_curves(const std::vector<AffineModel>& models, const Eigen::MatrixXd& features,
                          const std::vector<int>& labels, int k_max) {
  if (models.empty()) throw ConfigError("in_out_curves: no models");
  if (static_cast<Eigen::Index>(labels.size()) != features.rows())
    throw DataError("in_out_curves: labels/features size mismatch");
  const int n_classes = static_cast<int>(models.size());
  const auto n = features.rows();

  InOutCurves curves;
  curves.k_max = k_max;
  curves.in_curve.assign(n_classes, std::vector<double>(k_max + 1, 0.0));
  curves.out_curve.assign(n_classes, std::vector<double>(k_max + 1, 0.0));

  std::vector<double> in_norm(n_classes, 0.0), out_norm(n_classes, 0.0);
  std::vector<long> in_count(n_classes, 0);

  // per-sample error profiles, accumulated serially for determinism
  for (Eigen::Index s = 0; s < n; ++s) {
    const Eigen::VectorXd x = features.row(s);
    const double energy = x.squaredNorm();
    const int y = labels[s];
    if (y < 0 || y >= n_classes) throw DataError("in_out_curves: label out of range");
    in_count[y]++;
    for (int i = 0; i < n_classes; ++i) {
      const AffineModel& m = models[i];
      const Eigen::VectorXd d = x - m.mean;
      const Eigen::VectorXd c = m.eigenvectors.transpose() * d;
      double err = d.squaredNorm();
      auto& curve = (i == y) ? curves.in_curve[i] : curves.out_curve[i];
      for (int k = 0; k <= k_max; ++k) {
        if (k > 0 && k <= m.rank()) err -= c(k - 1) * c(k - 1);
        curve[k] += std::max(err, 0.0);
      }
      (i == y ? in_norm[i] : out_norm[i]) += energy;
    }
  }

  for (int i = 0; i < n_classes; ++i) {
    if (in_count[i] == 0)
      throw DataError("in_out_curves: class " + std::to_string(i) + " has no samples");
    for (int k = 0; k <= k_max; ++k) {
      curves.in_curve[i][k] /= in_norm[i];
      if (out_norm[i] > 0) curves.out_curve[i][k] /= out_norm[i];
    }
  }
  return curves;
}

}  // namespace scat
