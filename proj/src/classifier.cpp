#include "scat/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace scat {

std::pair<int, double> inner_k_selection(const Eigen::VectorXd& feature, const AffineModel& model,
                                         const ClassifierConfig& config) {
  if (config.beta < 0) throw ArgumentError("inner_k_selection: beta must be >= 0");
  const int k_cap = std::min(config.K, model.rank());
  const Eigen::VectorXd d = feature - model.mean;
  const double base = d.squaredNorm();
  // err(k) + beta*k = base - sum_{l<=k}(c_l^2 - beta); maximize the prefix sum
  double gain = 0.0, best_gain = 0.0;
  int best_k = 0;
  if (k_cap > 0) {
    const Eigen::VectorXd c = model.eigenvectors.leftCols(k_cap).transpose() * d;
    for (int k = 1; k <= k_cap; ++k) {
      gain += c(k - 1) * c(k - 1) - config.beta;
      if (gain > best_gain) {
        best_gain = gain;
        best_k = k;
      }
    }
  }
  return {best_k, std::max(base - best_gain, 0.0) + 0.0};
}

Prediction classify(const Eigen::VectorXd& feature, const std::vector<AffineModel>& models,
                    const ClassifierConfig& config) {
  if (models.empty()) throw ConfigError("classify: empty model list");
  Prediction best{-1, 0, 0.0};
  for (std::size_t i = 0; i < models.size(); ++i) {
    if (models[i].dim() != feature.size())
      throw DataError("classify: feature dimension " + std::to_string(feature.size()) +
                      " does not match model dimension " + std::to_string(models[i].dim()));
    const auto [k, score] = inner_k_selection(feature, models[i], config);
    if (best.class_id < 0 || score < best.score ||
        (score == best.score && k < best.chosen_k)) {
      best = {static_cast<int>(i), k, score};
    }
  }
  return best;
}

std::vector<AffineModel> fit_class_models(const Eigen::MatrixXd& features,
                                          const std::vector<int>& labels, int class_count, int K) {
  if (static_cast<Eigen::Index>(labels.size()) != features.rows())
    throw DataError("fit_class_models: labels/features size mismatch");
  std::vector<AffineModel> models;
  models.reserve(class_count);
  for (int cls = 0; cls < class_count; ++cls) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == cls) idx.push_back(i);
    if (idx.empty()) throw DataError("fit_class_models: class " + std::to_string(cls) + " empty");
    models.push_back(fit_affine_model(select_rows(features, idx), K, cls));
  }
  return models;
}

EvalResult evaluate(const Eigen::MatrixXd& features, const std::vector<int>& labels,
                    const std::vector<AffineModel>& models, const ClassifierConfig& config) {
  if (features.rows() == 0) throw DataError("evaluate: empty test set");
  if (static_cast<Eigen::Index>(labels.size()) != features.rows())
    throw DataError("evaluate: labels/features size mismatch");
  const int n_classes = static_cast<int>(models.size());
  const Eigen::Index n = features.rows();

  EvalResult res;
  res.predictions.resize(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic, 16)
  for (Eigen::Index i = 0; i < n; ++i)
    res.predictions[static_cast<std::size_t>(i)] = classify(features.row(i), models, config);

  res.confusion = Array2D<long>(n_classes, n_classes, 0);
  long wrong = 0;
  double k_sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Prediction& p = res.predictions[static_cast<std::size_t>(i)];
    res.confusion(labels[static_cast<std::size_t>(i)], p.class_id)++;
    if (p.class_id != labels[static_cast<std::size_t>(i)]) ++wrong;
    k_sum += p.chosen_k;
  }
  res.error_rate = static_cast<double>(wrong) / static_cast<double>(n);
  res.mean_chosen_k = k_sum / static_cast<double>(n);
  return res;
}

std::vector<double> default_beta_grid(const Eigen::MatrixXd& fit_features,
                                      const std::vector<int>& fit_labels,
                                      const std::vector<AffineModel>& models) {
  std::vector<double> energies;
  energies.reserve(static_cast<std::size_t>(fit_features.rows()));
  for (Eigen::Index i = 0; i < fit_features.rows(); ++i) {
    const AffineModel& m = models[fit_labels[static_cast<std::size_t>(i)]];
    energies.push_back((fit_features.row(i).transpose() - m.mean).squaredNorm());
  }
  std::sort(energies.begin(), energies.end());
  const double med = energies[energies.size() / 2];
  std::vector<double> grid;
  for (double e = -5.0; e <= 0.01; e += 0.5) grid.push_back(med * std::pow(10.0, e));
  return grid;
}

namespace {

double validation_error(const Eigen::MatrixXd& val_feats, const std::vector<int>& val_labels,
                        const std::vector<AffineModel>& models, double beta, int K) {
  ClassifierConfig cfg;
  cfg.beta = beta;
  cfg.K = K;
  long wrong = 0;
  std::vector<int> preds(static_cast<std::size_t>(val_feats.rows()));
#pragma omp parallel for schedule(dynamic, 16)
  for (Eigen::Index i = 0; i < val_feats.rows(); ++i)
    preds[static_cast<std::size_t>(i)] = classify(val_feats.row(i), models, cfg).class_id;
  for (std::size_t i = 0; i < preds.size(); ++i)
    if (preds[i] != val_labels[i]) ++wrong;
  return static_cast<double>(wrong) / static_cast<double>(val_feats.rows());
}

std::vector<int> gather_labels(const std::vector<int>& labels,
                               const std::vector<std::size_t>& idx) {
  std::vector<int> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(labels[i]);
  return out;
}

}  // namespace

CrossValResult cross_validate(const LabeledDataset& train, const std::vector<int>& J_grid,
                              const std::vector<double>& beta_grid, int K,
                              const CrossValPolicy& policy, const GaborParams& base_params,
                              int max_order) {
  if (train.size() < 2) throw DataError("cross_validate: need at least 2 training samples");
  if (J_grid.empty()) throw ConfigError("cross_validate: empty J grid");

  // fold index sets are J-independent
  std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> splits;
  if (policy.folds <= 1) {
    splits.push_back(stratified_holdout(train, policy.holdout_fraction, policy.seed));
  } else {
    // stratified k-fold: shuffle per class, deal into folds round-robin
    std::vector<std::vector<std::size_t>> fold_members(policy.folds);
    for (int cls = 0; cls < train.class_count; ++cls) {
      std::vector<std::size_t> idx;
      for (std::size_t i = 0; i < train.size(); ++i)
        if (train.labels[i] == cls) idx.push_back(i);
      std::seed_seq seq{policy.seed, static_cast<std::uint64_t>(cls) + 1};
      std::mt19937_64 rng(seq);
      std::shuffle(idx.begin(), idx.end(), rng);
      for (std::size_t i = 0; i < idx.size(); ++i)
        fold_members[i % policy.folds].push_back(idx[i]);
    }
    for (int f = 0; f < policy.folds; ++f) {
      std::vector<std::size_t> fit, val = fold_members[f];
      for (int g = 0; g < policy.folds; ++g)
        if (g != f) fit.insert(fit.end(), fold_members[g].begin(), fold_members[g].end());
      std::sort(fit.begin(), fit.end());
      std::sort(val.begin(), val.end());
      splits.emplace_back(std::move(fit), std::move(val));
    }
  }

  CrossValResult result;
  bool have_best = false;
  for (int J : J_grid) {
    ScatteringConfig cfg;
    cfg.params = base_params;
    cfg.params.max_scale = J;
    cfg.max_order = max_order;
    const FeatureSet fs = compute_features(train, cfg);

    // accumulate per-beta validation errors over folds
    std::vector<double> betas = beta_grid;
    std::vector<double> err_sum;
    for (std::size_t split_i = 0; split_i < splits.size(); ++split_i) {
      const auto& [fit_idx, val_idx] = splits[split_i];
      const Eigen::MatrixXd fit_feats = select_rows(fs.features, fit_idx);
      const std::vector<int> fit_labels = gather_labels(train.labels, fit_idx);
      for (int cls = 0; cls < train.class_count; ++cls)
        if (std::find(fit_labels.begin(), fit_labels.end(), cls) == fit_labels.end())
          throw DataError("cross_validate: class " + std::to_string(cls) +
                          " absent from the fit split");
      const std::vector<AffineModel> models =
          fit_class_models(fit_feats, fit_labels, train.class_count, K);
      if (betas.empty()) betas = default_beta_grid(fit_feats, fit_labels, models);
      if (err_sum.empty()) err_sum.assign(betas.size(), 0.0);
      const Eigen::MatrixXd val_feats = select_rows(fs.features, val_idx);
      const std::vector<int> val_labels = gather_labels(train.labels, val_idx);
      for (std::size_t b = 0; b < betas.size(); ++b)
        err_sum[b] += validation_error(val_feats, val_labels, models, betas[b], K);
    }

    for (std::size_t b = 0; b < betas.size(); ++b) {
      const double err = err_sum[b] / static_cast<double>(splits.size());
      result.table.push_back({J, betas[b], err});
      // ties: smaller J wins (first seen), then larger beta
      const bool better = !have_best || err < result.best_error ||
                          (err == result.best_error && J == result.best_J &&
                           betas[b] > result.best_beta);
      if (better) {
        have_best = true;
        result.best_J = J;
        result.best_beta = betas[b];
        result.best_error = err;
      }
    }
  }
  return result;
}

}  // namespace scat
