#ifndef SCAT_CLASSIFIER_HPP
#define SCAT_CLASSIFIER_HPP

#include "scat/models.hpp"
#include "scat/pipeline.hpp"

namespace scat {

struct ClassifierConfig {
  double beta = 0.0;  ///< dimension penalty weight, >= 0
  int K = 140;        ///< maximum model dimension considered
  int J = 3;          ///< scattering scale the models were trained at
};

struct Prediction {
  int class_id = 0;
  int chosen_k = 0;
  double score = 0.0;  ///< penalized error at the chosen (class, k)
};

/// Best dimension for one model: k* minimizing projection_error(x, k) + beta*k
/// over 0 <= k <= min(K, rank), smaller k on ties. Equivalent to keeping the
/// leading-coordinate prefix whose energies exceed beta when those energies
/// are sorted. Returns (k*, penalized score).
std::pair<int, double> inner_k_selection(const Eigen::VectorXd& feature, const AffineModel& model,
                                         const ClassifierConfig& config);

/// argmin over classes of the penalized projection error. Ties break toward
/// the smaller class index, then the smaller k.
Prediction classify(const Eigen::VectorXd& feature, const std::vector<AffineModel>& models,
                    const ClassifierConfig& config);

/// Fit one affine model per class label (0..class_count-1).
std::vector<AffineModel> fit_class_models(const Eigen::MatrixXd& features,
                                          const std::vector<int>& labels, int class_count, int K);

struct EvalResult {
  double error_rate = 0.0;
  Array2D<long> confusion;  ///< rows: true class, cols: predicted
  double mean_chosen_k = 0.0;
  std::vector<Prediction> predictions;
};

/// Classify every row of `features` (OpenMP across samples; deterministic).
EvalResult evaluate(const Eigen::MatrixXd& features, const std::vector<int>& labels,
                    const std::vector<AffineModel>& models, const ClassifierConfig& config);

/// Logarithmic default beta grid, scaled by the median centered energy of
/// the fit samples under their own class models: E_med * 10^(-5..0) in
/// half-decade steps.
std::vector<double> default_beta_grid(const Eigen::MatrixXd& fit_features,
                                      const std::vector<int>& fit_labels,
                                      const std::vector<AffineModel>& models);

struct CrossValPolicy {
  double holdout_fraction = 0.2;  ///< used when folds == 1
  int folds = 1;                  ///< > 1 switches to stratified k-fold
  std::uint64_t seed = 42;
};

struct CrossValCell {
  int J = 0;
  double beta = 0.0;
  double val_error = 0.0;
};

struct CrossValResult {
  int best_J = 0;
  double best_beta = 0.0;
  double best_error = 0.0;
  std::vector<CrossValCell> table;
};

/// Grid search over (J, beta). Scattering features are computed once per J;
/// models are fitted on the fit split only. An empty beta_grid selects the
/// data-driven default grid per J. Ties break toward the smaller J, then the
/// LARGER beta (simpler models).
CrossValResult cross_validate(const LabeledDataset& train, const std::vector<int>& J_grid,
                              const std::vector<double>& beta_grid, int K,
                              const CrossValPolicy& policy, const GaborParams& base_params,
                              int max_order);

}  // namespace scat

#endif
