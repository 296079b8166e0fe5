#pragma once

#include <filesystem>

#include "oar/dataset.hpp"
#include "oar/linalg.hpp"

namespace oar {

/// Lower bound on ||x - mu_y|| in gradient denominators. Keeps gradients
/// bounded at x = mu_y; shared by both gradients so their sum identity is exact.
inline constexpr double kDistanceFloor = 1e-12;

/// Nearest-centroid model parameters: one centroid per class (rows of `mu`).
class Centroids {
 public:
  /// Throws std::invalid_argument unless k >= 2, d >= 1 and every entry is finite.
  explicit Centroids(Matrix mu);

  const Matrix& mu() const { return mu_; }
  int num_classes() const { return static_cast<int>(mu_.rows()); }
  Eigen::Index dim() const { return mu_.cols(); }

 private:
  Matrix mu_;
};

/// Class probabilities; entries in [0, 1] summing to 1.
struct ProbVector {
  Vector probs;
};

/// Per-class means of the batch.
Centroids fit(const LabeledBatch& batch);

/// s_y = -||x - mu_y||.
Vector class_scores(const Vector& x, const Centroids& theta);

/// Softmax of the class scores (max-subtracted).
ProbVector predict_proba(const Vector& x, const Centroids& theta);

/// Nearest centroid; ties go to the lowest class index.
int predict(const Vector& x, const Centroids& theta);

/// -log p(target | x).
double nll_loss(const Vector& x, int target, const Centroids& theta);

/// dL/dx = -sum_y (p_y - [y = target]) (x - mu_y) / max(||x - mu_y||, floor).
Vector grad_input(const Vector& x, int target, const Centroids& theta);

/// Row y is dL/dmu_y = (p_y - [y = target]) (x - mu_y) / max(||x - mu_y||, floor).
/// The rows summed in class order equal -grad_input exactly.
Matrix grad_centroids(const Vector& x, int target, const Centroids& theta);

/// Centroids refit on (X + delta, Y), via the closed form
/// mu_y(delta) = mu_y(0) + mean of the class-y rows of delta.
Centroids refit_with_perturbation(const LabeledBatch& batch, const Matrix& delta);

/// Fraction of batch rows whose prediction equals their label.
double training_accuracy(const LabeledBatch& batch, const Centroids& theta);

/// k rows x d columns, headed by `feature_names` when given.
void write_centroids_csv(const Centroids& theta, const std::filesystem::path& path,
                         const std::vector<std::string>& feature_names = {});

}  // namespace oar
