#include "oar/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "oar/csv.hpp"

namespace oar {
namespace {

void check_dim(const Vector& x, const Centroids& theta) {
  if (x.size() != theta.dim()) {
    throw std::invalid_argument("dimension mismatch: input has " + std::to_string(x.size()) +
                                " features, centroids have " + std::to_string(theta.dim()));
  }
}

void check_target(int target, const Centroids& theta) {
  if (target < 0 || target >= theta.num_classes()) {
    throw std::invalid_argument("class index " + std::to_string(target) + " outside [0, " +
                                std::to_string(theta.num_classes() - 1) + "]");
  }
}

}  // namespace

Centroids::Centroids(Matrix mu) : mu_(std::move(mu)) {
  if (mu_.rows() < 2 || mu_.cols() < 1) {
    throw std::invalid_argument("centroids must be k x d with k >= 2, d >= 1");
  }
  if (!mu_.allFinite()) throw std::invalid_argument("centroids contain non-finite entries");
}

Centroids fit(const LabeledBatch& batch) {
  const int k = batch.num_classes();
  Matrix sums = Matrix::Zero(k, batch.dim());
  const auto& x = batch.features();
  const auto& y = batch.labels();
  for (Eigen::Index i = 0; i < x.rows(); ++i) sums.row(y[i]) += x.row(i);
  for (int c = 0; c < k; ++c) {
    // LabeledBatch guarantees non-empty classes; re-checked since fit is the ERM step.
    if (batch.class_counts()[c] == 0) throw std::invalid_argument("empty class " + std::to_string(c));
    sums.row(c) /= static_cast<double>(batch.class_counts()[c]);
  }
  return Centroids(std::move(sums));
}

Vector class_scores(const Vector& x, const Centroids& theta) {
  check_dim(x, theta);
  Vector s(theta.num_classes());
  for (int y = 0; y < theta.num_classes(); ++y) s[y] = -(x - theta.mu().row(y).transpose()).norm();
  return s;
}

ProbVector predict_proba(const Vector& x, const Centroids& theta) {
  Vector s = class_scores(x, theta);
  s.array() -= s.maxCoeff();
  Vector p = s.array().exp();
  p /= p.sum();
  return {std::move(p)};
}

int predict(const Vector& x, const Centroids& theta) {
  const Vector s = class_scores(x, theta);
  int best = 0;
  for (int y = 1; y < s.size(); ++y) {
    if (s[y] > s[best]) best = y;
  }
  return best;
}

double nll_loss(const Vector& x, int target, const Centroids& theta) {
  check_target(target, theta);
  const Vector s = class_scores(x, theta);
  const double m = s.maxCoeff();
  const double lse = m + std::log((s.array() - m).exp().sum());
  return lse - s[target];
}

Matrix grad_centroids(const Vector& x, int target, const Centroids& theta) {
  check_target(target, theta);
  const Vector p = predict_proba(x, theta).probs;
  Matrix g(theta.num_classes(), theta.dim());
  for (int y = 0; y < theta.num_classes(); ++y) {
    const Vector diff = x - theta.mu().row(y).transpose();
    const double coef = p[y] - (y == target ? 1.0 : 0.0);
    g.row(y) = (coef / std::max(diff.norm(), kDistanceFloor)) * diff.transpose();
  }
  return g;
}

Vector grad_input(const Vector& x, int target, const Centroids& theta) {
  const Matrix rows = grad_centroids(x, target, theta);
  Vector sum = Vector::Zero(theta.dim());
  for (Eigen::Index y = 0; y < rows.rows(); ++y) sum += rows.row(y).transpose();
  return -sum;
}

Centroids refit_with_perturbation(const LabeledBatch& batch, const Matrix& delta) {
  if (delta.rows() != batch.size() || delta.cols() != batch.dim()) {
    throw std::invalid_argument("perturbation shape " + std::to_string(delta.rows()) + "x" +
                                std::to_string(delta.cols()) + " does not match batch " +
                                std::to_string(batch.size()) + "x" + std::to_string(batch.dim()));
  }
  const Centroids base = fit(batch);
  Matrix shift = Matrix::Zero(batch.num_classes(), batch.dim());
  const auto& y = batch.labels();
  for (Eigen::Index i = 0; i < delta.rows(); ++i) shift.row(y[i]) += delta.row(i);
  for (int c = 0; c < batch.num_classes(); ++c) {
    shift.row(c) /= static_cast<double>(batch.class_counts()[c]);
  }
  return Centroids(base.mu() + shift);
}

double training_accuracy(const LabeledBatch& batch, const Centroids& theta) {
  const auto& x = batch.features();
  Eigen::Index correct = 0;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    if (predict(x.row(i).transpose(), theta) == batch.labels()[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(x.rows());
}

void write_centroids_csv(const Centroids& theta, const std::filesystem::path& path,
                         const std::vector<std::string>& feature_names) {
  csv::write_matrix(path,
                    feature_names.empty() ? csv::default_header(theta.dim()) : feature_names,
                    theta.mu());
}

}  // namespace oar
