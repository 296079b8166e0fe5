#include "oar/oracle.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace oar::oracle {
namespace {

void check_grid(const GridSpec& spec, Eigen::Index d) {
  if (!(spec.resolution > 0.0)) throw std::invalid_argument("grid resolution must be > 0");
  if (spec.dims != 2 || d != 2) {
    throw std::invalid_argument("grid oracles are exhaustive over 2-D disks only (d = " +
                                std::to_string(d) + ")");
  }
}

}  // namespace

std::vector<Eigen::Vector2d> disk_grid(double epsilon, double resolution) {
  if (!(resolution > 0.0)) throw std::invalid_argument("grid resolution must be > 0");
  if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be >= 0");
  std::vector<Eigen::Vector2d> points;
  const auto n = static_cast<long>(std::floor(epsilon / resolution));
  for (long i = -n; i <= n; ++i) {
    for (long j = -n; j <= n; ++j) {
      const Eigen::Vector2d p(static_cast<double>(i) * resolution,
                              static_cast<double>(j) * resolution);
      if (p.norm() <= epsilon) points.push_back(p);
    }
  }
  if (epsilon > 0.0) {
    const auto m = std::max<long>(
        8, static_cast<long>(std::ceil(2.0 * std::numbers::pi * epsilon / resolution)));
    for (long a = 0; a < m; ++a) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(a) / static_cast<double>(m);
      points.emplace_back(epsilon * std::cos(angle), epsilon * std::sin(angle));
    }
  }
  return points;
}

Vector finite_diff_grad(const std::function<double(const Vector&)>& objective, const Vector& x,
                        double h) {
  if (!(h > 0.0)) throw std::invalid_argument("finite-difference step must be > 0");
  Vector g(x.size());
  Vector probe = x;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    probe[j] = x[j] + h;
    const double up = objective(probe);
    probe[j] = x[j] - h;
    const double down = objective(probe);
    probe[j] = x[j];
    if (!std::isfinite(up) || !std::isfinite(down)) {
      throw std::domain_error("objective is not finite near coordinate " + std::to_string(j));
    }
    g[j] = (up - down) / (2.0 * h);
  }
  return g;
}

double grid_slack(int num_classes, double resolution) {
  return num_classes * resolution * std::numbers::sqrt2;
}

IndividualOptimum grid_individual(const QuerySpec& query, const Centroids& theta, double epsilon,
                                  const GridSpec& spec) {
  check_grid(spec, theta.dim());
  IndividualOptimum best{Vector::Zero(2), std::numeric_limits<double>::infinity()};
  for (const auto& p : disk_grid(epsilon, spec.resolution)) {
    const Vector delta = p;
    const double loss = nll_loss(query.x_q + delta, query.goal_class, theta);
    if (loss < best.loss) best = {delta, loss};
  }
  return best;
}

CollectiveOptimum grid_collective(const LabeledBatch& batch, const QuerySpec& query,
                                  double epsilon, const GridSpec& spec) {
  check_grid(spec, batch.dim());
  const int k = batch.num_classes();
  if (k > 3) throw std::invalid_argument("grid_collective supports k <= 3");
  if (query.goal_class < 0 || query.goal_class >= k || query.x_q.size() != 2) {
    throw std::invalid_argument("query does not match the batch");
  }
  const Matrix base = fit(batch).mu();
  const auto grid = disk_grid(epsilon, spec.resolution);

  Matrix shifts = Matrix::Zero(k, 2);
  for (int y = 0; y < k; ++y) {
    if (y == query.goal_class) continue;
    const Eigen::Vector2d away = query.x_q - base.row(y).transpose();
    double far = -1.0;
    for (const auto& p : grid) {
      const double dist = (away - p).norm();
      if (dist > far) {
        far = dist;
        shifts.row(y) = p.transpose();
      }
    }
  }

  CollectiveOptimum best{shifts, std::numeric_limits<double>::infinity()};
  Matrix trial = shifts;
  for (const auto& p : grid) {
    trial.row(query.goal_class) = p.transpose();
    const double loss = nll_loss(query.x_q, query.goal_class, Centroids(base + trial));
    if (loss < best.loss) best = {trial, loss};
  }
  return best;
}

}  // namespace oar::oracle
