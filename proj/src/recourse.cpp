#include "oar/recourse.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

#include "oar/csv.hpp"
#include "oar/oracle.hpp"
#include "oar/rng.hpp"

namespace oar {
namespace {

constexpr double kZeroNorm = 1e-12;

void check_budget(const EpsilonBudget& budget) {
  if (budget.norm_order != 2) {
    throw std::invalid_argument("only the L2 norm (p = 2) is supported, got p = " +
                                std::to_string(budget.norm_order));
  }
  if (!std::isfinite(budget.epsilon) || budget.epsilon < 0.0) {
    throw std::invalid_argument("epsilon must be finite and >= 0");
  }
}

void check_query(const QuerySpec& query, Eigen::Index dim, int num_classes) {
  if (query.x_q.size() != dim) {
    throw std::invalid_argument("query has " + std::to_string(query.x_q.size()) +
                                " features, model expects " + std::to_string(dim));
  }
  if (!query.x_q.allFinite()) throw std::invalid_argument("query features must be finite");
  if (query.goal_class < 0 || query.goal_class >= num_classes) {
    throw std::invalid_argument("goal class " + std::to_string(query.goal_class) +
                                " outside [0, " + std::to_string(num_classes - 1) + "]");
  }
}

struct Descent {
  Matrix best;
  double best_loss;
  std::vector<double> trace;
};

// Shared PGD loop over a matrix of perturbation rows.
Descent descend(const Matrix& init, const std::vector<bool>& active, double epsilon,
                const SolverConfig& cfg, const std::function<double(const Matrix&)>& loss,
                const std::function<Matrix(const Matrix&)>& grad) {
  if (cfg.steps < 1) throw std::invalid_argument("steps must be >= 1");
  const double eta = cfg.effective_step_size(epsilon);
  if (!(eta > 0.0) || !std::isfinite(eta)) throw std::invalid_argument("step size must be > 0");

  auto project = [&](Matrix& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (!active[i]) {
        m.row(i).setZero();
        continue;
      }
      const Vector row = m.row(i).transpose();
      m.row(i) = (cfg.projection == ProjectionMode::Ball ? project_ball(row, epsilon)
                                                         : normalize_sphere(row, epsilon))
                     .transpose();
    }
  };

  Descent out;
  out.trace.reserve(cfg.steps + 2);
  const Matrix zero = Matrix::Zero(init.rows(), init.cols());
  out.best = zero;
  out.best_loss = loss(zero);
  out.trace.push_back(out.best_loss);

  auto record = [&](const Matrix& m) {
    const double l = loss(m);
    out.trace.push_back(l);
    if (l < out.best_loss) {
      out.best_loss = l;
      out.best = m;
    }
  };

  Matrix current = init;
  project(current);
  record(current);
  for (int t = 0; t < cfg.steps; ++t) {
    const Matrix g = grad(current);
    for (Eigen::Index i = 0; i < current.rows(); ++i) {
      const double n = g.row(i).norm();
      if (active[i] && n > 0.0) current.row(i) -= (eta / n) * g.row(i);
    }
    project(current);
    record(current);
  }
  return out;
}

Matrix initial_iterate(Eigen::Index rows, Eigen::Index cols, double epsilon,
                       const SolverConfig& cfg) {
  Matrix m = Matrix::Zero(rows, cols);
  if (cfg.init == InitMode::Random && epsilon > 0.0) {
    Rng rng(cfg.seed);
    for (Eigen::Index i = 0; i < rows; ++i) {
      Vector dir(cols);
      for (Eigen::Index j = 0; j < cols; ++j) dir[j] = rng.normal();
      const double radius = epsilon * std::pow(rng.uniform(), 1.0 / static_cast<double>(cols));
      m.row(i) = normalize_sphere(dir, radius).transpose();
    }
  }
  return m;
}

}  // namespace

double SolverConfig::effective_step_size(double epsilon) const {
  if (step_size) return *step_size;
  return epsilon > 0.0 ? 0.05 * epsilon : 1e-3;
}

Vector project_ball(const Vector& v, double epsilon) {
  const double n = v.norm();
  if (n <= epsilon) return v;
  return (epsilon / n) * v;
}

Vector normalize_sphere(const Vector& v, double epsilon) {
  const double n = v.norm();
  if (n <= kZeroNorm) return Vector::Zero(v.size());
  return (epsilon / n) * v;
}

RecourseResult individual_recourse(const QuerySpec& query, const Centroids& theta,
                                   const EpsilonBudget& budget, const SolverConfig& cfg,
                                   const std::optional<Vector>& warm_start) {
  check_budget(budget);
  check_query(query, theta.dim(), theta.num_classes());
  const int goal = query.goal_class;

  Matrix init = initial_iterate(1, theta.dim(), budget.epsilon, cfg);
  if (warm_start) {
    if (warm_start->size() != theta.dim()) throw std::invalid_argument("warm start has wrong size");
    init.row(0) = warm_start->transpose();
  }

  auto loss = [&](const Matrix& d) {
    return nll_loss(query.x_q + d.row(0).transpose(), goal, theta);
  };
  auto grad = [&](const Matrix& d) -> Matrix {
    return grad_input(query.x_q + d.row(0).transpose(), goal, theta).transpose();
  };
  auto run = descend(init, {true}, budget.epsilon, cfg, loss, grad);

  const bool flipped = predict(query.x_q + run.best.row(0).transpose(), theta) == goal;
  return RecourseResult{PerturbationMatrix{std::move(run.best), {true}}, run.best_loss, flipped,
                        std::move(run.trace), theta};
}

Matrix collective_gradient(const LabeledBatch& batch, const QuerySpec& query,
                           const Matrix& delta, const std::vector<bool>& participating) {
  if (static_cast<Eigen::Index>(participating.size()) != batch.size()) {
    throw std::invalid_argument("participation mask has wrong length");
  }
  const Centroids theta = refit_with_perturbation(batch, delta);
  const Matrix per_class = grad_centroids(query.x_q, query.goal_class, theta);
  Matrix g = Matrix::Zero(batch.size(), batch.dim());
  const auto& y = batch.labels();
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    if (!participating[i]) continue;
    g.row(i) = per_class.row(y[i]) / static_cast<double>(batch.class_counts()[y[i]]);
  }
  return g;
}

RecourseResult collective_recourse(const LabeledBatch& batch, const QuerySpec& query,
                                   const EpsilonBudget& budget, const SolverConfig& cfg,
                                   const std::optional<std::vector<bool>>& mask,
                                   const std::optional<Matrix>& warm_start) {
  check_budget(budget);
  check_query(query, batch.dim(), batch.num_classes());
  std::vector<bool> active = mask.value_or(std::vector<bool>(batch.size(), true));
  if (static_cast<Eigen::Index>(active.size()) != batch.size()) {
    throw std::invalid_argument("participation mask has " + std::to_string(active.size()) +
                                " entries, batch has " + std::to_string(batch.size()) + " rows");
  }

  Matrix init = initial_iterate(batch.size(), batch.dim(), budget.epsilon, cfg);
  if (warm_start) {
    if (warm_start->rows() != batch.size() || warm_start->cols() != batch.dim()) {
      throw std::invalid_argument("warm start has wrong shape");
    }
    init = *warm_start;
  }

  auto loss = [&](const Matrix& d) {
    return nll_loss(query.x_q, query.goal_class, refit_with_perturbation(batch, d));
  };
  auto grad = [&](const Matrix& d) { return collective_gradient(batch, query, d, active); };
  auto run = descend(init, active, budget.epsilon, cfg, loss, grad);

  Centroids post = refit_with_perturbation(batch, run.best);
  const bool flipped = predict(query.x_q, post) == query.goal_class;
  return RecourseResult{PerturbationMatrix{std::move(run.best), std::move(active)}, run.best_loss,
                        flipped, std::move(run.trace), std::move(post)};
}

double uniform_shift_bound(const LabeledBatch& batch, const QuerySpec& query,
                           const EpsilonBudget& budget, double resolution) {
  check_budget(budget);
  check_query(query, batch.dim(), batch.num_classes());
  const int k = batch.num_classes();
  if (batch.dim() != 2 || k > 3) {
    throw std::invalid_argument("uniform_shift_bound requires d = 2 and k <= 3");
  }
  const auto grid = oracle::disk_grid(budget.epsilon, resolution);
  const double combos = std::pow(static_cast<double>(grid.size()), k);
  if (combos > 5e7) {
    throw std::invalid_argument("uniform_shift_bound: " + std::to_string(combos) +
                                " grid combinations exceed the 5e7 limit; use a coarser resolution");
  }

  const Matrix base = fit(batch).mu();
  std::vector<std::size_t> idx(k, 0);
  Matrix mu = base;
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    for (int y = 0; y < k; ++y) mu.row(y) = base.row(y) + grid[idx[y]].transpose();
    best = std::min(best, nll_loss(query.x_q, query.goal_class, Centroids(mu)));
    int y = 0;
    while (y < k && ++idx[y] == grid.size()) idx[y++] = 0;
    if (y == k) break;
  }
  return best;
}

void write_perturbation_csv(const PerturbationMatrix& p, const std::filesystem::path& path,
                            const std::vector<std::string>& feature_names) {
  csv::write_matrix(path,
                    feature_names.empty() ? csv::default_header(p.delta.cols()) : feature_names,
                    p.delta);
}

}  // namespace oar
