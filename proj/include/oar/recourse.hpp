#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "oar/dataset.hpp"
#include "oar/linalg.hpp"
#include "oar/model.hpp"

namespace oar {

/// Query subject features and the class they want predicted. `true_class`
/// is informational; the solvers never read it.
struct QuerySpec {
  Vector x_q;
  int goal_class = 0;
  std::optional<int> true_class;
};

/// Per-vector L2 budget. Only norm order 2 is supported.
struct EpsilonBudget {
  double epsilon = 0.0;
  int norm_order = 2;
};

/// Rows are perturbations delta_i; non-participating rows are exactly zero.
struct PerturbationMatrix {
  Matrix delta;
  std::vector<bool> participating;
};

enum class ProjectionMode { Ball, Sphere };
enum class InitMode { Zero, Random };

struct SolverConfig {
  int steps = 500;
  /// Defaults to 0.05 * epsilon (1e-3 when epsilon is 0).
  std::optional<double> step_size;
  ProjectionMode projection = ProjectionMode::Ball;
  InitMode init = InitMode::Zero;
  std::uint64_t seed = 0;

  double effective_step_size(double epsilon) const;
};

/// Outcome of one solve.
///
/// `perturbation` has a single row for individual recourse and one row per
/// data subject for collective recourse. `loss_trace[0]` is the loss with no
/// perturbation, `loss_trace[1]` the initial iterate, then one entry per
/// step (after projection). `achieved_loss` is the trace minimum and
/// `perturbation` the iterate that attained it (first one on ties).
struct RecourseResult {
  PerturbationMatrix perturbation;
  double achieved_loss = 0.0;
  bool flipped = false;
  std::vector<double> loss_trace;
  /// Refit centroids (collective) or the unchanged model (individual).
  Centroids post_centroids;

  /// Individual-case accessor: the single perturbation row.
  Vector delta() const { return perturbation.delta.row(0).transpose(); }
};

/// v if ||v|| <= epsilon, else epsilon * v / ||v||.
Vector project_ball(const Vector& v, double epsilon);

/// epsilon * v / ||v||; vectors of norm <= 1e-12 map to zero.
Vector normalize_sphere(const Vector& v, double epsilon);

/// Projected gradient descent on L(f(x_q + delta), goal) s.t. ||delta|| <= epsilon.
///
/// Each step moves delta against the normalized input gradient by the step
/// size and projects back (ball or sphere). `warm_start`, when given, replaces
/// the configured initial iterate after projection.
RecourseResult individual_recourse(const QuerySpec& query, const Centroids& theta,
                                   const EpsilonBudget& budget, const SolverConfig& cfg,
                                   const std::optional<Vector>& warm_start = {});

/// dL/d(delta_i) for the refit model: (1/N_{y_i}) dL/dmu_{y_i} at theta(delta),
/// zero for non-participants.
Matrix collective_gradient(const LabeledBatch& batch, const QuerySpec& query,
                           const Matrix& delta, const std::vector<bool>& participating);

/// Projected gradient descent over all data-subject perturbations, with the
/// model refit in closed form after every step. Rows are projected one by one.
/// A mask that freezes a whole class is allowed; that centroid stays put.
RecourseResult collective_recourse(const LabeledBatch& batch, const QuerySpec& query,
                                   const EpsilonBudget& budget, const SolverConfig& cfg,
                                   const std::optional<std::vector<bool>>& mask = {},
                                   const std::optional<Matrix>& warm_start = {});

/// Exhaustive optimum of the collective problem on a grid, by enumerating
/// one shift vector per class over the epsilon-disk (product grid).
///
/// Every shift with norm <= epsilon is reachable by moving all rows of the
/// class by it, and the mean of rows bounded by epsilon is itself bounded by
/// epsilon, so this is the optimum of the refit problem up to grid
/// resolution. Requires d = 2, k <= 3 and at most 5e7 grid combinations.
double uniform_shift_bound(const LabeledBatch& batch, const QuerySpec& query,
                           const EpsilonBudget& budget, double resolution);

/// Same layout as the feature matrix.
void write_perturbation_csv(const PerturbationMatrix& p, const std::filesystem::path& path,
                            const std::vector<std::string>& feature_names = {});

}  // namespace oar
