#pragma once

#include <functional>
#include <vector>

#include "oar/dataset.hpp"
#include "oar/linalg.hpp"
#include "oar/model.hpp"
#include "oar/recourse.hpp"

namespace oar::oracle {

/// Grid spacing for the exhaustive 2-D searches.
struct GridSpec {
  double resolution = 0.01;
  int dims = 2;
};

/// Candidate points of the 2-D epsilon-disk: the square lattice of spacing
/// `resolution` clipped to the disk, in lexicographic (i, j) order, followed
/// by max(8, ceil(2 pi epsilon / resolution)) boundary points at equal angles
/// starting from angle 0. epsilon = 0 yields only the origin.
std::vector<Eigen::Vector2d> disk_grid(double epsilon, double resolution);

/// Central differences (f(x + h e_j) - f(x - h e_j)) / 2h.
Vector finite_diff_grad(const std::function<double(const Vector&)>& objective, const Vector& x,
                        double h);

/// Lipschitz slack of one grid cell: k * resolution * sqrt(2).
double grid_slack(int num_classes, double resolution);

struct IndividualOptimum {
  Vector delta;
  double loss = 0.0;
};

/// Minimum of the query loss over x_q + disk_grid(epsilon). First minimum wins.
IndividualOptimum grid_individual(const QuerySpec& query, const Centroids& theta, double epsilon,
                                  const GridSpec& spec);

struct CollectiveOptimum {
  Matrix shifts;  // k x 2, one centroid shift per class
  double loss = 0.0;
};

/// Minimum of the query loss over per-class centroid shifts drawn from
/// disk_grid(epsilon), i.e. over the full k-fold product grid.
///
/// The product is searched exactly but not enumerated: for any class other
/// than the goal the loss is strictly increasing in exp(-||x_q - mu_y||), so
/// its best shift maximizes that distance whatever the other classes do.
/// Those are chosen independently; the goal class shift is then searched
/// against the loss. Requires d = 2 and k <= 3.
CollectiveOptimum grid_collective(const LabeledBatch& batch, const QuerySpec& query,
                                  double epsilon, const GridSpec& spec);

}  // namespace oar::oracle
