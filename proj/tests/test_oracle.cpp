#include <cmath>
#include <random>

#include "doctest.h"
#include "oar/oracle.hpp"
#include "test_util.hpp"

using namespace oar;
using namespace oar::test;

TEST_CASE("finite_diff_grad") {
  const auto sq = [](const Vector& v) { return v.squaredNorm(); };
  CHECK((oracle::finite_diff_grad(sq, vec({1, 2}), 1e-6) - vec({2, 4})).norm() < 1e-6);
  const auto constant = [](const Vector&) { return 3.0; };
  CHECK(oracle::finite_diff_grad(constant, vec({1, 2, 3}), 1e-6) == Vector::Zero(3));
  const auto blowup = [](const Vector& v) { return v[0] > 0 ? INFINITY : 0.0; };
  CHECK_THROWS_AS(oracle::finite_diff_grad(blowup, vec({0}), 1e-6), std::domain_error);
}

TEST_CASE("disk_grid") {
  const auto origin = oracle::disk_grid(0.0, 0.01);
  REQUIRE(origin.size() == 1);
  CHECK(origin[0].norm() == 0.0);

  const auto pts = oracle::disk_grid(0.3, 0.01);
  for (const auto& p : pts) CHECK(p.norm() <= 0.3 + 1e-15);
  // Boundary samples start at angle 0.
  const auto boundary = std::find_if(pts.begin(), pts.end(), [](const auto& p) {
    return p.x() == 0.3 && p.y() == 0.0;
  });
  CHECK(boundary != pts.end());
}

TEST_CASE("grid_individual") {
  const Centroids theta(mat({{1, 0}, {-1, 0}}));
  const QuerySpec q{vec({-0.5, 0}), 0};
  const auto none = oracle::grid_individual(q, theta, 0.0, {});
  CHECK(none.delta == vec({0, 0}));
  CHECK(none.loss == nll_loss(q.x_q, 0, theta));

  const auto best = oracle::grid_individual(q, theta, 0.3, {});
  CHECK((best.delta - vec({0.3, 0})).norm() < 1e-12);
  CHECK(best.loss == doctest::Approx(0.9130152523999526).epsilon(1e-12));

  CHECK_THROWS_AS(oracle::grid_individual({vec({0, 0, 0}), 0}, Centroids(mat({{1, 0, 0}, {0, 1, 0}})),
                                          0.3, {}),
                  std::invalid_argument);
}

TEST_CASE("grid_collective") {
  const auto two = LabeledBatch::make(mat({{1, 0}, {-1, 0}}), {0, 1}, 2);
  const QuerySpec q{vec({-0.5, 0}), 0};
  const auto none = oracle::grid_collective(two, q, 0.0, {});
  CHECK(none.shifts.isZero(0.0));

  const auto best = oracle::grid_collective(two, q, 0.3, {});
  CHECK((best.shifts - mat({{-0.3, 0}, {-0.3, 0}})).norm() < 1e-12);
  CHECK(best.loss == doctest::Approx(0.9130152523999526).epsilon(1e-12));

  const auto three = LabeledBatch::make(mat({{1, 0}, {-1, 0}, {0, 2}}), {0, 1, 2}, 3);
  const auto col = oracle::grid_collective(three, q, 0.3, {});
  const auto ind = oracle::grid_individual(q, fit(three), 0.3, {});
  CHECK(col.loss < ind.loss);
  // Frozen from an independent NumPy evaluation of the same grids.
  CHECK(col.loss == doctest::Approx(1.031341188604389).epsilon(1e-12));
  CHECK(ind.loss == doctest::Approx(1.074372854298608).epsilon(1e-12));

  const auto four = LabeledBatch::make(mat({{1, 0}, {-1, 0}, {0, 2}, {0, -2}}), {0, 1, 2, 3}, 4);
  CHECK_THROWS_AS(oracle::grid_collective(four, q, 0.3, {}), std::invalid_argument);
}

TEST_CASE("separable search equals the full product enumeration") {
  std::mt19937_64 gen(44);
  for (int trial = 0; trial < 10; ++trial) {
    const int k = 2 + trial % 2;
    const auto batch = random_batch(gen, k, 2, 1 + trial % 3);
    const QuerySpec q{vec({0.1 * trial - 0.5, 0.3}), trial % k};
    const double eps = 0.1 + 0.03 * trial;
    const auto sep = oracle::grid_collective(batch, q, eps, {0.05});
    CHECK(sep.loss == doctest::Approx(uniform_shift_bound(batch, q, {eps}, 0.05)).epsilon(1e-13));
  }
}

TEST_CASE("oracle values are monotone in epsilon") {
  const auto three = LabeledBatch::make(mat({{1, 0}, {-1, 0}, {0, 2}}), {0, 1, 2}, 3);
  const QuerySpec q{vec({-0.5, 0}), 0};
  double last_i = INFINITY, last_c = INFINITY;
  for (int i = 0; i <= 8; ++i) {
    const double eps = 0.05 * i;
    const double li = oracle::grid_individual(q, fit(three), eps, {0.01}).loss;
    const double lc = oracle::grid_collective(three, q, eps, {0.01}).loss;
    CHECK(li <= last_i);
    CHECK(lc <= last_c);
    last_i = li;
    last_c = lc;
  }
}
