#include "tsk/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "tsk/error.hpp"
#include "tsk/rng.hpp"

namespace tsk {

namespace {

double dist_sq(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

// k-means++ seeding: first center uniform, the rest D^2-weighted.
Matrix seed_centers(const Matrix& points, std::size_t k, Rng& rng) {
  const std::size_t n = points.rows;
  Matrix centers(k, points.cols);
  std::vector<double> min_d2(n, std::numeric_limits<double>::infinity());

  std::size_t first = rng.below(n);
  std::copy_n(points.row(first).begin(), points.cols, centers.row(0).begin());

  for (std::size_t c = 1; c < k; ++c) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      min_d2[i] = std::min(min_d2[i], dist_sq(points.row(i), centers.row(c - 1)));
      total += min_d2[i];
    }
    std::size_t pick = total > 0.0 ? rng.weighted(min_d2) : rng.below(n);
    std::copy_n(points.row(pick).begin(), points.cols, centers.row(c).begin());
  }
  return centers;
}

double assign_points(const Matrix& points, const Matrix& centers,
                     std::vector<std::size_t>& assignments) {
  double objective = 0.0;
  for (std::size_t i = 0; i < points.rows; ++i) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_c = 0;
    for (std::size_t c = 0; c < centers.rows; ++c) {
      double d2 = dist_sq(points.row(i), centers.row(c));
      if (d2 < best) {
        best = d2;
        best_c = c;
      }
    }
    assignments[i] = best_c;
    objective += best;
  }
  return objective;
}

void repair_empty_clusters(const Matrix& points, const Matrix& centers,
                           std::vector<std::size_t>& assignments, std::size_t k) {
  std::vector<std::size_t> sizes(k, 0);
  for (std::size_t a : assignments) ++sizes[a];
  for (std::size_t c = 0; c < k; ++c) {
    if (sizes[c] > 0) continue;
    // steal the point farthest from its assigned center, never emptying
    // another cluster
    double worst = -1.0;
    std::size_t victim = points.rows;
    for (std::size_t i = 0; i < points.rows; ++i) {
      if (sizes[assignments[i]] <= 1) continue;
      double d2 = dist_sq(points.row(i), centers.row(assignments[i]));
      if (d2 > worst) {
        worst = d2;
        victim = i;
      }
    }
    if (victim == points.rows) continue;  // all clusters singletons; nothing to steal
    --sizes[assignments[victim]];
    assignments[victim] = c;
    ++sizes[c];
  }
}

void update_centers(const Matrix& points, const std::vector<std::size_t>& assignments,
                    Matrix& centers) {
  const std::size_t k = centers.rows;
  std::vector<std::size_t> sizes(k, 0);
  Matrix sums(k, points.cols, 0.0);
  for (std::size_t i = 0; i < points.rows; ++i) {
    ++sizes[assignments[i]];
    for (std::size_t j = 0; j < points.cols; ++j) sums(assignments[i], j) += points(i, j);
  }
  for (std::size_t c = 0; c < k; ++c)
    if (sizes[c] > 0)
      for (std::size_t j = 0; j < points.cols; ++j)
        centers(c, j) = sums(c, j) / static_cast<double>(sizes[c]);
}

}  // namespace

KMeansResult kmeans(const Matrix& points, std::size_t k, std::uint64_t seed, int max_iters) {
  if (k < 1) throw Error(ErrorKind::InvalidConfig, "k must be >= 1");
  if (points.rows < k)
    throw Error(ErrorKind::TooFewPoints, std::to_string(points.rows) + " points for k=" +
                                             std::to_string(k));

  Rng rng(seed);
  KMeansResult result;
  result.centers = seed_centers(points, k, rng);
  result.assignments.assign(points.rows, 0);

  std::vector<std::size_t> previous;
  bool converged = false;
  for (int iter = 0; iter < max_iters; ++iter) {
    assign_points(points, result.centers, result.assignments);
    repair_empty_clusters(points, result.centers, result.assignments, k);
    if (result.assignments == previous) {
      converged = true;
      break;
    }
    previous = result.assignments;
    update_centers(points, result.assignments, result.centers);
    double objective = 0.0;
    for (std::size_t i = 0; i < points.rows; ++i)
      objective += dist_sq(points.row(i), result.centers.row(result.assignments[i]));
    result.objective_history.push_back(objective);
  }
  if (!converged) {
    // max_iters exit: refresh assignments against the final centers
    assign_points(points, result.centers, result.assignments);
    repair_empty_clusters(points, result.centers, result.assignments, k);
  }

  result.inertia = 0.0;
  for (std::size_t i = 0; i < points.rows; ++i)
    result.inertia += dist_sq(points.row(i), result.centers.row(result.assignments[i]));
  return result;
}

KMeans1dResult kmeans_1d(std::span<const double> values, std::size_t k, std::uint64_t seed,
                         int max_iters) {
  Matrix points(values.size(), 1);
  for (std::size_t i = 0; i < values.size(); ++i) points(i, 0) = values[i];
  KMeansResult joint = kmeans(points, k, seed, max_iters);

  // ascending center order with assignments remapped to match
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return joint.centers(a, 0) < joint.centers(b, 0); });
  std::vector<std::size_t> rank(k);
  for (std::size_t i = 0; i < k; ++i) rank[order[i]] = i;

  KMeans1dResult result;
  result.centers.resize(k);
  for (std::size_t i = 0; i < k; ++i) result.centers[i] = joint.centers(order[i], 0);
  result.assignments.resize(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) result.assignments[i] = rank[joint.assignments[i]];
  result.inertia = joint.inertia;
  result.objective_history = std::move(joint.objective_history);
  return result;
}

}  // namespace tsk
