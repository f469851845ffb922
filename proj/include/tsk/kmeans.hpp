#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tsk/matrix.hpp"

namespace tsk {

struct KMeansResult {
  Matrix centers;  // k x d
  std::vector<std::size_t> assignments;
  double inertia = 0.0;
  // objective after each Lloyd iteration; non-increasing
  std::vector<double> objective_history;
};

struct KMeans1dResult {
  std::vector<double> centers;  // ascending
  std::vector<std::size_t> assignments;
  double inertia = 0.0;
  std::vector<double> objective_history;
};

// Lloyd's algorithm with k-means++ seeding. Converges when assignments are
// stable or max_iters is reached; empty clusters are repaired by stealing the
// point farthest from its current center. Distance ties go to the lower
// cluster index.
KMeansResult kmeans(const Matrix& points, std::size_t k, std::uint64_t seed, int max_iters);

KMeans1dResult kmeans_1d(std::span<const double> values, std::size_t k, std::uint64_t seed,
                         int max_iters);

}  // namespace tsk
