#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "tsk/dataset.hpp"
#include "tsk/fuzzy.hpp"
#include "tsk/kmeans.hpp"

namespace tsk {

struct InitConfig {
  int mfs_per_feature = 3;
  int n_rules = 10;
  double consequent_lo = -1.0;
  double consequent_hi = 1.0;
  std::uint64_t seed = 0;
  int kmeans_iters = 100;
  double binary_sigma = 0.1;  // width for binary-feature MFs, standardized units
  // When false, MF centers are drawn uniformly over the feature range and
  // rule antecedents at random; used as the baseline against the k-means
  // warm start.
  bool kmeans_init = true;
};

// center = cluster centroid, width = population std of the members (floored).
MembershipFunction mf_from_cluster(std::span<const double> values, const KMeans1dResult& result,
                                   std::size_t cluster);

// One tight MF per observed value, ascending by center.
std::vector<MembershipFunction> binary_mfs(std::span<const double> observed_values,
                                           double binary_sigma);

// Joint k-means with k = n_rules over the standardized rows; each cluster
// center picks, per feature, the MF whose center is nearest. Duplicate
// antecedent vectors are perturbed to their second-nearest MF, smallest
// nearest-vs-second-nearest gap first.
std::vector<std::vector<std::size_t>> assign_rule_antecedents(const Matrix& X_std,
                                                              const MfBank& mf_bank, int n_rules,
                                                              std::uint64_t seed, int kmeans_iters);

// i.i.d. uniform draws from [lo, hi): weights (n_rules x n_features) and biases.
std::pair<Matrix, std::vector<double>> init_consequents(int n_rules, int n_features, double lo,
                                                        double hi, std::uint64_t seed);

// Compose the warm-started model from a standardized training dataset.
TskModel build_model(const Dataset& ds_std, const StandardizationStats& stats,
                     const InitConfig& cfg);

}  // namespace tsk
