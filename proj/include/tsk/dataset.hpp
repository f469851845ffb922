#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tsk/matrix.hpp"

namespace tsk {

enum class FeatureKind { Continuous, Binary };

// Standard deviations below this are floored so constant columns map to 0.
inline constexpr double kStdFloor = 1e-8;

struct Dataset {
  std::vector<std::string> columns;
  Matrix X;
  std::vector<int> y;  // labels in {0, 1}
  std::vector<FeatureKind> kinds;

  std::size_t n_rows() const { return X.rows; }
  std::size_t n_cols() const { return X.cols; }
};

// Header + numeric cells, no label handling. Used by predict/explain inputs.
struct Table {
  std::vector<std::string> columns;
  Matrix X;
};

struct StandardizationStats {
  std::vector<double> means;
  std::vector<double> stds;  // >= kStdFloor

  bool operator==(const StandardizationStats&) const = default;
};

struct FeatureRanking {
  // (column name, mutual information in nats), descending by score,
  // ties broken by ascending name.
  std::vector<std::pair<std::string, double>> scores;
};

struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

Table load_table(const std::string& path);
Dataset load_csv(const std::string& path, const std::string& label_column);

// Plug-in MI estimate in nats. Continuous features are discretized by
// equal-frequency binning into `bins` bins; binary features use their raw
// values. A feature with a single distinct value scores exactly 0.
double mutual_information(std::span<const double> feature, FeatureKind kind,
                          std::span<const int> y, int bins);

FeatureRanking rank_features(const Dataset& ds, int bins, const std::vector<std::string>& exclude,
                             std::vector<std::string>* warnings = nullptr);

// Population mean/std per column over the given rows only.
StandardizationStats fit_standardizer(const Matrix& X, std::span<const std::size_t> rows);
Matrix apply_standardizer(const Matrix& X, const StandardizationStats& stats);

// Per-class test counts round(class_size * test_fraction), half away from
// zero, with an off-by-one repair on the larger class so the total matches
// round(N * test_fraction).
SplitIndices stratified_split(std::span<const int> y, double test_fraction, std::uint64_t seed);

// Stratified k folds; element i of the result uses fold i as the test set.
std::vector<SplitIndices> kfold_indices(std::span<const int> y, int k, std::uint64_t seed);

void write_ranking_csv(const FeatureRanking& ranking, const std::string& path);

// %.17g rendering used across all exports so values round-trip exactly.
std::string format_double(double v);

}  // namespace tsk
