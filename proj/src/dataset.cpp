#include "tsk/dataset.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>

#include "tsk/error.hpp"
#include "tsk/rng.hpp"

namespace tsk {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

// One CSV record, RFC-4180 quoting. `line` has no trailing newline.
std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_cell(const std::string& raw, std::size_t row, std::size_t col) {
  std::string s = trim(raw);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw Error(ErrorKind::NonNumericCell,
                "row " + std::to_string(row) + ", column " + std::to_string(col) + ": '" + raw + "'");
  if (!std::isfinite(v))
    throw Error(ErrorKind::NonNumericCell,
                "non-finite value at row " + std::to_string(row) + ", column " + std::to_string(col));
  return v;
}

}  // namespace

Table load_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path);

  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::EmptyFile, path);
  if (!line.empty() && line.back() == '\r') line.pop_back();

  Table t;
  for (auto& name : split_csv_line(line)) t.columns.push_back(trim(name));
  const std::size_t d = t.columns.size();

  std::vector<double> cells;
  std::size_t rows = 0;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != d)
      throw Error(ErrorKind::FormatError, path + ": line " + std::to_string(lineno) + " has " +
                                              std::to_string(fields.size()) + " fields, expected " +
                                              std::to_string(d));
    for (std::size_t c = 0; c < d; ++c) cells.push_back(parse_cell(fields[c], rows, c));
    ++rows;
  }
  if (rows == 0) throw Error(ErrorKind::EmptyFile, path + ": no data rows");

  t.X.rows = rows;
  t.X.cols = d;
  t.X.data = std::move(cells);
  return t;
}

Dataset load_csv(const std::string& path, const std::string& label_column) {
  Table t = load_table(path);

  std::size_t label_idx = t.columns.size();
  for (std::size_t c = 0; c < t.columns.size(); ++c)
    if (t.columns[c] == label_column) label_idx = c;
  if (label_idx == t.columns.size())
    throw Error(ErrorKind::MissingLabelColumn, "'" + label_column + "' not in header of " + path);

  Dataset ds;
  const std::size_t n = t.X.rows;
  const std::size_t d = t.columns.size() - 1;
  ds.X = Matrix(n, d);
  ds.y.resize(n);
  for (std::size_t c = 0; c < t.columns.size(); ++c)
    if (c != label_idx) ds.columns.push_back(t.columns[c]);

  for (std::size_t r = 0; r < n; ++r) {
    double lv = t.X(r, label_idx);
    if (lv != 0.0 && lv != 1.0)
      throw Error(ErrorKind::NonBinaryLabel, "row " + std::to_string(r) + ": label " + format_double(lv));
    ds.y[r] = static_cast<int>(lv);
    std::size_t out = 0;
    for (std::size_t c = 0; c < t.columns.size(); ++c)
      if (c != label_idx) ds.X(r, out++) = t.X(r, c);
  }

  // Binary iff at most two distinct raw values across the file.
  ds.kinds.assign(d, FeatureKind::Continuous);
  for (std::size_t c = 0; c < d; ++c) {
    std::set<double> distinct;
    for (std::size_t r = 0; r < n && distinct.size() <= 2; ++r) distinct.insert(ds.X(r, c));
    if (distinct.size() <= 2) ds.kinds[c] = FeatureKind::Binary;
  }
  return ds;
}

namespace {

// Bin assignment for the plug-in MI estimator. Continuous: equal-frequency
// edges at sorted positions floor(i*N/bins), deduplicated so tied values share
// a bin. Binary/degenerate: one bin per distinct value.
std::vector<int> discretize(std::span<const double> feature, FeatureKind kind, int bins) {
  const std::size_t n = feature.size();
  std::vector<int> out(n, 0);

  if (kind == FeatureKind::Binary) {
    std::set<double> distinct(feature.begin(), feature.end());
    if (distinct.size() > 2)
      throw Error(ErrorKind::TooManyValues, "binary feature with >2 distinct values");
    std::map<double, int> index;
    int next = 0;
    for (double v : distinct) index[v] = next++;
    for (std::size_t i = 0; i < n; ++i) out[i] = index[feature[i]];
    return out;
  }

  std::vector<double> sorted(feature.begin(), feature.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> edges;
  for (int b = 1; b < bins; ++b) {
    double e = sorted[static_cast<std::size_t>(b) * n / bins];
    if (edges.empty() || e > edges.back()) edges.push_back(e);
  }
  // bin(x) = number of edges <= x, so tied values always share a bin
  for (std::size_t i = 0; i < n; ++i)
    out[i] = static_cast<int>(std::upper_bound(edges.begin(), edges.end(), feature[i]) - edges.begin());
  return out;
}

}  // namespace

double mutual_information(std::span<const double> feature, FeatureKind kind,
                          std::span<const int> y, int bins) {
  const std::size_t n = feature.size();
  if (n < 2) throw Error(ErrorKind::LengthMismatch, "need at least 2 samples");
  if (y.size() != n) throw Error(ErrorKind::LengthMismatch, "feature/label size mismatch");
  if (kind == FeatureKind::Continuous && bins < 2)
    throw Error(ErrorKind::InvalidBins, "bins must be >= 2, got " + std::to_string(bins));

  std::vector<int> xb = discretize(feature, kind, bins);
  int nb = 1 + *std::max_element(xb.begin(), xb.end());
  if (nb < 2) return 0.0;  // single distinct value: independent by construction

  std::vector<std::array<double, 2>> joint(nb, {0.0, 0.0});
  double py1 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    joint[xb[i]][y[i]] += 1.0;
    py1 += y[i];
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  const double py[2] = {1.0 - py1 * inv_n, py1 * inv_n};

  double mi = 0.0;
  for (int b = 0; b < nb; ++b) {
    double px = (joint[b][0] + joint[b][1]) * inv_n;
    for (int c = 0; c < 2; ++c) {
      double pxy = joint[b][c] * inv_n;
      if (pxy > 0.0 && px > 0.0 && py[c] > 0.0) mi += pxy * std::log(pxy / (px * py[c]));
    }
  }
  return std::max(0.0, mi);
}

FeatureRanking rank_features(const Dataset& ds, int bins, const std::vector<std::string>& exclude,
                             std::vector<std::string>* warnings) {
  std::set<std::string> skip;
  for (const auto& name : exclude) {
    bool found = std::find(ds.columns.begin(), ds.columns.end(), name) != ds.columns.end();
    if (!found && warnings)
      warnings->push_back("excluded feature '" + name + "' not present; ignored");
    skip.insert(name);
  }

  FeatureRanking ranking;
  for (std::size_t c = 0; c < ds.n_cols(); ++c) {
    if (skip.count(ds.columns[c])) continue;
    double mi = mutual_information(ds.X.column(c), ds.kinds[c], ds.y, bins);
    ranking.scores.emplace_back(ds.columns[c], mi);
  }
  std::sort(ranking.scores.begin(), ranking.scores.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return ranking;
}

StandardizationStats fit_standardizer(const Matrix& X, std::span<const std::size_t> rows) {
  if (rows.empty()) throw Error(ErrorKind::EmptyRowSet, "standardizer fit on empty row set");
  StandardizationStats stats;
  stats.means.resize(X.cols);
  stats.stds.resize(X.cols);
  const double inv_n = 1.0 / static_cast<double>(rows.size());
  for (std::size_t c = 0; c < X.cols; ++c) {
    double mean = 0.0;
    for (std::size_t r : rows) mean += X(r, c);
    mean *= inv_n;
    double var = 0.0;
    for (std::size_t r : rows) {
      double d = X(r, c) - mean;
      var += d * d;
    }
    var *= inv_n;
    stats.means[c] = mean;
    stats.stds[c] = std::max(std::sqrt(var), kStdFloor);
  }
  return stats;
}

Matrix apply_standardizer(const Matrix& X, const StandardizationStats& stats) {
  if (X.cols != stats.means.size())
    throw Error(ErrorKind::DimensionMismatch, "matrix has " + std::to_string(X.cols) +
                                                  " columns, stats expect " +
                                                  std::to_string(stats.means.size()));
  Matrix out(X.rows, X.cols);
  for (std::size_t r = 0; r < X.rows; ++r)
    for (std::size_t c = 0; c < X.cols; ++c)
      out(r, c) = (X(r, c) - stats.means[c]) / stats.stds[c];
  return out;
}

namespace {

long long round_half_away(double v) { return static_cast<long long>(std::round(v)); }

std::vector<std::vector<std::size_t>> indices_by_class(std::span<const int> y) {
  std::vector<std::vector<std::size_t>> by_class(2);
  for (std::size_t i = 0; i < y.size(); ++i) by_class[y[i]].push_back(i);
  return by_class;
}

}  // namespace

SplitIndices stratified_split(std::span<const int> y, double test_fraction, std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0))
    throw Error(ErrorKind::InvalidConfig, "test_fraction must be in (0,1)");
  auto by_class = indices_by_class(y);
  if (by_class[0].empty() || by_class[1].empty())
    throw Error(ErrorKind::SingleClass, "stratified split needs both classes");

  long long counts[2];
  for (int c = 0; c < 2; ++c)
    counts[c] = round_half_away(static_cast<double>(by_class[c].size()) * test_fraction);
  long long target = round_half_away(static_cast<double>(y.size()) * test_fraction);
  int larger = by_class[1].size() >= by_class[0].size() ? 1 : 0;
  counts[larger] += target - counts[0] - counts[1];
  for (int c = 0; c < 2; ++c)
    counts[c] = std::clamp(counts[c], 0LL, static_cast<long long>(by_class[c].size()));

  Rng rng(seed);
  SplitIndices split;
  for (int c = 0; c < 2; ++c) {
    rng.shuffle(by_class[c]);
    for (std::size_t i = 0; i < by_class[c].size(); ++i) {
      if (i < static_cast<std::size_t>(counts[c]))
        split.test.push_back(by_class[c][i]);
      else
        split.train.push_back(by_class[c][i]);
    }
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

std::vector<SplitIndices> kfold_indices(std::span<const int> y, int k, std::uint64_t seed) {
  if (k < 2) throw Error(ErrorKind::InvalidConfig, "k must be >= 2");
  auto by_class = indices_by_class(y);
  for (int c = 0; c < 2; ++c)
    if (by_class[c].size() < static_cast<std::size_t>(k))
      throw Error(ErrorKind::TooFewSamplesPerClass,
                  "class " + std::to_string(c) + " has " + std::to_string(by_class[c].size()) +
                      " samples, need >= " + std::to_string(k));

  Rng rng(seed);
  std::vector<std::vector<std::size_t>> folds(k);
  for (int c = 0; c < 2; ++c) {
    rng.shuffle(by_class[c]);
    for (std::size_t i = 0; i < by_class[c].size(); ++i)
      folds[i % k].push_back(by_class[c][i]);
  }

  std::vector<SplitIndices> out(k);
  for (int f = 0; f < k; ++f) {
    out[f].test = folds[f];
    for (int g = 0; g < k; ++g)
      if (g != f) out[f].train.insert(out[f].train.end(), folds[g].begin(), folds[g].end());
    std::sort(out[f].train.begin(), out[f].train.end());
    std::sort(out[f].test.begin(), out[f].test.end());
  }
  return out;
}

void write_ranking_csv(const FeatureRanking& ranking, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path);
  out << "feature,score_nats\n";
  for (const auto& [name, score] : ranking.scores) out << name << "," << format_double(score) << "\n";
}

}  // namespace tsk
