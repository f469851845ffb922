#include "tsk/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tsk/error.hpp"

namespace tsk {

MembershipFunction MembershipFunction::from_width(double center, double width) {
  MembershipFunction mf;
  mf.center = center;
  mf.log_width = std::log(std::max(width, kSigmaFloor));
  return mf;
}

double MembershipFunction::width() const { return std::exp(log_width); }

double MembershipFunction::log_evaluate(double x) const {
  double sigma = width();
  double d = x - center;
  return -(d * d) / (2.0 * sigma * sigma);
}

double MembershipFunction::evaluate(double x) const { return std::exp(log_evaluate(x)); }

double membership(const MembershipFunction& mf, double x) { return mf.evaluate(x); }

double firing_strength(const Rule& rule, const std::vector<std::vector<double>>& memberships) {
  double log_alpha = 0.0;
  for (std::size_t i = 0; i < rule.antecedent.size(); ++i)
    log_alpha += std::log(memberships[i][rule.antecedent[i]]);
  return std::exp(log_alpha);
}

double consequent(const Rule& rule, std::span<const double> x) {
  if (x.size() != rule.weights.size())
    throw Error(ErrorKind::DimensionMismatch, "input has " + std::to_string(x.size()) +
                                                  " features, rule expects " +
                                                  std::to_string(rule.weights.size()));
  double f = rule.bias;
  for (std::size_t i = 0; i < x.size(); ++i) f += rule.weights[i] * x[i];
  return f;
}

double sigmoid(double y) {
  double p;
  if (y >= 0.0) {
    p = 1.0 / (1.0 + std::exp(-y));
  } else {
    double e = std::exp(y);
    p = e / (1.0 + e);
  }
  p = std::min(p, std::nextafter(1.0, 0.0));
  p = std::max(p, std::numeric_limits<double>::min());
  return p;
}

ForwardTrace forward_std(const TskModel& model, std::span<const double> x_std) {
  const std::size_t n = model.n_features();
  const std::size_t m = model.n_rules();
  if (x_std.size() != n)
    throw Error(ErrorKind::DimensionMismatch, "input has " + std::to_string(x_std.size()) +
                                                  " features, model expects " + std::to_string(n));

  ForwardTrace trace;
  trace.memberships.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    trace.memberships[i].resize(model.mf_bank[i].size());
    for (std::size_t j = 0; j < model.mf_bank[i].size(); ++j)
      trace.memberships[i][j] = model.mf_bank[i][j].evaluate(x_std[i]);
  }

  // log firing strengths straight from the quadratics; the common max shift
  // cancels in the weighted-average ratio
  std::vector<double> log_alpha(m);
  double max_log = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < m; ++k) {
    const Rule& rule = model.rules[k];
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      acc += model.mf_bank[i][rule.antecedent[i]].log_evaluate(x_std[i]);
    log_alpha[k] = acc;
    max_log = std::max(max_log, acc);
  }

  trace.firing.resize(m);
  trace.normalized_firing.resize(m);
  trace.consequents.resize(m);
  std::vector<double> shifted(m);
  double denom = kDenomEps;
  double numer = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    trace.firing[k] = std::exp(log_alpha[k]);
    shifted[k] = std::exp(log_alpha[k] - max_log);
    trace.consequents[k] = consequent(model.rules[k], x_std);
    denom += shifted[k];
    numer += shifted[k] * trace.consequents[k];
  }
  for (std::size_t k = 0; k < m; ++k) trace.normalized_firing[k] = shifted[k] / denom;

  trace.raw_output = numer / denom;
  trace.probability = sigmoid(trace.raw_output);
  return trace;
}

ForwardTrace forward(const TskModel& model, std::span<const double> x_raw) {
  const std::size_t n = model.n_features();
  if (x_raw.size() != n)
    throw Error(ErrorKind::DimensionMismatch, "input has " + std::to_string(x_raw.size()) +
                                                  " features, model expects " + std::to_string(n));
  std::vector<double> x_std(n);
  for (std::size_t i = 0; i < n; ++i)
    x_std[i] = (x_raw[i] - model.standardizer.means[i]) / model.standardizer.stds[i];
  return forward_std(model, x_std);
}

int predict(const TskModel& model, std::span<const double> x_raw) {
  return forward(model, x_raw).probability >= model.threshold ? 1 : 0;
}

std::vector<ForwardTrace> forward_batch(const TskModel& model, const Matrix& X_raw) {
  if (X_raw.cols != model.n_features())
    throw Error(ErrorKind::DimensionMismatch, "batch has " + std::to_string(X_raw.cols) +
                                                  " columns, model expects " +
                                                  std::to_string(model.n_features()));
  std::vector<ForwardTrace> traces;
  traces.reserve(X_raw.rows);
  for (std::size_t r = 0; r < X_raw.rows; ++r) traces.push_back(forward(model, X_raw.row(r)));
  return traces;
}

}  // namespace tsk
