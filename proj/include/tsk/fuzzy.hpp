#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tsk/dataset.hpp"
#include "tsk/matrix.hpp"

namespace tsk {

// Width floor in standardized units; enforced at construction and after
// every optimizer step.
inline constexpr double kSigmaFloor = 1e-3;

// Added to the firing-strength sum after max-shift. The largest shifted
// strength is 1, so the perturbation is <= 1e-12 relative.
inline constexpr double kDenomEps = 1e-12;

// Gaussian fuzzy set. The width is stored as log(sigma) because training
// takes unconstrained gradient steps on it.
struct MembershipFunction {
  double center = 0.0;
  double log_width = 0.0;

  static MembershipFunction from_width(double center, double width);

  double width() const;
  double evaluate(double x) const;      // exp(-(x-c)^2 / (2 sigma^2))
  double log_evaluate(double x) const;  // -(x-c)^2 / (2 sigma^2)

  bool operator==(const MembershipFunction&) const = default;
};

// Per-feature membership function banks, shared by all rules.
using MfBank = std::vector<std::vector<MembershipFunction>>;

struct Rule {
  std::vector<std::size_t> antecedent;  // MF index per feature
  std::vector<double> weights;
  double bias = 0.0;

  bool operator==(const Rule&) const = default;
};

struct TskModel {
  std::vector<std::string> feature_names;
  std::vector<FeatureKind> kinds;
  MfBank mf_bank;
  std::vector<Rule> rules;
  StandardizationStats standardizer;
  double threshold = 0.5;

  // training provenance
  std::uint64_t seed = 0;
  std::string config_hash;
  MfBank init_mf_bank;  // snapshot taken at construction, before any training

  std::size_t n_features() const { return feature_names.size(); }
  std::size_t n_rules() const { return rules.size(); }

  bool operator==(const TskModel&) const = default;
};

struct ForwardTrace {
  std::vector<std::vector<double>> memberships;  // per feature, per MF
  std::vector<double> firing;                    // alpha_k; may underflow to 0 below ~1e-300
  std::vector<double> normalized_firing;         // sums to 1 within 1e-12
  std::vector<double> consequents;               // f_k evaluated on standardized input
  double raw_output = 0.0;                       // y
  double probability = 0.5;                      // sigmoid(y), in (0,1)
};

double membership(const MembershipFunction& mf, double x);

// Product t-norm over the rule's selected memberships, accumulated in log
// space and exponentiated.
double firing_strength(const Rule& rule, const std::vector<std::vector<double>>& memberships);

double consequent(const Rule& rule, std::span<const double> x);

// Numerically stable logistic; result clamped to the open interval (0,1).
double sigmoid(double y);

// Forward pass on an already-standardized input row.
ForwardTrace forward_std(const TskModel& model, std::span<const double> x_std);

// Forward pass on a raw input row; the model's standardizer is applied first.
ForwardTrace forward(const TskModel& model, std::span<const double> x_raw);

// 1 iff probability >= model.threshold.
int predict(const TskModel& model, std::span<const double> x_raw);

std::vector<ForwardTrace> forward_batch(const TskModel& model, const Matrix& X_raw);

}  // namespace tsk
