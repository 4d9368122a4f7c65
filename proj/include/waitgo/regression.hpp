#pragma once

#include <array>
#include <memory>
#include <span>
#include <vector>

#include "waitgo/world.hpp"

namespace waitgo {

inline constexpr int kMaxFeatures = 5;

// Feature row for one (waypoint, hour) pair.
struct FeatureVector {
  std::array<double, kMaxFeatures> values{};
  int dim = 0;

  std::span<const double> view() const {
    return std::span<const double>(values.data(), static_cast<std::size_t>(dim));
  }
};

enum class FeatureMode {
  coords,  // x, y min-max scaled over the plan, plus cyclic hour encoding
  id,      // waypoint id scaled to [0, 1], plus cyclic hour encoding
};

// Maps (waypoint, hour) to model features. Coordinates are min-max scaled
// over the plan's interior waypoints; the hour of day enters as
// (sin, cos) on the 24 h circle plus a linear term.
class FeatureEncoder {
 public:
  FeatureEncoder(const MissionPlan& plan, FeatureMode mode);

  FeatureVector encode(const Waypoint& wp, int hour) const;
  int dim() const { return mode_ == FeatureMode::coords ? 5 : 4; }
  FeatureMode mode() const { return mode_; }

 private:
  FeatureMode mode_;
  double min_x_ = 0.0, max_x_ = 1.0;
  double min_y_ = 0.0, max_y_ = 1.0;
  double min_id_ = 0.0, max_id_ = 1.0;
};

struct TrainingSample {
  FeatureVector features;
  double target = 0.0;  // observed outcome (or probability) in [0, 1]
};

enum class EstimatorKind { linear, tree, bayesian };

// Fitted event-probability model. Raw model output is clamped to [0, 1] by
// predict().
class ProbEstimator {
 public:
  virtual ~ProbEstimator() = default;
  virtual double predict_raw(const FeatureVector& f) const = 0;
  virtual EstimatorKind kind() const = 0;

  double predict(const FeatureVector& f) const;
};

struct CartParams {
  int min_leaf = 5;
  int max_depth = 12;
};

struct RegressionParams {
  CartParams cart;
  double bayes_prior_strength = 1.0;  // prior precision scale, >= 0
  double ridge_jitter = 1e-8;         // diagonal added when normal equations degenerate
};

// Fits the requested model. Returns nullptr on an empty sample set — the
// "no knowledge" sentinel; callers treat that as "assume an event".
//
//  - linear:   ordinary least squares with an intercept (normal equations,
//              partial-pivot elimination, ridge jitter on collinearity).
//  - tree:     regression tree grown by sum-of-squares reduction; leaves
//              predict the mean of their samples. Deterministic and
//              invariant to sample order.
//  - bayesian: Bayesian linear regression with a zero-mean conjugate prior;
//              predictions use the posterior mean, which shrinks towards 0
//              for thin data and approaches the least-squares fit as data
//              grows (or as prior strength drops to 0).
std::unique_ptr<ProbEstimator> fit_estimator(EstimatorKind kind,
                                             std::span<const TrainingSample> samples,
                                             const RegressionParams& params = {});

}  // namespace waitgo
