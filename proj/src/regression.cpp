#include "waitgo/regression.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace waitgo {

namespace {

double scale01(double v, double lo, double hi) {
  const double range = hi - lo;
  return range > 0.0 ? (v - lo) / range : 0.5;
}

}  // namespace

FeatureEncoder::FeatureEncoder(const MissionPlan& plan, FeatureMode mode)
    : mode_(mode) {
  plan.validate();
  min_x_ = min_y_ = min_id_ = std::numeric_limits<double>::infinity();
  max_x_ = max_y_ = max_id_ = -std::numeric_limits<double>::infinity();
  for (const Waypoint& wp : plan.pois()) {
    min_x_ = std::min(min_x_, wp.x);
    max_x_ = std::max(max_x_, wp.x);
    min_y_ = std::min(min_y_, wp.y);
    max_y_ = std::max(max_y_, wp.y);
    min_id_ = std::min(min_id_, static_cast<double>(wp.id));
    max_id_ = std::max(max_id_, static_cast<double>(wp.id));
  }
}

FeatureVector FeatureEncoder::encode(const Waypoint& wp, int hour) const {
  if (hour < 0 || hour > 23) throw std::domain_error("encode: hour outside [0, 23]");
  const double angle = 2.0 * std::numbers::pi * hour / 24.0;
  FeatureVector f;
  f.dim = dim();
  int k = 0;
  if (mode_ == FeatureMode::coords) {
    f.values[k++] = scale01(wp.x, min_x_, max_x_);
    f.values[k++] = scale01(wp.y, min_y_, max_y_);
  } else {
    f.values[k++] = scale01(static_cast<double>(wp.id), min_id_, max_id_);
  }
  f.values[k++] = std::sin(angle);
  f.values[k++] = std::cos(angle);
  f.values[k++] = hour / 24.0;
  return f;
}

double ProbEstimator::predict(const FeatureVector& f) const {
  return std::clamp(predict_raw(f), 0.0, 1.0);
}

// ---------------------------------------------------------------------------
// Linear models
// ---------------------------------------------------------------------------

namespace {

// Solves the k x k system A x = b by Gaussian elimination with partial
// pivoting. Returns false when a pivot degenerates.
bool solve_dense(std::vector<std::vector<double>> a, std::vector<double> b,
                 std::vector<double>& x) {
  const std::size_t k = b.size();
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < k; ++row)
      if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
    if (std::abs(a[pivot][col]) < 1e-12) return false;
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t row = col + 1; row < k; ++row) {
      const double factor = a[row][col] / a[col][col];
      if (factor == 0.0) continue;
      for (std::size_t j = col; j < k; ++j) a[row][j] -= factor * a[col][j];
      b[row] -= factor * b[col];
    }
  }
  x.assign(k, 0.0);
  for (std::size_t row = k; row-- > 0;) {
    double acc = b[row];
    for (std::size_t j = row + 1; j < k; ++j) acc -= a[row][j] * x[j];
    x[row] = acc / a[row][row];
  }
  return true;
}

// Normal-equation fit with an intercept: minimizes |y - Xw|^2 + the given
// diagonal regularizer on w (0 for plain least squares). `jitter` is added
// and the solve retried when the system degenerates.
std::vector<double> fit_normal_equations(std::span<const TrainingSample> samples,
                                         int dim, double regularizer,
                                         double jitter) {
  const std::size_t k = static_cast<std::size_t>(dim) + 1;  // + intercept
  std::vector<std::vector<double>> gram(k, std::vector<double>(k, 0.0));
  std::vector<double> moment(k, 0.0);
  std::vector<double> row(k, 0.0);
  for (const TrainingSample& s : samples) {
    row[0] = 1.0;
    for (int j = 0; j < dim; ++j) row[static_cast<std::size_t>(j) + 1] = s.features.values[static_cast<std::size_t>(j)];
    for (std::size_t i = 0; i < k; ++i) {
      moment[i] += row[i] * s.target;
      for (std::size_t j = 0; j < k; ++j) gram[i][j] += row[i] * row[j];
    }
  }
  for (std::size_t i = 0; i < k; ++i) gram[i][i] += regularizer;

  std::vector<double> weights;
  if (!solve_dense(gram, moment, weights)) {
    for (std::size_t i = 0; i < k; ++i) gram[i][i] += jitter;
    if (!solve_dense(gram, moment, weights))
      throw std::runtime_error("linear fit: normal equations are degenerate");
  }
  return weights;  // weights[0] is the intercept
}

class LinearEstimator final : public ProbEstimator {
 public:
  LinearEstimator(std::vector<double> weights, int dim, EstimatorKind kind)
      : weights_(std::move(weights)), dim_(dim), kind_(kind) {}

  double predict_raw(const FeatureVector& f) const override {
    if (f.dim != dim_)
      throw std::invalid_argument("feature dimension mismatch");
    double acc = weights_[0];
    for (int j = 0; j < dim_; ++j)
      acc += weights_[static_cast<std::size_t>(j) + 1] *
             f.values[static_cast<std::size_t>(j)];
    return acc;
  }

  EstimatorKind kind() const override { return kind_; }

 private:
  std::vector<double> weights_;
  int dim_;
  EstimatorKind kind_;
};

// ---------------------------------------------------------------------------
// Regression tree
// ---------------------------------------------------------------------------

class TreeEstimator final : public ProbEstimator {
 public:
  TreeEstimator(std::span<const TrainingSample> samples, const CartParams& params)
      : params_(params), dim_(samples.front().features.dim) {
    std::vector<int> indices(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) indices[i] = static_cast<int>(i);
    build(samples, indices, 0);
  }

  double predict_raw(const FeatureVector& f) const override {
    if (f.dim != dim_) throw std::invalid_argument("feature dimension mismatch");
    int index = 0;
    while (!nodes_[static_cast<std::size_t>(index)].is_leaf()) {
      const Node& node = nodes_[static_cast<std::size_t>(index)];
      index = f.values[static_cast<std::size_t>(node.feature)] < node.threshold
                  ? node.left
                  : node.right;
    }
    return nodes_[static_cast<std::size_t>(index)].value;
  }

  EstimatorKind kind() const override { return EstimatorKind::tree; }

 private:
  struct Node {
    int feature = -1;
    double threshold = 0.0;
    int left = -1, right = -1;
    double value = 0.0;
    bool is_leaf() const { return left < 0; }
  };

  // Grows the node over `indices`; returns its index. Split search scans
  // features in ascending order and thresholds in ascending order, keeping
  // the first strictly-best candidate, so the tree does not depend on sample
  // order (ties within a feature value sort by target, making prefix sums
  // order-independent too).
  int build(std::span<const TrainingSample> samples, std::vector<int>& indices,
            int depth) {
    const int index = static_cast<int>(nodes_.size());
    nodes_.push_back({});
    const int n = static_cast<int>(indices.size());

    double target_sum = 0.0, target_min = 1.0e300, target_max = -1.0e300;
    for (int i : indices) {
      const double t = samples[static_cast<std::size_t>(i)].target;
      target_sum += t;
      target_min = std::min(target_min, t);
      target_max = std::max(target_max, t);
    }
    nodes_[static_cast<std::size_t>(index)].value = target_sum / n;

    if (depth >= params_.max_depth || n < 2 * params_.min_leaf ||
        target_min == target_max)
      return index;

    const double base_score = target_sum * target_sum / n;
    double best_gain = base_score + 1e-9;  // require a real SSE reduction
    int best_feature = -1;
    double best_threshold = 0.0;

    std::vector<int> sorted = indices;
    for (int feature = 0; feature < dim_; ++feature) {
      const auto fval = [&](int i) {
        return samples[static_cast<std::size_t>(i)]
            .features.values[static_cast<std::size_t>(feature)];
      };
      std::sort(sorted.begin(), sorted.end(), [&](int a, int b) {
        const double fa = fval(a), fb = fval(b);
        if (fa != fb) return fa < fb;
        return samples[static_cast<std::size_t>(a)].target <
               samples[static_cast<std::size_t>(b)].target;
      });
      double left_sum = 0.0;
      for (int i = 0; i < n - 1; ++i) {
        left_sum += samples[static_cast<std::size_t>(sorted[static_cast<std::size_t>(i)])].target;
        const int left_count = i + 1;
        if (left_count < params_.min_leaf) continue;
        if (n - left_count < params_.min_leaf) break;
        const double lo = fval(sorted[static_cast<std::size_t>(i)]);
        const double hi = fval(sorted[static_cast<std::size_t>(i) + 1]);
        if (lo == hi) continue;  // can only cut between distinct values
        const double right_sum = target_sum - left_sum;
        const double gain = left_sum * left_sum / left_count +
                            right_sum * right_sum / (n - left_count);
        if (gain > best_gain) {
          best_gain = gain;
          best_feature = feature;
          best_threshold = 0.5 * (lo + hi);
        }
      }
    }

    if (best_feature < 0) return index;

    std::vector<int> left_idx, right_idx;
    left_idx.reserve(static_cast<std::size_t>(n));
    right_idx.reserve(static_cast<std::size_t>(n));
    for (int i : indices) {
      const double v = samples[static_cast<std::size_t>(i)]
                           .features.values[static_cast<std::size_t>(best_feature)];
      (v < best_threshold ? left_idx : right_idx).push_back(i);
    }

    nodes_[static_cast<std::size_t>(index)].feature = best_feature;
    nodes_[static_cast<std::size_t>(index)].threshold = best_threshold;
    const int left = build(samples, left_idx, depth + 1);
    const int right = build(samples, right_idx, depth + 1);
    nodes_[static_cast<std::size_t>(index)].left = left;
    nodes_[static_cast<std::size_t>(index)].right = right;
    return index;
  }

  CartParams params_;
  int dim_;
  std::vector<Node> nodes_;
};

}  // namespace

std::unique_ptr<ProbEstimator> fit_estimator(EstimatorKind kind,
                                             std::span<const TrainingSample> samples,
                                             const RegressionParams& params) {
  if (samples.empty()) return nullptr;  // the no-knowledge sentinel
  const int dim = samples.front().features.dim;
  if (dim <= 0 || dim > kMaxFeatures)
    throw std::invalid_argument("bad feature dimension");
  for (const TrainingSample& s : samples)
    if (s.features.dim != dim)
      throw std::invalid_argument("inconsistent feature dimensions");

  switch (kind) {
    case EstimatorKind::linear:
      return std::make_unique<LinearEstimator>(
          fit_normal_equations(samples, dim, 0.0, params.ridge_jitter), dim,
          EstimatorKind::linear);
    case EstimatorKind::bayesian:
      // Posterior mean of Bayesian linear regression with a zero-mean prior
      // of precision `bayes_prior_strength` equals a ridge solution.
      return std::make_unique<LinearEstimator>(
          fit_normal_equations(samples, dim, params.bayes_prior_strength,
                               params.ridge_jitter),
          dim, EstimatorKind::bayesian);
    case EstimatorKind::tree:
      return std::make_unique<TreeEstimator>(samples, params.cart);
  }
  throw std::invalid_argument("unknown estimator kind");
}

}  // namespace waitgo
