#include "waitgo/isolation_forest.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "waitgo/rng.hpp"

namespace waitgo {

void IsolationForestParams::validate() const {
  if (num_trees <= 0) throw std::invalid_argument("num_trees must be > 0");
  if (max_subsample < 2) throw std::invalid_argument("max_subsample must be >= 2");
  if (!(contamination > 0.0) || !(contamination <= 0.5))
    throw std::invalid_argument("contamination must lie in (0, 0.5]");
}

double IsolationForest::average_path_length(int n) {
  if (n <= 1) return 0.0;
  if (n == 2) return 1.0;
  double harmonic = 0.0;
  for (int i = 1; i <= n - 1; ++i) harmonic += 1.0 / i;
  return 2.0 * harmonic - 2.0 * (n - 1) / static_cast<double>(n);
}

namespace {

// Builds the subtree over values[lo, hi) (sorted ranges are not required);
// returns the node index.
int build_node(std::vector<IsolationForest::Node>& nodes, std::vector<double>& values,
               int lo, int hi, int depth, int depth_limit, rng::Stream& rand) {
  const int index = static_cast<int>(nodes.size());
  nodes.push_back({});
  nodes[index].count = hi - lo;

  const auto [min_it, max_it] = std::minmax_element(values.begin() + lo, values.begin() + hi);
  const double lo_val = *min_it, hi_val = *max_it;
  if (hi - lo <= 1 || depth >= depth_limit || lo_val == hi_val)
    return index;  // leaf

  double split = lo_val + rand.next_uniform01() * (hi_val - lo_val);
  if (split <= lo_val) split = 0.5 * (lo_val + hi_val);  // keep both sides non-empty

  auto mid_it = std::partition(values.begin() + lo, values.begin() + hi,
                               [split](double v) { return v < split; });
  const int mid = static_cast<int>(mid_it - values.begin());

  nodes[index].split = split;
  nodes[index].left = build_node(nodes, values, lo, mid, depth + 1, depth_limit, rand);
  nodes[index].right = build_node(nodes, values, mid, hi, depth + 1, depth_limit, rand);
  return index;
}

double tree_path_length(const IsolationForest::Tree& tree, double x) {
  int index = 0;
  int depth = 0;
  while (!tree.nodes[static_cast<std::size_t>(index)].is_leaf()) {
    const auto& node = tree.nodes[static_cast<std::size_t>(index)];
    index = x < node.split ? node.left : node.right;
    ++depth;
  }
  return depth + IsolationForest::average_path_length(
                     tree.nodes[static_cast<std::size_t>(index)].count);
}

}  // namespace

void IsolationForest::fit(std::span<const double> values, std::uint64_t seed,
                          const IsolationForestParams& params) {
  params.validate();
  if (values.empty()) throw std::invalid_argument("isolation forest needs data");

  const int n = static_cast<int>(values.size());
  subsample_size_ = std::min(n, params.max_subsample);
  const int depth_limit =
      static_cast<int>(std::ceil(std::log2(std::max(2, subsample_size_))));

  trees_.clear();
  trees_.reserve(static_cast<std::size_t>(params.num_trees));
  std::vector<int> indices(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) indices[static_cast<std::size_t>(i)] = i;

  for (int t = 0; t < params.num_trees; ++t) {
    rng::Stream rand(rng::mix(seed, static_cast<std::uint64_t>(t)));

    std::vector<double> sample;
    sample.reserve(static_cast<std::size_t>(subsample_size_));
    if (subsample_size_ == n) {
      sample.assign(values.begin(), values.end());
    } else {
      // Partial Fisher-Yates: the first subsample_size_ slots become a
      // uniform draw without replacement.
      for (int i = 0; i < subsample_size_; ++i) {
        const auto j = i + static_cast<int>(rand.next_below(
                               static_cast<std::uint64_t>(n - i)));
        std::swap(indices[static_cast<std::size_t>(i)], indices[static_cast<std::size_t>(j)]);
        sample.push_back(values[static_cast<std::size_t>(indices[static_cast<std::size_t>(i)])]);
      }
    }

    Tree tree;
    tree.depth_limit = depth_limit;
    build_node(tree.nodes, sample, 0, subsample_size_, 0, depth_limit, rand);
    trees_.push_back(std::move(tree));
  }

  // Threshold: the (1 - contamination) quantile of the training scores, so
  // roughly a `contamination` fraction of the training data would be flagged.
  std::vector<double> scores;
  scores.reserve(values.size());
  for (double v : values) scores.push_back(anomaly_score(v));
  std::sort(scores.begin(), scores.end());
  const double q = 1.0 - params.contamination;
  const double pos = q * static_cast<double>(scores.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, scores.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  threshold_ = scores[lo] + frac * (scores[hi] - scores[lo]);
}

double IsolationForest::mean_path_length(double x) const {
  if (trees_.empty()) throw std::logic_error("isolation forest not fitted");
  double total = 0.0;
  for (const Tree& tree : trees_) total += tree_path_length(tree, x);
  return total / static_cast<double>(trees_.size());
}

double IsolationForest::anomaly_score(double x) const {
  return std::exp2(-mean_path_length(x) / average_path_length(subsample_size_));
}

}  // namespace waitgo
