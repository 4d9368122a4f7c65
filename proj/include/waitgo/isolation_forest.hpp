#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace waitgo {

struct IsolationForestParams {
  int num_trees = 100;
  int max_subsample = 256;      // per-tree sample cap
  double contamination = 0.01;  // expected outlier fraction, in (0, 0.5]
  void validate() const;        // throws std::invalid_argument
};

// Isolation forest over one-dimensional observations.
//
// Each tree recursively splits its subsample at a point drawn uniformly
// between the subsample's min and max; values isolated after few splits are
// anomalous. A query's anomaly score is 2^(-E[h]/c(n)) where E[h] is its mean
// path length across trees and c(n) the expected path length of an
// unsuccessful binary search over n points — so scores near 1 mean isolated,
// scores well below 0.5 mean buried among the rest.
class IsolationForest {
 public:
  struct Node {
    double split = 0.0;
    int left = -1;    // < 0 for a leaf
    int right = -1;
    int count = 0;    // training values reaching this node
    bool is_leaf() const { return left < 0; }
  };
  struct Tree {
    std::vector<Node> nodes;  // nodes[0] is the root
    int depth_limit = 0;
  };

  // Fits on `values`; order of `values` does not affect the forest beyond
  // which subsample indices are drawn. Throws std::invalid_argument when
  // `values` is empty.
  void fit(std::span<const double> values, std::uint64_t seed,
           const IsolationForestParams& params = {});

  bool fitted() const { return !trees_.empty(); }

  // Mean truncated path length of `x` across trees.
  double mean_path_length(double x) const;

  // Anomaly score in (0, 1); higher is more anomalous.
  double anomaly_score(double x) const;

  // Score cutoff: the (1 - contamination) quantile (linear interpolation) of
  // the training values' anomaly scores. A query is an outlier when its score
  // strictly exceeds this.
  double score_threshold() const { return threshold_; }
  bool is_outlier(double x) const { return anomaly_score(x) > threshold_; }

  const std::vector<Tree>& trees() const { return trees_; }
  int subsample_size() const { return subsample_size_; }

  // c(n): expected path length of an unsuccessful search in a binary search
  // tree over n values — the standard path-length normalizer, computed with
  // exact harmonic sums.
  static double average_path_length(int n);

 private:
  std::vector<Tree> trees_;
  int subsample_size_ = 0;
  double threshold_ = 0.0;
};

}  // namespace waitgo
