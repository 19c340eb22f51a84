#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "iplab/numerics/rng.hpp"
#include "iplab/numerics/tensor.hpp"

namespace iplab::baselines {

using numerics::Tensor;

enum class FeatureSampling { sqrt, all };

struct ForestConfig {
  int n_trees = 100;
  int max_depth = 0;  // 0 = unbounded
  int min_samples_leaf = 1;
  FeatureSampling features_per_split = FeatureSampling::sqrt;
  bool bootstrap = true;
  std::uint64_t seed = 0;
};

/// Throws ParameterError on n_trees < 1, max_depth < 0 or min_samples_leaf < 1.
void validate(const ForestConfig& cfg);

/// Gini impurity 1 - sum p_k^2 of a class-count vector.
double gini(std::span<const std::size_t> counts) noexcept;

/// Majority class of a count vector; ties go to the larger class index.
int majority(std::span<const std::size_t> counts) noexcept;

/// CART classification tree stored as a flat node array; node 0 is the root.
class DecisionTree {
 public:
  struct Node {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;  // go left when x[feature] <= threshold
    std::size_t left = 0;
    std::size_t right = 0;
    std::vector<std::size_t> class_counts;

    bool is_leaf() const noexcept { return feature < 0; }
  };

  /// Greedy best-Gini-gain tree on the rows `rows` of (x, y); rows may repeat
  /// (bootstrap samples). Thresholds are midpoints between consecutive
  /// distinct values. Degenerate data yields a single leaf.
  static DecisionTree fit(const Tensor& x, std::span<const int> y, std::span<const std::size_t> rows,
                          const ForestConfig& cfg, numerics::SeededRng& rng);
  /// Fits on every row once.
  static DecisionTree fit(const Tensor& x, std::span<const int> y, const ForestConfig& cfg, numerics::SeededRng& rng);

  int predict(std::span<const double> row) const;
  std::span<const Node> nodes() const noexcept { return nodes_; }
  std::size_t depth() const noexcept;
  int n_classes() const noexcept { return n_classes_; }

 private:
  std::vector<Node> nodes_;
  int n_classes_ = 0;
};

/// Bagged CART trees with per-tree derived seeds; prediction is a majority
/// vote with ties going to the larger class (class 1 for binary labels).
class RandomForest {
 public:
  static RandomForest fit(const Tensor& x, std::span<const int> y, const ForestConfig& cfg);

  int predict(std::span<const double> row) const;
  std::vector<int> predict(const Tensor& x) const;
  double accuracy(const Tensor& x, std::span<const int> y) const;

  std::span<const DecisionTree> trees() const noexcept { return trees_; }

 private:
  std::vector<DecisionTree> trees_;
  int n_classes_ = 0;
};

}  // namespace iplab::baselines
