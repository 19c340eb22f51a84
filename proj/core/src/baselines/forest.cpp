#include "iplab/baselines/forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>

#include "iplab/error.hpp"
#include "iplab/util/parallel.hpp"

namespace iplab::baselines {

void validate(const ForestConfig& cfg) {
  if (cfg.n_trees < 1) throw ParameterError("n_trees must be >= 1");
  if (cfg.max_depth < 0) throw ParameterError("max_depth must be >= 0");
  if (cfg.min_samples_leaf < 1) throw ParameterError("min_samples_leaf must be >= 1");
}

double gini(std::span<const std::size_t> counts) noexcept {
  std::size_t total = 0;
  for (auto c : counts) total += c;
  if (total == 0) return 0.0;
  double sum_sq = 0.0;
  for (auto c : counts) {
    const double p = static_cast<double>(c) / static_cast<double>(total);
    sum_sq += p * p;
  }
  return 1.0 - sum_sq;
}

int majority(std::span<const std::size_t> counts) noexcept {
  int best = 0;
  for (std::size_t k = 1; k < counts.size(); ++k) {
    if (counts[k] >= counts[static_cast<std::size_t>(best)]) best = static_cast<int>(k);
  }
  return best;
}

namespace {

int class_count(std::span<const int> y) {
  int top = 1;
  for (int v : y) {
    if (v < 0) throw ValidationError("labels must be >= 0");
    top = std::max(top, v);
  }
  return top + 1;
}

struct Builder {
  const Tensor& x;
  std::span<const int> y;
  const ForestConfig& cfg;
  numerics::SeededRng& rng;
  std::size_t n_classes;
  std::vector<DecisionTree::Node>& nodes;
  std::vector<std::size_t> features;

  struct Best {
    int feature = -1;
    double threshold = 0.0;
    double gain = 0.0;
  };

  std::vector<std::size_t> counts_of(std::span<const std::size_t> rows) const {
    std::vector<std::size_t> counts(n_classes, 0);
    for (auto r : rows) ++counts[static_cast<std::size_t>(y[r])];
    return counts;
  }

  Best best_split(std::vector<std::size_t>& rows, const std::vector<std::size_t>& parent) {
    const std::size_t n = rows.size();
    const std::size_t d = x.cols();
    const std::size_t tries =
        cfg.features_per_split == FeatureSampling::all
            ? d
            : std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(static_cast<double>(d))));
    // Partial Fisher-Yates picks `tries` distinct features.
    for (std::size_t k = 0; k < tries && cfg.features_per_split == FeatureSampling::sqrt; ++k) {
      std::swap(features[k], features[k + rng.below(d - k)]);
    }
    const double parent_gini = gini(parent);
    const auto min_leaf = static_cast<std::size_t>(cfg.min_samples_leaf);
    Best best;
    std::vector<std::size_t> left(n_classes);
    std::vector<std::size_t> right(n_classes);
    for (std::size_t k = 0; k < tries; ++k) {
      const std::size_t f = features[k];
      std::sort(rows.begin(), rows.end(), [&](std::size_t a, std::size_t b) { return x.at(a, f) < x.at(b, f); });
      std::fill(left.begin(), left.end(), 0);
      right = parent;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        const auto cls = static_cast<std::size_t>(y[rows[i]]);
        ++left[cls];
        --right[cls];
        const double lo = x.at(rows[i], f);
        const double hi = x.at(rows[i + 1], f);
        if (!(lo < hi)) continue;
        const std::size_t n_left = i + 1;
        if (n_left < min_leaf || n - n_left < min_leaf) continue;
        const double wl = static_cast<double>(n_left) / static_cast<double>(n);
        const double gain = parent_gini - wl * gini(left) - (1.0 - wl) * gini(right);
        if (gain > best.gain + 1e-15) {
          double mid = lo + (hi - lo) / 2.0;
          if (!(mid < hi)) mid = lo;
          best = {static_cast<int>(f), mid, gain};
        }
      }
    }
    return best;
  }

  std::size_t build(std::vector<std::size_t> rows, int depth) {
    const std::size_t id = nodes.size();
    nodes.emplace_back();
    auto counts = counts_of(rows);
    const bool pure = std::count_if(counts.begin(), counts.end(), [](std::size_t c) { return c > 0; }) <= 1;
    const bool depth_cap = cfg.max_depth > 0 && depth >= cfg.max_depth;
    const bool too_small = rows.size() < 2 * static_cast<std::size_t>(cfg.min_samples_leaf);
    Best best;
    if (!pure && !depth_cap && !too_small) best = best_split(rows, counts);
    if (best.feature < 0) {
      nodes[id].class_counts = std::move(counts);
      return id;
    }
    std::vector<std::size_t> left_rows;
    std::vector<std::size_t> right_rows;
    for (auto r : rows) {
      (x.at(r, static_cast<std::size_t>(best.feature)) <= best.threshold ? left_rows : right_rows).push_back(r);
    }
    rows.clear();
    rows.shrink_to_fit();
    const std::size_t l = build(std::move(left_rows), depth + 1);
    const std::size_t r = build(std::move(right_rows), depth + 1);
    auto& node = nodes[id];
    node.feature = best.feature;
    node.threshold = best.threshold;
    node.left = l;
    node.right = r;
    node.class_counts = std::move(counts);
    return id;
  }
};

void check_xy(const Tensor& x, std::span<const int> y) {
  if (x.rank() != 2) throw DimensionError("features must be [n x d]");
  if (x.rows() != y.size()) throw DimensionError("feature rows and labels differ in length");
  if (y.empty() || x.cols() == 0) throw EmptyInputError("cannot fit on an empty dataset");
}

}  // namespace

DecisionTree DecisionTree::fit(const Tensor& x, std::span<const int> y, std::span<const std::size_t> rows,
                               const ForestConfig& cfg, numerics::SeededRng& rng) {
  validate(cfg);
  check_xy(x, y);
  if (rows.empty()) throw EmptyInputError("cannot fit a tree on zero rows");
  DecisionTree tree;
  tree.n_classes_ = class_count(y);
  std::vector<std::size_t> features(x.cols());
  std::iota(features.begin(), features.end(), std::size_t{0});
  Builder b{x, y, cfg, rng, static_cast<std::size_t>(tree.n_classes_), tree.nodes_, std::move(features)};
  b.build(std::vector<std::size_t>(rows.begin(), rows.end()), 0);
  return tree;
}

DecisionTree DecisionTree::fit(const Tensor& x, std::span<const int> y, const ForestConfig& cfg,
                               numerics::SeededRng& rng) {
  std::vector<std::size_t> rows(y.size());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  return fit(x, y, rows, cfg, rng);
}

int DecisionTree::predict(std::span<const double> row) const {
  std::size_t id = 0;
  while (!nodes_[id].is_leaf()) {
    const auto& n = nodes_[id];
    if (static_cast<std::size_t>(n.feature) >= row.size()) throw DimensionError("row is narrower than the tree");
    id = row[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right;
  }
  return majority(nodes_[id].class_counts);
}

std::size_t DecisionTree::depth() const noexcept {
  std::vector<std::size_t> depth(nodes_.size(), 0);
  std::size_t deepest = 0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    deepest = std::max(deepest, depth[i]);
    if (!nodes_[i].is_leaf()) {
      depth[nodes_[i].left] = depth[i] + 1;
      depth[nodes_[i].right] = depth[i] + 1;
    }
  }
  return deepest;
}

RandomForest RandomForest::fit(const Tensor& x, std::span<const int> y, const ForestConfig& cfg) {
  validate(cfg);
  check_xy(x, y);
  RandomForest forest;
  forest.n_classes_ = class_count(y);
  const auto n_trees = static_cast<std::size_t>(cfg.n_trees);
  std::vector<std::optional<DecisionTree>> slots(n_trees);
  util::parallel_for(n_trees, [&](std::size_t t) {
    numerics::SeededRng rng(numerics::derive_seed(cfg.seed, t));
    std::vector<std::size_t> rows(y.size());
    if (cfg.bootstrap) {
      for (auto& r : rows) r = rng.below(y.size());
    } else {
      std::iota(rows.begin(), rows.end(), std::size_t{0});
    }
    slots[t] = DecisionTree::fit(x, y, rows, cfg, rng);
  });
  forest.trees_.reserve(n_trees);
  for (auto& s : slots) forest.trees_.push_back(std::move(*s));
  return forest;
}

int RandomForest::predict(std::span<const double> row) const {
  std::vector<std::size_t> votes(static_cast<std::size_t>(n_classes_), 0);
  for (const auto& t : trees_) ++votes[static_cast<std::size_t>(t.predict(row))];
  return majority(votes);
}

std::vector<int> RandomForest::predict(const Tensor& x) const {
  if (x.rank() != 2) throw DimensionError("features must be [n x d]");
  std::vector<int> out(x.rows());
  for (std::size_t r = 0; r < x.rows(); ++r) out[r] = predict(x.row(r));
  return out;
}

double RandomForest::accuracy(const Tensor& x, std::span<const int> y) const {
  if (x.rank() != 2 || x.rows() != y.size()) throw DimensionError("feature rows and labels differ in length");
  if (y.empty()) throw EmptyInputError("no samples to evaluate");
  const auto pred = predict(x);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < y.size(); ++i) hits += pred[i] == y[i] ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(y.size());
}

}  // namespace iplab::baselines
