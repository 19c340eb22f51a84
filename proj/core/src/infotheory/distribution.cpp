#include "iplab/infotheory/distribution.hpp"

#include <cmath>
#include <string>

#include "iplab/error.hpp"

namespace iplab::infotheory {

namespace {

constexpr double kSumTolerance = 1e-9;
constexpr double kRangeSlack = 1e-12;

void check_prob(double p) {
  if (!std::isfinite(p) || p < 0.0 || p > 1.0 + kRangeSlack) {
    throw ValidationError("probability out of [0,1]: " + std::to_string(p));
  }
}

void check_total(double total) {
  if (std::abs(total - 1.0) > kSumTolerance) {
    throw ValidationError("probabilities sum to " + std::to_string(total) + ", expected 1");
  }
}

// Accumulates values per symbol in first-appearance order.
class OrderedAccumulator {
 public:
  void add(Symbol s, double v) {
    auto [it, inserted] = index_.try_emplace(s, entries_.size());
    if (inserted) entries_.push_back({s, 0.0});
    entries_[it->second].prob += v;
  }
  std::vector<DiscreteDistribution::Entry> take() { return std::move(entries_); }

 private:
  std::vector<DiscreteDistribution::Entry> entries_;
  std::unordered_map<Symbol, std::size_t> index_;
};

}  // namespace

DiscreteDistribution DiscreteDistribution::from_probs(std::vector<Entry> entries) {
  DiscreteDistribution d;
  double total = 0.0;
  d.index_.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    check_prob(entries[i].prob);
    if (!d.index_.emplace(entries[i].symbol, i).second) {
      throw ValidationError("duplicate symbol " + std::to_string(entries[i].symbol));
    }
    total += entries[i].prob;
  }
  check_total(total);
  d.entries_ = std::move(entries);
  return d;
}

double DiscreteDistribution::prob(Symbol s) const noexcept {
  auto it = index_.find(s);
  return it == index_.end() ? 0.0 : entries_[it->second].prob;
}

JointDistribution JointDistribution::from_cells(std::vector<Cell> cells) {
  JointDistribution j;
  double total = 0.0;
  j.index_.reserve(cells.size());
  OrderedAccumulator mx, my;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& c = cells[i];
    check_prob(c.prob);
    if (!j.index_.emplace(std::pair{c.x, c.y}, i).second) {
      throw ValidationError("duplicate cell (" + std::to_string(c.x) + ", " + std::to_string(c.y) + ")");
    }
    total += c.prob;
    mx.add(c.x, c.prob);
    my.add(c.y, c.prob);
  }
  check_total(total);
  j.cells_ = std::move(cells);
  j.marginal_x_ = DiscreteDistribution::from_probs(mx.take());
  j.marginal_y_ = DiscreteDistribution::from_probs(my.take());
  return j;
}

double JointDistribution::prob(Symbol x, Symbol y) const noexcept {
  auto it = index_.find({x, y});
  return it == index_.end() ? 0.0 : cells_[it->second].prob;
}

DiscreteDistribution plugin_distribution_from_samples(std::span<const Symbol> samples) {
  if (samples.empty()) throw EmptyInputError("plug-in distribution of zero samples");
  std::vector<DiscreteDistribution::Entry> entries;
  std::vector<std::size_t> counts;
  std::unordered_map<Symbol, std::size_t> index;
  for (Symbol s : samples) {
    auto [it, inserted] = index.try_emplace(s, entries.size());
    if (inserted) {
      entries.push_back({s, 0.0});
      counts.push_back(0);
    }
    ++counts[it->second];
  }
  const auto n = static_cast<double>(samples.size());
  for (std::size_t i = 0; i < entries.size(); ++i) entries[i].prob = static_cast<double>(counts[i]) / n;
  return DiscreteDistribution::from_probs(std::move(entries));
}

JointDistribution plugin_joint_from_samples(std::span<const Symbol> x, std::span<const Symbol> y) {
  if (x.size() != y.size()) {
    throw DimensionError("plug-in joint needs equal lengths, got " + std::to_string(x.size()) + " and " +
                         std::to_string(y.size()));
  }
  if (x.empty()) throw EmptyInputError("plug-in joint of zero samples");
  std::vector<JointDistribution::Cell> cells;
  std::vector<std::size_t> counts;
  std::unordered_map<std::pair<Symbol, Symbol>, std::size_t, SymbolPairHash> index;
  for (std::size_t i = 0; i < x.size(); ++i) {
    auto [it, inserted] = index.try_emplace(std::pair{x[i], y[i]}, cells.size());
    if (inserted) {
      cells.push_back({x[i], y[i], 0.0});
      counts.push_back(0);
    }
    ++counts[it->second];
  }
  const auto n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < cells.size(); ++i) cells[i].prob = static_cast<double>(counts[i]) / n;
  return JointDistribution::from_cells(std::move(cells));
}

Channel Channel::from_rows(std::vector<std::pair<Symbol, std::vector<DiscreteDistribution::Entry>>> rows) {
  Channel ch;
  for (auto& [input, entries] : rows) {
    if (!ch.index_.emplace(input, ch.rows_.size()).second) {
      throw ValidationError("channel row repeated for input " + std::to_string(input));
    }
    try {
      ch.rows_.push_back({input, DiscreteDistribution::from_probs(std::move(entries))});
    } catch (const ValidationError& e) {
      throw ValidationError("channel row " + std::to_string(input) + ": " + e.what());
    }
  }
  return ch;
}

const DiscreteDistribution& Channel::row(Symbol input) const {
  auto it = index_.find(input);
  if (it == index_.end()) throw ValidationError("channel has no row for input " + std::to_string(input));
  return rows_[it->second].output;
}

JointDistribution push_through(const JointDistribution& xy, const Channel& z_given_y) {
  std::vector<JointDistribution::Cell> cells;
  std::unordered_map<std::pair<Symbol, Symbol>, std::size_t, SymbolPairHash> index;
  for (const auto& c : xy.cells()) {
    for (const auto& e : z_given_y.row(c.y).entries()) {
      auto [it, inserted] = index.try_emplace(std::pair{c.x, e.symbol}, cells.size());
      if (inserted) cells.push_back({c.x, e.symbol, 0.0});
      cells[it->second].prob += c.prob * e.prob;
    }
  }
  return JointDistribution::from_cells(std::move(cells));
}

}  // namespace iplab::infotheory
