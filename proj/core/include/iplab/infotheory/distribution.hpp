#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

namespace iplab::infotheory {

using Symbol = std::int64_t;

enum class LogBase { bits, nats };

/// Probability mass function over integer symbols.
///
/// Entries keep their insertion order, and every reduction iterates in that
/// order. Relabeling symbols therefore changes no floating-point operation,
/// which is what makes the plug-in estimators exactly relabeling-invariant.
class DiscreteDistribution {
 public:
  struct Entry {
    Symbol symbol;
    double prob;
  };

  DiscreteDistribution() = default;

  /// Throws ValidationError on duplicate symbols, probabilities outside [0,1],
  /// or a total that differs from 1 by more than 1e-9.
  static DiscreteDistribution from_probs(std::vector<Entry> entries);

  std::span<const Entry> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  /// 0 for symbols outside the support.
  double prob(Symbol s) const noexcept;
  bool contains(Symbol s) const noexcept { return index_.contains(s); }

 private:
  std::vector<Entry> entries_;
  std::unordered_map<Symbol, std::size_t> index_;
};

struct SymbolPairHash {
  std::size_t operator()(const std::pair<Symbol, Symbol>& p) const noexcept {
    const auto a = static_cast<std::uint64_t>(p.first);
    const auto b = static_cast<std::uint64_t>(p.second);
    return static_cast<std::size_t>(a * 0x9e3779b97f4a7c15ULL ^ (b + 0x7f4a7c159e3779b9ULL + (a << 6) + (a >> 2)));
  }
};

/// Joint mass function p(x, y), insertion-ordered like DiscreteDistribution.
class JointDistribution {
 public:
  struct Cell {
    Symbol x;
    Symbol y;
    double prob;
  };

  JointDistribution() = default;

  /// Same validation rules as DiscreteDistribution::from_probs.
  static JointDistribution from_cells(std::vector<Cell> cells);

  std::span<const Cell> cells() const noexcept { return cells_; }
  double prob(Symbol x, Symbol y) const noexcept;

  /// Marginals ordered by first appearance among the cells.
  const DiscreteDistribution& marginal_x() const noexcept { return marginal_x_; }
  const DiscreteDistribution& marginal_y() const noexcept { return marginal_y_; }

 private:
  std::vector<Cell> cells_;
  std::unordered_map<std::pair<Symbol, Symbol>, std::size_t, SymbolPairHash> index_;
  DiscreteDistribution marginal_x_;
  DiscreteDistribution marginal_y_;
};

/// Empirical distribution of `samples`; symbols in order of first appearance.
DiscreteDistribution plugin_distribution_from_samples(std::span<const Symbol> samples);

/// Empirical joint over the unique (x, y) pairs. Throws DimensionError on
/// length mismatch and EmptyInputError on empty input.
JointDistribution plugin_joint_from_samples(std::span<const Symbol> x, std::span<const Symbol> y);

/// Conditional p(z | y): one distribution over z for each y symbol.
class Channel {
 public:
  struct Row {
    Symbol input;
    DiscreteDistribution output;
  };

  /// Throws ValidationError when a row does not sum to 1 (within 1e-9) or an
  /// input symbol repeats.
  static Channel from_rows(std::vector<std::pair<Symbol, std::vector<DiscreteDistribution::Entry>>> rows);

  std::span<const Row> rows() const noexcept { return rows_; }
  /// Throws ValidationError for inputs outside the channel's domain.
  const DiscreteDistribution& row(Symbol input) const;

 private:
  std::vector<Row> rows_;
  std::unordered_map<Symbol, std::size_t> index_;
};

/// p(x, z) = sum_y p(x, y) p(z | y).
JointDistribution push_through(const JointDistribution& xy, const Channel& z_given_y);

}  // namespace iplab::infotheory
