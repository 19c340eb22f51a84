#include "iplab/infotheory/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <string>

#include "iplab/error.hpp"

namespace iplab::infotheory {

namespace {

double log_in(double v, LogBase base) { return base == LogBase::bits ? std::log2(v) : std::log(v); }

double nats_to_bits(double nats) { return nats / std::numbers::ln2; }

// Plug-in MI in bits from integer co-occurrence counts; every ratio is formed
// from exact counts, so independent or constant symbols give exactly zero.
double counted_mi_bits(std::span<const Symbol> a, std::span<const Symbol> b) {
  std::map<Symbol, std::size_t> na, nb;
  std::map<std::pair<Symbol, Symbol>, std::size_t> nab;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ++na[a[i]];
    ++nb[b[i]];
    ++nab[{a[i], b[i]}];
  }
  const double n = static_cast<double>(a.size());
  double mi = 0.0;
  for (const auto& [key, c] : nab) {
    const double ratio = (static_cast<double>(c) * n) / (static_cast<double>(na[key.first]) * static_cast<double>(nb[key.second]));
    mi += static_cast<double>(c) / n * std::log2(ratio);
  }
  return std::max(0.0, mi);
}

// Squared Euclidean distances between all rows, computed term by term so that
// identical rows give exactly zero.
std::vector<double> pairwise_sq_distances(const numerics::Tensor& m) {
  const std::size_t n = m.rows();
  const std::size_t d = m.cols();
  std::vector<double> dist(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double* a = m.data() + i * d;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double* b = m.data() + j * d;
      double s = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        const double diff = a[k] - b[k];
        s += diff * diff;
      }
      dist[i * n + j] = s;
      dist[j * n + i] = s;
    }
  }
  return dist;
}

// KT estimate in nats over the subset `members` of a precomputed distance matrix.
double kt_nats(const std::vector<double>& dist, std::size_t n, std::span<const std::size_t> members, double noise_var) {
  const std::size_t m = members.size();
  if (m <= 1) return 0.0;
  const double log_m = std::log(static_cast<double>(m));
  const double inv_two_var = 1.0 / (2.0 * noise_var);
  std::vector<double> exponents(m);
  double total = 0.0;
  for (std::size_t a = 0; a < m; ++a) {
    const double* row = dist.data() + members[a] * n;
    double peak = -std::numeric_limits<double>::infinity();
    for (std::size_t b = 0; b < m; ++b) {
      exponents[b] = -row[members[b]] * inv_two_var;
      peak = std::max(peak, exponents[b]);
    }
    double acc = 0.0;
    for (std::size_t b = 0; b < m; ++b) acc += std::exp(exponents[b] - peak);
    const double log_mean = peak + std::log(acc) - log_m;
    total -= log_mean;
  }
  return std::max(0.0, total / static_cast<double>(m));
}

void require_noise_var(double noise_var) {
  if (!(noise_var > 0.0) || !std::isfinite(noise_var)) throw ParameterError("noise_var must be > 0");
}

}  // namespace

double entropy(const DiscreteDistribution& p, LogBase base) {
  double h = 0.0;
  for (const auto& e : p.entries()) {
    if (e.prob > 0.0) h -= e.prob * log_in(e.prob, base);
  }
  return std::max(0.0, h);
}

JointEntropies joint_and_conditional_entropy(const JointDistribution& j, LogBase base) {
  double joint = 0.0, cond = 0.0;
  const auto& px = j.marginal_x();
  for (const auto& c : j.cells()) {
    if (c.prob <= 0.0) continue;
    joint -= c.prob * log_in(c.prob, base);
    cond -= c.prob * log_in(c.prob / px.prob(c.x), base);
  }
  return {std::max(0.0, joint), std::max(0.0, cond)};
}

double mutual_information(const JointDistribution& j, LogBase base) {
  const auto& px = j.marginal_x();
  const auto& py = j.marginal_y();
  double mi = 0.0;
  for (const auto& c : j.cells()) {
    if (c.prob <= 0.0) continue;
    mi += c.prob * log_in(c.prob / (px.prob(c.x) * py.prob(c.y)), base);
  }
  return std::max(0.0, mi);
}

double kl_divergence(const DiscreteDistribution& p, const DiscreteDistribution& q, LogBase base) {
  double d = 0.0;
  for (const auto& e : p.entries()) {
    if (e.prob <= 0.0) continue;
    const double qv = q.prob(e.symbol);
    if (qv <= 0.0) {
      throw InfiniteDivergenceError("q(" + std::to_string(e.symbol) + ") = 0 where p > 0");
    }
    d += e.prob * log_in(e.prob / qv, base);
  }
  return std::max(0.0, d);
}

ActivationSample::ActivationSample(numerics::Tensor matrix, std::vector<int> labels)
    : matrix_(std::move(matrix)), labels_(std::move(labels)) {
  if (matrix_.rank() != 2 || matrix_.rows() != labels_.size()) {
    throw DimensionError("activation matrix " + numerics::shape_string(matrix_.shape()) + " vs " +
                         std::to_string(labels_.size()) + " labels");
  }
}

std::vector<Symbol> bin_rows(const numerics::Tensor& activations, int n_bins) {
  if (n_bins < 2) throw ParameterError("n_bins must be >= 2");
  const std::size_t rows = activations.rows();
  const std::size_t cols = activations.cols();
  if (rows == 0) throw EmptyInputError("binning zero samples");
  const auto values = activations.values();
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = values.empty() ? 0.0 : *lo_it;
  const double span = values.empty() ? 0.0 : *hi_it - lo;

  std::map<std::vector<int>, Symbol> ids;
  std::vector<Symbol> out(rows);
  std::vector<int> key(cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      int bin = 0;
      if (span > 0.0) {
        bin = static_cast<int>(std::floor((values[r * cols + c] - lo) / span * n_bins));
        bin = std::clamp(bin, 0, n_bins - 1);
      }
      key[c] = bin;
    }
    auto [it, inserted] = ids.try_emplace(key, static_cast<Symbol>(ids.size()));
    out[r] = it->second;
  }
  return out;
}

BinnedInformation binned_mi(const ActivationSample& acts, std::span<const Symbol> x_ids, int n_bins) {
  if (acts.samples() == 0) throw EmptyInputError("binned_mi of zero samples");
  if (x_ids.size() != acts.samples()) {
    throw DimensionError("binned_mi: " + std::to_string(x_ids.size()) + " x ids for " +
                         std::to_string(acts.samples()) + " samples");
  }
  const auto m = bin_rows(acts.matrix(), n_bins);
  std::vector<Symbol> y(acts.labels().begin(), acts.labels().end());
  return {counted_mi_bits(x_ids, m), counted_mi_bits(y, m)};
}

double kt_entropy_upper(const numerics::Tensor& activations, double noise_var) {
  require_noise_var(noise_var);
  const std::size_t n = activations.rows();
  if (n <= 1) return 0.0;
  const auto dist = pairwise_sq_distances(activations);
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  return nats_to_bits(kt_nats(dist, n, all, noise_var));
}

double kt_entropy_upper(const ActivationSample& acts, double noise_var) {
  return kt_entropy_upper(acts.matrix(), noise_var);
}

double gaussian_component_entropy(std::size_t dim, double noise_var) {
  require_noise_var(noise_var);
  return nats_to_bits(0.5 * static_cast<double>(dim) * std::log(2.0 * std::numbers::pi * std::numbers::e * noise_var));
}

double kt_mutual_information_labels(const ActivationSample& acts, double noise_var) {
  require_noise_var(noise_var);
  const std::size_t n = acts.samples();
  if (n == 0) throw EmptyInputError("kt mutual information of zero samples");
  const auto dist = pairwise_sq_distances(acts.matrix());

  std::vector<std::size_t> all(n);
  std::map<int, std::vector<std::size_t>> by_label;
  for (std::size_t i = 0; i < n; ++i) {
    all[i] = i;
    by_label[acts.labels()[i]].push_back(i);
  }
  const double h_m = kt_nats(dist, n, all, noise_var);
  double h_m_given_y = 0.0;
  for (const auto& [label, members] : by_label) {
    const double weight = static_cast<double>(members.size()) / static_cast<double>(n);
    h_m_given_y += weight * kt_nats(dist, n, members, noise_var);
  }
  return nats_to_bits(h_m - h_m_given_y);
}

double dpi_margin(const JointDistribution& xy, const Channel& z_given_y) {
  const auto xz = push_through(xy, z_given_y);
  return mutual_information(xy) - mutual_information(xz);
}

double ib_objective(double i_zx, double i_zy, double beta) {
  if (!(beta > 0.0)) throw ParameterError("information bottleneck beta must be > 0");
  return std::abs(i_zx - beta * i_zy);
}

double mni_ratio(double i_yz, double i_xz) {
  if (i_xz == 0.0) throw UndefinedRatioError("MNI ratio with I(X;Z) = 0");
  if (i_xz < 0.0) throw ParameterError("MNI ratio needs I(X;Z) > 0");
  return i_yz / i_xz;
}

}  // namespace iplab::infotheory
