#pragma once

#include <span>
#include <vector>

#include "iplab/infotheory/distribution.hpp"
#include "iplab/numerics/tensor.hpp"

namespace iplab::infotheory {

inline constexpr double kDefaultNoiseVariance = 1e-3;
inline constexpr int kDefaultBins = 30;

/// -sum p log p, with 0 log 0 = 0.
double entropy(const DiscreteDistribution& p, LogBase base = LogBase::bits);

struct JointEntropies {
  double joint;                 // H(X, Y)
  double conditional_y_given_x; // H(Y | X)
};

JointEntropies joint_and_conditional_entropy(const JointDistribution& j, LogBase base = LogBase::bits);

/// sum p(x,y) log(p(x,y) / (p(x) p(y))).
double mutual_information(const JointDistribution& j, LogBase base = LogBase::bits);

/// D(p || q). Throws InfiniteDivergenceError when q vanishes on p's support.
double kl_divergence(const DiscreteDistribution& p, const DiscreteDistribution& q, LogBase base = LogBase::bits);

/// Post-activation matrix [samples x units] with one label per row.
class ActivationSample {
 public:
  /// Throws DimensionError when labels.size() != matrix.rows().
  ActivationSample(numerics::Tensor matrix, std::vector<int> labels);

  const numerics::Tensor& matrix() const noexcept { return matrix_; }
  std::span<const int> labels() const noexcept { return labels_; }
  std::size_t samples() const noexcept { return labels_.size(); }

 private:
  numerics::Tensor matrix_;
  std::vector<int> labels_;
};

/// Uniform bins over [min, max] of the whole matrix; each row's bin vector is
/// mapped to one symbol (numbered by first appearance). A constant matrix maps
/// every row to the same symbol.
std::vector<Symbol> bin_rows(const numerics::Tensor& activations, int n_bins);

struct BinnedInformation {
  double i_xm;  // bits
  double i_ym;  // bits
};

/// Plug-in I(X;M) and I(Y;M) on binned activations, X given by `x_ids`.
BinnedInformation binned_mi(const ActivationSample& acts, std::span<const Symbol> x_ids, int n_bins = kDefaultBins);

/// Pairwise-KL upper bound of the entropy of an equal-weight mixture of
/// isotropic Gaussians centred on the rows of `activations`:
///   -(1/N) sum_i ln (1/N) sum_j exp(-||m_i - m_j||^2 / (2 noise_var)).
/// Returned in bits. The shared component entropy d/2 ln(2 pi e noise_var)
/// is not included; see gaussian_component_entropy.
double kt_entropy_upper(const numerics::Tensor& activations, double noise_var = kDefaultNoiseVariance);
double kt_entropy_upper(const ActivationSample& acts, double noise_var = kDefaultNoiseVariance);

/// Entropy in bits of one isotropic Gaussian component of dimension `dim`.
double gaussian_component_entropy(std::size_t dim, double noise_var);

/// H(M) - sum_y p(y) H(M | Y = y), each term from kt_entropy_upper; bits.
/// Bounded above by H(Y). Not clamped below.
double kt_mutual_information_labels(const ActivationSample& acts, double noise_var = kDefaultNoiseVariance);

/// I(X;Y) - I(X;Z) for Z drawn from `z_given_y` on Y only.
double dpi_margin(const JointDistribution& xy, const Channel& z_given_y);

/// |I(Z;X) - beta I(Z;Y)|; beta must be > 0.
double ib_objective(double i_zx, double i_zy, double beta);

/// I(Y;Z) / I(X;Z). Throws UndefinedRatioError when I(X;Z) == 0.
double mni_ratio(double i_yz, double i_xz);

}  // namespace iplab::infotheory
