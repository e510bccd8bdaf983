#pragma once

// Scalar and discrete information-theoretic kernels. All quantities are in
// bits; 0 log 0 is taken as 0 throughout.

#include <cstddef>
#include <span>
#include <vector>

namespace semsec {

using Axes = std::vector<std::size_t>;

/// Joint probability mass function over a rectangular multi-axis alphabet,
/// stored row-major (last axis fastest).
class Pmf {
 public:
  /// Validates nonnegativity, normalization (1e-12) and shape/length agreement.
  Pmf(std::vector<double> probs, std::vector<std::size_t> shape);

  /// Single-axis pmf; shape is {probs.size()}.
  explicit Pmf(std::vector<double> probs);

  static Pmf uniform(std::vector<std::size_t> shape);
  static Pmf point_mass(std::vector<std::size_t> shape, std::size_t flat_index);
  static Pmf bernoulli(double p);

  std::span<const double> probs() const noexcept { return probs_; }
  const std::vector<std::size_t>& shape() const noexcept { return shape_; }
  std::size_t rank() const noexcept { return shape_.size(); }
  std::size_t size() const noexcept { return probs_.size(); }

  double operator[](std::size_t flat) const { return probs_[flat]; }
  double at(std::span<const std::size_t> index) const;

  /// Marginal over `keep`, axes kept in the order given.
  Pmf marginal(const Axes& keep) const;

 private:
  std::vector<double> probs_;
  std::vector<std::size_t> shape_;
};

/// H_b(p) = -p log p - (1-p) log(1-p); throws std::domain_error outside [0,1].
double binary_entropy(double p);

/// Binary convolution a(1-b) + (1-a)b: crossover of two cascaded BSCs.
double star(double a, double b);

/// Shannon entropy of the marginal over `axes` (all axes when empty).
double entropy(const Pmf& p, const Axes& axes = {});

/// H(A | C) = H(A, C) - H(C).
double conditional_entropy(const Pmf& p, const Axes& a, const Axes& cond);

/// I(A;B|C). Round-off in [-1e-9, 0) clamps to zero; anything lower throws
/// ConsistencyError. Overlapping axis sets throw std::invalid_argument.
double mutual_information(const Pmf& p, const Axes& a, const Axes& b, const Axes& cond = {});

/// RHS - LHS of
///   H(S) + H(W|C0) + H(Z|W,C) <= H(S|Z) + H(C) + H(W|C) + H(Z|C0) + I(Z;S|C)
/// for a 5-axis joint ordered (S, Z, C0, C1, W), C = (C0, C1).
double appendix_inequality_slack(const Pmf& p);

}  // namespace semsec
