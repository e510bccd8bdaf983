#pragma once

// Labeled covariance matrices and the Gaussian entropy / mutual-information
// kernels built on them.

#include <Eigen/Dense>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "semsec/info_core.hpp"

namespace semsec {

/// Symmetric positive semidefinite matrix with one name per coordinate.
/// Construction symmetrizes, then rejects asymmetry above 1e-10 and
/// eigenvalues below -1e-9; it never repairs a failing matrix.
class CovMatrix {
 public:
  static constexpr double kSymmetryTolerance = 1e-10;
  static constexpr double kPsdFloor = -1e-9;

  CovMatrix(Eigen::MatrixXd entries, std::vector<std::string> labels);

  /// Unlabeled convenience constructor; coordinates are named "x0", "x1", ...
  explicit CovMatrix(Eigen::MatrixXd entries);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
  const Eigen::MatrixXd& entries() const noexcept { return entries_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  double operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }

  std::size_t index_of(std::string_view label) const;
  Axes axes(std::initializer_list<std::string_view> names) const;
  double min_eigenvalue() const;

  /// Sub-covariance on the given coordinates, labels carried along.
  CovMatrix block(const Axes& coords) const;

  /// Returns true iff `m` is symmetric and PSD within the class tolerances.
  static bool is_valid(const Eigen::MatrixXd& m);

 private:
  Eigen::MatrixXd entries_;
  std::vector<std::string> labels_;
};

/// Conditional covariance Sigma_T - Sigma_TG Sigma_G^{-1} Sigma_GT. A given block
/// with condition number above 1e12 is regularized by +1e-12 I.
CovMatrix schur_conditional(const CovMatrix& cov, const Axes& target, const Axes& given);

/// 1/2 log2((2 pi e)^d |Sigma|); -inf for a singular matrix.
double gaussian_entropy(const CovMatrix& cov);

/// I(A;B|C) for jointly Gaussian coordinates, computed from the canonical
/// correlations of the conditional covariance. Coordinates of A or B that
/// are deterministic given C contribute nothing; a perfectly correlated pair
/// of nondegenerate directions throws NumericalError (infinite information).
double gaussian_mi(const CovMatrix& cov, const Axes& a, const Axes& b, const Axes& cond = {});

}  // namespace semsec
