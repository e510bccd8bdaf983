#include "semsec/cov_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "semsec/errors.hpp"

namespace semsec {
namespace {

constexpr double kConditionLimit = 1e12;
constexpr double kRegularizer = 1e-12;
// Eigen-directions of a conditional covariance below this (relative) level are
// treated as deterministic.
constexpr double kDegenerateRelative = 1e-11;
constexpr double kUnitCorrelation = 1e-13;

Eigen::MatrixXd pick(const Eigen::MatrixXd& m, const Axes& rows, const Axes& cols) {
  Eigen::MatrixXd out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = m(rows[i], cols[j]);
  }
  return out;
}

void check_axes(const Axes& axes, std::size_t dim, const char* what) {
  for (std::size_t i = 0; i < axes.size(); ++i) {
    if (axes[i] >= dim) throw std::invalid_argument(std::string(what) + ": coordinate out of range");
    for (std::size_t j = i + 1; j < axes.size(); ++j) {
      if (axes[i] == axes[j]) throw std::invalid_argument(std::string(what) + ": duplicate coordinate");
    }
  }
}

void check_disjoint(const Axes& a, const Axes& b, const char* what) {
  for (std::size_t x : a) {
    if (std::find(b.begin(), b.end(), x) != b.end()) {
      throw std::invalid_argument(std::string(what) + ": coordinate sets must be disjoint");
    }
  }
}

// Conditional covariance of `target` given `given` on a raw matrix.
Eigen::MatrixXd conditional(const Eigen::MatrixXd& m, const Axes& target, const Axes& given) {
  Eigen::MatrixXd s_tt = pick(m, target, target);
  if (given.empty()) return s_tt;
  Eigen::MatrixXd s_gg = pick(m, given, given);
  const Eigen::MatrixXd s_tg = pick(m, target, given);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s_gg, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (lo <= 0.0 || hi / lo > kConditionLimit) {
    s_gg.diagonal().array() += kRegularizer;
    if (lo + kRegularizer <= 0.0) throw NumericalError("conditioning block is singular after regularization");
  }
  const Eigen::LDLT<Eigen::MatrixXd> ldlt(s_gg);
  if (ldlt.info() != Eigen::Success) throw NumericalError("conditioning block factorization failed");
  Eigen::MatrixXd out = s_tt - s_tg * ldlt.solve(s_tg.transpose());
  return 0.5 * (out + out.transpose());
}

// Whitening map onto the nondegenerate eigen-directions of a covariance.
Eigen::MatrixXd whitener(const Eigen::MatrixXd& cov, double scale) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  const double floor = kDegenerateRelative * std::max(scale, 1e-300);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < cov.rows(); ++i) {
    if (eig.eigenvalues()(i) > floor) keep.push_back(i);
  }
  Eigen::MatrixXd w(cov.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) {
    w.col(static_cast<Eigen::Index>(k)) =
        eig.eigenvectors().col(keep[k]) / std::sqrt(eig.eigenvalues()(keep[k]));
  }
  return w;
}

}  // namespace

CovMatrix::CovMatrix(Eigen::MatrixXd entries, std::vector<std::string> labels)
    : entries_(std::move(entries)), labels_(std::move(labels)) {
  if (entries_.rows() == 0 || entries_.rows() != entries_.cols()) {
    throw std::invalid_argument("covariance matrix must be square and nonempty");
  }
  if (labels_.size() != dim()) throw std::invalid_argument("covariance label count does not match dimension");
  if (!entries_.allFinite()) throw std::invalid_argument("covariance entries must be finite");
  const double asym = (entries_ - entries_.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTolerance) {
    throw std::invalid_argument("covariance matrix is not symmetric (max asymmetry " + std::to_string(asym) + ")");
  }
  entries_ = 0.5 * (entries_ + entries_.transpose());
  const double lo = min_eigenvalue();
  if (lo < kPsdFloor) {
    throw std::invalid_argument("covariance matrix is not positive semidefinite (min eigenvalue " +
                                std::to_string(lo) + ")");
  }
}

CovMatrix::CovMatrix(Eigen::MatrixXd entries)
    : CovMatrix(entries, [&] {
        std::vector<std::string> names;
        for (Eigen::Index i = 0; i < entries.rows(); ++i) names.push_back("x" + std::to_string(i));
        return names;
      }()) {}

std::size_t CovMatrix::index_of(std::string_view label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw std::invalid_argument("unknown coordinate '" + std::string(label) + "'");
  return static_cast<std::size_t>(it - labels_.begin());
}

Axes CovMatrix::axes(std::initializer_list<std::string_view> names) const {
  Axes out;
  for (auto n : names) out.push_back(index_of(n));
  return out;
}

double CovMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(entries_, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

CovMatrix CovMatrix::block(const Axes& coords) const {
  check_axes(coords, dim(), "block");
  std::vector<std::string> names;
  for (std::size_t c : coords) names.push_back(labels_[c]);
  return CovMatrix(pick(entries_, coords, coords), std::move(names));
}

bool CovMatrix::is_valid(const Eigen::MatrixXd& m) {
  if (m.rows() == 0 || m.rows() != m.cols() || !m.allFinite()) return false;
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > kSymmetryTolerance) return false;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff() >= kPsdFloor;
}

CovMatrix schur_conditional(const CovMatrix& cov, const Axes& target, const Axes& given) {
  check_axes(target, cov.dim(), "schur_conditional target");
  check_axes(given, cov.dim(), "schur_conditional given");
  check_disjoint(target, given, "schur_conditional");
  if (target.empty()) throw std::invalid_argument("schur_conditional: empty target");
  std::vector<std::string> names;
  for (std::size_t t : target) names.push_back(cov.labels()[t]);
  try {
    return CovMatrix(conditional(cov.entries(), target, given), std::move(names));
  } catch (const std::invalid_argument& e) {
    throw ConsistencyError(std::string("conditional covariance left the PSD cone: ") + e.what());
  }
}

double gaussian_entropy(const CovMatrix& cov) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov.entries(), Eigen::EigenvaluesOnly);
  double log_det = 0.0;
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
    const double v = eig.eigenvalues()(i);
    if (v <= 0.0) return -std::numeric_limits<double>::infinity();
    log_det += std::log2(v);
  }
  const double d = static_cast<double>(cov.dim());
  return 0.5 * (d * std::log2(2.0 * std::numbers::pi * std::numbers::e) + log_det);
}

double gaussian_mi(const CovMatrix& cov, const Axes& a, const Axes& b, const Axes& cond) {
  check_axes(a, cov.dim(), "gaussian_mi A");
  check_axes(b, cov.dim(), "gaussian_mi B");
  check_axes(cond, cov.dim(), "gaussian_mi C");
  check_disjoint(a, b, "gaussian_mi");
  check_disjoint(a, cond, "gaussian_mi");
  check_disjoint(b, cond, "gaussian_mi");
  if (a.empty() || b.empty()) throw std::invalid_argument("gaussian_mi: empty coordinate set");

  Axes ab = a;
  ab.insert(ab.end(), b.begin(), b.end());
  const Eigen::MatrixXd m = conditional(cov.entries(), ab, cond);
  const auto na = static_cast<Eigen::Index>(a.size());
  const auto nb = static_cast<Eigen::Index>(b.size());

  const double scale = cov.entries().diagonal().cwiseAbs().maxCoeff();
  const Eigen::MatrixXd wa = whitener(m.topLeftCorner(na, na), scale);
  const Eigen::MatrixXd wb = whitener(m.bottomRightCorner(nb, nb), scale);
  if (wa.cols() == 0 || wb.cols() == 0) return 0.0;

  const Eigen::MatrixXd cross = wa.transpose() * m.topRightCorner(na, nb) * wb;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(cross);
  double mi = 0.0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    const double rho = std::min(svd.singularValues()(i), 1.0);
    const double one_minus = 1.0 - rho * rho;
    if (one_minus <= kUnitCorrelation) {
      throw NumericalError("gaussian_mi: perfectly correlated coordinates (infinite information)");
    }
    mi -= 0.5 * std::log2(one_minus);
  }
  return std::max(mi, 0.0);
}

}  // namespace semsec
