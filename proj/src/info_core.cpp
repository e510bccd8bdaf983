#include "semsec/info_core.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>

#include "semsec/errors.hpp"

namespace semsec {
namespace {

constexpr double kNormTolerance = 1e-12;
constexpr double kMiClamp = 1e-9;

void require_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error(std::string(name) + " must lie in [0, 1], got " + std::to_string(p));
  }
}

double plogp(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

Axes union_of(const Axes& a, const Axes& b) {
  Axes out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

bool overlaps(const Axes& a, const Axes& b) {
  return std::any_of(a.begin(), a.end(),
                     [&](std::size_t x) { return std::find(b.begin(), b.end(), x) != b.end(); });
}

}  // namespace

Pmf::Pmf(std::vector<double> probs, std::vector<std::size_t> shape)
    : probs_(std::move(probs)), shape_(std::move(shape)) {
  if (shape_.empty()) throw std::invalid_argument("pmf shape must have at least one axis");
  const std::size_t n = std::accumulate(shape_.begin(), shape_.end(), std::size_t{1},
                                        std::multiplies<>());
  if (n != probs_.size() || n == 0) {
    throw std::invalid_argument("pmf shape product " + std::to_string(n) +
                                " does not match storage length " + std::to_string(probs_.size()));
  }
  double total = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw std::invalid_argument("pmf entries must be finite and nonnegative");
    total += p;
  }
  if (std::abs(total - 1.0) > kNormTolerance) {
    throw std::invalid_argument("pmf does not sum to one (sum = " + std::to_string(total) + ")");
  }
}

Pmf::Pmf(std::vector<double> probs) : Pmf(probs, {probs.size()}) {}

Pmf Pmf::uniform(std::vector<std::size_t> shape) {
  const std::size_t n = std::accumulate(shape.begin(), shape.end(), std::size_t{1},
                                        std::multiplies<>());
  return Pmf(std::vector<double>(n, 1.0 / static_cast<double>(n)), std::move(shape));
}

Pmf Pmf::point_mass(std::vector<std::size_t> shape, std::size_t flat_index) {
  const std::size_t n = std::accumulate(shape.begin(), shape.end(), std::size_t{1},
                                        std::multiplies<>());
  if (flat_index >= n) throw std::invalid_argument("point mass index out of range");
  std::vector<double> probs(n, 0.0);
  probs[flat_index] = 1.0;
  return Pmf(std::move(probs), std::move(shape));
}

Pmf Pmf::bernoulli(double p) {
  require_probability(p, "bernoulli parameter");
  return Pmf({1.0 - p, p});
}

double Pmf::at(std::span<const std::size_t> index) const {
  if (index.size() != shape_.size()) throw std::invalid_argument("index rank mismatch");
  std::size_t flat = 0;
  for (std::size_t k = 0; k < shape_.size(); ++k) {
    if (index[k] >= shape_[k]) throw std::out_of_range("pmf index out of range");
    flat = flat * shape_[k] + index[k];
  }
  return probs_[flat];
}

Pmf Pmf::marginal(const Axes& keep) const {
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] >= shape_.size()) throw std::invalid_argument("axis " + std::to_string(keep[i]) + " out of range");
    for (std::size_t j = i + 1; j < keep.size(); ++j) {
      if (keep[i] == keep[j]) throw std::invalid_argument("duplicate axis in marginal");
    }
  }
  if (keep.empty()) return Pmf({1.0});

  std::vector<std::size_t> out_shape;
  for (std::size_t a : keep) out_shape.push_back(shape_[a]);
  const std::size_t out_n = std::accumulate(out_shape.begin(), out_shape.end(), std::size_t{1},
                                            std::multiplies<>());
  std::vector<double> out(out_n, 0.0);

  std::vector<std::size_t> idx(shape_.size(), 0);
  for (std::size_t flat = 0; flat < probs_.size(); ++flat) {
    std::size_t o = 0;
    for (std::size_t a : keep) o = o * shape_[a] + idx[a];
    out[o] += probs_[flat];
    for (std::size_t k = shape_.size(); k-- > 0;) {
      if (++idx[k] < shape_[k]) break;
      idx[k] = 0;
    }
  }
  // Re-normalize away accumulated round-off so the marginal passes validation.
  const double total = std::accumulate(out.begin(), out.end(), 0.0);
  for (double& v : out) v /= total;
  return Pmf(std::move(out), std::move(out_shape));
}

double binary_entropy(double p) {
  require_probability(p, "binary_entropy argument");
  return -plogp(p) - plogp(1.0 - p);
}

double star(double a, double b) {
  require_probability(a, "star lhs");
  require_probability(b, "star rhs");
  return a * (1.0 - b) + (1.0 - a) * b;
}

double entropy(const Pmf& p, const Axes& axes) {
  if (axes.empty()) {
    double h = 0.0;
    for (double v : p.probs()) h -= plogp(v);
    return std::max(h, 0.0);
  }
  return entropy(p.marginal(axes));
}

double conditional_entropy(const Pmf& p, const Axes& a, const Axes& cond) {
  if (overlaps(a, cond)) throw std::invalid_argument("conditional_entropy: overlapping axis sets");
  if (cond.empty()) return entropy(p, a);
  return std::max(entropy(p, union_of(a, cond)) - entropy(p, cond), 0.0);
}

double mutual_information(const Pmf& p, const Axes& a, const Axes& b, const Axes& cond) {
  if (a.empty() || b.empty()) throw std::invalid_argument("mutual_information: empty axis set");
  if (overlaps(a, b) || overlaps(a, cond) || overlaps(b, cond)) {
    throw std::invalid_argument("mutual_information: axis sets must be disjoint");
  }
  const double h_ac = entropy(p, union_of(a, cond));
  const double h_bc = entropy(p, union_of(b, cond));
  const double h_abc = entropy(p, union_of(union_of(a, b), cond));
  const double h_c = cond.empty() ? 0.0 : entropy(p, cond);
  const double mi = h_ac + h_bc - h_abc - h_c;
  if (mi >= 0.0) return mi;
  if (mi >= -kMiClamp) return 0.0;
  throw ConsistencyError("negative mutual information " + std::to_string(mi));
}

double appendix_inequality_slack(const Pmf& p) {
  if (p.rank() != 5) throw std::invalid_argument("appendix inequality needs a 5-axis joint (S,Z,C0,C1,W)");
  enum : std::size_t { S = 0, Z = 1, C0 = 2, C1 = 3, W = 4 };
  const double lhs = entropy(p, {S}) + conditional_entropy(p, {W}, {C0}) +
                     conditional_entropy(p, {Z}, {W, C0, C1});
  const double rhs = conditional_entropy(p, {S}, {Z}) + entropy(p, {C0, C1}) +
                     conditional_entropy(p, {W}, {C0, C1}) + conditional_entropy(p, {Z}, {C0}) +
                     mutual_information(p, {Z}, {S}, {C0, C1});
  return rhs - lhs;
}

}  // namespace semsec
