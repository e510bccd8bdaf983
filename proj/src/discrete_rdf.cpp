#include "semsec/discrete_rdf.hpp"

#include "rdf_detail.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

namespace semsec {
namespace {

struct Maximum {
  double arg = 0.0;
  double value = -std::numeric_limits<double>::infinity();
};

// Brent's method on [a, b], keeping the best point seen so far.
Maximum brent_max(const std::function<double(double)>& f, double a, double b, Maximum best) {
  const auto [x, neg] = boost::math::tools::brent_find_minima([&](double l) { return -f(l); }, a, b, 30);
  if (-neg > best.value) best = {x, -neg};
  return best;
}

// Maximizes a concave function of lambda >= 0: coarse scan over
// {0} u logspace(lo, hi, n), extension past hi while still rising, then
// Brent's method on the bracket around the best grid point. Concavity makes
// the bracket valid however coarse the grid is.
Maximum concave_max(const std::function<double(double)>& f, const RdfOptions& opts) {
  std::vector<double> grid{0.0};
  const int n = std::max(opts.grid_points, 2);
  const double l0 = std::log10(opts.lambda_min);
  const double l1 = std::log10(opts.lambda_max);
  for (int i = 0; i < n; ++i) grid.push_back(std::pow(10.0, l0 + (l1 - l0) * i / (n - 1)));

  std::vector<double> vals;
  for (double x : grid) vals.push_back(f(x));
  std::size_t k = static_cast<std::size_t>(std::max_element(vals.begin(), vals.end()) - vals.begin());
  while (k + 1 == grid.size() && grid.back() < 1e9) {
    grid.push_back(grid.back() * 4.0);
    vals.push_back(f(grid.back()));
    if (vals.back() > vals[k]) k = grid.size() - 1;
  }
  Maximum best{grid[k], vals[k]};
  const double a = k == 0 ? 0.0 : grid[k - 1];
  const double b = k + 1 < grid.size() ? grid[k + 1] : grid[k];
  if (b > a) best = brent_max(f, a, b, best);
  return best;
}

void check_problem(const Pmf& p, const std::vector<DistortionMatrix>& d) {
  if (p.rank() != 1) throw std::invalid_argument("rdf source pmf must be one-dimensional");
  if (d.empty()) throw std::invalid_argument("rdf needs at least one distortion matrix");
  for (const auto& m : d) {
    if (m.rows() != p.size() || m.cols() != d.front().cols()) {
      throw std::invalid_argument("distortion matrix dimensions do not match the source alphabet");
    }
  }
}

BaResult run_ba(const Pmf& p, const std::vector<DistortionMatrix>& d, const std::vector<double>& lambdas,
                const BaOptions& opts, std::vector<double>* warm) {
  const std::size_t n = p.size();
  const std::size_t m = d.front().cols();
  std::vector<double> cost(n * m, 0.0);
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (lambdas[k] == 0.0) continue;
    for (std::size_t i = 0; i < n * m; ++i) cost[i] += lambdas[k] * d[k].entries()[i];
  }
  std::vector<double> cmin(n);
  for (std::size_t x = 0; x < n; ++x) {
    cmin[x] = *std::min_element(cost.begin() + static_cast<std::ptrdiff_t>(x * m),
                                cost.begin() + static_cast<std::ptrdiff_t>((x + 1) * m));
  }
  // Shifted kernel 2^{-(c - cmin)} in (0, 1].
  std::vector<double> kern(n * m);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t j = 0; j < m; ++j) kern[x * m + j] = std::exp2(-(cost[x * m + j] - cmin[x]));
  }

  std::vector<double> q = (warm && warm->size() == m) ? *warm : std::vector<double>(m, 1.0 / static_cast<double>(m));
  // A warm start must not carry exact zeros into a problem that needs them.
  for (double& v : q) v = std::max(v, 1e-300);
  double qs = 0.0;
  for (double v : q) qs += v;
  for (double& v : q) v /= qs;

  BaResult res;
  std::vector<double> z(n), c(m);
  double upper = 0.0, gap = 0.0;
  for (int it = 1; it <= opts.max_iterations; ++it) {
    upper = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
      double s = 0.0;
      for (std::size_t j = 0; j < m; ++j) s += q[j] * kern[x * m + j];
      z[x] = s;
      if (p[x] > 0.0) upper -= p[x] * (std::log2(s) - cmin[x]);
    }
    std::fill(c.begin(), c.end(), 0.0);
    for (std::size_t x = 0; x < n; ++x) {
      if (p[x] == 0.0) continue;
      for (std::size_t j = 0; j < m; ++j) c[j] += p[x] * kern[x * m + j] / z[x];
    }
    gap = std::log2(*std::max_element(c.begin(), c.end()));
    if (opts.keep_trace) res.trace.push_back(upper);
    res.iterations = it;
    if (gap < opts.tolerance) {
      res.converged = true;
      break;
    }
    for (std::size_t j = 0; j < m; ++j) q[j] *= c[j];
  }
  res.objective_upper = upper;
  res.objective_lower = upper - std::max(gap, 0.0);

  // Test channel and its rate / distortions at the final output marginal.
  res.channel.assign(n * m, 0.0);
  res.output.assign(m, 0.0);
  for (std::size_t x = 0; x < n; ++x) {
    double s = 0.0;
    for (std::size_t j = 0; j < m; ++j) s += q[j] * kern[x * m + j];
    for (std::size_t j = 0; j < m; ++j) {
      res.channel[x * m + j] = q[j] * kern[x * m + j] / s;
      res.output[j] += p[x] * res.channel[x * m + j];
    }
  }
  double rate = 0.0;
  res.distortions.assign(d.size(), 0.0);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t j = 0; j < m; ++j) {
      const double w = p[x] * res.channel[x * m + j];
      if (w <= 0.0) continue;
      rate += w * std::log2(res.channel[x * m + j] / res.output[j]);
      for (std::size_t k = 0; k < d.size(); ++k) res.distortions[k] += w * d[k](x, j);
    }
  }
  res.rate = std::max(rate, 0.0);
  if (warm) *warm = q;
  return res;
}

RdfPoint infeasible_point(std::vector<double> targets) {
  RdfPoint pt;
  pt.status = RdfStatus::Infeasible;
  pt.rate = kInfeasible;
  pt.targets = std::move(targets);
  return pt;
}

}  // namespace

namespace detail {

// Product reconstruction alphabet (shat, uhat) flattened as shat * |Uhat| + uhat.
DistortionMatrix lift_first(const DistortionMatrix& d, std::size_t other_cols) {
  std::vector<double> e;
  for (std::size_t r = 0; r < d.rows(); ++r) {
    for (std::size_t a = 0; a < d.cols(); ++a) {
      for (std::size_t b = 0; b < other_cols; ++b) e.push_back(d(r, a));
    }
  }
  return DistortionMatrix(d.rows(), d.cols() * other_cols, std::move(e));
}

DistortionMatrix lift_second(const DistortionMatrix& d, std::size_t first_cols) {
  std::vector<double> e;
  for (std::size_t r = 0; r < d.rows(); ++r) {
    for (std::size_t a = 0; a < first_cols; ++a) {
      for (std::size_t b = 0; b < d.cols(); ++b) e.push_back(d(r, b));
    }
  }
  return DistortionMatrix(d.rows(), first_cols * d.cols(), std::move(e));
}

DistortionMatrix select_rows(const DistortionMatrix& d, const std::vector<std::size_t>& rows) {
  std::vector<double> e;
  for (std::size_t r : rows) {
    if (r >= d.rows()) throw std::invalid_argument("distortion matrix has fewer rows than the source alphabet");
    for (std::size_t j = 0; j < d.cols(); ++j) e.push_back(d(r, j));
  }
  return DistortionMatrix(rows.size(), d.cols(), std::move(e));
}

void check_alphabet(const DistortionMatrix& d, std::size_t alphabet, const char* name) {
  if (d.rows() != alphabet) {
    throw std::invalid_argument(std::string(name) + " rows must match the source alphabet size");
  }
}

SemanticProblem semantic_problem(const DiscreteSemanticSource& src, const DistortionMatrix& d_s,
                                 const DistortionMatrix& d_u, int encoder_case) {
  check_alphabet(d_s, src.s_alphabet(), "d_s");
  check_alphabet(d_u, src.u_alphabet(), "d_u");
  if (encoder_case == 1) {
    const DistortionMatrix dhat = modified_distortion(src, d_s);
    const DistortionMatrix du = select_rows(d_u, src.u_symbols());
    return {src.u_marginal(), {lift_first(dhat, du.cols()), lift_second(du, dhat.cols())}};
  }
  if (encoder_case != 2) throw std::invalid_argument("encoder case must be 1 or 2");
  // Source symbol (s, u) flattened as s * |U| + u, matching the joint's storage.
  std::vector<double> e_s, e_u;
  for (std::size_t s = 0; s < src.s_size(); ++s) {
    for (std::size_t u = 0; u < src.u_size(); ++u) {
      for (std::size_t a = 0; a < d_s.cols(); ++a) {
        for (std::size_t b = 0; b < d_u.cols(); ++b) {
          e_s.push_back(d_s(src.s_symbols()[s], a));
          e_u.push_back(d_u(src.u_symbols()[u], b));
        }
      }
    }
  }
  const std::size_t n = src.s_size() * src.u_size();
  const std::size_t m = d_s.cols() * d_u.cols();
  return {Pmf(std::vector<double>(src.joint().probs().begin(), src.joint().probs().end())),
          {DistortionMatrix(n, m, std::move(e_s)), DistortionMatrix(n, m, std::move(e_u))}};
}

}  // namespace detail

DistortionMatrix::DistortionMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows_ == 0 || cols_ == 0 || entries_.size() != rows_ * cols_) {
    throw std::invalid_argument("distortion matrix shape does not match its entries");
  }
  for (double v : entries_) {
    if (!std::isfinite(v) || v < 0.0) throw std::invalid_argument("distortion entries must be finite and nonnegative");
  }
  for (std::size_t i = 0; i < rows_; ++i) {
    const auto row = entries_.begin() + static_cast<std::ptrdiff_t>(i * cols_);
    row_argmin_.push_back(static_cast<std::size_t>(std::min_element(row, row + static_cast<std::ptrdiff_t>(cols_)) - row));
  }
}

DistortionMatrix DistortionMatrix::hamming(std::size_t n) {
  std::vector<double> e(n * n, 1.0);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 0.0;
  return DistortionMatrix(n, n, std::move(e));
}

DiscreteSemanticSource::DiscreteSemanticSource(const Pmf& joint)
    : joint_(Pmf::uniform({1})), s_alphabet_(0), u_alphabet_(0) {
  if (joint.rank() != 2) throw std::invalid_argument("semantic source joint must have axes (S, U)");
  s_alphabet_ = joint.shape()[0];
  u_alphabet_ = joint.shape()[1];
  const Pmf ms = joint.marginal({0});
  const Pmf mu = joint.marginal({1});
  for (std::size_t s = 0; s < s_alphabet_; ++s) {
    if (ms[s] > 0.0) s_symbols_.push_back(s);
  }
  for (std::size_t u = 0; u < u_alphabet_; ++u) {
    if (mu[u] > 0.0) u_symbols_.push_back(u);
  }
  std::vector<double> probs;
  for (std::size_t s : s_symbols_) {
    for (std::size_t u : u_symbols_) probs.push_back(joint[s * u_alphabet_ + u]);
  }
  joint_ = Pmf(std::move(probs), {s_symbols_.size(), u_symbols_.size()});
  const Pmf ps = joint_.marginal({0});
  const Pmf pu = joint_.marginal({1});
  ps_.assign(ps.probs().begin(), ps.probs().end());
  pu_.assign(pu.probs().begin(), pu.probs().end());
}

DiscreteSemanticSource DiscreteSemanticSource::doubly_symmetric(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::domain_error("crossover must lie in [0, 1]");
  return DiscreteSemanticSource(
      Pmf({0.5 * (1.0 - alpha), 0.5 * alpha, 0.5 * alpha, 0.5 * (1.0 - alpha)}, {2, 2}));
}

BaResult blahut_arimoto(const Pmf& p, const std::vector<DistortionMatrix>& d,
                        const std::vector<double>& lambdas, const BaOptions& opts) {
  check_problem(p, d);
  if (lambdas.size() != d.size()) throw std::invalid_argument("one multiplier per distortion matrix required");
  for (double l : lambdas) {
    if (!(l >= 0.0) || !std::isfinite(l)) throw std::invalid_argument("multipliers must be finite and nonnegative");
  }
  return run_ba(p, d, lambdas, opts, nullptr);
}

bool distortions_feasible(const Pmf& p, const std::vector<DistortionMatrix>& d,
                          const std::vector<double>& targets, double slack) {
  check_problem(p, d);
  if (targets.size() != d.size() || d.size() > 2) {
    throw std::invalid_argument("feasibility check supports one or two constraints");
  }
  const std::size_t n = p.size();
  const std::size_t m = d.front().cols();
  // phi(w) = sum_x p(x) min_j [w d0 + (1-w) d1] - w D0 - (1-w) D1 is concave and
  // piecewise linear; the constraint set is nonempty iff max_w phi <= 0.
  auto phi = [&](double w) {
    double v = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < m; ++j) {
        const double c = d.size() == 1 ? d[0](x, j) : w * d[0](x, j) + (1.0 - w) * d[1](x, j);
        best = std::min(best, c);
      }
      v += p[x] * best;
    }
    return d.size() == 1 ? v - targets[0] : v - w * targets[0] - (1.0 - w) * targets[1];
  };
  if (d.size() == 1) return phi(1.0) <= slack;
  std::vector<double> ws{0.0, 1.0};
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = a + 1; b < m; ++b) {
        // w (d0a - d0b) + (1 - w)(d1a - d1b) = 0
        const double e0 = d[0](x, a) - d[0](x, b);
        const double e1 = d[1](x, a) - d[1](x, b);
        const double den = e0 - e1;
        if (den == 0.0) continue;
        const double w = -e1 / den;
        if (w > 0.0 && w < 1.0) ws.push_back(w);
      }
    }
  }
  double worst = -std::numeric_limits<double>::infinity();
  for (double w : ws) worst = std::max(worst, phi(w));
  return worst <= slack;
}

namespace {

// Distortions of a zero-rate channel (output independent of the source)
// meeting every target, when one exists that mixes at most two outputs.
std::optional<std::vector<double>> zero_rate(const Pmf& p, const std::vector<DistortionMatrix>& d,
                                             const std::vector<double>& targets, double slack) {
  const std::size_t m = d.front().cols(), nk = d.size();
  std::vector<std::vector<double>> e(nk, std::vector<double>(m, 0.0));
  for (std::size_t k = 0; k < nk; ++k) {
    for (std::size_t x = 0; x < p.size(); ++x) {
      for (std::size_t j = 0; j < m; ++j) e[k][j] += p[x] * d[k](x, j);
    }
  }
  for (std::size_t j = 0; j < m; ++j) {
    bool ok = true;
    for (std::size_t k = 0; k < nk; ++k) ok = ok && e[k][j] <= targets[k] + slack;
    if (ok) {
      std::vector<double> out(nk);
      for (std::size_t k = 0; k < nk; ++k) out[k] = e[k][j];
      return out;
    }
  }
  if (nk == 1) return std::nullopt;
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t l = j + 1; l < m; ++l) {
      // weight t on output j: t (e_j - e_l) <= D - e_l for each constraint
      double lo = 0.0, hi = 1.0;
      for (std::size_t k = 0; k < nk; ++k) {
        const double a = e[k][j] - e[k][l], b = targets[k] + slack - e[k][l];
        if (a > 0.0) hi = std::min(hi, b / a);
        else if (a < 0.0) lo = std::max(lo, b / a);
        else if (b < 0.0) hi = -1.0;
      }
      if (lo <= hi) {
        const double t = 0.5 * (lo + hi);
        std::vector<double> out(nk);
        for (std::size_t k = 0; k < nk; ++k) out[k] = t * e[k][j] + (1.0 - t) * e[k][l];
        return out;
      }
    }
  }
  return std::nullopt;
}

struct DualSolution {
  RdfPoint point;
  std::vector<double> channel;
};

DualSolution solve_dual(const Pmf& p, const std::vector<DistortionMatrix>& d, const std::vector<double>& targets,
                        const RdfOptions& opts) {
  // Evaluate with BA's lower objective: every value is a weak-duality bound,
  // and points where BA stalls (tiny multipliers) are penalised, not favoured.
  // Only the final run at the chosen multipliers decides the converged flag.
  // The dual is flat at its maximum, so the search runs BA to a looser gap.
  BaOptions search = opts.ba;
  search.tolerance = std::max(search.tolerance, 1e-10);
  std::vector<double> warm;
  auto dual = [&](const std::vector<double>& lambdas) {
    const BaResult r = run_ba(p, d, lambdas, search, &warm);
    double g = r.objective_lower;
    for (std::size_t k = 0; k < lambdas.size(); ++k) g -= lambdas[k] * targets[k];
    return g;
  };

  std::vector<double> lambdas(d.size(), 0.0);
  if (d.size() == 1) {
    const Maximum best = concave_max([&](double l) { return dual({l}); }, opts);
    lambdas[0] = best.arg;
  } else {
    // The partial maximum over the second multiplier is concave in the first.
    auto inner = [&](double ls) {
      const Maximum b = concave_max([&](double lu) { return dual({ls, lu}); }, opts);
      return b;
    };
    const Maximum outer = concave_max([&](double ls) { return inner(ls).value; }, opts);
    lambdas = {outer.arg, inner(outer.arg).arg};
  }

  warm.clear();
  BaResult fin = run_ba(p, d, lambdas, opts.ba, &warm);
  double g = fin.objective_lower;
  for (std::size_t k = 0; k < lambdas.size(); ++k) g -= lambdas[k] * targets[k];

  DualSolution out;
  RdfPoint& pt = out.point;
  pt.rate = std::max(g, 0.0);
  pt.targets = targets;
  pt.distortions = fin.distortions;
  pt.multipliers = lambdas;
  pt.converged = fin.converged;
  pt.status = pt.converged ? RdfStatus::Ok : RdfStatus::NotConverged;
  out.channel = std::move(fin.channel);
  // A zero multiplier leaves ties in the reconstruction of that component,
  // and BA splits them evenly, which can overshoot a slack constraint. Nudge
  // such multipliers up to pick a tie-break that honours the target.
  auto violated = [&](const std::vector<double>& dist, std::size_t k) {
    return dist[k] > targets[k] + opts.slack;
  };
  for (double eps : {1e-6, 1e-4, 1e-2}) {
    std::vector<double> nudged = lambdas;
    bool any = false;
    for (std::size_t k = 0; k < d.size(); ++k) {
      if (lambdas[k] == 0.0 && violated(pt.distortions, k)) {
        nudged[k] = eps;
        any = true;
      }
    }
    if (!any) break;
    warm.clear();
    BaResult tb = run_ba(p, d, nudged, opts.ba, &warm);
    bool ok = true;
    for (std::size_t k = 0; k < d.size(); ++k) ok = ok && !violated(tb.distortions, k);
    if (ok) {
      pt.distortions = tb.distortions;
      out.channel = std::move(tb.channel);
    }
  }
  return out;
}

double expected(const Pmf& p, const DistortionMatrix& d, const std::vector<double>& channel) {
  double v = 0.0;
  for (std::size_t x = 0; x < p.size(); ++x) {
    for (std::size_t j = 0; j < d.cols(); ++j) v += p[x] * channel[x * d.cols() + j] * d(x, j);
  }
  return v;
}

// Columns of `d` that are identical are interchangeable for the constraint
// d encodes. Sending each such class to one fixed member is a function of
// the reconstruction, so it cannot raise I(X;Xhat), leaves E d unchanged,
// and lets the member be chosen to minimize E other.
std::vector<double> merge_ties(const Pmf& p, const DistortionMatrix& d, const DistortionMatrix& other,
                               const std::vector<double>& channel) {
  const std::size_t n = p.size(), m = d.cols();
  auto same = [&](std::size_t a, std::size_t b) {
    for (std::size_t x = 0; x < n; ++x) {
      if (d(x, a) != d(x, b)) return false;
    }
    return true;
  };
  std::vector<double> out(n * m, 0.0);
  std::vector<bool> done(m, false);
  for (std::size_t j = 0; j < m; ++j) {
    if (done[j]) continue;
    std::vector<std::size_t> cls;
    for (std::size_t l = j; l < m; ++l) {
      if (!done[l] && same(j, l)) {
        cls.push_back(l);
        done[l] = true;
      }
    }
    std::size_t pick = cls.front();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t c : cls) {
      double cost = 0.0;
      for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t l : cls) cost += p[x] * channel[x * m + l] * other(x, c);
      }
      if (cost < best) best = cost, pick = c;
    }
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t l : cls) out[x * m + pick] += channel[x * m + l];
    }
  }
  return out;
}

}  // namespace

RdfPoint rdf_constrained(const Pmf& p, const std::vector<DistortionMatrix>& d,
                         const std::vector<double>& targets, const RdfOptions& opts) {
  check_problem(p, d);
  if (targets.size() != d.size() || d.size() > 2) {
    throw std::invalid_argument("rdf_constrained supports one or two constraints");
  }
  if (!distortions_feasible(p, d, targets, opts.slack)) return infeasible_point(targets);

  if (auto z = zero_rate(p, d, targets, opts.slack)) {
    RdfPoint pt;
    pt.targets = targets;
    pt.distortions = std::move(*z);
    pt.multipliers.assign(d.size(), 0.0);
    return pt;
  }
  if (d.size() == 2) {
    // If the optimum under one constraint already meets the other, that
    // constraint is slack and its multiplier is zero.
    for (std::size_t k : {0u, 1u}) {
      const std::size_t other = 1 - k;
      DualSolution relaxed = solve_dual(p, {d[k]}, {targets[k]}, opts);
      relaxed.channel = merge_ties(p, d[k], d[other], relaxed.channel);
      const double d_other = expected(p, d[other], relaxed.channel);
      if (d_other <= targets[other] + opts.slack) {
        RdfPoint pt = std::move(relaxed.point);
        pt.targets = targets;
        std::vector<double> dist(2), mult(2, 0.0);
        dist[k] = pt.distortions[0];
        dist[other] = d_other;
        mult[k] = pt.multipliers[0];
        pt.distortions = dist;
        pt.multipliers = mult;
        return pt;
      }
    }
  }
  return solve_dual(p, d, targets, opts).point;
}

DistortionMatrix modified_distortion(const DiscreteSemanticSource& src, const DistortionMatrix& d_s) {
  detail::check_alphabet(d_s, src.s_alphabet(), "d_s");
  std::vector<double> e(src.u_size() * d_s.cols(), 0.0);
  for (std::size_t u = 0; u < src.u_size(); ++u) {
    for (std::size_t j = 0; j < d_s.cols(); ++j) {
      double v = 0.0;
      for (std::size_t s = 0; s < src.s_size(); ++s) v += src.p_s_given_u(s, u) * d_s(src.s_symbols()[s], j);
      e[u * d_s.cols() + j] = v;
    }
  }
  return DistortionMatrix(src.u_size(), d_s.cols(), std::move(e));
}

RdfPoint rdf_classic(const Pmf& p_u, const DistortionMatrix& d_u, double D_u, const RdfOptions& opts) {
  return rdf_constrained(p_u, {d_u}, {D_u}, opts);
}

RdfPoint rdf_semantic_case1(const DiscreteSemanticSource& src, const DistortionMatrix& d_s,
                            const DistortionMatrix& d_u, double D_s, double D_u, const RdfOptions& opts) {
  const auto prob = detail::semantic_problem(src, d_s, d_u, 1);
  return rdf_constrained(prob.p, prob.d, {D_s, D_u}, opts);
}

RdfPoint rdf_semantic_case2(const DiscreteSemanticSource& src, const DistortionMatrix& d_s,
                            const DistortionMatrix& d_u, double D_s, double D_u, const RdfOptions& opts) {
  const auto prob = detail::semantic_problem(src, d_s, d_u, 2);
  return rdf_constrained(prob.p, prob.d, {D_s, D_u}, opts);
}

double binary_rdf_obs(double alpha, double D_u) {
  if (!(alpha >= 0.0 && alpha <= 0.5)) throw std::domain_error("alpha must lie in [0, 0.5]");
  if (!(D_u >= 0.0)) throw std::domain_error("distortion must be nonnegative");
  if (D_u > alpha) return 0.0;
  return std::max(binary_entropy(alpha) - binary_entropy(D_u), 0.0);
}

double binary_rdf_sem(double alpha, double D_s, int encoder_case) {
  if (!(alpha >= 0.0 && alpha <= 0.5)) throw std::domain_error("alpha must lie in [0, 0.5]");
  if (!(D_s >= 0.0)) throw std::domain_error("distortion must be nonnegative");
  if (encoder_case == 2) return D_s >= 0.5 ? 0.0 : 1.0 - binary_entropy(D_s);
  if (encoder_case != 1) throw std::invalid_argument("encoder case must be 1 or 2");
  if (D_s >= 0.5) return 0.0;
  if (D_s < alpha) return kInfeasible;
  return 1.0 - binary_entropy((D_s - alpha) / (1.0 - 2.0 * alpha));
}

double binary_rdf_joint(double alpha, double D_s, double D_u, int encoder_case, const RdfOptions& opts) {
  if (encoder_case == 1) {
    const double rs = binary_rdf_sem(alpha, D_s, 1);
    if (std::isinf(rs)) return kInfeasible;
    // U is uniform for the doubly symmetric source.
    return std::max(binary_rdf_obs(0.5, std::min(D_u, 0.5)), rs);
  }
  if (encoder_case != 2) throw std::invalid_argument("encoder case must be 1 or 2");
  const auto src = DiscreteSemanticSource::doubly_symmetric(alpha);
  const auto h = DistortionMatrix::hamming(2);
  const RdfPoint pt = rdf_semantic_case2(src, h, h, D_s, D_u, opts);
  return pt.feasible() ? pt.rate : kInfeasible;
}

}  // namespace semsec
