#include <algorithm>
#include <limits>
#include <cmath>
#include <stdexcept>

#include "rdf_detail.hpp"
#include "semsec/discrete_rdf.hpp"

namespace semsec {
namespace {

constexpr double kBudget = 2e7;
constexpr double kSlack = 1e-9;

double count_points(std::size_t n, std::size_t m, int level) {
  // Compositions of `level` into m parts, raised to the number of rows.
  double per_row = 1.0;
  for (std::size_t k = 1; k < m; ++k) per_row = per_row * static_cast<double>(level + static_cast<int>(k)) / static_cast<double>(k);
  return std::pow(per_row, static_cast<double>(n));
}

std::vector<std::vector<int>> compositions(int total, std::size_t parts) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(parts, 0);
  auto rec = [&](auto&& self, std::size_t k, int left) -> void {
    if (k + 1 == parts) {
      cur[k] = left;
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      cur[k] = v;
      self(self, k + 1, left - v);
    }
  };
  rec(rec, 0, total);
  return out;
}

double xlogx(double v) { return v > 0.0 ? v * std::log2(v) : 0.0; }

class Lattice {
 public:
  Lattice(const Pmf& p, const std::vector<DistortionMatrix>& d, const std::vector<double>& targets)
      : p_(p), d_(d), targets_(targets), n_(p.size()), m_(d.front().cols()) {}

  std::size_t rows() const { return n_; }
  std::size_t cols() const { return m_; }

  struct Eval {
    bool feasible = false;
    double rate = 0.0;
    std::vector<double> dist;
  };

  Eval evaluate(const std::vector<int>& counts, int level) const {
    Eval e;
    e.dist.assign(d_.size(), 0.0);
    std::vector<double> r(m_, 0.0);
    double neg = 0.0;
    for (std::size_t x = 0; x < n_; ++x) {
      for (std::size_t j = 0; j < m_; ++j) {
        const double q = static_cast<double>(counts[x * m_ + j]) / level;
        if (q == 0.0) continue;
        neg += p_[x] * xlogx(q);
        r[j] += p_[x] * q;
        for (std::size_t k = 0; k < d_.size(); ++k) e.dist[k] += p_[x] * q * d_[k](x, j);
      }
    }
    double hr = 0.0;
    for (double v : r) hr -= xlogx(v);
    e.rate = std::max(neg + hr, 0.0);
    e.feasible = true;
    for (std::size_t k = 0; k < d_.size(); ++k) e.feasible = e.feasible && e.dist[k] <= targets_[k] + kSlack;
    return e;
  }

  // Exhaustive scan at `level`; returns false if no lattice point is feasible.
  bool exhaustive(int level, std::vector<int>& best_counts, double& best_rate) const {
    const auto comps = compositions(level, m_);
    const std::size_t nc = comps.size();
    const std::size_t nk = d_.size();
    // Per-row, per-composition contributions.
    std::vector<double> neg(n_ * nc), dist(n_ * nc * nk), mass(n_ * nc * m_);
    std::vector<double> row_min(n_ * nk, std::numeric_limits<double>::infinity());
    for (std::size_t x = 0; x < n_; ++x) {
      for (std::size_t c = 0; c < nc; ++c) {
        double ng = 0.0;
        for (std::size_t j = 0; j < m_; ++j) {
          const double q = static_cast<double>(comps[c][j]) / level;
          ng += xlogx(q);
          mass[(x * nc + c) * m_ + j] = p_[x] * q;
          for (std::size_t k = 0; k < nk; ++k) dist[(x * nc + c) * nk + k] += p_[x] * q * d_[k](x, j);
        }
        neg[x * nc + c] = p_[x] * ng;
        for (std::size_t k = 0; k < nk; ++k) row_min[x * nk + k] = std::min(row_min[x * nk + k], dist[(x * nc + c) * nk + k]);
      }
    }
    // Cheapest achievable distortion of rows x.. n-1.
    std::vector<double> tail_min((n_ + 1) * nk, 0.0);
    for (std::size_t x = n_; x-- > 0;) {
      for (std::size_t k = 0; k < nk; ++k) tail_min[x * nk + k] = tail_min[(x + 1) * nk + k] + row_min[x * nk + k];
    }

    best_rate = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> choice(n_, 0), best_choice;
    std::vector<double> acc_d((n_ + 1) * nk, 0.0), acc_r((n_ + 1) * m_, 0.0), acc_n(n_ + 1, 0.0);
    auto rec = [&](auto&& self, std::size_t x) -> void {
      if (x == n_) {
        double hr = 0.0;
        for (std::size_t j = 0; j < m_; ++j) hr -= xlogx(acc_r[n_ * m_ + j]);
        const double rate = acc_n[n_] + hr;
        if (rate < best_rate - 1e-15) {
          best_rate = rate;
          best_choice = choice;
        }
        return;
      }
      for (std::size_t c = 0; c < nc; ++c) {
        bool ok = true;
        for (std::size_t k = 0; k < nk; ++k) {
          const double v = acc_d[x * nk + k] + dist[(x * nc + c) * nk + k];
          acc_d[(x + 1) * nk + k] = v;
          if (v + tail_min[(x + 1) * nk + k] > targets_[k] + kSlack) ok = false;
        }
        if (!ok) continue;
        for (std::size_t j = 0; j < m_; ++j) acc_r[(x + 1) * m_ + j] = acc_r[x * m_ + j] + mass[(x * nc + c) * m_ + j];
        acc_n[x + 1] = acc_n[x] + neg[x * nc + c];
        choice[x] = c;
        self(self, x + 1);
      }
    };
    rec(rec, 0);
    if (best_choice.empty()) return false;
    best_counts.assign(n_ * m_, 0);
    for (std::size_t x = 0; x < n_; ++x) {
      for (std::size_t j = 0; j < m_; ++j) best_counts[x * m_ + j] = comps[best_choice[x]][j];
    }
    best_rate = std::max(best_rate, 0.0);
    return true;
  }

  // Candidate generator for lattices too large to enumerate: for each pair of
  // multipliers on a fixed grid, alternate an exhaustive per-row minimization
  // of D(Q_x || r) + lambda . d(x, .) over the lattice with r <- output of Q.
  // Every feasible iterate is scored by its exact mutual information.
  void lagrangian_seeds(int level, std::vector<int>& best_counts, double& best_rate) const {
    const auto comps = compositions(level, m_);
    const std::size_t nc = comps.size(), nk = d_.size();
    std::vector<double> neg(nc), qv(nc * m_), dist(n_ * nc * nk, 0.0);
    for (std::size_t c = 0; c < nc; ++c) {
      double ng = 0.0;
      for (std::size_t j = 0; j < m_; ++j) {
        const double q = static_cast<double>(comps[c][j]) / level;
        qv[c * m_ + j] = q;
        ng += xlogx(q);
        for (std::size_t x = 0; x < n_; ++x) {
          for (std::size_t k = 0; k < nk; ++k) dist[(x * nc + c) * nk + k] += q * d_[k](x, j);
        }
      }
      neg[c] = ng;
    }
    std::vector<double> grid{0.0};
    for (int i = 0; i < 13; ++i) grid.push_back(std::pow(10.0, -2.0 + 4.0 * i / 12.0));
    std::vector<std::size_t> pick(n_);
    std::vector<double> r(m_), logr(m_);
    std::vector<int> counts(n_ * m_);
    auto lambda_at = [&](std::size_t idx, std::size_t k) {
      return nk == 1 ? grid[idx] : (k == 0 ? grid[idx / grid.size()] : grid[idx % grid.size()]);
    };
    const std::size_t pairs = nk == 1 ? grid.size() : grid.size() * grid.size();
    for (std::size_t li = 0; li < pairs; ++li) {
      std::fill(r.begin(), r.end(), 1.0 / static_cast<double>(m_));
      for (int it = 0; it < 30; ++it) {
        for (std::size_t j = 0; j < m_; ++j) logr[j] = std::log2(std::max(r[j], 1e-300));
        for (std::size_t x = 0; x < n_; ++x) {
          double best = std::numeric_limits<double>::infinity();
          for (std::size_t c = 0; c < nc; ++c) {
            double v = neg[c];
            for (std::size_t j = 0; j < m_; ++j) {
              if (qv[c * m_ + j] > 0.0) v -= qv[c * m_ + j] * logr[j];
            }
            for (std::size_t k = 0; k < nk; ++k) v += lambda_at(li, k) * dist[(x * nc + c) * nk + k];
            if (v < best) {
              best = v;
              pick[x] = c;
            }
          }
        }
        std::fill(r.begin(), r.end(), 0.0);
        for (std::size_t x = 0; x < n_; ++x) {
          for (std::size_t j = 0; j < m_; ++j) {
            counts[x * m_ + j] = comps[pick[x]][j];
            r[j] += p_[x] * qv[pick[x] * m_ + j];
          }
        }
        const Eval e = evaluate(counts, level);
        if (e.feasible && e.rate < best_rate) {
          best_rate = e.rate;
          best_counts = counts;
        }
      }
    }
  }

  // Local search from `counts`. Neighbourhood: every combination of at most
  // one transfer of `step` units per row (steps halving down to one), and
  // every pair of rows with independent power-of-two transfers in each.
  double descend(std::vector<int>& counts, int level) const {
    std::vector<std::pair<std::size_t, std::size_t>> opts{{0, 0}};  // (0, 0) = row untouched
    for (std::size_t a = 0; a < m_; ++a) {
      for (std::size_t b = 0; b < m_; ++b) {
        if (a != b) opts.push_back({a, b});
      }
    }
    std::vector<int> steps;
    for (int k = 1; k <= level; k *= 2) steps.push_back(k);

    double cur = evaluate(counts, level).rate;
    std::vector<int> trial, best_counts;
    auto consider = [&](double& best) {
      const Eval e = evaluate(trial, level);
      if (e.feasible && e.rate < best) {
        best = e.rate;
        best_counts = trial;
      }
    };
    auto move = [&](std::size_t row, std::size_t opt, int step) {
      const auto [a, b] = opts[opt];
      int& from = trial[row * m_ + a];
      if (from < step) return false;
      from -= step;
      trial[row * m_ + b] += step;
      return true;
    };
    std::vector<std::size_t> pick(n_);
    for (;;) {
      double best = cur - 1e-13;
      best_counts.clear();
      for (int step = std::max(1, level / 4); step >= 1; step /= 2) {
        std::fill(pick.begin(), pick.end(), 0);
        for (;;) {
          std::size_t x = 0;
          while (x < n_ && ++pick[x] == opts.size()) pick[x++] = 0;
          if (x == n_) break;
          trial = counts;
          bool ok = true;
          for (std::size_t row = 0; row < n_ && ok; ++row) {
            if (pick[row] != 0) ok = move(row, pick[row], step);
          }
          if (ok) consider(best);
        }
      }
      for (std::size_t x1 = 0; x1 < n_; ++x1) {
        for (std::size_t x2 = x1 + 1; x2 < n_; ++x2) {
          for (std::size_t o1 = 1; o1 < opts.size(); ++o1) {
            for (std::size_t o2 = 1; o2 < opts.size(); ++o2) {
              for (int k1 : steps) {
                for (int k2 : steps) {
                  trial = counts;
                  if (move(x1, o1, k1) && move(x2, o2, k2)) consider(best);
                }
              }
            }
          }
        }
      }
      if (best_counts.empty()) break;
      counts = best_counts;
      cur = best;
    }
    return std::max(cur, 0.0);
  }

  // Exhaustive when the lattice fits the budget. Otherwise the result at the
  // largest proper divisor of `level` (scaled up) competes with lattice
  // Lagrangian candidates, and the winner is refined by local search; the
  // coarser result is a candidate, so refining never loses ground.
  bool solve(int level, std::vector<int>& counts, double& rate) const {
    if (count_points(n_, m_, level) <= kBudget || level == 1) return exhaustive(level, counts, rate);
    int div = 1;
    for (int k = level / 2; k >= 1; --k) {
      if (level % k == 0) {
        div = k;
        break;
      }
    }
    if (!solve(div, counts, rate)) return false;
    for (int& c : counts) c *= level / div;
    rate = evaluate(counts, level).rate;
    std::vector<int> seed;
    double seed_rate = std::numeric_limits<double>::infinity();
    lagrangian_seeds(level, seed, seed_rate);
    std::vector<int> alt = counts;
    const double from_coarse = descend(alt, level);
    if (!seed.empty()) {
      const double from_seed = descend(seed, level);
      if (from_seed < from_coarse) {
        counts = seed;
        rate = from_seed;
        return true;
      }
    }
    counts = alt;
    rate = from_coarse;
    return true;
  }

  std::vector<double> output(const std::vector<int>& counts, int level) const {
    std::vector<double> r(m_, 0.0);
    for (std::size_t x = 0; x < n_; ++x) {
      for (std::size_t j = 0; j < m_; ++j) r[j] += p_[x] * counts[x * m_ + j] / level;
    }
    return r;
  }

 private:
  const Pmf& p_;
  const std::vector<DistortionMatrix>& d_;
  const std::vector<double>& targets_;
  std::size_t n_, m_;
};

// For any multipliers lambda >= 0 and output distribution r > 0,
//   R(D) >= -sum_x p(x) log c_x - log max_j sum_x p(x) 2^{-lambda.d(x,j)} / c_x - lambda.D
// with c_x = sum_j r_j 2^{-lambda.d(x,j)}.
double lower_certificate(const Pmf& p, const std::vector<DistortionMatrix>& d, const std::vector<double>& targets,
                         std::vector<double> r) {
  const std::size_t n = p.size(), m = r.size(), nk = d.size();
  for (double& v : r) v = 0.999 * v + 0.001 / static_cast<double>(m);
  std::vector<double> grid{0.0};
  for (int i = 0; i <= 120; ++i) grid.push_back(std::pow(10.0, -3.0 + 6.0 * i / 120.0));
  const std::size_t pairs = nk == 1 ? grid.size() : grid.size() * grid.size();
  std::vector<double> w(n * m), c(n);
  double best = 0.0;
  for (std::size_t li = 0; li < pairs; ++li) {
    const double l0 = nk == 1 ? grid[li] : grid[li / grid.size()];
    const double l1 = nk == 1 ? 0.0 : grid[li % grid.size()];
    double value = -l0 * targets[0] - (nk == 1 ? 0.0 : l1 * targets[1]);
    for (std::size_t x = 0; x < n; ++x) {
      c[x] = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        const double cost = l0 * d[0](x, j) + (nk == 1 ? 0.0 : l1 * d[1](x, j));
        w[x * m + j] = std::exp2(-cost);
        c[x] += r[j] * w[x * m + j];
      }
      if (p[x] > 0.0) value -= p[x] * std::log2(c[x]);
    }
    double cmax = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      double cj = 0.0;
      for (std::size_t x = 0; x < n; ++x) cj += p[x] * w[x * m + j] / c[x];
      cmax = std::max(cmax, cj);
    }
    best = std::max(best, value - std::log2(cmax));
  }
  return best;
}

RdfPoint search(const Pmf& p, const std::vector<DistortionMatrix>& d, const std::vector<double>& targets,
                int grid) {
  if (grid < 2 || grid > 21) throw std::invalid_argument("brute-force grid must have 2..21 points per axis");
  const int level = grid - 1;
  const Lattice lat(p, d, targets);
  RdfPoint pt;
  pt.targets = targets;
  std::vector<int> counts;
  double rate = 0.0;
  if (!lat.solve(level, counts, rate)) {
    pt.status = RdfStatus::Infeasible;
    pt.rate = kInfeasible;
    return pt;
  }
  pt.rate = rate;
  pt.distortions = lat.evaluate(counts, level).dist;
  pt.lower_bound = std::min(lower_certificate(p, d, targets, lat.output(counts, level)), rate);
  return pt;
}

}  // namespace

RdfPoint brute_force_rdf(const DiscreteSemanticSource& src, const DistortionMatrix& d_s,
                         const DistortionMatrix& d_u, double D_s, double D_u, int encoder_case, int grid) {
  if (src.s_alphabet() * src.u_alphabet() > 4 || d_s.cols() > 2 || d_u.cols() > 2) {
    throw std::invalid_argument("brute_force_rdf: instance too large (needs |S||U| <= 4, reconstructions <= 2)");
  }
  const auto prob = detail::semantic_problem(src, d_s, d_u, encoder_case);
  return search(prob.p, prob.d, {D_s, D_u}, grid);
}

RdfPoint brute_force_rdf_classic(const Pmf& p, const DistortionMatrix& d, double D, int grid) {
  if (p.rank() != 1 || d.rows() != p.size()) throw std::invalid_argument("brute_force_rdf_classic: dimension mismatch");
  if (p.size() > 4 || d.cols() > 4) throw std::invalid_argument("brute_force_rdf_classic: instance too large");
  return search(p, {d}, {D}, grid);
}

}  // namespace semsec
