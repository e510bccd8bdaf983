#pragma once

// Rate-distortion functions for discrete sources: single-constraint and
// two-constraint Blahut-Arimoto, an exhaustive lattice oracle, and the
// closed-form binary RDFs.

#include <cstddef>
#include <limits>
#include <vector>

#include "semsec/info_core.hpp"

namespace semsec {

class DistortionMatrix {
 public:
  DistortionMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

  static DistortionMatrix hamming(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  const std::vector<double>& entries() const noexcept { return entries_; }

  // Cheapest reconstruction of each row.
  double row_min(std::size_t i) const { return entries_[i * cols_ + row_argmin_[i]]; }
  std::size_t row_argmin(std::size_t i) const { return row_argmin_[i]; }

 private:
  std::size_t rows_, cols_;
  std::vector<double> entries_;
  std::vector<std::size_t> row_argmin_;
};

// Joint p(S,U). Zero-probability symbols of either marginal are pruned; the
// original symbol indices are kept so distortion matrices are still indexed
// over the full alphabets.
class DiscreteSemanticSource {
 public:
  explicit DiscreteSemanticSource(const Pmf& joint);

  // S ~ Bernoulli(1/2), U = S through a BSC(alpha).
  static DiscreteSemanticSource doubly_symmetric(double alpha);

  const Pmf& joint() const noexcept { return joint_; }
  std::size_t s_size() const noexcept { return s_symbols_.size(); }
  std::size_t u_size() const noexcept { return u_symbols_.size(); }
  const std::vector<std::size_t>& s_symbols() const noexcept { return s_symbols_; }
  const std::vector<std::size_t>& u_symbols() const noexcept { return u_symbols_; }
  std::size_t s_alphabet() const noexcept { return s_alphabet_; }
  std::size_t u_alphabet() const noexcept { return u_alphabet_; }

  double p(std::size_t s, std::size_t u) const { return joint_[s * u_size() + u]; }
  double p_s(std::size_t s) const { return ps_[s]; }
  double p_u(std::size_t u) const { return pu_[u]; }
  double p_s_given_u(std::size_t s, std::size_t u) const { return p(s, u) / pu_[u]; }
  Pmf u_marginal() const { return Pmf(pu_); }
  Pmf s_marginal() const { return Pmf(ps_); }

 private:
  Pmf joint_;  // pruned, axes (S, U)
  std::vector<std::size_t> s_symbols_, u_symbols_;
  std::size_t s_alphabet_, u_alphabet_;
  std::vector<double> ps_, pu_;
};

enum class RdfStatus { Ok, Infeasible, NotConverged };

struct RdfPoint {
  RdfStatus status = RdfStatus::Ok;
  double rate = 0.0;                // +inf when infeasible
  std::vector<double> targets;      // requested distortions
  std::vector<double> distortions;  // achieved by the reported test channel
  std::vector<double> multipliers;
  bool converged = true;
  double lower_bound = 0.0;  // brute force only: certified lower bound on the RDF

  bool feasible() const noexcept { return status != RdfStatus::Infeasible; }
};

struct BaOptions {
  double tolerance = 1e-9;  // on the upper/lower bound gap
  int max_iterations = 10000;
  bool keep_trace = false;
};

struct RdfOptions {
  BaOptions ba;
  int grid_points = 13;  // log-spaced multipliers per axis, plus 0
  double lambda_min = 1e-3;
  double lambda_max = 1e3;
  double slack = 1e-9;
};

// One Blahut-Arimoto run for min_Q I(X;Xhat) + sum_k lambda_k E d_k.
struct BaResult {
  double objective_upper = 0.0;
  double objective_lower = 0.0;
  double rate = 0.0;
  std::vector<double> distortions;
  std::vector<double> channel;  // Q(xhat|x), row-major
  std::vector<double> output;   // q(xhat)
  std::vector<double> trace;    // objective_upper per iteration when requested
  int iterations = 0;
  bool converged = false;
};

BaResult blahut_arimoto(const Pmf& p, const std::vector<DistortionMatrix>& d,
                        const std::vector<double>& lambdas, const BaOptions& opts = {});

// Exact feasibility of {Q : E d_k <= D_k for all k} (one or two constraints).
bool distortions_feasible(const Pmf& p, const std::vector<DistortionMatrix>& d,
                          const std::vector<double>& targets, double slack = 1e-9);

// General constrained RDF by maximizing the Lagrange dual over the multipliers.
RdfPoint rdf_constrained(const Pmf& p, const std::vector<DistortionMatrix>& d,
                         const std::vector<double>& targets, const RdfOptions& opts = {});

// d_hat(u, shat) = sum_s p(s|u) d_s(s, shat), rows over the source's kept U symbols.
DistortionMatrix modified_distortion(const DiscreteSemanticSource& src, const DistortionMatrix& d_s);

RdfPoint rdf_classic(const Pmf& p_u, const DistortionMatrix& d_u, double D_u, const RdfOptions& opts = {});

RdfPoint rdf_semantic_case1(const DiscreteSemanticSource& src, const DistortionMatrix& d_s,
                            const DistortionMatrix& d_u, double D_s, double D_u,
                            const RdfOptions& opts = {});

RdfPoint rdf_semantic_case2(const DiscreteSemanticSource& src, const DistortionMatrix& d_s,
                            const DistortionMatrix& d_u, double D_s, double D_u,
                            const RdfOptions& opts = {});

// Lattice search over test channels with entries in multiples of 1/(grid-1).
// Exhaustive when the lattice fits the evaluation budget; otherwise an
// exhaustive pass on a coarser sub-lattice followed by local descent on each
// refinement, so a finer grid never returns a larger value than a coarser
// grid dividing it. `rate` is always an upper bound on the true RDF;
// `lower_bound` is a weak-duality certificate built from the output
// distribution of the best lattice channel, maximized over a multiplier grid.
RdfPoint brute_force_rdf(const DiscreteSemanticSource& src, const DistortionMatrix& d_s,
                         const DistortionMatrix& d_u, double D_s, double D_u, int encoder_case,
                         int grid);

RdfPoint brute_force_rdf_classic(const Pmf& p, const DistortionMatrix& d, double D, int grid);

// Closed-form binary RDFs (Hamming distortion).
double binary_rdf_obs(double alpha, double D_u);
double binary_rdf_sem(double alpha, double D_s, int encoder_case);  // +inf when infeasible
double binary_rdf_joint(double alpha, double D_s, double D_u, int encoder_case,
                        const RdfOptions& opts = {});

inline constexpr double kInfeasible = std::numeric_limits<double>::infinity();

}  // namespace semsec
