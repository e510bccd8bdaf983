#pragma once

#include <vector>

#include "semsec/discrete_rdf.hpp"

namespace semsec::detail {

// Single-source form of a semantic RDF: Case 1 encodes U with the modified
// semantic distortion, Case 2 encodes (S, U). Reconstructions are pairs
// (shat, uhat) flattened as shat * |Uhat| + uhat.
struct SemanticProblem {
  Pmf p;
  std::vector<DistortionMatrix> d;  // {semantic, observation}
};

SemanticProblem semantic_problem(const DiscreteSemanticSource& src, const DistortionMatrix& d_s,
                                 const DistortionMatrix& d_u, int encoder_case);

}  // namespace semsec::detail
