#pragma once

#include <optional>
#include <vector>

#include "clxflow/certify.hpp"
#include "clxflow/flows.hpp"
#include "clxflow/graph.hpp"
#include "clxflow/types.hpp"

namespace clxflow {

struct StabilizingDiagonal {
  CVector diagonal;             // S_ii = target_i / λ_i
  std::vector<double> targets;  // distinct positive reals
};

/// Diagonal scaling that re-places the reduced spectrum at positive reals.
/// Default targets preserve eigenvalue magnitudes (|λ_i|, de-duplicated by
/// ε-spacing with ε = 1e-3 max|λ|). Eigenvalues must be nonzero; targets
/// pair with eigenvalues positionally.
StabilizingDiagonal stabilizing_diagonal(
    const std::vector<Complex>& reduced_eigenvalues,
    std::optional<std::vector<double>> targets = {});

struct ModifiedFlowDesign {
  CVector scaling;  // S diagonal
  std::vector<double> targets;
  CMatrix modified;  // L_m = V ([0] ⊕ S J_reduced) W^H
  bool is_laplacian = false;
  std::vector<Complex> spectrum_achieved;
};

/// Rebuild the flow matrix with the nonzero spectrum rescaled by S while
/// both kernel eigenvectors are preserved. The reduced block is ordered by
/// descending real part (ties by descending imaginary part); `scaling` must
/// have length n-1 and pairs with that order.
ModifiedFlowDesign modified_matrix(const CMatrix& lap, const CVector& scaling);

enum class PipelineBranch { kOriginal, kModified, kSingleNode };

const char* to_string(PipelineBranch b);

struct PipelineOptions {
  std::optional<std::vector<double>> targets;
  std::optional<double> t_end;  // default 10 / gap of the simulated matrix
  int num_samples = 201;
  IntegrationMethod method = IntegrationMethod::kExpStep;
};

struct PipelineResult {
  PipelineBranch branch = PipelineBranch::kOriginal;
  ConsensusVerdict verdict;  // for the matrix actually simulated
  std::optional<ModifiedFlowDesign> design;
  Trajectory trajectory;
  CMatrix flow_matrix;
  std::vector<Hypothesis> checks;
};

/// End-to-end consensus pipeline: simulate the original flow when both
/// kernel eigenvectors are real dominant and the reduced spectrum sits in
/// the ORHP; otherwise synthesize the modified flow and simulate that.
/// Requires at least one globally reachable node.
PipelineResult consensus_pipeline(const ComplexDigraph& g, const CVector& x0,
                                  const PipelineOptions& options = {});

}  // namespace clxflow
