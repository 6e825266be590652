#include "clxflow/design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/LU>

#include "clxflow/errors.hpp"
#include "clxflow/tolerances.hpp"

namespace clxflow {
namespace {

// Greedy nearest matching between the achieved and requested spectra.
double spectrum_match_error(std::vector<Complex> achieved,
                            std::vector<Complex> requested) {
  double worst = 0.0;
  for (const Complex& want : requested) {
    std::size_t best = 0;
    double dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < achieved.size(); ++i) {
      const double d = std::abs(achieved[i] - want);
      if (d < dist) {
        dist = d;
        best = i;
      }
    }
    worst = std::max(worst, dist);
    achieved.erase(achieved.begin() + best);
  }
  return worst;
}

}  // namespace

const char* to_string(PipelineBranch b) {
  switch (b) {
    case PipelineBranch::kOriginal: return "original";
    case PipelineBranch::kModified: return "modified";
    case PipelineBranch::kSingleNode: return "single_node";
  }
  return "original";
}

StabilizingDiagonal stabilizing_diagonal(
    const std::vector<Complex>& reduced_eigenvalues,
    std::optional<std::vector<double>> targets) {
  const std::size_t m = reduced_eigenvalues.size();
  if (m == 0) {
    throw Error(ErrorCode::kInvalidArgument, "reduced spectrum is empty");
  }
  double max_mod = 0.0;
  for (const Complex& lambda : reduced_eigenvalues)
    max_mod = std::max(max_mod, std::abs(lambda));
  for (const Complex& lambda : reduced_eigenvalues) {
    if (std::abs(lambda) <= 1e-9 * max_mod) {
      throw Error(ErrorCode::kZeroEigenvalueInJReduced,
                  "reduced spectrum contains a (near-)zero eigenvalue");
    }
  }

  std::vector<double> t;
  if (targets) {
    t = *targets;
    if (t.size() != m) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "expected " + std::to_string(m) + " targets, got " +
                      std::to_string(t.size()));
    }
    for (double value : t) {
      if (!(value > 0.0) || !std::isfinite(value)) {
        throw Error(ErrorCode::kInvalidArgument,
                    "targets must be finite positive reals");
      }
    }
    const double dup_tol = 1e-12 * *std::max_element(t.begin(), t.end());
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        if (std::abs(t[i] - t[j]) <= dup_tol) {
          throw Error(ErrorCode::kDuplicateTargets,
                      "targets " + std::to_string(i) + " and " +
                          std::to_string(j) + " coincide");
        }
  } else {
    // Magnitude-preserving defaults, spaced apart when they collide.
    t.reserve(m);
    const double eps = 1e-3 * max_mod;
    for (const Complex& lambda : reduced_eigenvalues) {
      double candidate = std::abs(lambda);
      bool moved = true;
      while (moved) {
        moved = false;
        for (double existing : t) {
          if (std::abs(candidate - existing) < eps) {
            candidate += eps;
            moved = true;
          }
        }
      }
      t.push_back(candidate);
    }
  }

  StabilizingDiagonal result;
  result.targets = t;
  result.diagonal = CVector(m);
  for (std::size_t i = 0; i < m; ++i)
    result.diagonal[static_cast<int>(i)] = t[i] / reduced_eigenvalues[i];
  return result;
}

ModifiedFlowDesign modified_matrix(const CMatrix& lap, const CVector& scaling) {
  const int n = static_cast<int>(lap.rows());
  if (scaling.size() != n - 1) {
    throw Error(ErrorCode::kDimensionMismatch,
                "scaling diagonal must have size n-1");
  }
  SpectralDecomposition dec = eig(lap);
  if (dec.jordan_defect > 0) {
    throw Error(ErrorCode::kDefectiveSpectrum,
                "flow matrix is not diagonalizable");
  }

  const double zero_tol = tol::kZero * inf_norm(lap);
  int zero_index = -1;
  std::vector<int> reduced;
  for (int i = 0; i < n; ++i) {
    if (std::abs(dec.eigenvalues[i]) <= zero_tol) {
      if (zero_index != -1) {
        throw Error(ErrorCode::kCorankNotOne,
                    "flow matrix has more than one zero eigenvalue");
      }
      zero_index = i;
    } else {
      reduced.push_back(i);
    }
  }
  if (zero_index == -1) {
    throw Error(ErrorCode::kCorankNotOne, "flow matrix has no zero eigenvalue");
  }
  std::sort(reduced.begin(), reduced.end(), [&](int a, int b) {
    const Complex& la = dec.eigenvalues[a];
    const Complex& lb = dec.eigenvalues[b];
    if (la.real() != lb.real()) return la.real() > lb.real();
    return la.imag() > lb.imag();
  });

  CMatrix basis(n, n);
  CVector rescaled(n);
  basis.col(0) = dec.right.col(zero_index);
  rescaled[0] = 0.0;
  for (int k = 0; k < n - 1; ++k) {
    basis.col(k + 1) = dec.right.col(reduced[k]);
    rescaled[k + 1] = scaling[k] * dec.eigenvalues[reduced[k]];
  }

  Eigen::FullPivLU<CMatrix> lu(basis);
  if (!lu.isInvertible()) {
    throw Error(ErrorCode::kDefectiveSpectrum,
                "eigenvector basis is numerically singular");
  }
  const CMatrix modified = basis * rescaled.asDiagonal() * lu.inverse();

  ModifiedFlowDesign design;
  design.scaling = scaling;
  design.modified = modified;
  design.targets.reserve(n - 1);
  for (int k = 1; k < n; ++k) design.targets.push_back(rescaled[k].real());

  const CVector achieved_vec = eigenvalues_of(modified);
  design.spectrum_achieved.assign(achieved_vec.begin(), achieved_vec.end());

  // Kernel preservation for the original pair and spectrum placement.
  const KernelPair kernel = kernel_pair(lap);
  const double norm_m = std::max(inf_norm(modified), 1.0);
  const double kernel_err =
      std::max((modified * kernel.right).norm(),
               (kernel.left.adjoint() * modified).norm());
  std::vector<Complex> requested(rescaled.begin(), rescaled.end());
  const double placement_err =
      spectrum_match_error(design.spectrum_achieved, requested);
  const double target_scale =
      std::max(1.0, *std::max_element(design.targets.begin(),
                                      design.targets.end(),
                                      [](double a, double b) {
                                        return std::abs(a) < std::abs(b);
                                      }));
  if (kernel_err > tol::kEigenvectorResidual * norm_m ||
      placement_err > tol::kSpectrumMatch * target_scale) {
    throw Error(ErrorCode::kConvergenceFailure,
                "modified flow failed verification: kernel residual " +
                    std::to_string(kernel_err) + ", placement error " +
                    std::to_string(placement_err));
  }

  design.is_laplacian = true;
  const double entry_tol = tol::kZero * norm_m;
  for (int i = 0; i < n && design.is_laplacian; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j || std::abs(modified(i, j)) <= entry_tol) continue;
      // Off-diagonal entries are negated edge weights; a weight with phase
      // in (-90, 90) degrees has positive real part.
      if (!(modified(i, j).real() < 0.0)) {
        design.is_laplacian = false;
        break;
      }
    }
  }
  return design;
}

PipelineResult consensus_pipeline(const ComplexDigraph& g, const CVector& x0,
                                  const PipelineOptions& options) {
  const ConnectivityReport conn = structural_connectivity(g);
  if (conn.globally_reachable.empty()) {
    throw Error(ErrorCode::kNoGloballyReachableNode,
                "input digraph has no globally reachable node");
  }
  const CMatrix lap = laplacian(g).matrix;
  const int n = g.size();
  if (x0.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "x0 size mismatch");
  }

  PipelineResult result;
  result.verdict = consensus_verdict(lap);

  if (n == 1) {
    result.branch = PipelineBranch::kSingleNode;
    result.flow_matrix = lap;
    result.trajectory = simulate(lap, x0, options.t_end.value_or(1.0),
                                 options.num_samples, options.method);
    result.checks.push_back({"single_node", true, ""});
    return result;
  }

  const KernelPair kernel = kernel_pair(lap);
  const DominanceReport right_dom = real_dominance(kernel.right);
  const DominanceReport left_dom = real_dominance(kernel.left);
  const bool orhp = result.verdict.kind == FlowKind::kConsensus;
  const bool keep_original =
      right_dom.real_dominant && left_dom.real_dominant && orhp;

  result.checks.push_back(
      {"kernel_right_real_dominant", right_dom.real_dominant, ""});
  result.checks.push_back(
      {"kernel_left_real_dominant", left_dom.real_dominant, ""});
  result.checks.push_back({"reduced_spectrum_orhp", orhp, ""});

  if (keep_original) {
    result.branch = PipelineBranch::kOriginal;
    result.flow_matrix = lap;
  } else {
    result.branch = PipelineBranch::kModified;
    StabilizingDiagonal sd =
        stabilizing_diagonal(result.verdict.reduced_spectrum, options.targets);
    ModifiedFlowDesign design = modified_matrix(lap, sd.diagonal);
    result.flow_matrix = design.modified;
    result.design = std::move(design);
    result.verdict = consensus_verdict(result.flow_matrix);
  }

  double gap = 0.0;
  for (const Complex& lambda : result.verdict.reduced_spectrum) {
    if (lambda.real() > 0.0)
      gap = gap == 0.0 ? lambda.real() : std::min(gap, lambda.real());
  }
  const double t_end = options.t_end.value_or(gap > 0.0 ? 10.0 / gap : 1.0);
  result.trajectory = simulate(result.flow_matrix, x0, t_end,
                               options.num_samples, options.method);
  return result;
}

}  // namespace clxflow
