#include "clxflow/diffusion.hpp"

#include <cmath>

#include "clxflow/errors.hpp"
#include "clxflow/spectral.hpp"
#include "clxflow/tolerances.hpp"

namespace clxflow {

bool is_weight_balanced(const ComplexDigraph& g) {
  const CMatrix& a = g.adjacency();
  const CVector out = a.rowwise().sum();
  const CVector in = a.transpose().rowwise().sum();
  return (out - in).cwiseAbs().maxCoeff() <= tol::kNonnegative * inf_norm(a);
}

bool is_hermitian_adjacency(const ComplexDigraph& g) {
  const CMatrix& a = g.adjacency();
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <=
         tol::kNonnegative * inf_norm(a);
}

RandomWalkLaplacian random_walk_laplacian(const ComplexDigraph& g) {
  const CMatrix& a = g.adjacency();
  const int n = g.size();
  const CVector degrees = a.rowwise().sum();
  const double degree_tol = 1e-12 * std::max(1.0, inf_norm(a));
  for (int i = 0; i < n; ++i) {
    if (std::abs(degrees[i]) <= degree_tol) {
      throw Error(ErrorCode::kZeroDegreeNode,
                  "node " + std::to_string(i) + " has zero out-degree sum");
    }
  }
  RandomWalkLaplacian result;
  result.matrix = CMatrix::Identity(n, n) - degrees.cwiseInverse().asDiagonal() * a;
  result.max_imag = result.matrix.imag().cwiseAbs().maxCoeff();
  result.is_real =
      result.max_imag <= tol::kNonnegative * std::max(1.0, inf_norm(result.matrix));
  return result;
}

InfluenceVector influence_vector(const CMatrix& lap, bool within_gate) {
  const KernelPair kernel = kernel_pair(lap);
  const int n = static_cast<int>(lap.rows());
  const Complex mass = kernel.right.sum() / static_cast<double>(n);

  InfluenceVector influence;
  influence.values = RVector(n);
  influence.imag_residual = 0.0;
  for (int i = 0; i < n; ++i) {
    const Complex entry = mass * std::conj(kernel.left[i]);
    influence.values[i] = entry.real();
    influence.imag_residual = std::max(influence.imag_residual,
                                       std::abs(entry.imag()));
  }
  influence.advisory = !within_gate;
  influence.most_influential = 0;
  for (int i = 1; i < n; ++i)
    if (influence.values[i] > influence.values[influence.most_influential])
      influence.most_influential = i;
  return influence;
}

}  // namespace clxflow
