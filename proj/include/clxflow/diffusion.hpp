#pragma once

#include "clxflow/graph.hpp"
#include "clxflow/types.hpp"

namespace clxflow {

/// Complex in-degree equals complex out-degree at every node.
bool is_weight_balanced(const ComplexDigraph& g);

/// A equals its conjugate transpose.
bool is_hermitian_adjacency(const ComplexDigraph& g);

struct RandomWalkLaplacian {
  CMatrix matrix;  // I - D_out^{-1} A
  bool is_real = false;
  double max_imag = 0.0;  // measured, not assumed
};

/// Requires every node to have a nonzero out-degree sum.
RandomWalkLaplacian random_walk_laplacian(const ComplexDigraph& g);

struct InfluenceVector {
  RVector values;  // Re of (1^T/n) v w^H
  double imag_residual = 0.0;
  bool advisory = false;  // outside the weight-balanced/Hermitian gate
  int most_influential = 0;
};

/// Steady-state diffusion mass per node from the kernel pair of a corank-1
/// Laplacian. Callers outside the weight-balanced/Hermitian gate get the
/// real part with the imaginary residual attached and `advisory` set.
InfluenceVector influence_vector(const CMatrix& lap, bool within_gate = true);

}  // namespace clxflow
