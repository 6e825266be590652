#pragma once

#include <string>
#include <vector>

#include "clxflow/tolerances.hpp"
#include "clxflow/types.hpp"

namespace clxflow {

/// Complex edge weight r∠β. Both views stay consistent; edge phases are
/// restricted to β ∈ (-90°, 90°), i.e. strictly positive real part.
class ComplexWeight {
 public:
  static ComplexWeight rectangular(double re, double im);
  static ComplexWeight polar(double magnitude, double phase_deg);

  Complex value() const { return z_; }
  double magnitude() const { return std::abs(z_); }
  double phase_deg() const { return rad_to_deg(std::arg(z_)); }

 private:
  explicit ComplexWeight(Complex z) : z_(z) {}
  Complex z_;
};

struct Edge {
  int src = 0;
  int dst = 0;
  Complex weight;
};

/// Directed graph with complex edge weights. Immutable after construction;
/// the diagonal of the adjacency matrix is always zero (no self-loops).
class ComplexDigraph {
 public:
  static ComplexDigraph from_adjacency(CMatrix adjacency,
                                       std::vector<std::string> labels = {});

  int size() const { return static_cast<int>(adjacency_.rows()); }
  const CMatrix& adjacency() const { return adjacency_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::vector<Edge> edges() const;

 private:
  ComplexDigraph(CMatrix adjacency, std::vector<std::string> labels);
  CMatrix adjacency_;
  std::vector<std::string> labels_;
};

ComplexDigraph build_digraph(const std::vector<Edge>& edges, int n,
                             std::vector<std::string> labels = {});

struct Laplacian {
  CMatrix matrix;      // D_out - A
  CMatrix out_degree;  // diag(A 1)
};

Laplacian laplacian(const ComplexDigraph& g);

struct ConnectivityReport {
  bool strongly_connected = false;
  bool weakly_connected = false;
  std::vector<int> sinks;
  std::vector<int> sources;
  std::vector<int> globally_reachable;
  int scc_count = 0;
};

/// Connectivity of the support digraph (edge present iff |a_ij| > 0).
ConnectivityReport structural_connectivity(const ComplexDigraph& g);

/// Same analysis on the off-diagonal support of a Laplacian-like matrix.
ConnectivityReport connectivity_of_laplacian_support(const CMatrix& lap);

struct WalkSum {
  CMatrix sum;  // sum_{k=0}^{n-1} A^k
  bool all_nonzero = false;
  std::vector<bool> column_all_nonzero;
};

/// Walk sums over A. The nonzero flags are sufficient conditions only:
/// complex weights along a walk may cancel, so a zero entry proves nothing.
WalkSum walk_sum(const ComplexDigraph& g, double zero_tol = tol::kWalkZero);

/// Zero-pattern irreducibility, equivalent to strong connectivity of the
/// support digraph (diagonal entries ignored).
bool is_irreducible(const CMatrix& a);

}  // namespace clxflow
