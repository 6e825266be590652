#include "clxflow/graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "clxflow/errors.hpp"

namespace clxflow {
namespace {

bool finite(const Complex& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

void check_edge_weight(const Complex& z, int src, int dst) {
  if (!finite(z)) {
    throw Error(ErrorCode::kInvalidArgument,
                "non-finite weight on edge " + std::to_string(src) + "->" +
                    std::to_string(dst));
  }
  // β ∈ (-90°, 90°) means Re > 0; a zero weight has no phase at all.
  if (!(z.real() > 0.0)) {
    throw Error(ErrorCode::kPhaseOutOfRange,
                "edge " + std::to_string(src) + "->" + std::to_string(dst) +
                    " has phase outside (-90, 90) degrees");
  }
}

// Adjacency lists of the support digraph: edge iff |a_ij| > 0, i != j.
std::vector<std::vector<int>> support_lists(const CMatrix& a, double tol) {
  const int n = static_cast<int>(a.rows());
  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && std::abs(a(i, j)) > tol) adj[i].push_back(j);
  return adj;
}

// Tarjan over explicit stack frames; components come out in reverse
// topological order of the condensation.
std::vector<std::vector<int>> strongly_connected_components(
    const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> index(n, -1), lowlink(n, 0), on_stack(n, 0);
  std::vector<int> stack;
  std::vector<std::vector<int>> components;
  int next_index = 0;

  struct Frame {
    int v;
    std::size_t edge;
  };
  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = lowlink[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.edge < adj[f.v].size()) {
        const int w = adj[f.v][f.edge++];
        if (index[w] == -1) {
          index[w] = lowlink[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          lowlink[f.v] = std::min(lowlink[f.v], index[w]);
        }
      } else {
        if (lowlink[f.v] == index[f.v]) {
          std::vector<int> comp;
          int w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            comp.push_back(w);
          } while (w != f.v);
          std::sort(comp.begin(), comp.end());
          components.push_back(std::move(comp));
        }
        const int v = f.v;
        frames.pop_back();
        if (!frames.empty())
          lowlink[frames.back().v] = std::min(lowlink[frames.back().v], lowlink[v]);
      }
    }
  }
  return components;
}

ConnectivityReport connectivity_from_lists(
    const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  ConnectivityReport report;

  std::vector<int> out_degree(n, 0), in_degree(n, 0);
  for (int i = 0; i < n; ++i) {
    out_degree[i] = static_cast<int>(adj[i].size());
    for (int j : adj[i]) ++in_degree[j];
  }
  for (int i = 0; i < n; ++i) {
    if (out_degree[i] == 0) report.sinks.push_back(i);
    if (in_degree[i] == 0) report.sources.push_back(i);
  }

  auto components = strongly_connected_components(adj);
  report.scc_count = static_cast<int>(components.size());
  report.strongly_connected = components.size() == 1;

  // Weak connectivity on the undirected support.
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < n; ++i)
    for (int j : adj[i]) parent[find(i)] = find(j);
  std::set<int> roots;
  for (int i = 0; i < n; ++i) roots.insert(find(i));
  report.weakly_connected = roots.size() <= 1;

  // Globally reachable nodes = the unique sink component of the
  // condensation, when there is exactly one.
  std::vector<int> comp_of(n, -1);
  for (std::size_t c = 0; c < components.size(); ++c)
    for (int v : components[c]) comp_of[v] = static_cast<int>(c);
  std::vector<int> comp_out(components.size(), 0);
  for (int i = 0; i < n; ++i)
    for (int j : adj[i])
      if (comp_of[i] != comp_of[j]) ++comp_out[comp_of[i]];
  std::vector<int> sink_components;
  for (std::size_t c = 0; c < components.size(); ++c)
    if (comp_out[c] == 0) sink_components.push_back(static_cast<int>(c));
  if (sink_components.size() == 1)
    report.globally_reachable = components[sink_components.front()];

  return report;
}

}  // namespace

ComplexWeight ComplexWeight::rectangular(double re, double im) {
  const Complex z(re, im);
  check_edge_weight(z, -1, -1);
  return ComplexWeight(z);
}

ComplexWeight ComplexWeight::polar(double magnitude, double phase_deg) {
  if (!(magnitude > 0.0) || !std::isfinite(magnitude) ||
      !std::isfinite(phase_deg)) {
    throw Error(ErrorCode::kPhaseOutOfRange,
                "polar weight needs a finite positive magnitude");
  }
  if (!(phase_deg > -90.0 && phase_deg < 90.0)) {
    throw Error(ErrorCode::kPhaseOutOfRange,
                "phase " + std::to_string(phase_deg) +
                    " outside (-90, 90) degrees");
  }
  const double rad = deg_to_rad(phase_deg);
  return ComplexWeight(Complex(magnitude * std::cos(rad),
                               magnitude * std::sin(rad)));
}

ComplexDigraph::ComplexDigraph(CMatrix adjacency,
                               std::vector<std::string> labels)
    : adjacency_(std::move(adjacency)), labels_(std::move(labels)) {}

ComplexDigraph ComplexDigraph::from_adjacency(CMatrix adjacency,
                                              std::vector<std::string> labels) {
  const int n = static_cast<int>(adjacency.rows());
  if (n < 1 || adjacency.cols() != n) {
    throw Error(ErrorCode::kInvalidArgument,
                "adjacency matrix must be square with n >= 1");
  }
  if (!labels.empty() && static_cast<int>(labels.size()) != n) {
    throw Error(ErrorCode::kDimensionMismatch,
                "label count does not match node count");
  }
  for (int i = 0; i < n; ++i) {
    if (adjacency(i, i) != Complex(0, 0)) {
      throw Error(ErrorCode::kSelfLoop,
                  "nonzero diagonal at node " + std::to_string(i));
    }
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (std::abs(adjacency(i, j)) > 0.0) check_edge_weight(adjacency(i, j), i, j);
    }
  }
  return ComplexDigraph(std::move(adjacency), std::move(labels));
}

std::vector<Edge> ComplexDigraph::edges() const {
  std::vector<Edge> out;
  const int n = size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && std::abs(adjacency_(i, j)) > 0.0)
        out.push_back({i, j, adjacency_(i, j)});
  return out;
}

ComplexDigraph build_digraph(const std::vector<Edge>& edges, int n,
                             std::vector<std::string> labels) {
  if (n < 1) {
    throw Error(ErrorCode::kInvalidArgument, "node count must be >= 1");
  }
  CMatrix a = CMatrix::Zero(n, n);
  std::set<std::pair<int, int>> seen;
  for (const Edge& e : edges) {
    if (e.src < 0 || e.src >= n || e.dst < 0 || e.dst >= n) {
      throw Error(ErrorCode::kIndexOutOfBounds,
                  "edge " + std::to_string(e.src) + "->" +
                      std::to_string(e.dst) + " outside [0, " +
                      std::to_string(n) + ")");
    }
    if (e.src == e.dst) {
      throw Error(ErrorCode::kSelfLoop,
                  "self-loop at node " + std::to_string(e.src));
    }
    if (!seen.insert({e.src, e.dst}).second) {
      throw Error(ErrorCode::kDuplicateEdge,
                  "duplicate edge " + std::to_string(e.src) + "->" +
                      std::to_string(e.dst));
    }
    check_edge_weight(e.weight, e.src, e.dst);
    a(e.src, e.dst) = e.weight;
  }
  return ComplexDigraph::from_adjacency(std::move(a), std::move(labels));
}

Laplacian laplacian(const ComplexDigraph& g) {
  const CMatrix& a = g.adjacency();
  const CVector degrees = a.rowwise().sum();
  Laplacian result;
  result.out_degree = degrees.asDiagonal();
  result.matrix = result.out_degree - a;
  return result;
}

ConnectivityReport structural_connectivity(const ComplexDigraph& g) {
  return connectivity_from_lists(support_lists(g.adjacency(), 0.0));
}

ConnectivityReport connectivity_of_laplacian_support(const CMatrix& lap) {
  const double tol = 1e-12 * std::max(1.0, inf_norm(lap));
  return connectivity_from_lists(support_lists(lap, tol));
}

WalkSum walk_sum(const ComplexDigraph& g, double zero_tol) {
  const int n = g.size();
  if (n < 2) {
    throw Error(ErrorCode::kInvalidArgument, "walk_sum needs n >= 2");
  }
  const CMatrix& a = g.adjacency();
  CMatrix power = CMatrix::Identity(n, n);
  CMatrix sum = power;
  for (int k = 1; k < n; ++k) {
    power = power * a;
    sum += power;
  }
  WalkSum result;
  result.sum = sum;
  const double threshold = zero_tol * std::max(inf_norm(sum), 1e-300);
  result.all_nonzero = true;
  result.column_all_nonzero.assign(n, true);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (std::abs(sum(i, j)) <= threshold) {
        result.all_nonzero = false;
        result.column_all_nonzero[j] = false;
        break;
      }
  return result;
}

bool is_irreducible(const CMatrix& a) {
  const int n = static_cast<int>(a.rows());
  if (n < 2 || a.cols() != n) {
    throw Error(ErrorCode::kInvalidArgument,
                "irreducibility needs a square matrix with n >= 2");
  }
  auto components = strongly_connected_components(support_lists(a, 0.0));
  return components.size() == 1;
}

}  // namespace clxflow
