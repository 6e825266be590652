#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "clxflow/flows.hpp"
#include "clxflow/types.hpp"

namespace clxflow {

enum class Subcommand { kAnalyze, kCertify, kSimulate, kDesign, kDiffuse, kPipeline };

struct RunConfig {
  Subcommand subcommand = Subcommand::kAnalyze;
  std::string input_path;
  std::string output_dir = ".";
  std::uint64_t seed = 42;
  std::optional<double> t_end;
  int num_samples = 201;
  std::optional<double> tol_zero;  // overrides the zero-classification tol
  std::optional<std::vector<double>> targets;
  IntegrationMethod method = IntegrationMethod::kExpStep;
};

/// Execute one subcommand: reads the input graph, writes the report JSON
/// (and trajectory CSV where applicable) under output_dir, echoes the
/// report to stdout. Returns 0 on success, 1 on analysis errors, 2 on
/// input errors; errors are rendered as JSON on stderr.
int run(const RunConfig& config);

/// Deterministic complex Gaussian draw for x0 (Box-Muller over
/// mt19937_64), redrawn until it is not orthogonal to `left_kernel` when
/// one is supplied.
CVector draw_initial_state(int n, std::uint64_t seed, const CVector& left_kernel);

}  // namespace clxflow
