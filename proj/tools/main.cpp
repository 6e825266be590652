#include <string>
#include <vector>

#include <CLI11.hpp>

#include "clxflow/cli.hpp"

namespace {

void add_common_options(CLI::App* cmd, clxflow::RunConfig& config,
                        std::string& method, std::string& targets_csv) {
  cmd->add_option("--input", config.input_path, "Graph JSON (or EIES message CSV)")
      ->required();
  cmd->add_option("--out", config.output_dir, "Output directory")
      ->capture_default_str();
  cmd->add_option("--seed", config.seed, "Seed for the x0 draw")
      ->capture_default_str();
  cmd->add_option("--t-end", config.t_end, "Simulation horizon");
  cmd->add_option("--samples", config.num_samples, "Trajectory samples")
      ->capture_default_str();
  cmd->add_option("--tol-zero", config.tol_zero,
                  "Relative tolerance for the zero-eigenvalue classification");
  cmd->add_option("--targets", targets_csv,
                  "Comma-separated positive reals for the reassigned spectrum");
  cmd->add_option("--method", method, "Integrator: exp or rk4")
      ->check(CLI::IsMember({"exp", "rk4"}))
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "clxflow: analysis, certification, design, and simulation of "
      "Laplacian flows on complex-weighted digraphs"};
  app.require_subcommand(1);

  clxflow::RunConfig config;
  std::string method = "exp";
  std::string targets_csv;

  struct SubcommandSpec {
    clxflow::Subcommand id;
    const char* name;
    const char* help;
  };
  const std::vector<SubcommandSpec> specs = {
      {clxflow::Subcommand::kAnalyze, "analyze",
       "Connectivity and spectrum report"},
      {clxflow::Subcommand::kCertify, "certify",
       "Eventual-positivity certificates and the consensus verdict"},
      {clxflow::Subcommand::kSimulate, "simulate",
       "Integrate the flow and write a trajectory CSV"},
      {clxflow::Subcommand::kDesign, "design",
       "Spectrum reassignment preserving the kernel pair"},
      {clxflow::Subcommand::kDiffuse, "diffuse",
       "Random-walk Laplacian and influence vector"},
      {clxflow::Subcommand::kPipeline, "pipeline",
       "End-to-end consensus pipeline (original or modified flow)"},
  };

  for (const SubcommandSpec& spec : specs) {
    CLI::App* cmd = app.add_subcommand(spec.name, spec.help);
    add_common_options(cmd, config, method, targets_csv);
    cmd->callback([&config, &spec]() { config.subcommand = spec.id; });
  }

  CLI11_PARSE(app, argc, argv);

  config.method = method == "rk4" ? clxflow::IntegrationMethod::kRk4
                                  : clxflow::IntegrationMethod::kExpStep;
  if (!targets_csv.empty()) {
    std::vector<double> targets;
    std::size_t start = 0;
    while (start <= targets_csv.size()) {
      const std::size_t comma = targets_csv.find(',', start);
      const std::string field = targets_csv.substr(start, comma - start);
      try {
        targets.push_back(std::stod(field));
      } catch (const std::exception&) {
        std::fputs("invalid --targets value\n", stderr);
        return 2;
      }
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    config.targets = targets;
  }

  return clxflow::run(config);
}
