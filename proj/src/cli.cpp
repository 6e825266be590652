#include "clxflow/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>

#include "clxflow/certify.hpp"
#include "clxflow/design.hpp"
#include "clxflow/diffusion.hpp"
#include "clxflow/errors.hpp"
#include "clxflow/graph.hpp"
#include "clxflow/graph_json.hpp"
#include "clxflow/report_json.hpp"
#include "clxflow/spectral.hpp"
#include "clxflow/tolerances.hpp"

namespace clxflow {
namespace {

bool log_enabled() {
  const char* env = std::getenv("CLX_LOG");
  return env != nullptr && env[0] != '\0' && std::string(env) != "0";
}

void log_note(const std::string& message) {
  if (log_enabled()) std::cerr << "[clxflow] " << message << "\n";
}

bool ends_with(const std::string& text, const std::string& suffix) {
  return text.size() >= suffix.size() &&
         text.compare(text.size() - suffix.size(), suffix.size(), suffix) == 0;
}

ComplexDigraph load_input(const std::string& path) {
  log_note("loading " + path);
  if (ends_with(path, ".csv")) return load_eies_csv(path);
  return load_graph_json(path);
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::kInvalidArgument, "cannot write '" + path + "'");
  }
  out << contents;
}

void emit(const Json& report, ReportKind kind, const std::string& out_dir,
          const std::string& filename) {
  validate_report(report, kind);
  const std::string text = report.dump(2) + "\n";
  write_file(out_dir + "/" + filename, text);
  std::cout << text;
}

double positive_gap(const std::vector<Complex>& reduced) {
  double gap = 0.0;
  for (const Complex& lambda : reduced) {
    if (lambda.real() > 0.0)
      gap = gap == 0.0 ? lambda.real() : std::min(gap, lambda.real());
  }
  return gap;
}

Json trajectory_summary(const Trajectory& trajectory, const RunConfig& config,
                        const std::string& csv_name) {
  Json out;
  out["t_end"] = trajectory.times.empty() ? 0.0 : trajectory.times.back();
  out["num_samples"] = static_cast<int>(trajectory.times.size());
  out["method"] =
      trajectory.method == IntegrationMethod::kExpStep ? "exp" : "rk4";
  out["seed"] = config.seed;
  out["diverged"] = trajectory.diverged;
  out["final_state"] = vector_to_json(trajectory.states.back());
  out["final_consensus_error"] = trajectory.consensus_errors.back();
  out["trajectory_csv"] = csv_name;
  return out;
}

int dispatch(const RunConfig& config) {
  const ComplexDigraph g = load_input(config.input_path);
  const double zero_tol = config.tol_zero.value_or(tol::kZero);
  const CMatrix lap = laplacian(g).matrix;

  switch (config.subcommand) {
    case Subcommand::kAnalyze: {
      const ConnectivityReport conn = structural_connectivity(g);
      const SpectralDecomposition dec = eig(lap);
      Json spectrum = decomposition_to_json(dec);
      spectrum["corank"] = corank(lap, zero_tol);
      spectrum["spectral_abscissa_negated"] = spectral_abscissa(-lap);
      Json report;
      report["n"] = g.size();
      report["connectivity"] = connectivity_to_json(conn);
      report["spectrum"] = spectrum;
      emit(report, ReportKind::kAnalyze, config.output_dir, "analyze.json");
      return 0;
    }
    case Subcommand::kCertify: {
      Json report;
      report["eventually_positive"] =
          certificate_to_json(certify_eventually_positive(lap));
      report["eventually_nonnegative"] =
          certificate_to_json(certify_eventually_nonnegative(lap));
      report["consensus"] = verdict_to_json(consensus_verdict(lap));
      emit(report, ReportKind::kCertify, config.output_dir, "certify.json");
      return 0;
    }
    case Subcommand::kSimulate: {
      CVector left_kernel;
      std::vector<Complex> reduced;
      try {
        const ConsensusVerdict verdict = consensus_verdict(lap);
        reduced = verdict.reduced_spectrum;
        if (verdict.corank == 1) left_kernel = verdict.left_kernel;
      } catch (const Error&) {
        // Defective spectra still simulate; x0 simply skips the rejection.
      }
      const CVector x0 = draw_initial_state(g.size(), config.seed, left_kernel);
      const double gap = positive_gap(reduced);
      const double t_end =
          config.t_end.value_or(gap > 0.0 ? 10.0 / gap : 1.0);
      const Trajectory trajectory =
          simulate(lap, x0, t_end, config.num_samples, config.method);
      std::ostringstream csv;
      write_trajectory_csv(trajectory, csv);
      write_file(config.output_dir + "/trajectory.csv", csv.str());
      emit(trajectory_summary(trajectory, config, "trajectory.csv"),
           ReportKind::kSimulate, config.output_dir, "simulate.json");
      return 0;
    }
    case Subcommand::kDesign: {
      const ConsensusVerdict verdict = consensus_verdict(lap);
      const StabilizingDiagonal sd =
          stabilizing_diagonal(verdict.reduced_spectrum, config.targets);
      const ModifiedFlowDesign design = modified_matrix(lap, sd.diagonal);
      emit(design_to_json(design), ReportKind::kDesign, config.output_dir,
           "design.json");
      return 0;
    }
    case Subcommand::kDiffuse: {
      const bool balanced = is_weight_balanced(g);
      const bool hermitian = is_hermitian_adjacency(g);
      const RandomWalkLaplacian walk = random_walk_laplacian(g);
      const InfluenceVector influence =
          influence_vector(walk.matrix, balanced || hermitian);
      Json report = influence_to_json(influence);
      report["weight_balanced"] = balanced;
      report["hermitian"] = hermitian;
      report["random_walk"] = Json{{"is_real", walk.is_real},
                                   {"max_imag", walk.max_imag},
                                   {"matrix", matrix_to_json(walk.matrix)}};
      emit(report, ReportKind::kDiffuse, config.output_dir, "diffuse.json");
      return 0;
    }
    case Subcommand::kPipeline: {
      CVector left_kernel;
      try {
        const KernelPair kernel = kernel_pair(lap);
        left_kernel = kernel.left;
      } catch (const Error&) {
      }
      const CVector x0 = draw_initial_state(g.size(), config.seed, left_kernel);
      PipelineOptions options;
      options.targets = config.targets;
      options.t_end = config.t_end;
      options.num_samples = config.num_samples;
      options.method = config.method;
      const PipelineResult result = consensus_pipeline(g, x0, options);

      std::ostringstream csv;
      write_trajectory_csv(result.trajectory, csv);
      write_file(config.output_dir + "/pipeline_trajectory.csv", csv.str());

      Json report;
      report["branch"] = to_string(result.branch);
      report["consensus"] = verdict_to_json(result.verdict);
      report["checks"] = Json::array();
      for (const Hypothesis& h : result.checks) {
        report["checks"].push_back(
            {{"name", h.name}, {"passed", h.passed}, {"detail", h.detail}});
      }
      if (result.design) report["design"] = design_to_json(*result.design);
      report["x0"] = vector_to_json(result.trajectory.states.front());
      report["final_state"] = vector_to_json(result.trajectory.states.back());
      report["final_consensus_error"] = result.trajectory.consensus_errors.back();
      report["diverged"] = result.trajectory.diverged;
      report["trajectory_csv"] = "pipeline_trajectory.csv";
      emit(report, ReportKind::kPipeline, config.output_dir, "pipeline.json");
      return 0;
    }
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown subcommand");
}

}  // namespace

CVector draw_initial_state(int n, std::uint64_t seed,
                           const CVector& left_kernel) {
  std::mt19937_64 rng(seed);
  auto uniform = [&rng]() {
    // 53-bit mantissa in (0, 1]
    return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
  };
  auto gaussian_pair = [&]() {
    const double u1 = uniform(), u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    return Complex(radius * std::cos(2.0 * kPi * u2),
                   radius * std::sin(2.0 * kPi * u2));
  };

  for (int attempt = 0; attempt < 100; ++attempt) {
    CVector x0(n);
    for (int i = 0; i < n; ++i) x0[i] = gaussian_pair();
    if (left_kernel.size() != n) return x0;
    const double overlap = std::abs(left_kernel.dot(x0));
    if (overlap >= 1e-6 * left_kernel.norm() * x0.norm()) return x0;
  }
  throw Error(ErrorCode::kConvergenceFailure,
              "could not draw an initial state with kernel overlap");
}

int run(const RunConfig& config) {
  try {
    return dispatch(config);
  } catch (const Error& e) {
    Json error{{"error", {{"code", to_string(e.code())}, {"message", e.what()}}}};
    std::cerr << error.dump(2) << "\n";
    return is_input_error(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    Json error{{"error", {{"code", "Internal"}, {"message", e.what()}}}};
    std::cerr << error.dump(2) << "\n";
    return 1;
  }
}

}  // namespace clxflow
