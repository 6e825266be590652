#include "clxflow/report_json.hpp"

#include <cmath>

#include "clxflow/errors.hpp"

namespace clxflow {
namespace {

Json hypotheses_to_json(const std::vector<Hypothesis>& hypotheses) {
  Json out = Json::array();
  for (const Hypothesis& h : hypotheses) {
    out.push_back({{"name", h.name}, {"passed", h.passed}, {"detail", h.detail}});
  }
  return out;
}

double json_safe(double x) { return std::isfinite(x) ? x : 0.0; }

}  // namespace

Json complex_to_json(const Complex& z) {
  return Json{{"re", z.real()}, {"im", z.imag()}};
}

Json vector_to_json(const CVector& v) {
  Json out = Json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v[i]));
  return out;
}

Json matrix_to_json(const CMatrix& m) {
  Json out = Json::array();
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out.push_back(complex_to_json(m(i, j)));
  return out;
}

Json connectivity_to_json(const ConnectivityReport& report) {
  return Json{{"strongly_connected", report.strongly_connected},
              {"weakly_connected", report.weakly_connected},
              {"sinks", report.sinks},
              {"sources", report.sources},
              {"globally_reachable", report.globally_reachable},
              {"scc_count", report.scc_count}};
}

Json decomposition_to_json(const SpectralDecomposition& dec) {
  Json eigenvalues = Json::array();
  for (int i = 0; i < dec.eigenvalues.size(); ++i)
    eigenvalues.push_back(complex_to_json(dec.eigenvalues[i]));
  return Json{{"eigenvalues", eigenvalues},
              {"normalized", dec.normalized},
              {"diagonalizable", dec.diagonalizable},
              {"jordan_defect", dec.jordan_defect}};
}

Json dominance_to_json(const DominanceReport& report) {
  return Json{{"real_dominant", report.real_dominant},
              {"strictly_real_dominant", report.strictly_real_dominant},
              {"phase_deg", report.phase_deg},
              {"violating_indices", report.violating_indices}};
}

Json tan_report_to_json(const TanConditionReport& report) {
  Json ratios = Json::array();
  for (std::size_t i = 0; i < report.ratios.size(); ++i) {
    if (report.indeterminate[i])
      ratios.push_back(nullptr);
    else
      ratios.push_back(json_safe(report.ratios[i]));
  }
  return Json{{"side", report.side == TanSide::kLeft ? "left" : "right"},
              {"ratios", ratios},
              {"all_in_closed_unit", report.all_in_closed_unit},
              {"all_in_open_unit", report.all_in_open_unit},
              {"has_indeterminate", report.has_indeterminate},
              {"self_check_max_err", json_safe(report.self_check_max_err)},
              {"matrix_used", report.matrix_used}};
}

Json pf_to_json(const PfClassification& pf) {
  return Json{{"matrix_class", to_string(pf.matrix_class)},
              {"adjoint_class", to_string(pf.adjoint_class)},
              {"combined", to_string(pf.combined)},
              {"dominant_eigenvalue", complex_to_json(pf.dominant_eigenvalue)},
              {"dominant_right", vector_to_json(pf.dominant_right)},
              {"dominant_left", vector_to_json(pf.dominant_left)}};
}

Json certificate_to_json(const Certificate& cert) {
  Json witnesses = Json::object();
  if (cert.witnesses.shift) witnesses["d"] = *cert.witnesses.shift;
  if (cert.witnesses.alpha_dominance)
    witnesses["alpha_dominance"] = dominance_to_json(*cert.witnesses.alpha_dominance);
  if (cert.witnesses.left_dominance)
    witnesses["left_dominance"] = dominance_to_json(*cert.witnesses.left_dominance);
  if (!cert.witnesses.tan_reports.empty()) {
    Json tans = Json::array();
    for (const TanConditionReport& report : cert.witnesses.tan_reports)
      tans.push_back(tan_report_to_json(report));
    witnesses["tan_conditions"] = tans;
  }
  if (cert.witnesses.pf) witnesses["pf"] = pf_to_json(*cert.witnesses.pf);
  if (cert.witnesses.t0_estimate) witnesses["t0_estimate"] = *cert.witnesses.t0_estimate;
  witnesses["sampled_times"] = cert.witnesses.sampled_times;

  Json out{{"property", to_string(cert.property)},
           {"verdict", to_string(cert.verdict)},
           {"route", to_string(cert.route)},
           {"witnesses", witnesses},
           {"hypotheses", hypotheses_to_json(cert.hypotheses)}};
  if (!cert.refutation_reason.empty())
    out["refutation_reason"] = cert.refutation_reason;
  if (cert.scan && cert.scan->status == SignPatternScan::Status::kRefuted) {
    out["counterexample"] = Json{{"t", cert.scan->witness_time},
                                 {"row", cert.scan->witness_row},
                                 {"col", cert.scan->witness_col},
                                 {"value", cert.scan->witness_value}};
  }
  return out;
}

Json verdict_to_json(const ConsensusVerdict& verdict) {
  Json reduced = Json::array();
  for (const Complex& lambda : verdict.reduced_spectrum)
    reduced.push_back(complex_to_json(lambda));

  Json out{{"kind", to_string(verdict.kind)},
           {"corank", verdict.corank},
           {"sink_count", verdict.sink_count},
           {"j_reduced_spectrum", reduced},
           {"reasons", hypotheses_to_json(verdict.reasons)}};
  if (verdict.kind == FlowKind::kConsensus) {
    Json functional = Json::object();
    if (verdict.alpha) functional["alpha"] = complex_to_json(*verdict.alpha);
    functional["w"] = vector_to_json(verdict.left_kernel);
    out["steady_functional"] = functional;
  } else if (verdict.limit_projector) {
    out["steady_functional"] =
        Json{{"projector", matrix_to_json(*verdict.limit_projector)},
             {"n", verdict.limit_projector->rows()}};
  }
  if (verdict.right_dominance)
    out["advisory_right_dominance"] = dominance_to_json(*verdict.right_dominance);
  if (verdict.left_dominance)
    out["advisory_left_dominance"] = dominance_to_json(*verdict.left_dominance);
  return out;
}

Json design_to_json(const ModifiedFlowDesign& design) {
  Json spectrum = Json::array();
  for (const Complex& lambda : design.spectrum_achieved)
    spectrum.push_back(complex_to_json(lambda));
  return Json{{"targets", design.targets},
              {"S", vector_to_json(design.scaling)},
              {"L_m", matrix_to_json(design.modified)},
              {"is_laplacian", design.is_laplacian},
              {"spectrum_achieved", spectrum}};
}

Json influence_to_json(const InfluenceVector& influence) {
  std::vector<double> values(influence.values.data(),
                             influence.values.data() + influence.values.size());
  return Json{{"values", values},
              {"imag_residual", influence.imag_residual},
              {"advisory", influence.advisory},
              {"most_influential", influence.most_influential}};
}

namespace {

enum class FieldType { kNumber, kInteger, kBool, kString, kArray, kObject };

struct Field {
  const char* path;  // dot-separated
  FieldType type;
};

const Json* walk(const Json& root, const std::string& path) {
  const Json* node = &root;
  std::size_t start = 0;
  while (start <= path.size()) {
    const std::size_t dot = path.find('.', start);
    const std::string key = path.substr(start, dot - start);
    if (!node->is_object() || !node->contains(key)) return nullptr;
    node = &(*node)[key];
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  return node;
}

void require_fields(const Json& report, const std::vector<Field>& fields) {
  for (const Field& field : fields) {
    const Json* node = walk(report, field.path);
    if (node == nullptr) {
      throw Error(ErrorCode::kParseError,
                  std::string("report missing field '") + field.path + "'");
    }
    bool ok = false;
    switch (field.type) {
      case FieldType::kNumber: ok = node->is_number(); break;
      case FieldType::kInteger: ok = node->is_number_integer(); break;
      case FieldType::kBool: ok = node->is_boolean(); break;
      case FieldType::kString: ok = node->is_string(); break;
      case FieldType::kArray: ok = node->is_array(); break;
      case FieldType::kObject: ok = node->is_object(); break;
    }
    if (!ok) {
      throw Error(ErrorCode::kParseError,
                  std::string("report field '") + field.path +
                      "' has the wrong type");
    }
  }
}

void require_certificate(const Json& report, const std::string& key) {
  require_fields(report, {{key.c_str(), FieldType::kObject}});
  const Json& cert = report[key];
  require_fields(cert, {{"property", FieldType::kString},
                        {"verdict", FieldType::kString},
                        {"route", FieldType::kString},
                        {"witnesses", FieldType::kObject},
                        {"hypotheses", FieldType::kArray}});
}

}  // namespace

bool validate_report(const Json& report, ReportKind kind) {
  switch (kind) {
    case ReportKind::kAnalyze:
      require_fields(report, {{"n", FieldType::kInteger},
                              {"connectivity", FieldType::kObject},
                              {"connectivity.strongly_connected", FieldType::kBool},
                              {"connectivity.weakly_connected", FieldType::kBool},
                              {"connectivity.sinks", FieldType::kArray},
                              {"connectivity.globally_reachable", FieldType::kArray},
                              {"spectrum", FieldType::kObject},
                              {"spectrum.eigenvalues", FieldType::kArray},
                              {"spectrum.corank", FieldType::kInteger},
                              {"spectrum.spectral_abscissa_negated", FieldType::kNumber},
                              {"spectrum.diagonalizable", FieldType::kBool}});
      break;
    case ReportKind::kCertify:
      require_certificate(report, "eventually_positive");
      require_certificate(report, "eventually_nonnegative");
      require_fields(report, {{"consensus", FieldType::kObject},
                              {"consensus.kind", FieldType::kString},
                              {"consensus.corank", FieldType::kInteger},
                              {"consensus.j_reduced_spectrum", FieldType::kArray}});
      break;
    case ReportKind::kSimulate:
      require_fields(report, {{"t_end", FieldType::kNumber},
                              {"num_samples", FieldType::kInteger},
                              {"method", FieldType::kString},
                              {"seed", FieldType::kInteger},
                              {"diverged", FieldType::kBool},
                              {"final_state", FieldType::kArray},
                              {"final_consensus_error", FieldType::kNumber},
                              {"trajectory_csv", FieldType::kString}});
      break;
    case ReportKind::kDesign:
      require_fields(report, {{"targets", FieldType::kArray},
                              {"S", FieldType::kArray},
                              {"L_m", FieldType::kArray},
                              {"is_laplacian", FieldType::kBool},
                              {"spectrum_achieved", FieldType::kArray}});
      break;
    case ReportKind::kDiffuse:
      require_fields(report, {{"values", FieldType::kArray},
                              {"imag_residual", FieldType::kNumber},
                              {"advisory", FieldType::kBool},
                              {"most_influential", FieldType::kInteger},
                              {"weight_balanced", FieldType::kBool},
                              {"hermitian", FieldType::kBool},
                              {"random_walk", FieldType::kObject},
                              {"random_walk.is_real", FieldType::kBool}});
      break;
    case ReportKind::kPipeline:
      require_fields(report, {{"branch", FieldType::kString},
                              {"consensus", FieldType::kObject},
                              {"checks", FieldType::kArray},
                              {"final_consensus_error", FieldType::kNumber},
                              {"trajectory_csv", FieldType::kString}});
      break;
  }
  return true;
}

}  // namespace clxflow
