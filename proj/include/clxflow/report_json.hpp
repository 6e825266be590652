#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "clxflow/certify.hpp"
#include "clxflow/design.hpp"
#include "clxflow/diffusion.hpp"
#include "clxflow/graph.hpp"
#include "clxflow/spectral.hpp"

namespace clxflow {

using Json = nlohmann::ordered_json;

Json complex_to_json(const Complex& z);
Json vector_to_json(const CVector& v);
Json matrix_to_json(const CMatrix& m);  // row-major [{re,im}, ...]

Json connectivity_to_json(const ConnectivityReport& report);
Json decomposition_to_json(const SpectralDecomposition& dec);
Json dominance_to_json(const DominanceReport& report);
Json tan_report_to_json(const TanConditionReport& report);
Json pf_to_json(const PfClassification& pf);
Json certificate_to_json(const Certificate& cert);
Json verdict_to_json(const ConsensusVerdict& verdict);
Json design_to_json(const ModifiedFlowDesign& design);
Json influence_to_json(const InfluenceVector& influence);

/// Report kinds understood by the schema validator.
enum class ReportKind {
  kAnalyze,
  kCertify,
  kSimulate,
  kDesign,
  kDiffuse,
  kPipeline,
};

/// Structural check of a report against its expected schema; throws
/// ParseError with the offending path on mismatch, returns true otherwise.
bool validate_report(const Json& report, ReportKind kind);

}  // namespace clxflow
