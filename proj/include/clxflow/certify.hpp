#pragma once

#include <optional>
#include <string>
#include <vector>

#include "clxflow/dominance.hpp"
#include "clxflow/spectral.hpp"
#include "clxflow/types.hpp"

namespace clxflow {

/// Eventual sign property of Re(e^{-Lt}): strictly positive everywhere, or
/// entrywise nonnegative, for all t beyond some index t0.
enum class FlowPositivity { kEventuallyPositive, kEventuallyNonnegative };

enum class Verdict { kCertified, kRefuted, kInconclusive };
enum class CertRoute { kTheorem, kEmpirical, kNone };

const char* to_string(FlowPositivity p);
const char* to_string(Verdict v);
const char* to_string(CertRoute r);

struct Hypothesis {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SignPatternScan {
  enum class Status { kFound, kRefuted, kInconclusive };
  Status status = Status::kInconclusive;
  FlowPositivity mode = FlowPositivity::kEventuallyPositive;
  double t0_estimate = 0.0;  // smallest grid time after which all samples pass
  double witness_time = 0.0;
  int witness_row = -1;
  int witness_col = -1;
  double witness_value = 0.0;  // strictly negative real part when refuted
  std::vector<double> sampled_times;
};

/// Logarithmic grid over [1e-3, 10]/gap, gap = min Re of the nonzero
/// eigenvalues of L in the open right half-plane (1 when none exist).
std::vector<double> default_time_grid(const CMatrix& lap, int points = 64);

/// Grid scan of Re(e^{-Lt}). A verdict found this way is explicitly
/// sampling-based, not a proof.
SignPatternScan empirical_sign_pattern(const CMatrix& lap,
                                       const std::vector<double>& t_grid,
                                       FlowPositivity mode);

struct CertificateWitnesses {
  std::optional<double> shift;  // d used for the translated matrix
  std::optional<DominanceReport> alpha_dominance;
  std::optional<DominanceReport> left_dominance;
  std::vector<TanConditionReport> tan_reports;
  std::optional<PfClassification> pf;
  std::optional<double> t0_estimate;
  std::vector<double> sampled_times;
};

struct Certificate {
  FlowPositivity property = FlowPositivity::kEventuallyPositive;
  Verdict verdict = Verdict::kInconclusive;
  CertRoute route = CertRoute::kNone;
  std::vector<Hypothesis> hypotheses;
  CertificateWitnesses witnesses;
  std::string refutation_reason;
  std::optional<SignPatternScan> scan;
};

/// Certify that -L is eventually positive. Theorem route: corank 1,
/// nonzero spectrum strictly in the ORHP, constant kernel right eigenvector
/// with strictly real-dominant scale, strict tan condition on the kernel
/// left eigenvector, strong PF class for B and B^H. Spectral/structural
/// failures refute; condition failures fall back to the empirical scan.
Certificate certify_eventually_positive(const CMatrix& lap);

/// Certify that -L is eventually nonnegative, via the corank-1 route or the
/// multi-sink route (zero semi-simple with multiplicity equal to the sink
/// count, closed tan conditions on every kernel eigenvector).
Certificate certify_eventually_nonnegative(const CMatrix& lap);

enum class FlowKind { kConsensus, kDivergent, kMultiSink };

const char* to_string(FlowKind k);

struct ConsensusVerdict {
  FlowKind kind = FlowKind::kDivergent;
  int corank = 0;
  int sink_count = 0;
  std::vector<Complex> reduced_spectrum;  // nonzero eigenvalues, Re descending
  std::optional<Complex> alpha;           // consensus limit functional (α, w)
  CVector left_kernel;
  std::optional<CMatrix> limit_projector;  // multi-sink Σ v_i w_i^H
  std::vector<Hypothesis> reasons;
  std::optional<DominanceReport> right_dominance;  // advisory only
  std::optional<DominanceReport> left_dominance;   // advisory only
};

/// Spectral consensus test: corank 1 with the reduced spectrum strictly in
/// the ORHP. Dominance reports are attached as advisory diagnostics, never
/// as part of the verdict.
ConsensusVerdict consensus_verdict(const CMatrix& lap);

/// lim_{t→∞} e^{-Lt} x0 for consensus or multi-sink flows.
CVector predict_steady_state(const CMatrix& lap, const CVector& x0);

}  // namespace clxflow
