#include "clxflow/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/LU>

#include "clxflow/errors.hpp"
#include "clxflow/flows.hpp"
#include "clxflow/graph.hpp"
#include "clxflow/tolerances.hpp"

namespace clxflow {
namespace {

struct SpectrumSummary {
  CVector values;
  std::vector<Complex> nonzero;        // descending real part
  double zero_tol = 0.0;               // shared zero/stability scale
  double rho = 0.0;
  bool all_nonzero_orhp = true;        // Re > zero_tol for every nonzero λ
  bool any_unstable = false;           // Re < -zero_tol for some nonzero λ
  double gap = 0.0;                    // min positive Re among nonzero λ
};

SpectrumSummary summarize_spectrum(const CMatrix& lap) {
  SpectrumSummary s;
  s.values = eigenvalues_of(lap);
  s.zero_tol = tol::kZero * inf_norm(lap);
  double gap = 0.0;
  for (int i = 0; i < s.values.size(); ++i) {
    const Complex lambda = s.values[i];
    s.rho = std::max(s.rho, std::abs(lambda));
    if (std::abs(lambda) <= s.zero_tol) continue;
    s.nonzero.push_back(lambda);
    if (!(lambda.real() > s.zero_tol)) s.all_nonzero_orhp = false;
    if (lambda.real() < -s.zero_tol) s.any_unstable = true;
    if (lambda.real() > s.zero_tol)
      gap = gap == 0.0 ? lambda.real() : std::min(gap, lambda.real());
  }
  s.gap = gap;
  std::sort(s.nonzero.begin(), s.nonzero.end(),
            [](const Complex& a, const Complex& b) {
              if (a.real() != b.real()) return a.real() > b.real();
              return a.imag() > b.imag();
            });
  return s;
}

int checked_corank(const CMatrix& lap, double tol = tol::kZero) {
  try {
    return corank(lap, tol);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kRankAmbiguous) {
      throw Error(ErrorCode::kDefectiveSpectrum,
                  std::string("zero eigenvalue is defective: ") + e.what());
    }
    throw;
  }
}

// Shift chosen so d is the strictly dominant eigenvalue of dI - L, which
// needs d > |λ|^2 / (2 Re λ) for every nonzero eigenvalue, not merely
// d > ρ(L).
TranslatedMatrix certification_shift(const CMatrix& lap,
                                     const SpectrumSummary& s) {
  double need = s.rho;
  for (const Complex& lambda : s.nonzero) {
    if (lambda.real() > 0.0)
      need = std::max(need, std::norm(lambda) / (2.0 * lambda.real()));
  }
  if (need <= 0.0) return translated_matrix(lap);
  return translated_matrix(lap, 1.1 * need);
}

struct SinkBasis {
  std::vector<int> sinks;
  CMatrix right;  // absorption vectors, right.col(k)[sinks[k]] = 1
  CMatrix left;   // sink indicators e_s
};

// Canonical kernel basis for a flow matrix whose zero eigenvalue is
// semi-simple with multiplicity equal to the sink count. The pairs are
// biorthonormal by construction.
SinkBasis sink_kernel_basis(const CMatrix& lap, const std::vector<int>& sinks) {
  const int n = static_cast<int>(lap.rows());
  const int ns = static_cast<int>(sinks.size());
  std::vector<bool> is_sink(n, false);
  for (int s : sinks) is_sink[s] = true;
  std::vector<int> interior;
  for (int i = 0; i < n; ++i)
    if (!is_sink[i]) interior.push_back(i);
  const int ni = static_cast<int>(interior.size());

  CMatrix interior_block(ni, ni), coupling(ni, ns);
  for (int r = 0; r < ni; ++r) {
    for (int c = 0; c < ni; ++c) interior_block(r, c) = lap(interior[r], interior[c]);
    for (int c = 0; c < ns; ++c) coupling(r, c) = lap(interior[r], sinks[c]);
  }

  CMatrix interior_values(ni, ns);
  if (ni > 0) {
    Eigen::FullPivLU<CMatrix> lu(interior_block);
    if (!lu.isInvertible()) {
      throw Error(ErrorCode::kDefectiveSpectrum,
                  "interior block is singular; zero eigenvalue is not "
                  "semi-simple with sink multiplicity");
    }
    interior_values = -lu.solve(coupling);
  }

  SinkBasis basis;
  basis.sinks = sinks;
  basis.right = CMatrix::Zero(n, ns);
  basis.left = CMatrix::Zero(n, ns);
  for (int k = 0; k < ns; ++k) {
    basis.right(sinks[k], k) = 1.0;
    basis.left(sinks[k], k) = 1.0;
    for (int r = 0; r < ni; ++r) basis.right(interior[r], k) = interior_values(r, k);
  }
  return basis;
}

void push(std::vector<Hypothesis>& list, const std::string& name, bool passed,
          const std::string& detail = {}) {
  list.push_back({name, passed, detail});
}

// Scan attached as a witness; certification failures inside the scan are
// allowed (e.g. overflow on unstable flows).
void attach_scan(Certificate& cert, const CMatrix& lap, FlowPositivity mode) {
  try {
    SignPatternScan scan = empirical_sign_pattern(lap, default_time_grid(lap), mode);
    if (scan.status == SignPatternScan::Status::kFound)
      cert.witnesses.t0_estimate = scan.t0_estimate;
    cert.witnesses.sampled_times = scan.sampled_times;
    cert.scan = std::move(scan);
  } catch (const Error&) {
  }
}

}  // namespace

const char* to_string(FlowPositivity p) {
  return p == FlowPositivity::kEventuallyPositive ? "eventually_positive"
                                                  : "eventually_nonnegative";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kCertified: return "certified";
    case Verdict::kRefuted: return "refuted";
    case Verdict::kInconclusive: return "inconclusive";
  }
  return "inconclusive";
}

const char* to_string(CertRoute r) {
  switch (r) {
    case CertRoute::kTheorem: return "theorem";
    case CertRoute::kEmpirical: return "empirical";
    case CertRoute::kNone: return "none";
  }
  return "none";
}

const char* to_string(FlowKind k) {
  switch (k) {
    case FlowKind::kConsensus: return "consensus";
    case FlowKind::kDivergent: return "divergent";
    case FlowKind::kMultiSink: return "multi_sink";
  }
  return "divergent";
}

std::vector<double> default_time_grid(const CMatrix& lap, int points) {
  if (points < 1) {
    throw Error(ErrorCode::kInvalidArgument, "grid needs at least one point");
  }
  const SpectrumSummary s = summarize_spectrum(lap);
  const double gap = s.gap > 0.0 ? s.gap : 1.0;
  const double lo = 1e-3 / gap, hi = 10.0 / gap;
  std::vector<double> grid(points);
  for (int k = 0; k < points; ++k) {
    const double f = points == 1 ? 0.0 : static_cast<double>(k) / (points - 1);
    grid[k] = lo * std::pow(hi / lo, f);
  }
  return grid;
}

SignPatternScan empirical_sign_pattern(const CMatrix& lap,
                                       const std::vector<double>& t_grid,
                                       FlowPositivity mode) {
  if (t_grid.empty()) {
    throw Error(ErrorCode::kEmptyGrid, "time grid is empty");
  }
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    if (!(t_grid[k] > 0.0) || !std::isfinite(t_grid[k]) ||
        (k > 0 && t_grid[k] <= t_grid[k - 1])) {
      throw Error(ErrorCode::kInvalidArgument,
                  "time grid must be ascending and positive");
    }
  }

  SignPatternScan scan;
  scan.mode = mode;
  scan.sampled_times = t_grid;

  const int n = static_cast<int>(lap.rows());
  std::vector<bool> ok(t_grid.size(), false);
  double last_min = 0.0, last_scale = 1.0;
  int last_row = -1, last_col = -1;

  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    const CMatrix e = matrix_exponential(-lap, t_grid[k]);
    const double scale = max_abs(e);
    const double floor = mode == FlowPositivity::kEventuallyPositive
                             ? tol::kStrictPositive
                             : -tol::kNonnegative * std::max(scale, 1.0);
    bool pass = true;
    double worst = std::numeric_limits<double>::infinity();
    int wr = -1, wc = -1;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double re = e(i, j).real();
        if (re < worst) {
          worst = re;
          wr = i;
          wc = j;
        }
        if (mode == FlowPositivity::kEventuallyPositive ? !(re > floor)
                                                        : re < floor)
          pass = false;
      }
    }
    ok[k] = pass;
    if (k + 1 == t_grid.size()) {
      last_min = worst;
      last_scale = scale;
      last_row = wr;
      last_col = wc;
    }
  }

  int first_stable = static_cast<int>(t_grid.size());
  for (int k = static_cast<int>(t_grid.size()) - 1; k >= 0; --k) {
    if (!ok[k]) break;
    first_stable = k;
  }
  if (first_stable < static_cast<int>(t_grid.size())) {
    scan.status = SignPatternScan::Status::kFound;
    scan.t0_estimate = t_grid[first_stable];
    return scan;
  }

  const double refute_tol = tol::kRefutation * std::max(1.0, last_scale);
  if (last_min < -refute_tol) {
    scan.status = SignPatternScan::Status::kRefuted;
    scan.witness_time = t_grid.back();
    scan.witness_row = last_row;
    scan.witness_col = last_col;
    scan.witness_value = last_min;
  } else {
    scan.status = SignPatternScan::Status::kInconclusive;
  }
  return scan;
}

Certificate certify_eventually_positive(const CMatrix& lap) {
  Certificate cert;
  cert.property = FlowPositivity::kEventuallyPositive;

  const SpectrumSummary spectrum = summarize_spectrum(lap);
  const int c = checked_corank(lap);
  const ConnectivityReport conn = connectivity_of_laplacian_support(lap);

  push(cert.hypotheses, "corank_one", c == 1,
       "kernel dimension " + std::to_string(c));
  push(cert.hypotheses, "nonzero_spectrum_orhp", spectrum.all_nonzero_orhp,
       spectrum.any_unstable ? "eigenvalue with negative real part"
                             : (spectrum.all_nonzero_orhp
                                    ? ""
                                    : "eigenvalue on the stability boundary"));
  push(cert.hypotheses, "strongly_connected_support", conn.strongly_connected);

  if (!spectrum.all_nonzero_orhp || c != 1 || !conn.strongly_connected) {
    cert.verdict = Verdict::kRefuted;
    cert.route = CertRoute::kTheorem;
    if (!spectrum.all_nonzero_orhp) {
      cert.refutation_reason =
          spectrum.any_unstable
              ? "negated flow matrix has an unstable mode"
              : "nonzero eigenvalue on the stability boundary";
    } else if (c != 1) {
      cert.refutation_reason =
          "zero eigenvalue has multiplicity " + std::to_string(c) +
          "; eventual strict positivity forces a simple dominant eigenvalue";
    } else {
      cert.refutation_reason =
          "support digraph is reducible, so some walk-free entries of "
          "exp(-Lt) stay zero for all t";
    }
    attach_scan(cert, lap, FlowPositivity::kEventuallyPositive);
    return cert;
  }

  KernelPair kernel = kernel_pair(lap);
  TranslatedMatrix shifted = certification_shift(lap, spectrum);
  cert.witnesses.shift = shifted.shift;

  CVector alpha_vec(1);
  alpha_vec[0] = kernel.alpha.value_or(Complex(0, 0));
  DominanceReport alpha_report = real_dominance(alpha_vec, /*strict=*/true);
  const bool alpha_ok = kernel.alpha.has_value() &&
                        alpha_report.strictly_real_dominant;
  push(cert.hypotheses, "kernel_right_constant_strictly_dominant", alpha_ok,
       kernel.alpha ? "" : "right kernel eigenvector is not constant");
  cert.witnesses.alpha_dominance = std::move(alpha_report);

  DominanceReport left_report = real_dominance(kernel.left, /*strict=*/true);
  cert.witnesses.left_dominance = left_report;

  TanConditionReport tan = left_tan_condition(shifted.matrix, kernel.left);
  const bool tan_ok = tan.all_in_open_unit;
  push(cert.hypotheses, "left_tan_condition_strict", tan_ok,
       tan.has_indeterminate ? "indeterminate ratios present" : "");
  cert.witnesses.tan_reports.push_back(std::move(tan));

  PfClassification pf = pf_classify(shifted.matrix);
  const bool pf_ok = pf.combined == PfClass::kStrong;
  push(cert.hypotheses, "strong_pf_both_sides", pf_ok,
       std::string("matrix ") + to_string(pf.matrix_class) + ", adjoint " +
           to_string(pf.adjoint_class));
  cert.witnesses.pf = std::move(pf);

  attach_scan(cert, lap, FlowPositivity::kEventuallyPositive);

  if (alpha_ok && tan_ok && pf_ok) {
    cert.verdict = Verdict::kCertified;
    cert.route = CertRoute::kTheorem;
    return cert;
  }

  if (cert.scan) {
    switch (cert.scan->status) {
      case SignPatternScan::Status::kFound:
        cert.verdict = Verdict::kCertified;
        cert.route = CertRoute::kEmpirical;
        return cert;
      case SignPatternScan::Status::kRefuted:
        cert.verdict = Verdict::kRefuted;
        cert.route = CertRoute::kEmpirical;
        cert.refutation_reason = "negative real entry persists at the end of "
                                 "the sampling grid";
        return cert;
      case SignPatternScan::Status::kInconclusive:
        break;
    }
  }
  cert.verdict = Verdict::kInconclusive;
  cert.route = CertRoute::kNone;
  return cert;
}

Certificate certify_eventually_nonnegative(const CMatrix& lap) {
  Certificate cert;
  cert.property = FlowPositivity::kEventuallyNonnegative;

  const SpectrumSummary spectrum = summarize_spectrum(lap);
  const int c = checked_corank(lap);
  const ConnectivityReport conn = connectivity_of_laplacian_support(lap);
  const int sink_count = static_cast<int>(conn.sinks.size());

  push(cert.hypotheses, "nonzero_spectrum_orhp", spectrum.all_nonzero_orhp,
       spectrum.any_unstable ? "eigenvalue with negative real part" : "");

  if (!spectrum.all_nonzero_orhp) {
    cert.verdict = Verdict::kRefuted;
    cert.route = CertRoute::kTheorem;
    cert.refutation_reason =
        spectrum.any_unstable
            ? "negated flow matrix has an unstable mode"
            : "nonzero eigenvalue on the stability boundary";
    attach_scan(cert, lap, FlowPositivity::kEventuallyNonnegative);
    return cert;
  }

  TranslatedMatrix shifted = certification_shift(lap, spectrum);
  cert.witnesses.shift = shifted.shift;

  if (c == 1) {
    push(cert.hypotheses, "corank_one", true);
    KernelPair kernel = kernel_pair(lap);

    CVector alpha_vec(1);
    alpha_vec[0] = kernel.alpha.value_or(Complex(0, 0));
    DominanceReport alpha_report = real_dominance(alpha_vec);
    const bool alpha_ok = kernel.alpha.has_value() && alpha_report.real_dominant;
    push(cert.hypotheses, "kernel_right_constant_dominant", alpha_ok,
         kernel.alpha ? "" : "right kernel eigenvector is not constant");
    cert.witnesses.alpha_dominance = std::move(alpha_report);
    cert.witnesses.left_dominance = real_dominance(kernel.left);

    TanConditionReport tan = left_tan_condition(shifted.matrix, kernel.left);
    const bool tan_ok = tan.all_in_closed_unit;
    push(cert.hypotheses, "left_tan_condition_closed", tan_ok);
    cert.witnesses.tan_reports.push_back(std::move(tan));

    attach_scan(cert, lap, FlowPositivity::kEventuallyNonnegative);
    if (alpha_ok && tan_ok) {
      cert.verdict = Verdict::kCertified;
      cert.route = CertRoute::kTheorem;
      return cert;
    }
  } else if (c == sink_count && c >= 2) {
    push(cert.hypotheses, "zero_semi_simple_with_sink_multiplicity", true,
         std::to_string(c) + " sinks");
    push(cert.hypotheses, "weakly_connected_support", conn.weakly_connected);

    SinkBasis basis = sink_kernel_basis(lap, conn.sinks);
    bool all_closed = true;
    for (int k = 0; k < static_cast<int>(basis.sinks.size()); ++k) {
      TanConditionReport left_report =
          left_tan_condition(shifted.matrix, basis.left.col(k));
      TanConditionReport right_report =
          right_tan_condition(shifted.matrix, basis.right.col(k));
      all_closed = all_closed && left_report.all_in_closed_unit &&
                   right_report.all_in_closed_unit;
      cert.witnesses.tan_reports.push_back(std::move(left_report));
      cert.witnesses.tan_reports.push_back(std::move(right_report));
    }
    push(cert.hypotheses, "kernel_tan_conditions_closed", all_closed);

    attach_scan(cert, lap, FlowPositivity::kEventuallyNonnegative);
    if (all_closed) {
      cert.verdict = Verdict::kCertified;
      cert.route = CertRoute::kTheorem;
      return cert;
    }
  } else {
    push(cert.hypotheses, "zero_semi_simple_with_sink_multiplicity", false,
         "corank " + std::to_string(c) + " vs " + std::to_string(sink_count) +
             " sinks");
    attach_scan(cert, lap, FlowPositivity::kEventuallyNonnegative);
  }

  if (cert.scan) {
    switch (cert.scan->status) {
      case SignPatternScan::Status::kFound:
        cert.verdict = Verdict::kCertified;
        cert.route = CertRoute::kEmpirical;
        return cert;
      case SignPatternScan::Status::kRefuted:
        cert.verdict = Verdict::kRefuted;
        cert.route = CertRoute::kEmpirical;
        cert.refutation_reason = "negative real entry persists at the end of "
                                 "the sampling grid";
        return cert;
      case SignPatternScan::Status::kInconclusive:
        break;
    }
  }
  cert.verdict = Verdict::kInconclusive;
  cert.route = CertRoute::kNone;
  return cert;
}

ConsensusVerdict consensus_verdict(const CMatrix& lap) {
  const SpectrumSummary spectrum = summarize_spectrum(lap);
  const int c = checked_corank(lap);
  const ConnectivityReport conn = connectivity_of_laplacian_support(lap);

  ConsensusVerdict verdict;
  verdict.corank = c;
  verdict.sink_count = static_cast<int>(conn.sinks.size());
  verdict.reduced_spectrum = spectrum.nonzero;

  push(verdict.reasons, "corank_one", c == 1,
       "kernel dimension " + std::to_string(c));
  push(verdict.reasons, "reduced_spectrum_orhp", spectrum.all_nonzero_orhp);

  if (c == 1) {
    KernelPair kernel = kernel_pair(lap);
    verdict.alpha = kernel.alpha;
    verdict.left_kernel = kernel.left;
    verdict.right_dominance = real_dominance(kernel.right);
    verdict.left_dominance = real_dominance(kernel.left);
    verdict.kind = spectrum.all_nonzero_orhp ? FlowKind::kConsensus
                                             : FlowKind::kDivergent;
    return verdict;
  }

  if (!spectrum.all_nonzero_orhp) {
    verdict.kind = FlowKind::kDivergent;
    return verdict;
  }

  verdict.kind = FlowKind::kMultiSink;
  push(verdict.reasons, "corank_matches_sink_count", c == verdict.sink_count);
  if (c == verdict.sink_count) {
    SinkBasis basis = sink_kernel_basis(lap, conn.sinks);
    verdict.limit_projector = basis.right * basis.left.adjoint();
  } else {
    SpectralDecomposition dec = eig(lap);
    if (!dec.normalized) {
      throw Error(ErrorCode::kDefectiveSpectrum,
                  "cannot form the kernel projector: decomposition is not "
                  "biorthonormal");
    }
    CMatrix projector = CMatrix::Zero(lap.rows(), lap.cols());
    for (int i = 0; i < dec.eigenvalues.size(); ++i) {
      if (std::abs(dec.eigenvalues[i]) <= spectrum.zero_tol)
        projector += dec.right.col(i) * dec.left.col(i).adjoint();
    }
    verdict.limit_projector = std::move(projector);
  }
  return verdict;
}

CVector predict_steady_state(const CMatrix& lap, const CVector& x0) {
  if (lap.rows() != x0.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "state size mismatch");
  }
  const ConsensusVerdict verdict = consensus_verdict(lap);
  switch (verdict.kind) {
    case FlowKind::kConsensus: {
      const KernelPair kernel = kernel_pair(lap);
      return kernel.right * kernel.left.dot(x0);
    }
    case FlowKind::kMultiSink:
      return *verdict.limit_projector * x0;
    case FlowKind::kDivergent:
      break;
  }
  throw Error(ErrorCode::kDivergentFlow,
              "flow has no finite steady state: " +
                  std::string(to_string(verdict.kind)));
}

}  // namespace clxflow
