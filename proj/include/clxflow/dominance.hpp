#pragma once

#include <string>
#include <vector>

#include "clxflow/types.hpp"

namespace clxflow {

/// Entrywise real-dominance diagnostics: Re(z_i) >= |Im(z_i)|, i.e. phases
/// inside [-45°, 45°]. Zero entries pass the weak test and fail the strict
/// one.
struct DominanceReport {
  CVector vector;
  std::vector<double> phase_deg;
  bool real_dominant = false;
  bool strictly_real_dominant = false;
  std::vector<int> violating_indices;  // for the mode selected by `strict`
};

DominanceReport real_dominance(const CVector& z, bool strict = false);

enum class TanSide { kLeft, kRight };

struct TanConditionReport {
  TanSide side = TanSide::kLeft;
  std::vector<double> ratios;  // NaN at indeterminate indices
  std::vector<bool> indeterminate;
  bool all_in_closed_unit = false;  // determinate ratios within [-1, 1]
  bool all_in_open_unit = false;    // within (-1, 1) and none indeterminate
  bool has_indeterminate = false;
  double self_check_max_err = 0.0;
  std::string matrix_used = "B";
};

/// Per-column phase-angle ratio for a left eigenvector w of B at its
/// dominant real eigenvalue:
///   ratio_i = Σ_j |B_ji||w_j| sin(θ_ji − φ_wj) / Σ_j |B_ji||w_j| cos(θ_ji − φ_wj),
/// which must reproduce tan(−φ_wi) (self-check). Columns whose sums both
/// vanish (zero w entries) are flagged indeterminate.
TanConditionReport left_tan_condition(const CMatrix& b, const CVector& w);

/// Row mirror for a right eigenvector v of B; self-check ratio_i = tan(φ_vi).
TanConditionReport right_tan_condition(const CMatrix& b, const CVector& v);

}  // namespace clxflow
