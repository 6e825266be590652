#include "clxflow/dominance.hpp"

#include <cmath>

#include "clxflow/errors.hpp"
#include "clxflow/tolerances.hpp"

namespace clxflow {
namespace {

struct RayleighCheck {
  double eigenvalue;  // real part of the Rayleigh quotient
};

// Verify that x is (numerically) an eigenvector of B on the requested side
// for a real eigenvalue, and return that eigenvalue.
RayleighCheck require_eigenvector(const CMatrix& b, const CVector& x,
                                  TanSide side) {
  if (b.rows() != b.cols() || b.rows() != x.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "matrix/vector sizes do not match");
  }
  const double xn = x.norm();
  if (!(xn > 0.0)) {
    throw Error(ErrorCode::kNotAnEigenvector, "zero vector");
  }
  const CVector image = side == TanSide::kLeft ? CVector(b.adjoint() * x)
                                               : CVector(b * x);
  const Complex rayleigh = x.dot(image) / (xn * xn);
  // Left side: B^H x = conj(λ) x when x^H B = λ x^H.
  const Complex lambda = side == TanSide::kLeft ? std::conj(rayleigh) : rayleigh;
  const double residual =
      (image - rayleigh * x).norm();
  const double bound = tol::kEigenvectorResidual * std::max(inf_norm(b), 1.0) * xn;
  if (residual > bound) {
    throw Error(ErrorCode::kNotAnEigenvector,
                "eigenpair residual " + std::to_string(residual) +
                    " exceeds " + std::to_string(bound));
  }
  if (!(lambda.real() > 0.0) ||
      std::abs(lambda.imag()) > tol::kEigenvectorResidual *
                                    std::max(std::abs(lambda), 1.0)) {
    throw Error(ErrorCode::kNotAnEigenvector,
                "eigenvalue is not real positive; the phase identity needs "
                "an eigenvalue at angle 0");
  }
  return {lambda.real()};
}

TanConditionReport tan_condition(const CMatrix& b, const CVector& x,
                                 TanSide side) {
  require_eigenvector(b, x, side);
  const int n = static_cast<int>(x.size());

  TanConditionReport report;
  report.side = side;
  report.matrix_used = "B";
  report.ratios.assign(n, std::nan(""));
  report.indeterminate.assign(n, false);
  report.all_in_closed_unit = true;
  report.all_in_open_unit = true;

  const double x_scale = x.cwiseAbs().maxCoeff();
  const double den_tol =
      tol::kTanDenominator * std::max(1.0, inf_norm(b) * x_scale);

  for (int i = 0; i < n; ++i) {
    double num = 0.0, den = 0.0;
    for (int j = 0; j < n; ++j) {
      // Left: column i with phases θ_ji − φ_wj. Right: row i with θ_ij + φ_vj.
      const Complex entry = side == TanSide::kLeft ? b(j, i) : b(i, j);
      const double magnitude = std::abs(entry) * std::abs(x[j]);
      if (magnitude <= 0.0) continue;
      const double angle = side == TanSide::kLeft
                               ? std::arg(entry) - std::arg(x[j])
                               : std::arg(entry) + std::arg(x[j]);
      num += magnitude * std::sin(angle);
      den += magnitude * std::cos(angle);
    }
    if (std::abs(den) <= den_tol) {
      report.indeterminate[i] = true;
      report.has_indeterminate = true;
      report.all_in_open_unit = false;
      continue;
    }
    const double ratio = num / den;
    report.ratios[i] = ratio;

    const double phase = std::arg(x[i]);
    const double expected = side == TanSide::kLeft ? std::tan(-phase) : std::tan(phase);
    const double err =
        std::abs(ratio - expected) / std::max(1.0, std::abs(expected));
    report.self_check_max_err = std::max(report.self_check_max_err, err);

    if (!(ratio >= -1.0 && ratio <= 1.0)) report.all_in_closed_unit = false;
    if (!(ratio > -1.0 && ratio < 1.0)) report.all_in_open_unit = false;
  }

  if (report.self_check_max_err > tol::kTanSelfCheck) {
    throw Error(ErrorCode::kNotAnEigenvector,
                "phase identity self-check failed: max error " +
                    std::to_string(report.self_check_max_err));
  }
  return report;
}

}  // namespace

DominanceReport real_dominance(const CVector& z, bool strict) {
  const int n = static_cast<int>(z.size());
  DominanceReport report;
  report.vector = z;
  report.phase_deg.reserve(n);
  report.real_dominant = true;
  report.strictly_real_dominant = true;
  std::vector<int> weak_violations, strict_violations;
  for (int i = 0; i < n; ++i) {
    report.phase_deg.push_back(rad_to_deg(std::arg(z[i])));
    const bool weak_ok = z[i].real() >= std::abs(z[i].imag()) - tol::kDominance;
    const bool strict_ok = z[i].real() > std::abs(z[i].imag());
    if (!weak_ok) {
      report.real_dominant = false;
      weak_violations.push_back(i);
    }
    if (!strict_ok) {
      report.strictly_real_dominant = false;
      strict_violations.push_back(i);
    }
  }
  report.violating_indices = strict ? strict_violations : weak_violations;
  return report;
}

TanConditionReport left_tan_condition(const CMatrix& b, const CVector& w) {
  return tan_condition(b, w, TanSide::kLeft);
}

TanConditionReport right_tan_condition(const CMatrix& b, const CVector& v) {
  return tan_condition(b, v, TanSide::kRight);
}

}  // namespace clxflow
