#pragma once

#include <iosfwd>
#include <vector>

#include "clxflow/types.hpp"

namespace clxflow {

/// e^{Mt} by Padé scaling-and-squaring. Throws Overflow when the result
/// leaves the double range.
CMatrix matrix_exponential(const CMatrix& m, double t = 1.0);

enum class IntegrationMethod { kExpStep, kRk4 };

struct Trajectory {
  std::vector<double> times;
  std::vector<CVector> states;
  IntegrationMethod method = IntegrationMethod::kExpStep;
  std::vector<double> consensus_errors;
  bool diverged = false;  // truncated once ||x||_inf exceeds 1e12 ||x0||_inf
};

/// Integrate ẋ = -L x over [0, t_end] with `num_samples` uniform samples.
/// kExpStep applies the exact one-step propagator e^{-L dt}; kRk4 is a
/// fixed-step classical integrator with substeps bounded by 0.1/ρ(L).
Trajectory simulate(const CMatrix& lap, const CVector& x0, double t_end,
                    int num_samples,
                    IntegrationMethod method = IntegrationMethod::kExpStep);

/// max_{i,j} |x_i - x_j|
double consensus_error(const CVector& state);

/// CSV: t,re_x1,im_x1,...,re_xn,im_xn,consensus_err (LF line endings).
void write_trajectory_csv(const Trajectory& trajectory, std::ostream& out);

}  // namespace clxflow
