#include "clxflow/flows.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <Eigen/LU>

#include "clxflow/errors.hpp"
#include "clxflow/spectral.hpp"
#include "clxflow/tolerances.hpp"

namespace clxflow {
namespace {

double one_norm(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().colwise().sum().maxCoeff();
}

CMatrix pade_exp(const CMatrix& a, const std::vector<double>& coeffs) {
  const int n = static_cast<int>(a.rows());
  const CMatrix identity = CMatrix::Identity(n, n);
  CMatrix even = coeffs[0] * identity;  // V: even powers
  CMatrix odd = coeffs[1] * identity;   // U = A * odd
  CMatrix power = identity;
  const CMatrix a2 = a * a;
  for (std::size_t k = 2; k < coeffs.size(); k += 2) {
    power = power * a2;
    even += coeffs[k] * power;
    if (k + 1 < coeffs.size()) odd += coeffs[k + 1] * power;
  }
  const CMatrix u = a * odd;
  return Eigen::PartialPivLU<CMatrix>(even - u).solve(even + u);
}

// Degree-13 evaluation with the reduced multiplication scheme.
CMatrix pade13_exp(const CMatrix& a) {
  static const double b[] = {64764752532480000.0, 32382376266240000.0,
                             7771770303897600.0,  1187353796428800.0,
                             129060195264000.0,   10559470521600.0,
                             670442572800.0,      33522128640.0,
                             1323241920.0,        40840800.0,
                             960960.0,            16380.0,
                             182.0,               1.0};
  const int n = static_cast<int>(a.rows());
  const CMatrix identity = CMatrix::Identity(n, n);
  const CMatrix a2 = a * a;
  const CMatrix a4 = a2 * a2;
  const CMatrix a6 = a4 * a2;
  const CMatrix u =
      a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 +
           b[5] * a4 + b[3] * a2 + b[1] * identity);
  const CMatrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 +
                    b[4] * a4 + b[2] * a2 + b[0] * identity;
  return Eigen::PartialPivLU<CMatrix>(v - u).solve(v + u);
}

bool exceeds(const CVector& x, double bound) {
  for (int i = 0; i < x.size(); ++i) {
    const double a = std::abs(x[i]);
    if (!std::isfinite(a) || a > bound) return true;
  }
  return false;
}

}  // namespace

CMatrix matrix_exponential(const CMatrix& m, double t) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw Error(ErrorCode::kInvalidArgument, "matrix must be square");
  }
  if (!m.allFinite() || !std::isfinite(t)) {
    throw Error(ErrorCode::kInvalidArgument, "non-finite input");
  }
  CMatrix a = m * t;
  const double norm = one_norm(a);

  // Padé orders with their distance bounds (Higham 2005).
  static const double theta3 = 1.495585217958292e-2;
  static const double theta5 = 2.539398330063230e-1;
  static const double theta7 = 9.504178996162932e-1;
  static const double theta9 = 2.097847961257068;
  static const double theta13 = 5.371920351148152;

  CMatrix result;
  if (norm <= theta3) {
    result = pade_exp(a, {120.0, 60.0, 12.0, 1.0});
  } else if (norm <= theta5) {
    result = pade_exp(a, {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0});
  } else if (norm <= theta7) {
    result = pade_exp(a, {17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0,
                          1512.0, 56.0, 1.0});
  } else if (norm <= theta9) {
    result = pade_exp(a, {17643225600.0, 8821612800.0, 2075673600.0,
                          302702400.0, 30270240.0, 2162160.0, 110880.0,
                          3960.0, 90.0, 1.0});
  } else {
    int squarings = static_cast<int>(
        std::max(0.0, std::ceil(std::log2(norm / theta13))));
    // Cap the scaling so pathological norms fail loudly instead of looping.
    if (squarings > 1100) {
      throw Error(ErrorCode::kOverflow, "matrix exponential out of range");
    }
    result = pade13_exp(a / std::pow(2.0, squarings));
    for (int s = 0; s < squarings; ++s) {
      result = result * result;
      if (!result.allFinite()) {
        throw Error(ErrorCode::kOverflow, "matrix exponential overflowed");
      }
    }
  }
  if (!result.allFinite()) {
    throw Error(ErrorCode::kOverflow, "matrix exponential overflowed");
  }
  return result;
}

double consensus_error(const CVector& state) {
  double worst = 0.0;
  for (int i = 0; i < state.size(); ++i)
    for (int j = i + 1; j < state.size(); ++j)
      worst = std::max(worst, std::abs(state[i] - state[j]));
  return worst;
}

Trajectory simulate(const CMatrix& lap, const CVector& x0, double t_end,
                    int num_samples, IntegrationMethod method) {
  if (!(t_end > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "t_end must be positive");
  }
  if (num_samples < 2) {
    throw Error(ErrorCode::kInvalidArgument, "need at least two samples");
  }
  if (lap.rows() != lap.cols() || lap.rows() != x0.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "Laplacian/state size mismatch");
  }

  const double dt = t_end / (num_samples - 1);
  const double blow_up = tol::kDivergence * std::max(x0.cwiseAbs().maxCoeff(), 1e-300);

  Trajectory trajectory;
  trajectory.method = method;
  trajectory.times.reserve(num_samples);
  trajectory.states.reserve(num_samples);
  trajectory.consensus_errors.reserve(num_samples);

  auto record = [&](double t, const CVector& x) {
    trajectory.times.push_back(t);
    trajectory.states.push_back(x);
    trajectory.consensus_errors.push_back(consensus_error(x));
  };

  CVector x = x0;
  record(0.0, x);

  if (method == IntegrationMethod::kExpStep) {
    const CMatrix propagator = matrix_exponential(-lap, dt);
    for (int k = 1; k < num_samples; ++k) {
      x = propagator * x;
      record(k * dt, x);
      if (exceeds(x, blow_up)) {
        trajectory.diverged = true;
        break;
      }
    }
  } else {
    double rho = 0.0;
    const CVector values = eigenvalues_of(lap);
    for (int i = 0; i < values.size(); ++i)
      rho = std::max(rho, std::abs(values[i]));
    const int substeps =
        rho > 0.0 ? std::max(1, static_cast<int>(std::ceil(dt * rho / 0.1))) : 1;
    const double h = dt / substeps;
    for (int k = 1; k < num_samples; ++k) {
      for (int s = 0; s < substeps; ++s) {
        const CVector k1 = -(lap * x);
        const CVector k2 = -(lap * (x + 0.5 * h * k1));
        const CVector k3 = -(lap * (x + 0.5 * h * k2));
        const CVector k4 = -(lap * (x + h * k3));
        x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      }
      record(k * dt, x);
      if (exceeds(x, blow_up)) {
        trajectory.diverged = true;
        break;
      }
    }
  }
  return trajectory;
}

void write_trajectory_csv(const Trajectory& trajectory, std::ostream& out) {
  const int n = trajectory.states.empty()
                    ? 0
                    : static_cast<int>(trajectory.states.front().size());
  out << "t";
  for (int i = 1; i <= n; ++i) out << ",re_x" << i << ",im_x" << i;
  out << ",consensus_err\n";
  out.precision(17);
  for (std::size_t k = 0; k < trajectory.times.size(); ++k) {
    out << trajectory.times[k];
    for (int i = 0; i < n; ++i) {
      out << "," << trajectory.states[k][i].real() << ","
          << trajectory.states[k][i].imag();
    }
    out << "," << trajectory.consensus_errors[k] << "\n";
  }
}

}  // namespace clxflow
