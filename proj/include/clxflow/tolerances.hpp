#pragma once

namespace clxflow::tol {

// Zero classification for eigenvalues and singular values, relative to
// max(||M||_inf, 1).
inline constexpr double kZero = 1e-9;

// Eigenpair residual and biorthogonality budget, relative to ||M||.
inline constexpr double kResidual = 1e-8;

// Laplacian row-sum budget, relative to max(||L||_inf, 1).
inline constexpr double kRowSum = 1e-12;

// Relative gap required for a strictly dominant eigenvalue modulus.
inline constexpr double kDominanceGap = 1e-8;

// Entrywise slack for weak real dominance, Re(z) >= |Im(z)| - kDominance.
inline constexpr double kDominance = 1e-12;

// Weak PF test: Re(v) >= -kWeakPf entrywise on a unit-norm eigenvector.
inline constexpr double kWeakPf = 1e-9;

// Tan-condition machinery.
inline constexpr double kTanSelfCheck = 1e-6;
inline constexpr double kTanDenominator = 1e-12;
inline constexpr double kEigenvectorResidual = 1e-6;

// Sign-pattern scans.
inline constexpr double kStrictPositive = 1e-12;
inline constexpr double kNonnegative = 1e-9;
inline constexpr double kRefutation = 1e-8;

// Stability classification, relative to max(||L||_inf, 1).
inline constexpr double kStability = 1e-9;

// Constant-vector detection for kernel eigenvectors.
inline constexpr double kConstantVector = 1e-8;

// Divergence cutoff for simulated trajectories, relative to ||x0||_inf.
inline constexpr double kDivergence = 1e12;

// Spectrum placement check for modified flows.
inline constexpr double kSpectrumMatch = 1e-6;

// Nonzero-entry threshold in walk sums, relative to ||S||_inf.
inline constexpr double kWalkZero = 1e-9;

}  // namespace clxflow::tol
