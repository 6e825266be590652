#pragma once

#include <optional>
#include <vector>

#include "clxflow/tolerances.hpp"
#include "clxflow/types.hpp"

namespace clxflow {

/// Full spectrum with matched right/left eigenvectors. Eigenvalues are
/// sorted by |λ| descending, ties broken by descending real part. When
/// `normalized`, left.col(i)^H * right.col(i) == 1 for every pair and the
/// right eigenvectors are unit-norm with their largest-magnitude entry
/// rotated to the positive real axis.
struct SpectralDecomposition {
  CVector eigenvalues;
  CMatrix right;
  CMatrix left;
  bool normalized = false;
  bool diagonalizable = false;
  int jordan_defect = 0;
};

SpectralDecomposition eig(const CMatrix& m);

/// Eigenvalues only (same sort order as eig).
CVector eigenvalues_of(const CMatrix& m);

double spectral_abscissa(const CMatrix& m);

/// Kernel dimension, counted both from the spectrum (|λ| <= tol·scale) and
/// from a rank-revealing SVD; disagreement (a defective zero) raises
/// RankAmbiguous.
int corank(const CMatrix& m, double tol = tol::kZero);

struct TranslatedMatrix {
  CMatrix matrix;  // d I - L
  double shift = 0.0;
};

/// B = dI - L. Default d = 1.1 * max|λ(L)| (or 1.0 when the spectrum
/// vanishes); a supplied d must exceed the spectral abscissa of L.
TranslatedMatrix translated_matrix(const CMatrix& lap,
                                   std::optional<double> shift = {});

enum class PfClass { kNone, kWeak, kStrong };

const char* to_string(PfClass c);

struct PfClassification {
  PfClass matrix_class = PfClass::kNone;
  PfClass adjoint_class = PfClass::kNone;
  PfClass combined = PfClass::kNone;  // min of the two
  Complex dominant_eigenvalue;
  CVector dominant_right;  // phase-gauged
  CVector dominant_left;   // phase-gauged independently
};

/// Perron-Frobenius classification of M and M^H: kStrong needs a real,
/// positive, simple, strictly modulus-dominant λ1 with Re(v) > 0 entrywise
/// after the phase gauge; kWeak relaxes the eigenvector test to
/// Re(v) >= -1e-9 and drops strict modulus dominance.
PfClassification pf_classify(const CMatrix& m);

struct KernelPair {
  CVector right;                 // unit norm, largest entry real positive
  CVector left;                  // scaled so left^H right = 1
  std::optional<Complex> alpha;  // right = alpha * 1 when constant
};

/// The (v, w) pair for the zero eigenvalue of a corank-1 matrix.
KernelPair kernel_pair(const CMatrix& lap);

/// Rotate v so its largest-magnitude entry is real positive.
CVector phase_gauge(const CVector& v);

}  // namespace clxflow
