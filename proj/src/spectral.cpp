#include "clxflow/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "clxflow/errors.hpp"

namespace clxflow {
namespace {

void check_square_finite(const CMatrix& m) {
  if (m.rows() < 1 || m.rows() != m.cols()) {
    throw Error(ErrorCode::kInvalidArgument, "matrix must be square, n >= 1");
  }
  if (!m.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument, "matrix has non-finite entries");
  }
}

bool modulus_order(const Complex& a, const Complex& b) {
  const double ma = std::abs(a), mb = std::abs(b);
  if (ma != mb) return ma > mb;
  if (a.real() != b.real()) return a.real() > b.real();
  return a.imag() > b.imag();
}

CVector sorted_eigenvalues(const CMatrix& m) {
  Eigen::ComplexSchur<CMatrix> schur(m, /*computeU=*/false);
  if (schur.info() != Eigen::Success) {
    throw Error(ErrorCode::kConvergenceFailure, "Schur iteration did not converge");
  }
  CVector values = schur.matrixT().diagonal();
  std::sort(values.begin(), values.end(), modulus_order);
  return values;
}

// Groups of indices whose eigenvalues coincide within radius.
std::vector<std::vector<int>> cluster_indices(const CVector& values,
                                              double radius) {
  const int n = static_cast<int>(values.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(values[i] - values[j]) <= radius) parent[find(i)] = find(j);
  std::vector<std::vector<int>> clusters(n);
  for (int i = 0; i < n; ++i) clusters[find(i)].push_back(i);
  clusters.erase(std::remove_if(clusters.begin(), clusters.end(),
                                [](const auto& c) { return c.empty(); }),
                 clusters.end());
  return clusters;
}

}  // namespace

CVector phase_gauge(const CVector& v) {
  int arg_max = 0;
  double best = -1.0;
  for (int i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]);
    if (a > best) {
      best = a;
      arg_max = i;
    }
  }
  if (best <= 0.0) return v;
  return v * std::polar(1.0, -std::arg(v[arg_max]));
}

CVector eigenvalues_of(const CMatrix& m) {
  check_square_finite(m);
  return sorted_eigenvalues(m);
}

SpectralDecomposition eig(const CMatrix& m) {
  check_square_finite(m);
  const int n = static_cast<int>(m.rows());
  const double scale = std::max(inf_norm(m), 1.0);

  SpectralDecomposition dec;
  dec.eigenvalues = sorted_eigenvalues(m);
  dec.right = CMatrix::Zero(n, n);
  dec.left = CMatrix::Zero(n, n);
  dec.jordan_defect = 0;

  bool pairing_ok = true;
  const double radius = tol::kZero * scale;
  for (const auto& cluster : cluster_indices(dec.eigenvalues, radius)) {
    const int size = static_cast<int>(cluster.size());
    Complex center(0, 0);
    for (int idx : cluster) center += dec.eigenvalues[idx];
    center /= static_cast<double>(size);

    CMatrix shifted = m - center * CMatrix::Identity(n, n);
    Eigen::JacobiSVD<CMatrix> svd(shifted,
                                  Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sigma = svd.singularValues();
    const double sigma_tol =
        std::max(radius, 64.0 * std::numeric_limits<double>::epsilon() *
                             std::max(sigma.size() > 0 ? sigma[0] : 0.0, 1.0));
    int geometric = 0;
    for (int i = 0; i < sigma.size(); ++i)
      if (sigma[i] <= sigma_tol) ++geometric;
    geometric = std::clamp(geometric, 1, size);
    dec.jordan_defect += size - geometric;

    // Null-space bases: trailing right/left singular vectors.
    CMatrix vc = svd.matrixV().rightCols(geometric);
    CMatrix wc = svd.matrixU().rightCols(geometric);

    // Make the pair biorthonormal inside the cluster: wc^H vc = I.
    CMatrix gram = wc.adjoint() * vc;
    Eigen::FullPivLU<CMatrix> lu(gram);
    if (lu.isInvertible()) {
      wc = wc * lu.inverse().adjoint();
    } else {
      pairing_ok = false;
    }

    for (int k = 0; k < geometric; ++k) {
      CVector v = vc.col(k);
      CVector w = wc.col(k);
      // Shared phase rotation keeps w^H v invariant.
      int arg_max = 0;
      v.cwiseAbs().maxCoeff(&arg_max);
      const Complex rot = std::polar(1.0, -std::arg(v[arg_max]));
      dec.right.col(cluster[k]) = v * rot;
      dec.left.col(cluster[k]) = w * rot;
    }
    // Defective clusters keep zero columns in the trailing slots.
  }

  dec.diagonalizable = dec.jordan_defect == 0;
  dec.normalized = dec.diagonalizable && pairing_ok;
  return dec;
}

double spectral_abscissa(const CMatrix& m) {
  const CVector values = eigenvalues_of(m);
  double abscissa = values[0].real();
  for (int i = 1; i < values.size(); ++i)
    abscissa = std::max(abscissa, values[i].real());
  return abscissa;
}

int corank(const CMatrix& m, double tol) {
  check_square_finite(m);
  if (!(tol > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "corank tolerance must be positive");
  }
  const double threshold = tol * inf_norm(m);

  const CVector values = sorted_eigenvalues(m);
  int from_spectrum = 0;
  for (int i = 0; i < values.size(); ++i)
    if (std::abs(values[i]) <= threshold) ++from_spectrum;

  Eigen::JacobiSVD<CMatrix> svd(m);
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > threshold) ++rank;
  const int from_svd = static_cast<int>(m.rows()) - rank;

  if (from_spectrum != from_svd) {
    throw Error(ErrorCode::kRankAmbiguous,
                "kernel dimension differs between spectrum (" +
                    std::to_string(from_spectrum) + ") and factorization (" +
                    std::to_string(from_svd) + ")");
  }
  return from_spectrum;
}

TranslatedMatrix translated_matrix(const CMatrix& lap,
                                   std::optional<double> shift) {
  check_square_finite(lap);
  const CVector values = eigenvalues_of(lap);
  double rho = 0.0, abscissa = values[0].real();
  for (int i = 0; i < values.size(); ++i) {
    rho = std::max(rho, std::abs(values[i]));
    abscissa = std::max(abscissa, values[i].real());
  }

  double d;
  if (shift) {
    d = *shift;
    if (!(d > abscissa)) {
      throw Error(ErrorCode::kDTooSmall,
                  "shift " + std::to_string(d) +
                      " does not exceed the spectral abscissa " +
                      std::to_string(abscissa));
    }
  } else {
    d = rho > 0.0 ? 1.1 * rho : 1.0;
  }
  const int n = static_cast<int>(lap.rows());
  return {d * CMatrix::Identity(n, n) - lap, d};
}

const char* to_string(PfClass c) {
  switch (c) {
    case PfClass::kNone: return "None";
    case PfClass::kWeak: return "WeakPF";
    case PfClass::kStrong: return "StrongPF";
  }
  return "None";
}

PfClassification pf_classify(const CMatrix& m) {
  SpectralDecomposition dec = eig(m);
  const CVector& values = dec.eigenvalues;
  const Complex lambda1 = values[0];
  const double mod1 = std::abs(lambda1);
  const double scale = std::max(inf_norm(m), 1.0);

  const bool real_positive =
      lambda1.real() > 0.0 && std::abs(lambda1.imag()) <= tol::kResidual * mod1;
  bool simple = true, strictly_dominant = true;
  for (int i = 1; i < values.size(); ++i) {
    if (std::abs(values[i] - lambda1) <= tol::kZero * scale) simple = false;
    if (!(mod1 > std::abs(values[i]) + tol::kDominanceGap * mod1))
      strictly_dominant = false;
  }

  PfClassification result;
  result.dominant_eigenvalue = lambda1;
  result.dominant_right = phase_gauge(dec.right.col(0));
  result.dominant_left = phase_gauge(dec.left.col(0));

  auto classify = [&](const CVector& v) {
    if (!real_positive || !simple || v.cwiseAbs().maxCoeff() <= 0.0)
      return PfClass::kNone;
    bool strict = strictly_dominant, weak = true;
    for (int i = 0; i < v.size(); ++i) {
      if (!(v[i].real() > 0.0)) strict = false;
      if (v[i].real() < -tol::kWeakPf) weak = false;
    }
    if (strict) return PfClass::kStrong;
    if (weak) return PfClass::kWeak;
    return PfClass::kNone;
  };

  result.matrix_class = classify(result.dominant_right);
  result.adjoint_class = classify(result.dominant_left);
  result.combined = std::min(result.matrix_class, result.adjoint_class);
  return result;
}

KernelPair kernel_pair(const CMatrix& lap) {
  const int c = corank(lap);
  if (c != 1) {
    throw Error(ErrorCode::kCorankNotOne,
                "kernel pair needs corank 1, got " + std::to_string(c));
  }
  SpectralDecomposition dec = eig(lap);
  int zero_index = 0;
  double smallest = std::abs(dec.eigenvalues[0]);
  for (int i = 1; i < dec.eigenvalues.size(); ++i) {
    const double a = std::abs(dec.eigenvalues[i]);
    if (a < smallest) {
      smallest = a;
      zero_index = i;
    }
  }

  CVector v = dec.right.col(zero_index);
  CVector w = dec.left.col(zero_index);
  v /= v.norm();
  v = phase_gauge(v);
  const Complex pairing = w.dot(v);  // w^H v
  if (std::abs(pairing) <= 1e-12) {
    throw Error(ErrorCode::kDefectiveSpectrum,
                "kernel eigenvectors are numerically unpaired");
  }
  w /= std::conj(pairing);

  KernelPair pair;
  pair.right = v;
  pair.left = w;
  bool constant = true;
  for (int i = 1; i < v.size(); ++i)
    if (std::abs(v[i] - v[0]) > tol::kConstantVector * std::abs(v[0]))
      constant = false;
  if (constant) pair.alpha = v[0];
  return pair;
}

}  // namespace clxflow
