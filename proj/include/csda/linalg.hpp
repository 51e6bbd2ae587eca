#pragma once

#include "csda/common.hpp"

namespace csda {

/// Eigenpairs of a symmetric matrix, eigenvalues sorted descending,
/// eigenvectors unit-norm columns with a deterministic sign convention
/// (first component of magnitude > 1e-12 is positive).
struct SymEigResult {
  Vector values;
  Matrix vectors;
};

/// Eigenpairs of the symmetric-definite pencil A v = lambda B v.
/// Eigenvalues real and descending, eigenvectors B-orthogonal.
struct GenEigResult {
  Vector values;
  Matrix vectors;
};

/// Reduced SVD keeping only singular values above the zero threshold.
struct ReducedSvd {
  Matrix U;        // D x t, column-orthonormal
  Vector S;        // t strictly positive singular values, descending
  Matrix V;        // N x t, column-orthonormal
  Index rank = 0;  // t
};

Matrix symmetrize(const Matrix& a);

SymEigResult sym_eig(const Matrix& a);

GenEigResult gen_sym_eig(const Matrix& a, const Matrix& b);

ReducedSvd reduced_svd(const Matrix& x,
                       double zero_threshold = defaults::zero_threshold,
                       ThresholdMode mode = ThresholdMode::Relative);

/// QR-based orthonormalization with positive diagonal of R. Throws on
/// rank-deficient input, naming the deficient column.
Matrix qr_orthonormalize(const Matrix& w);

/// Cholesky factor L of an SPD matrix (B = L L^T). Throws NumericError with
/// the failing pivot index when B is not positive definite.
Matrix cholesky_lower(const Matrix& b);

/// Count of singular/eigen values above the zero threshold.
Index count_above_threshold(const Vector& values_descending,
                            double zero_threshold, ThresholdMode mode);

}  // namespace csda
