#pragma once

#include "csda/linalg.hpp"

namespace csda {

enum class KernelKind { Rbf, Linear };

struct KernelSpec {
  KernelKind kind = KernelKind::Rbf;
  double sigma = 1.0;  // RBF width; unused for linear
};

struct CenteredKernel {
  Matrix centered;
  Vector row_means;
  double grand_mean = 0.0;
};

/// Fitted kernel-space mapping (Nonlinear Projection Trick). The training
/// matrix is retained for test-time kernel evaluation; memory cost is D x N.
class NptModel {
public:
  NptModel(Matrix train_data, KernelSpec kernel, Vector eig_values,
           Matrix eig_vectors, Vector row_means, double grand_mean);

  /// Mapped training data Z = diag(S_r)^{1/2} U_r^T, shape r x N.
  const Matrix& train_mapped() const { return z_; }
  Index dim() const { return eig_values_.size(); }
  const Vector& eig_values() const { return eig_values_; }
  const Matrix& train_data() const { return train_data_; }
  const KernelSpec& kernel() const { return kernel_; }

  /// Map test vectors (D x M) into the r-dimensional kernel space.
  Matrix transform(const Matrix& x_test) const;

private:
  Matrix train_data_;
  KernelSpec kernel_;
  Vector eig_values_;
  Matrix eig_vectors_;  // N x r
  Vector row_means_;
  double grand_mean_;
  Matrix z_;
};

/// sigma = sqrt(mean of all raw feature entries); errors out when the sum is
/// non-positive instead of guessing an alternative formula.
double compute_sigma(const Matrix& x);

Matrix kernel_matrix(const Matrix& x, const Matrix& y, const KernelSpec& spec);

/// Exactly symmetric self-kernel K(X, X).
Matrix self_kernel_matrix(const Matrix& x, const KernelSpec& spec);

CenteredKernel center_kernel(const Matrix& k);

NptModel npt_fit(const Matrix& x, const KernelSpec& spec,
                 double zero_threshold = defaults::zero_threshold,
                 ThresholdMode mode = ThresholdMode::Relative);

}  // namespace csda
