#include "csda/kernelmap.hpp"

#include "csda/kernels.hpp"

#include <cmath>

namespace csda {

double compute_sigma(const Matrix& x) {
  if (x.size() == 0) throw DataError("compute_sigma: empty matrix");
  double mean = x.sum() / static_cast<double>(x.size());
  if (!(mean > 0.0)) {
    throw ConfigError(
        "compute_sigma: sum of feature entries is non-positive; the automatic "
        "RBF width is undefined for this data, supply sigma explicitly");
  }
  return std::sqrt(mean);
}

Matrix kernel_matrix(const Matrix& x, const Matrix& y, const KernelSpec& spec) {
  if (x.rows() != y.rows()) {
    throw DataError("kernel_matrix: feature dimension mismatch");
  }
  switch (spec.kind) {
    case KernelKind::Linear:
      return x.transpose() * y;
    case KernelKind::Rbf: {
      if (!(spec.sigma > 0.0)) {
        throw ConfigError("kernel_matrix: RBF sigma must be positive");
      }
      return kernels::rbf_from_sq_dists(kernels::pairwise_sq_dists(x, y),
                                        spec.sigma);
    }
  }
  throw ConfigError("kernel_matrix: unknown kernel kind");
}

Matrix self_kernel_matrix(const Matrix& x, const KernelSpec& spec) {
  return symmetrize(kernel_matrix(x, x, spec));
}

CenteredKernel center_kernel(const Matrix& k) {
  if (k.rows() != k.cols()) {
    throw DataError("center_kernel: kernel matrix must be square");
  }
  double dev = (k - k.transpose()).norm();
  if (dev > 1e-10 * std::max(k.norm(), 1.0)) {
    throw NumericError("center_kernel: kernel matrix is not symmetric");
  }
  CenteredKernel out;
  out.row_means = k.rowwise().mean();
  out.grand_mean = k.mean();
  out.centered = k;
  out.centered.colwise() -= out.row_means;
  out.centered.rowwise() -= out.row_means.transpose();
  out.centered.array() += out.grand_mean;
  out.centered = symmetrize(out.centered);
  return out;
}

NptModel::NptModel(Matrix train_data, KernelSpec kernel, Vector eig_values,
                   Matrix eig_vectors, Vector row_means, double grand_mean)
    : train_data_(std::move(train_data)),
      kernel_(kernel),
      eig_values_(std::move(eig_values)),
      eig_vectors_(std::move(eig_vectors)),
      row_means_(std::move(row_means)),
      grand_mean_(grand_mean) {
  z_ = eig_values_.cwiseSqrt().asDiagonal() * eig_vectors_.transpose();
}

Matrix NptModel::transform(const Matrix& x_test) const {
  if (x_test.rows() != train_data_.rows()) {
    throw DataError("npt_transform: feature dimension mismatch");
  }
  Matrix k = kernel_matrix(train_data_, x_test, kernel_);  // N x M
  // Double centering of each test kernel column with the stored train
  // statistics: k*_i = k_i - row_means_i - mean(k) + g.
  for (Index j = 0; j < k.cols(); ++j) {
    double col_mean = k.col(j).mean();
    k.col(j) -= row_means_;
    k.col(j).array() += grand_mean_ - col_mean;
  }
  return eig_values_.cwiseSqrt().cwiseInverse().asDiagonal() *
         (eig_vectors_.transpose() * k);
}

NptModel npt_fit(const Matrix& x, const KernelSpec& spec, double zero_threshold,
                 ThresholdMode mode) {
  if (x.cols() < 2) throw DataError("npt_fit: need at least 2 training points");
  CenteredKernel ck = center_kernel(self_kernel_matrix(x, spec));
  SymEigResult eig = sym_eig(ck.centered);
  Index r = count_above_threshold(eig.values, zero_threshold, mode);
  if (r == 0) {
    throw NumericError(
        "npt_fit: centered kernel matrix has no positive eigenvalues "
        "(degenerate kernel)");
  }
  return NptModel(x, spec, eig.values.head(r), eig.vectors.leftCols(r),
                  ck.row_means, ck.grand_mean);
}

}  // namespace csda
