#include "csda/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace csda {
namespace {

void require_square(const Matrix& a, const char* op) {
  if (a.rows() != a.cols()) {
    throw DataError(std::string(op) + ": matrix is not square (" +
                    std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                    ")");
  }
}

void require_finite(const Matrix& a, const char* op) {
  if (!a.allFinite()) {
    throw NumericError(std::string(op) + ": matrix has non-finite entries");
  }
}

void require_symmetric(const Matrix& a, const char* op) {
  double scale = a.norm();
  double dev = (a - a.transpose()).norm();
  if (dev > 1e-10 * std::max(scale, 1.0)) {
    throw NumericError(std::string(op) +
                       ": matrix is not symmetric (relative deviation " +
                       std::to_string(dev / std::max(scale, 1.0)) + ")");
  }
}

// First component with magnitude > 1e-12 made positive.
void fix_signs(Matrix& vectors) {
  for (Index j = 0; j < vectors.cols(); ++j) {
    for (Index i = 0; i < vectors.rows(); ++i) {
      double v = vectors(i, j);
      if (std::abs(v) > 1e-12) {
        if (v < 0.0) vectors.col(j) = -vectors.col(j);
        break;
      }
    }
  }
}

}  // namespace

Matrix symmetrize(const Matrix& a) {
  require_square(a, "symmetrize");
  Matrix r = 0.5 * (a + a.transpose());
  // Force bit-exact symmetry; (a_ij + a_ji)/2 and (a_ji + a_ij)/2 already
  // agree under IEEE addition, the copy makes it explicit.
  for (Index j = 0; j < r.cols(); ++j)
    for (Index i = j + 1; i < r.rows(); ++i) r(i, j) = r(j, i);
  return r;
}

SymEigResult sym_eig(const Matrix& a) {
  require_square(a, "sym_eig");
  require_finite(a, "sym_eig");
  require_symmetric(a, "sym_eig");

  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetrize(a));
  if (solver.info() != Eigen::Success) {
    throw NumericError("sym_eig: eigendecomposition failed to converge");
  }
  const Index n = a.rows();
  SymEigResult out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  // Eigen returns ascending order; reverse for descending. Ties keep the
  // solver's (stable) relative order.
  for (Index i = 0; i < n; ++i) {
    out.values(i) = solver.eigenvalues()(n - 1 - i);
    out.vectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  fix_signs(out.vectors);
  return out;
}

Matrix cholesky_lower(const Matrix& b) {
  require_square(b, "cholesky");
  const Index n = b.rows();
  Matrix l = Matrix::Zero(n, n);
  for (Index j = 0; j < n; ++j) {
    double d = b(j, j) - l.row(j).head(j).squaredNorm();
    if (!(d > 0.0) || !std::isfinite(d)) {
      throw NumericError("cholesky: matrix not positive definite at pivot " +
                         std::to_string(j));
    }
    l(j, j) = std::sqrt(d);
    for (Index i = j + 1; i < n; ++i) {
      l(i, j) = (b(i, j) - l.row(i).head(j).dot(l.row(j).head(j))) / l(j, j);
    }
  }
  return l;
}

GenEigResult gen_sym_eig(const Matrix& a, const Matrix& b) {
  require_square(a, "gen_sym_eig");
  if (a.rows() != b.rows() || b.rows() != b.cols()) {
    throw DataError("gen_sym_eig: dimension mismatch between A and B");
  }
  require_finite(a, "gen_sym_eig");
  require_finite(b, "gen_sym_eig");
  require_symmetric(a, "gen_sym_eig");
  require_symmetric(b, "gen_sym_eig");

  // Cholesky reduction: B = L L^T, solve the symmetric problem for
  // L^-1 A L^-T and back-transform v = L^-T y.
  Matrix l = cholesky_lower(b);
  Matrix c = l.triangularView<Eigen::Lower>().solve(a);
  c = l.triangularView<Eigen::Lower>().solve(c.transpose()).transpose();
  SymEigResult std_eig = sym_eig(symmetrize(c));

  GenEigResult out;
  out.values = std_eig.values;
  out.vectors =
      l.transpose().triangularView<Eigen::Upper>().solve(std_eig.vectors);
  fix_signs(out.vectors);
  return out;
}

Index count_above_threshold(const Vector& values_descending,
                            double zero_threshold, ThresholdMode mode) {
  if (values_descending.size() == 0) return 0;
  double cut = zero_threshold;
  if (mode == ThresholdMode::Relative) {
    double top = values_descending.cwiseAbs().maxCoeff();
    cut = zero_threshold * top;
  }
  Index n = 0;
  for (Index i = 0; i < values_descending.size(); ++i) {
    if (values_descending(i) > cut) ++n;
  }
  return n;
}

ReducedSvd reduced_svd(const Matrix& x, double zero_threshold,
                       ThresholdMode mode) {
  require_finite(x, "reduced_svd");
  if (zero_threshold <= 0.0) {
    throw ConfigError("reduced_svd: zero_threshold must be positive");
  }
  ReducedSvd out;
  if (x.size() == 0 || x.norm() == 0.0) {
    out.U.resize(x.rows(), 0);
    out.S.resize(0);
    out.V.resize(x.cols(), 0);
    return out;
  }
  Eigen::BDCSVD<Matrix> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  out.rank = count_above_threshold(svd.singularValues(), zero_threshold, mode);
  out.U = svd.matrixU().leftCols(out.rank);
  out.S = svd.singularValues().head(out.rank);
  out.V = svd.matrixV().leftCols(out.rank);
  return out;
}

Matrix qr_orthonormalize(const Matrix& w) {
  require_finite(w, "qr_orthonormalize");
  const Index l = w.cols();
  if (l == 0 || w.rows() < l) {
    throw DataError("qr_orthonormalize: need a tall D x l matrix with l >= 1");
  }
  Eigen::HouseholderQR<Matrix> qr(w);
  Matrix r = qr.matrixQR().topRows(l).triangularView<Eigen::Upper>();
  double top = r.diagonal().cwiseAbs().maxCoeff();
  for (Index j = 0; j < l; ++j) {
    if (std::abs(r(j, j)) <= 1e-12 * std::max(top, 1.0)) {
      throw NumericError("qr_orthonormalize: rank-deficient input at column " +
                         std::to_string(j));
    }
  }
  Matrix q = qr.householderQ() * Matrix::Identity(w.rows(), l);
  // Positive diagonal of R for a deterministic result.
  for (Index j = 0; j < l; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

}  // namespace csda
