#include "csda/kernels.hpp"

#include <cmath>
#include <limits>

namespace csda::kernels {
namespace {

void require_same_dim(const Matrix& x, const Matrix& y, const char* op) {
  if (x.rows() != y.rows()) {
    throw DataError(std::string(op) + ": feature dimension mismatch (" +
                    std::to_string(x.rows()) + " vs " +
                    std::to_string(y.rows()) + ")");
  }
}

inline double sq_dist_col(const Matrix& x, Index i, const Matrix& y, Index j) {
  return (x.col(i) - y.col(j)).squaredNorm();
}

}  // namespace

Matrix pairwise_sq_dists_serial(const Matrix& x, const Matrix& y) {
  require_same_dim(x, y, "pairwise_sq_dists");
  Matrix d2(x.cols(), y.cols());
  for (Index j = 0; j < y.cols(); ++j)
    for (Index i = 0; i < x.cols(); ++i) d2(i, j) = sq_dist_col(x, i, y, j);
  return d2;
}

Matrix pairwise_sq_dists_omp(const Matrix& x, const Matrix& y) {
  require_same_dim(x, y, "pairwise_sq_dists");
  Matrix d2(x.cols(), y.cols());
#pragma omp parallel for schedule(static)
  for (Index j = 0; j < y.cols(); ++j)
    for (Index i = 0; i < x.cols(); ++i) d2(i, j) = sq_dist_col(x, i, y, j);
  return d2;
}

Matrix pairwise_sq_dists(const Matrix& x, const Matrix& y) {
  return pairwise_sq_dists_omp(x, y);
}

Matrix rbf_from_sq_dists_serial(const Matrix& d2, double sigma) {
  const double inv = 1.0 / (2.0 * sigma * sigma);
  Matrix k(d2.rows(), d2.cols());
  for (Index j = 0; j < d2.cols(); ++j)
    for (Index i = 0; i < d2.rows(); ++i) k(i, j) = std::exp(-d2(i, j) * inv);
  return k;
}

Matrix rbf_from_sq_dists_omp(const Matrix& d2, double sigma) {
  const double inv = 1.0 / (2.0 * sigma * sigma);
  Matrix k(d2.rows(), d2.cols());
#pragma omp parallel for schedule(static)
  for (Index j = 0; j < d2.cols(); ++j)
    for (Index i = 0; i < d2.rows(); ++i) k(i, j) = std::exp(-d2(i, j) * inv);
  return k;
}

Matrix rbf_from_sq_dists(const Matrix& d2, double sigma) {
  return rbf_from_sq_dists_omp(d2, sigma);
}

namespace {

inline int nearest_for(const Matrix& points, Index i, const Matrix& centroids) {
  double best = std::numeric_limits<double>::infinity();
  int arg = 0;
  for (Index k = 0; k < centroids.cols(); ++k) {
    double d = (points.col(i) - centroids.col(k)).squaredNorm();
    if (d < best) {
      best = d;
      arg = static_cast<int>(k);
    }
  }
  return arg;
}

}  // namespace

std::vector<int> nearest_centroid_serial(const Matrix& points,
                                         const Matrix& centroids) {
  require_same_dim(points, centroids, "nearest_centroid");
  std::vector<int> out(points.cols());
  for (Index i = 0; i < points.cols(); ++i)
    out[i] = nearest_for(points, i, centroids);
  return out;
}

std::vector<int> nearest_centroid_omp(const Matrix& points,
                                      const Matrix& centroids) {
  require_same_dim(points, centroids, "nearest_centroid");
  std::vector<int> out(points.cols());
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < points.cols(); ++i)
    out[i] = nearest_for(points, i, centroids);
  return out;
}

std::vector<int> nearest_centroid(const Matrix& points,
                                  const Matrix& centroids) {
  return nearest_centroid_omp(points, centroids);
}

Vector projected_norms_serial(const Matrix& w, const Matrix& x) {
  require_same_dim(w, x, "projected_norms");
  Vector out(x.cols());
  for (Index i = 0; i < x.cols(); ++i)
    out(i) = (w.transpose() * x.col(i)).norm();
  return out;
}

Vector projected_norms_omp(const Matrix& w, const Matrix& x) {
  require_same_dim(w, x, "projected_norms");
  Vector out(x.cols());
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < x.cols(); ++i)
    out(i) = (w.transpose() * x.col(i)).norm();
  return out;
}

Vector projected_norms(const Matrix& w, const Matrix& x) {
  return projected_norms_omp(w, x);
}

}  // namespace csda::kernels
