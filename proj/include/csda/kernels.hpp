#pragma once

#include "csda/common.hpp"

#include <vector>

// Data-parallel inner loops with OpenMP variants. The serial versions are the
// reference implementations kept for testing and benchmarking; both orderings
// compute every entry independently, so results are bit-identical.
namespace csda::kernels {

// Squared Euclidean distances between columns of X (D x N) and Y (D x M).
Matrix pairwise_sq_dists_serial(const Matrix& x, const Matrix& y);
Matrix pairwise_sq_dists_omp(const Matrix& x, const Matrix& y);
Matrix pairwise_sq_dists(const Matrix& x, const Matrix& y);

// Elementwise exp(-d2 / (2 sigma^2)).
Matrix rbf_from_sq_dists_serial(const Matrix& d2, double sigma);
Matrix rbf_from_sq_dists_omp(const Matrix& d2, double sigma);
Matrix rbf_from_sq_dists(const Matrix& d2, double sigma);

// Index of the nearest centroid (columns of C, d x K) for each point
// (columns of P, d x N). Ties broken by lowest index.
std::vector<int> nearest_centroid_serial(const Matrix& points,
                                         const Matrix& centroids);
std::vector<int> nearest_centroid_omp(const Matrix& points,
                                      const Matrix& centroids);
std::vector<int> nearest_centroid(const Matrix& points,
                                  const Matrix& centroids);

// Euclidean norm of each column of (W^T X), i.e. distances to the origin of
// the projected space.
Vector projected_norms_serial(const Matrix& w, const Matrix& x);
Vector projected_norms_omp(const Matrix& w, const Matrix& x);
Vector projected_norms(const Matrix& w, const Matrix& x);

}  // namespace csda::kernels
