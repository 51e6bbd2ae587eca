#include "csda/scatter.hpp"

namespace csda {

Matrix outer_scatter(const Matrix& samples) {
  Matrix s = Matrix::Zero(samples.rows(), samples.rows());
  s.selfadjointView<Eigen::Lower>().rankUpdate(samples);
  s = s.selfadjointView<Eigen::Lower>();
  return s;
}

ClassSplitData center_to_positive_mean(const Matrix& xp, const Matrix& xn) {
  if (xp.cols() < 1) {
    throw DataError("center_to_positive_mean: empty positive set");
  }
  if (xn.cols() >= 1 && xp.rows() != xn.rows()) {
    throw DataError("center_to_positive_mean: feature dimension mismatch");
  }
  ClassSplitData out;
  out.positive_mean = xp.rowwise().mean();
  out.xp = xp.colwise() - out.positive_mean;
  out.xn = xn.colwise() - out.positive_mean;
  out.centered = true;
  return out;
}

namespace {

Index scatter_rank(const Matrix& samples, double zero_threshold,
                   ThresholdMode mode) {
  // rank(M M^T) = rank(M); eigenvalues of the scatter are squared singular
  // values, so the threshold applies to sigma^2.
  if (samples.cols() == 0 || samples.norm() == 0.0) return 0;
  Eigen::BDCSVD<Matrix> svd(samples);
  Vector sq = svd.singularValues().array().square();
  return count_above_threshold(sq, zero_threshold, mode);
}

}  // namespace

ScatterSet scatter_matrices(const ClassSplitData& data, double zero_threshold,
                            ThresholdMode mode) {
  if (!data.centered) {
    throw DataError("scatter_matrices: data must be centered to the positive "
                    "class mean first");
  }
  ScatterSet out;
  out.sp = outer_scatter(data.xp);
  out.sn = outer_scatter(data.xn);
  // St from its own contiguous matrix, not Sp + Sn.
  Matrix all(data.xp.rows(), data.xp.cols() + data.xn.cols());
  all << data.xp, data.xn;
  out.st = outer_scatter(all);
  out.rank_sp = scatter_rank(data.xp, zero_threshold, mode);
  out.rank_sn = scatter_rank(data.xn, zero_threshold, mode);
  out.rank_st = scatter_rank(all, zero_threshold, mode);
  return out;
}

ClusterScatter cluster_scatters(const ClassSplitData& data,
                                const std::vector<int>& assignments,
                                int num_clusters) {
  if (!data.centered) {
    throw DataError("cluster_scatters: data must be centered first");
  }
  const Index nn = data.xn.cols();
  if (static_cast<Index>(assignments.size()) != nn) {
    throw DataError("cluster_scatters: one assignment per negative sample "
                    "required");
  }
  if (num_clusters < 1) throw DataError("cluster_scatters: K must be >= 1");

  ClusterScatter out;
  const Index d = data.xn.rows();
  out.cluster_sizes.assign(num_clusters, 0);
  out.cluster_centroids = Matrix::Zero(d, num_clusters);
  for (Index i = 0; i < nn; ++i) {
    int k = assignments[i];
    if (k < 0 || k >= num_clusters) {
      throw DataError("cluster_scatters: assignment label " +
                      std::to_string(k) + " out of range");
    }
    out.cluster_sizes[k] += 1;
    out.cluster_centroids.col(k) += data.xn.col(i);
  }
  for (int k = 0; k < num_clusters; ++k) {
    if (out.cluster_sizes[k] == 0) {
      throw DataError("cluster_scatters: cluster " + std::to_string(k) +
                      " is empty");
    }
    out.cluster_centroids.col(k) /= static_cast<double>(out.cluster_sizes[k]);
  }

  // Snw from the per-cluster centered samples, Snb from sqrt(N_k)-weighted
  // centroid deviations; both as M M^T of contiguous matrices.
  Matrix within(d, nn);
  for (Index i = 0; i < nn; ++i) {
    within.col(i) = data.xn.col(i) - out.cluster_centroids.col(assignments[i]);
  }
  Matrix between(d, num_clusters);
  for (int k = 0; k < num_clusters; ++k) {
    // m_p = 0 in centered coordinates
    between.col(k) = std::sqrt(static_cast<double>(out.cluster_sizes[k])) *
                     out.cluster_centroids.col(k);
  }
  out.snw = outer_scatter(within);
  out.snb = outer_scatter(between);
  return out;
}

}  // namespace csda
