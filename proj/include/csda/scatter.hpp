#pragma once

#include "csda/linalg.hpp"

#include <vector>

namespace csda {

/// Positive/negative sample matrices centered to the positive class mean.
struct ClassSplitData {
  Matrix xp;             // D x Np
  Matrix xn;             // D x Nn
  Vector positive_mean;  // captured before centering
  bool centered = false;
};

/// Symmetric PSD scatter matrices about the positive class mean.
struct ScatterSet {
  Matrix sp;
  Matrix sn;
  Matrix st;
  Index rank_sp = 0;
  Index rank_sn = 0;
  Index rank_st = 0;
};

struct ClusterScatter {
  Matrix snw;
  Matrix snb;
  std::vector<Index> cluster_sizes;
  Matrix cluster_centroids;  // D x K
};

ClassSplitData center_to_positive_mean(const Matrix& xp, const Matrix& xn);

ScatterSet scatter_matrices(const ClassSplitData& data,
                            double zero_threshold = defaults::zero_threshold,
                            ThresholdMode mode = ThresholdMode::Relative);

/// Within/between-cluster scatters of the negative class; in positive-mean
/// centered coordinates the positive mean is the origin.
ClusterScatter cluster_scatters(const ClassSplitData& data,
                                const std::vector<int>& assignments,
                                int num_clusters);

/// Exactly symmetric M M^T built from a contiguous sample matrix.
Matrix outer_scatter(const Matrix& samples);

}  // namespace csda
