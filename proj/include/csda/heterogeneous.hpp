#pragma once

#include "csda/csda_core.hpp"

#include <cstdint>
#include <vector>

namespace csda {

struct KMeansResult {
  Matrix centroids;  // d x K
  std::vector<int> assignments;
  double inertia = 0.0;  // sum of squared distances to assigned centroids
  int restarts_run = 0;
  std::uint64_t seed = 0;
};

struct HeteroConfig {
  int num_clusters = 1;
  double mu = defaults::mu;
  double zero_threshold = defaults::zero_threshold;
  ThresholdMode threshold_mode = ThresholdMode::Relative;
  int kmeans_restarts = 10;
  int kmeans_max_iters = 300;
  std::uint64_t seed = 0;
};

/// k-means++ initialized Lloyd iterations; `restarts` independent runs with
/// derived seeds, lowest inertia wins. Empty clusters are reseeded with the
/// farthest point.
KMeansResult kmeans(const Matrix& points, int k, int restarts = 10,
                    int max_iters = 300, std::uint64_t seed = 0);

SubspaceModel hncsda_fit(const ClassSplitData& data, const HeteroConfig& cfg);

SubspaceModel hocsda_fit(const ClassSplitData& data, const HeteroConfig& cfg);

}  // namespace csda
