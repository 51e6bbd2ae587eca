#pragma once

#include "csda/common.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace csda {

/// In-memory dataset: features column-per-sample, multi-class integer labels.
struct Dataset {
  Matrix features;  // D x N
  std::vector<int> labels;
};

/// One Gaussian cluster of the synthetic generator. Each cluster becomes its
/// own class label, so multi-modal negatives fall out of one-vs-rest runs.
struct SynthCluster {
  Index count = 0;
  Vector mean;
  double stdev = 1.0;
};

struct SynthSpec {
  Index n_pos = 0;
  Vector pos_mean;
  double pos_stdev = 1.0;
  std::vector<SynthCluster> clusters;
  Index dim = 0;
  std::uint64_t seed = 0;
};

/// CSV layout on disk: one row per sample, D numeric feature columns then one
/// integer class column; optional header.
Dataset load_csv(const std::string& path, bool has_header);

void write_csv(const std::string& path, const Dataset& data);

Dataset synth_generate(const SynthSpec& spec);

}  // namespace csda
