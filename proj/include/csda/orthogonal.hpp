#pragma once

#include "csda/csda_core.hpp"

#include <optional>

namespace csda {

enum class OrthoMethod { UCSDA, OCSDA, ROCSDA };

/// Row-space extraction used in Step 4 of the whitened algorithms.
enum class OrthoStep4 {
  SVD_N,  // reduced SVD of the whitened negatives, nonzero block
  SVD_P,  // full SVD of the whitened positives, zero block
  GEN_D,  // Sn~ v = (Sp~ + mu I) lambda v, nonzero block
};

struct OrthoConfig {
  OrthoMethod method = OrthoMethod::ROCSDA;
  OrthoStep4 step4 = OrthoStep4::SVD_N;
  double alpha = defaults::alpha;  // ROCSDA only
  std::optional<Index> target_dim;
  double mu = defaults::mu;
  double zero_threshold = defaults::zero_threshold;
  ThresholdMode threshold_mode = ThresholdMode::Relative;
};

SubspaceModel ortho_fit(const ClassSplitData& data, const OrthoConfig& cfg);

struct CriterionMaxReport {
  double value = 0.0;  // trace((W^T St W)^+ (W^T Sn W))
  Index dim = 0;
  bool within_bound = false;  // value <= dim (up to round-off)
};

CriterionMaxReport criterion_max_check(const ScatterSet& scatters,
                                       const Matrix& w,
                                       double zero_threshold =
                                           defaults::zero_threshold);

const char* to_string(OrthoMethod m);
const char* to_string(OrthoStep4 s);

}  // namespace csda
