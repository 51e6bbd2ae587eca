#pragma once

#include "csda/csda_core.hpp"

#include <optional>

namespace csda {

/// Eigenproblem choices for finding the null space of the reduced
/// intra-class scatter.
enum class NullEigenproblem {
  E_A,  // Sp~ v = lambda v, keep zero eigenvalues
  E_B,  // Sn~ v = lambda v, keep nonzero eigenvalues
  E_C,  // Sp~ v = (Sn~ + mu I) lambda v, keep zero eigenvalues
  E_D,  // Sn~ v = (Sp~ + mu I) lambda v, keep nonzero eigenvalues
  E_E,  // Sn~ v = St~ lambda v, keep nonzero eigenvalues
};

struct NcsdaConfig {
  NullEigenproblem eigenproblem = NullEigenproblem::E_D;
  bool use_step4 = false;
  bool use_qr = false;
  std::optional<Index> target_dim;
  double mu = defaults::mu;
  double zero_threshold = defaults::zero_threshold;
  ThresholdMode threshold_mode = ThresholdMode::Relative;
};

SubspaceModel ncsda_fit(const ClassSplitData& data, const NcsdaConfig& cfg);

/// Re-ranking of a null-space basis by maximizing the reduced out-of-class
/// scatter inside it; returns the composed mapping and its eigenvalues.
struct Step4Remap {
  Matrix m;
  Vector eigenvalues;
};

Step4Remap step4_remap(const Matrix& v, const Matrix& sn_tilde,
                       double zero_threshold = defaults::zero_threshold);

const char* to_string(NullEigenproblem p);

}  // namespace csda
