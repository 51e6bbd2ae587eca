#pragma once

#include "csda/scatter.hpp"

#include <string>

namespace csda {

/// A learned projection. Columns are ordered by descending ranking value;
/// truncating to the first l columns is the supported dimensionality
/// reduction for every method.
struct SubspaceModel {
  Matrix projection;               // D_in x l
  Vector projected_positive_mean;  // length l (zero in centered coordinates)
  Vector ranking_values;           // descending
  std::string method_tag;
  Index input_dim = 0;
  Index output_dim = 0;
};

SubspaceModel truncate_model(const SubspaceModel& model, Index dim);

struct CriterionReport {
  double j = 0.0;
  double j2 = 0.0;
  double j3 = 0.0;
  bool j_unbounded = false;  // W^T Sp W has rank 0
  double constraint_a_sum = 0.0;
  double constraint_a_frob = 0.0;
  double criterion_b = 0.0;
};

/// Baseline regularized CSDA: top-l eigenvectors of the pencil
/// Sn v = lambda (Sp + mu I) v.
SubspaceModel csda_fit(const ScatterSet& scatters, Index dim,
                       double mu = defaults::mu,
                       double zero_threshold = defaults::zero_threshold);

CriterionReport criterion_values(const ScatterSet& scatters, const Matrix& w,
                                 double zero_threshold =
                                     defaults::zero_threshold);

/// trace((W^T Sp W)^+ (W^T Sn W)) style trace with pseudo-inverse.
double trace_pinv_product(const Matrix& num_scatter, const Matrix& den_scatter,
                          const Matrix& w, double zero_threshold,
                          bool* unbounded = nullptr);

}  // namespace csda
