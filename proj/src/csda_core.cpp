#include "csda/csda_core.hpp"

#include <cmath>
#include <limits>

namespace csda {

SubspaceModel truncate_model(const SubspaceModel& model, Index dim) {
  if (dim < 1) throw ConfigError("truncate_model: dim must be >= 1");
  if (dim >= model.output_dim) return model;
  SubspaceModel out = model;
  out.projection = model.projection.leftCols(dim);
  out.projected_positive_mean = model.projected_positive_mean.head(dim);
  out.ranking_values = model.ranking_values.head(dim);
  out.output_dim = dim;
  return out;
}

double trace_pinv_product(const Matrix& num_scatter, const Matrix& den_scatter,
                          const Matrix& w, double zero_threshold,
                          bool* unbounded) {
  Matrix den = symmetrize(w.transpose() * den_scatter * w);
  Matrix num = symmetrize(w.transpose() * num_scatter * w);
  SymEigResult eig = sym_eig(den);
  Index rank = count_above_threshold(eig.values, zero_threshold,
                                     ThresholdMode::Relative);
  if (unbounded) *unbounded = false;
  if (rank == 0) {
    if (num.norm() > 0.0) {
      if (unbounded) *unbounded = true;
      return std::numeric_limits<double>::infinity();
    }
    return 0.0;
  }
  Matrix vr = eig.vectors.leftCols(rank);
  Matrix pinv = vr * eig.values.head(rank).cwiseInverse().asDiagonal() *
                vr.transpose();
  return (pinv * num).trace();
}

SubspaceModel csda_fit(const ScatterSet& scatters, Index dim, double mu,
                       double zero_threshold) {
  if (dim < 1) throw ConfigError("csda_fit: dim must be >= 1");
  const Index d = scatters.sp.rows();
  Matrix reg = scatters.sp + mu * Matrix::Identity(d, d);
  GenEigResult eig = gen_sym_eig(scatters.sn, reg);
  Index available = count_above_threshold(eig.values, zero_threshold,
                                          ThresholdMode::Relative);
  if (available == 0) {
    throw NumericError("csda_fit: no nonzero generalized eigenvalues");
  }
  SubspaceModel out;
  out.method_tag = "csda";
  if (dim > available) {
    out.method_tag += ":truncated_to_" + std::to_string(available);
    dim = available;
  }
  out.projection = eig.vectors.leftCols(dim);
  out.ranking_values = eig.values.head(dim);
  out.projected_positive_mean = Vector::Zero(dim);
  out.input_dim = d;
  out.output_dim = dim;
  return out;
}

CriterionReport criterion_values(const ScatterSet& scatters, const Matrix& w,
                                 double zero_threshold) {
  if (w.rows() != scatters.sp.rows()) {
    throw DataError("criterion_values: projection/scatter dimension mismatch");
  }
  CriterionReport out;
  out.j = trace_pinv_product(scatters.sn, scatters.sp, w, zero_threshold,
                             &out.j_unbounded);
  out.j2 = trace_pinv_product(scatters.st, scatters.sp, w, zero_threshold);
  out.j3 = trace_pinv_product(scatters.sn, scatters.st, w, zero_threshold);
  Matrix a = symmetrize(w.transpose() * scatters.sp * w);
  out.constraint_a_sum = a.sum();
  out.constraint_a_frob = a.norm();
  out.criterion_b = (w.transpose() * scatters.sn * w).trace();
  return out;
}

}  // namespace csda
