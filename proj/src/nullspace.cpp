#include "csda/nullspace.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace csda {

const char* to_string(NullEigenproblem p) {
  switch (p) {
    case NullEigenproblem::E_A: return "E_A";
    case NullEigenproblem::E_B: return "E_B";
    case NullEigenproblem::E_C: return "E_C";
    case NullEigenproblem::E_D: return "E_D";
    case NullEigenproblem::E_E: return "E_E";
  }
  return "?";
}

Step4Remap step4_remap(const Matrix& v, const Matrix& sn_tilde,
                       double zero_threshold) {
  Matrix c = symmetrize(v.transpose() * sn_tilde * v);
  if (c.norm() == 0.0) {
    throw NumericError("step4_remap: V^T Sn V is the zero matrix");
  }
  SymEigResult eig = sym_eig(c);
  Index keep = count_above_threshold(eig.values, zero_threshold,
                                     ThresholdMode::Relative);
  if (keep == 0) {
    throw NumericError("step4_remap: no nonzero eigenvalues");
  }
  return {eig.vectors.leftCols(keep), eig.values.head(keep)};
}

namespace {

struct Selection {
  Matrix v;
  Vector ranking;
};

// Zero-block selection: |lambda| <= cut, ordered ascending by |lambda|
// (most-null first). Values arrive descending, so the block is the tail.
Selection select_zero_block(const SymEigResult& eig, double zero_threshold) {
  const Index n = eig.values.size();
  double top = eig.values.cwiseAbs().maxCoeff();
  double cut = zero_threshold * std::max(top, 0.0);
  std::vector<Index> idx;
  for (Index i = 0; i < n; ++i) {
    if (std::abs(eig.values(i)) <= cut) idx.push_back(i);
  }
  std::stable_sort(idx.begin(), idx.end(), [&](Index a, Index b) {
    return std::abs(eig.values(a)) < std::abs(eig.values(b));
  });
  Selection out;
  out.v.resize(eig.vectors.rows(), static_cast<Index>(idx.size()));
  out.ranking.resize(static_cast<Index>(idx.size()));
  for (size_t k = 0; k < idx.size(); ++k) {
    out.v.col(static_cast<Index>(k)) = eig.vectors.col(idx[k]);
    // Negated residual so the model-wide "descending ranking" invariant holds
    // while smaller residual eigenvalue still ranks first.
    out.ranking(static_cast<Index>(k)) = -std::abs(eig.values(idx[k]));
  }
  return out;
}

Selection select_nonzero_block(const Vector& values, const Matrix& vectors,
                               double zero_threshold) {
  Index keep = count_above_threshold(values, zero_threshold,
                                     ThresholdMode::Relative);
  return {vectors.leftCols(keep), values.head(keep)};
}

}  // namespace

SubspaceModel ncsda_fit(const ClassSplitData& data, const NcsdaConfig& cfg) {
  if (!data.centered) {
    throw DataError("ncsda_fit: data must be centered to the positive mean");
  }
  if (data.xp.cols() + data.xn.cols() < 3) {
    throw DataError("ncsda_fit: need at least 3 samples");
  }

  // Steps 1-2: row space of St via reduced SVD of the full data matrix.
  Matrix all(data.xp.rows(), data.xp.cols() + data.xn.cols());
  all << data.xp, data.xn;
  ReducedSvd svd = reduced_svd(all, cfg.zero_threshold, cfg.threshold_mode);
  if (svd.rank == 0) throw NumericError("ncsda_fit: zero data matrix");
  const Matrix& ut = svd.U;
  const Index t = svd.rank;

  Matrix xp_t = ut.transpose() * data.xp;
  Matrix xn_t = ut.transpose() * data.xn;
  Matrix sp_t = outer_scatter(xp_t);
  Matrix sn_t = outer_scatter(xn_t);
  Matrix all_t(t, all.cols());
  all_t << xp_t, xn_t;
  Matrix st_t = outer_scatter(all_t);

  SymEigResult sp_eig = sym_eig(sp_t);
  Index rank_sp = count_above_threshold(sp_eig.values, cfg.zero_threshold,
                                        cfg.threshold_mode);
  if (rank_sp >= t) {
    throw NumericError(
        "ncsda_fit: intra-class scatter has no null space in the row space of "
        "St (Np-1 >= rank(St))");
  }

  // Step 3: the configured eigenproblem.
  Selection sel;
  switch (cfg.eigenproblem) {
    case NullEigenproblem::E_A:
      sel = select_zero_block(sp_eig, cfg.zero_threshold);
      break;
    case NullEigenproblem::E_B: {
      SymEigResult eig = sym_eig(sn_t);
      sel = select_nonzero_block(eig.values, eig.vectors, cfg.zero_threshold);
      break;
    }
    case NullEigenproblem::E_C: {
      Matrix reg = sn_t + cfg.mu * Matrix::Identity(t, t);
      GenEigResult eig = gen_sym_eig(sp_t, reg);
      sel = select_zero_block({eig.values, eig.vectors}, cfg.zero_threshold);
      break;
    }
    case NullEigenproblem::E_D: {
      Matrix reg = sp_t + cfg.mu * Matrix::Identity(t, t);
      GenEigResult eig = gen_sym_eig(sn_t, reg);
      sel = select_nonzero_block(eig.values, eig.vectors, cfg.zero_threshold);
      break;
    }
    case NullEigenproblem::E_E: {
      GenEigResult eig = gen_sym_eig(sn_t, st_t);
      sel = select_nonzero_block(eig.values, eig.vectors, cfg.zero_threshold);
      break;
    }
  }
  if (sel.v.cols() == 0) {
    throw NumericError("ncsda_fit: eigenproblem selected no projection "
                       "vectors");
  }

  SubspaceModel out;
  out.method_tag = std::string("ncsda:") + to_string(cfg.eigenproblem);
  Vector ranking = sel.ranking;
  Matrix v = sel.v;

  // Optional Step 4: re-rank by maximizing Sn~ inside the found basis.
  if (cfg.use_step4) {
    Step4Remap remap = step4_remap(v, sn_t, cfg.zero_threshold);
    v = v * remap.m;
    ranking = remap.eigenvalues;
    out.method_tag += "+step4";
  }

  // Step 5: compose, with scale-free columns so truncation semantics do not
  // depend on eigenvector scaling.
  Matrix w = ut * v;
  for (Index j = 0; j < w.cols(); ++j) w.col(j).normalize();

  if (cfg.use_qr) {
    w = qr_orthonormalize(w);
    out.method_tag += "+qr";
  }

  Index dim = w.cols();
  if (cfg.target_dim) {
    if (*cfg.target_dim > dim) {
      out.method_tag += ":truncated_to_" + std::to_string(dim);
    } else {
      dim = *cfg.target_dim;
    }
  }
  out.projection = w.leftCols(dim);
  out.ranking_values = ranking.head(dim);
  out.projected_positive_mean = Vector::Zero(dim);
  out.input_dim = data.xp.rows();
  out.output_dim = dim;
  return out;
}

}  // namespace csda
