#include "csda/orthogonal.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace csda {

const char* to_string(OrthoMethod m) {
  switch (m) {
    case OrthoMethod::UCSDA: return "ucsda";
    case OrthoMethod::OCSDA: return "ocsda";
    case OrthoMethod::ROCSDA: return "rocsda";
  }
  return "?";
}

const char* to_string(OrthoStep4 s) {
  switch (s) {
    case OrthoStep4::SVD_N: return "svd_n";
    case OrthoStep4::SVD_P: return "svd_p";
    case OrthoStep4::GEN_D: return "gen_d";
  }
  return "?";
}

CriterionMaxReport criterion_max_check(const ScatterSet& scatters,
                                       const Matrix& w,
                                       double zero_threshold) {
  CriterionMaxReport out;
  out.dim = w.cols();
  out.value = trace_pinv_product(scatters.sn, scatters.st, w, zero_threshold);
  out.within_bound = out.value <= static_cast<double>(out.dim) + 1e-8;
  return out;
}

SubspaceModel ortho_fit(const ClassSplitData& data, const OrthoConfig& cfg) {
  if (!data.centered) {
    throw DataError("ortho_fit: data must be centered to the positive mean");
  }

  Matrix all(data.xp.rows(), data.xp.cols() + data.xn.cols());
  all << data.xp, data.xn;
  ReducedSvd svd = reduced_svd(all, cfg.zero_threshold, cfg.threshold_mode);
  if (svd.rank == 0) throw NumericError("ortho_fit: zero data matrix");
  const Index t = svd.rank;

  // Step 2: whitening (regularized for ROCSDA; alpha is added to the
  // singular values as the pseudo-code writes it).
  Vector inv_s;
  if (cfg.method == OrthoMethod::ROCSDA) {
    if (!(cfg.alpha > 0.0)) {
      throw ConfigError("ortho_fit: ROCSDA requires alpha > 0");
    }
    inv_s = (svd.S.array() + cfg.alpha).inverse();
  } else {
    inv_s = svd.S.cwiseInverse();
  }
  Matrix p = svd.U * inv_s.asDiagonal();

  // Step 3: map data through P.
  Matrix xp_t = p.transpose() * data.xp;
  Matrix xn_t = p.transpose() * data.xn;

  // Step 4: row space of Sn~.
  Matrix v;
  Vector ranking;
  switch (cfg.step4) {
    case OrthoStep4::SVD_N: {
      ReducedSvd sn_svd =
          reduced_svd(xn_t, cfg.zero_threshold, cfg.threshold_mode);
      if (sn_svd.rank == 0) {
        throw NumericError("ortho_fit: whitened negatives have rank 0");
      }
      v = sn_svd.U;
      ranking = sn_svd.S;
      break;
    }
    case OrthoStep4::SVD_P: {
      // Zero-singular-value block of the full SVD of the whitened positives;
      // keep t - rank(Xp~) columns. The block carries no intrinsic order.
      Eigen::JacobiSVD<Matrix> full(xp_t, Eigen::ComputeFullU);
      Index rank_p = count_above_threshold(full.singularValues(),
                                           cfg.zero_threshold,
                                           cfg.threshold_mode);
      if (rank_p >= t) {
        throw NumericError("ortho_fit: whitened positives span the whole row "
                           "space, no zero block");
      }
      v = full.matrixU().rightCols(t - rank_p);
      ranking = Vector::Zero(t - rank_p);
      break;
    }
    case OrthoStep4::GEN_D: {
      Matrix sp_t = outer_scatter(xp_t);
      Matrix sn_t = outer_scatter(xn_t);
      Matrix reg = sp_t + cfg.mu * Matrix::Identity(t, t);
      GenEigResult eig = gen_sym_eig(sn_t, reg);
      Index keep = count_above_threshold(eig.values, cfg.zero_threshold,
                                         cfg.threshold_mode);
      if (keep == 0) {
        throw NumericError("ortho_fit: no nonzero generalized eigenvalues");
      }
      v = eig.vectors.leftCols(keep);
      ranking = eig.values.head(keep);
      break;
    }
  }

  // Step 5: combine.
  Matrix w = p * v;

  SubspaceModel out;
  out.method_tag = std::string(to_string(cfg.method)) + ":" +
                   to_string(cfg.step4);

  // Step 6: OCSDA/ROCSDA orthogonalize; UCSDA keeps the St-orthogonal
  // columns as they are.
  if (cfg.method != OrthoMethod::UCSDA) {
    w = qr_orthonormalize(w);
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
