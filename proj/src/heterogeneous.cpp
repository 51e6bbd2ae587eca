#include "csda/heterogeneous.hpp"

#include "csda/kernels.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <random>

namespace csda {
namespace {

Matrix kmeanspp_init(const Matrix& points, int k, std::mt19937_64& rng) {
  const Index n = points.cols();
  Matrix centroids(points.rows(), k);
  std::uniform_int_distribution<Index> uni(0, n - 1);
  centroids.col(0) = points.col(uni(rng));
  Vector d2 =
      (points.colwise() - centroids.col(0)).colwise().squaredNorm().transpose();
  for (int c = 1; c < k; ++c) {
    double total = d2.sum();
    Index pick = 0;
    if (total > 0.0) {
      std::uniform_real_distribution<double> ur(0.0, total);
      double target = ur(rng);
      double acc = 0.0;
      for (Index i = 0; i < n; ++i) {
        acc += d2(i);
        if (acc >= target) {
          pick = i;
          break;
        }
      }
    } else {
      pick = uni(rng);
    }
    centroids.col(c) = points.col(pick);
    Vector nd = (points.colwise() - centroids.col(c))
                    .colwise()
                    .squaredNorm()
                    .transpose();
    d2 = d2.cwiseMin(nd);
  }
  return centroids;
}

double run_lloyd(const Matrix& points, Matrix& centroids,
                 std::vector<int>& assignments, int max_iters) {
  const Index n = points.cols();
  const int k = static_cast<int>(centroids.cols());
  assignments.assign(n, -1);
  for (int it = 0; it < max_iters; ++it) {
    std::vector<int> next = kernels::nearest_centroid(points, centroids);
    bool changed = (next != assignments);
    assignments = std::move(next);

    Matrix sums = Matrix::Zero(points.rows(), k);
    std::vector<Index> counts(k, 0);
    for (Index i = 0; i < n; ++i) {
      sums.col(assignments[i]) += points.col(i);
      counts[assignments[i]] += 1;
    }
    for (int c = 0; c < k; ++c) {
      if (counts[c] == 0) {
        // Reseed with the point farthest from its centroid.
        Index far = 0;
        double best = -1.0;
        for (Index i = 0; i < n; ++i) {
          double d =
              (points.col(i) - centroids.col(assignments[i])).squaredNorm();
          if (d > best) {
            best = d;
            far = i;
          }
        }
        centroids.col(c) = points.col(far);
        changed = true;
      } else {
        centroids.col(c) = sums.col(c) / static_cast<double>(counts[c]);
      }
    }
    if (!changed && it > 0) break;
  }
  assignments = kernels::nearest_centroid(points, centroids);
  double inertia = 0.0;
  for (Index i = 0; i < n; ++i) {
    inertia += (points.col(i) - centroids.col(assignments[i])).squaredNorm();
  }
  return inertia;
}

}  // namespace

KMeansResult kmeans(const Matrix& points, int k, int restarts, int max_iters,
                    std::uint64_t seed) {
  if (k < 1 || k > points.cols()) {
    throw DataError("kmeans: K must satisfy 1 <= K <= number of points");
  }
  KMeansResult best;
  best.inertia = std::numeric_limits<double>::infinity();
  best.seed = seed;
  for (int r = 0; r < restarts; ++r) {
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
    Matrix centroids = kmeanspp_init(points, k, rng);
    std::vector<int> assignments;
    double inertia = run_lloyd(points, centroids, assignments, max_iters);
    if (inertia < best.inertia) {
      best.centroids = std::move(centroids);
      best.assignments = std::move(assignments);
      best.inertia = inertia;
    }
    best.restarts_run = r + 1;
  }
  return best;
}

namespace {

// Shared tail of Algorithms 3-4: cluster the mapped negatives, build the
// between-cluster scatter about the (zero) projected positive mean, and take
// its nonzero eigenvectors.
struct SnbEig {
  Matrix m;
  Vector values;
  std::vector<int> assignments;
};

SnbEig snb_directions(const Matrix& mapped_negatives, const HeteroConfig& cfg) {
  KMeansResult km = kmeans(mapped_negatives, cfg.num_clusters,
                           cfg.kmeans_restarts, cfg.kmeans_max_iters, cfg.seed);
  ClassSplitData proj;
  proj.xp = Matrix::Zero(mapped_negatives.rows(), 1);
  proj.xn = mapped_negatives;
  proj.positive_mean = Vector::Zero(mapped_negatives.rows());
  proj.centered = true;
  ClusterScatter cs = cluster_scatters(proj, km.assignments, cfg.num_clusters);
  SymEigResult eig = sym_eig(cs.snb);
  Index keep = count_above_threshold(eig.values, cfg.zero_threshold,
                                     cfg.threshold_mode);
  if (keep == 0) {
    throw NumericError("heterogeneous fit: between-cluster scatter has no "
                       "nonzero eigenvalues");
  }
  return {eig.vectors.leftCols(keep), eig.values.head(keep), km.assignments};
}

SubspaceModel finalize(Matrix w, Vector ranking, std::string tag,
                       const ClassSplitData& data,
                       std::optional<Index> target_dim = std::nullopt) {
  w = qr_orthonormalize(w);
  Index dim = w.cols();
  if (target_dim && *target_dim < dim) dim = *target_dim;
  SubspaceModel out;
  out.projection = w.leftCols(dim);
  out.ranking_values = ranking.head(dim);
  out.projected_positive_mean = Vector::Zero(dim);
  out.method_tag = std::move(tag);
  out.input_dim = data.xp.rows();
  out.output_dim = dim;
  return out;
}

}  // namespace

SubspaceModel hncsda_fit(const ClassSplitData& data, const HeteroConfig& cfg) {
  if (!data.centered) {
    throw DataError("hncsda_fit: data must be centered to the positive mean");
  }
  if (cfg.num_clusters < 1 || cfg.num_clusters > data.xn.cols()) {
    throw DataError("hncsda_fit: K must satisfy 1 <= K <= Nn");
  }

  // Steps 1-2: row space of St.
  Matrix all(data.xp.rows(), data.xp.cols() + data.xn.cols());
  all << data.xp, data.xn;
  ReducedSvd svd = reduced_svd(all, cfg.zero_threshold, cfg.threshold_mode);
  if (svd.rank == 0) throw NumericError("hncsda_fit: zero data matrix");
  const Matrix& ut = svd.U;
  const Index t = svd.rank;

  Matrix xp_t = ut.transpose() * data.xp;
  Matrix xn_t = ut.transpose() * data.xn;
  Matrix sp_t = outer_scatter(xp_t);
  Matrix sn_t = outer_scatter(xn_t);

  // Step 3: null space of Sp~ from the zero-eigenvalue block of
  // Sp~ v = (Sn~ + mu I) lambda v.
  Matrix reg = sn_t + cfg.mu * Matrix::Identity(t, t);
  GenEigResult eig = gen_sym_eig(sp_t, reg);
  double top = eig.values.cwiseAbs().maxCoeff();
  double cut = cfg.zero_threshold *
               (cfg.threshold_mode == ThresholdMode::Relative ? top : 1.0);
  std::vector<Index> null_idx;
  for (Index i = 0; i < eig.values.size(); ++i) {
    if (std::abs(eig.values(i)) <= cut) null_idx.push_back(i);
  }
  if (null_idx.empty()) {
    throw NumericError("hncsda_fit: intra-class scatter has no null space");
  }
  Matrix v(t, static_cast<Index>(null_idx.size()));
  for (size_t i = 0; i < null_idx.size(); ++i) {
    v.col(static_cast<Index>(i)) = eig.vectors.col(null_idx[i]);
  }

  // Steps 4-7: cluster the negatives in the null space and maximize the
  // between-cluster scatter there.
  Matrix mapped_n = v.transpose() * xn_t;
  SnbEig snb = snb_directions(mapped_n, cfg);

  // Steps 8-9.
  Matrix w = ut * (v * snb.m);
  return finalize(std::move(w), snb.values,
                  "hncsda:K=" + std::to_string(cfg.num_clusters), data);
}

SubspaceModel hocsda_fit(const ClassSplitData& data, const HeteroConfig& cfg) {
  if (!data.centered) {
    throw DataError("hocsda_fit: data must be centered to the positive mean");
  }
  if (cfg.num_clusters < 1 || cfg.num_clusters > data.xn.cols()) {
    throw DataError("hocsda_fit: K must satisfy 1 <= K <= Nn");
  }

  // Step 1: plain whitening (no regularization here).
  Matrix all(data.xp.rows(), data.xp.cols() + data.xn.cols());
  all << data.xp, data.xn;
  ReducedSvd svd = reduced_svd(all, cfg.zero_threshold, cfg.threshold_mode);
  if (svd.rank == 0) throw NumericError("hocsda_fit: zero data matrix");
  Matrix p = svd.U * svd.S.cwiseInverse().asDiagonal();

  // Steps 2-5.
  Matrix mapped_n = p.transpose() * data.xn;
  SnbEig snb = snb_directions(mapped_n, cfg);

  // Steps 6-7.
  Matrix w = p * snb.m;
  return finalize(std::move(w), snb.values,
                  "hocsda:K=" + std::to_string(cfg.num_clusters), data);
}

}  // namespace csda
