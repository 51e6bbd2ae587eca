#include "csda/eval.hpp"

#include "csda/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace csda {

RankedResult score_samples(const SubspaceModel& model, const Matrix& x,
                           const Vector& positive_mean_in, Similarity sim) {
  if (x.rows() != model.input_dim) {
    throw DataError("score_samples: feature dimension mismatch");
  }
  if (positive_mean_in.size() != model.input_dim) {
    throw DataError("score_samples: positive mean dimension mismatch");
  }
  const Matrix centered = x.colwise() - positive_mean_in;
  RankedResult out;
  out.scores.resize(x.cols());
  if (sim == Similarity::NegativeEuclidean) {
    Vector dists = kernels::projected_norms(model.projection, centered);
    out.scores = -dists;
  } else {
    // Cosine similarity to the projected positive mean is degenerate at the
    // origin anchor; use the negative angle proxy via normalized distance.
    Matrix z = model.projection.transpose() * centered;
    Vector anchor = model.projected_positive_mean;
    for (Index i = 0; i < z.cols(); ++i) {
      double nz = z.col(i).norm();
      double na = anchor.norm();
      out.scores(i) =
          (nz == 0.0 || na == 0.0) ? -nz : z.col(i).dot(anchor) / (nz * na);
    }
  }
  out.order.resize(x.cols());
  std::iota(out.order.begin(), out.order.end(), Index{0});
  std::stable_sort(out.order.begin(), out.order.end(),
                   [&](Index a, Index b) { return out.scores(a) > out.scores(b); });
  return out;
}

double average_precision_11pt(const RankedResult& ranked) {
  if (ranked.labels.size() != static_cast<size_t>(ranked.scores.size())) {
    throw DataError("average_precision_11pt: labels missing or wrong size");
  }
  Index total_pos = 0;
  for (int l : ranked.labels) {
    if (l > 0) ++total_pos;
  }
  if (total_pos == 0) {
    throw DataError("average_precision_11pt: no positive samples");
  }
  const Index n = ranked.scores.size();
  // Precision/recall over ranked prefixes.
  std::vector<double> precision(n), recall(n);
  Index hits = 0;
  for (Index k = 0; k < n; ++k) {
    if (ranked.labels[ranked.order[k]] > 0) ++hits;
    precision[k] = static_cast<double>(hits) / static_cast<double>(k + 1);
    recall[k] = static_cast<double>(hits) / static_cast<double>(total_pos);
  }
  double ap = 0.0;
  for (int level = 0; level <= 10; ++level) {
    double r = level / 10.0;
    double best = 0.0;
    for (Index k = 0; k < n; ++k) {
      if (recall[k] >= r - 1e-12) best = std::max(best, precision[k]);
    }
    ap += best;
  }
  return ap / 11.0;
}

std::vector<int> fold_assignment(Index n, int folds, std::uint64_t seed) {
  std::vector<int> out(n);
  for (Index i = 0; i < n; ++i) out[i] = static_cast<int>(i % folds);
  std::mt19937_64 rng(seed);
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

namespace {

Matrix select_cols(const Matrix& m, const std::vector<int>& folds, int fold,
                   bool in_fold) {
  std::vector<Index> keep;
  for (Index i = 0; i < m.cols(); ++i) {
    if ((folds[i] == fold) == in_fold) keep.push_back(i);
  }
  Matrix out(m.rows(), static_cast<Index>(keep.size()));
  for (size_t i = 0; i < keep.size(); ++i) {
    out.col(static_cast<Index>(i)) = m.col(keep[i]);
  }
  return out;
}

double validation_ap(const SubspaceModel& model, const Vector& train_mean,
                     const Matrix& val_pos, const Matrix& val_neg,
                     Similarity sim) {
  Matrix val(val_pos.rows(), val_pos.cols() + val_neg.cols());
  val << val_pos, val_neg;
  RankedResult ranked = score_samples(model, val, train_mean, sim);
  ranked.labels.assign(val.cols(), -1);
  for (Index i = 0; i < val_pos.cols(); ++i) ranked.labels[i] = 1;
  return average_precision_11pt(ranked);
}

}  // namespace

CrossValidationResult cross_validate(const Matrix& positives,
                                     const Matrix& negatives,
                                     const ModelFactory& factory,
                                     const std::vector<int>& dim_candidates,
                                     const std::vector<int>& cluster_candidates,
                                     int folds, std::uint64_t seed,
                                     Similarity sim) {
  if (folds < 2) throw ConfigError("cross_validate: need at least 2 folds");
  if (positives.cols() < folds) {
    throw DataError("cross_validate: too few positive samples to stratify "
                    "into " + std::to_string(folds) + " folds");
  }
  if (negatives.cols() < folds) {
    throw DataError("cross_validate: too few negative samples to stratify");
  }
  if (dim_candidates.empty()) {
    throw ConfigError("cross_validate: empty dimension grid");
  }
  std::vector<int> clusters = cluster_candidates;
  if (clusters.empty()) clusters.push_back(0);  // method without K

  std::vector<int> pos_folds =
      fold_assignment(positives.cols(), folds, derive_seed(seed, 1));
  std::vector<int> neg_folds =
      fold_assignment(negatives.cols(), folds, derive_seed(seed, 2));

  CrossValidationResult out;
  for (int k : clusters) {
    // One full-width fit per (fold, K); dimensions are evaluated by
    // truncating the ranked columns.
    std::vector<std::vector<double>> ap_per_dim(
        dim_candidates.size(), std::vector<double>());
    for (int f = 0; f < folds; ++f) {
      Matrix train_pos = select_cols(positives, pos_folds, f, false);
      Matrix train_neg = select_cols(negatives, neg_folds, f, false);
      Matrix val_pos = select_cols(positives, pos_folds, f, true);
      Matrix val_neg = select_cols(negatives, neg_folds, f, true);
      if (val_pos.cols() == 0 || train_pos.cols() == 0) {
        throw DataError("cross_validate: a fold has no positive samples");
      }
      ClassSplitData train = center_to_positive_mean(train_pos, train_neg);
      SubspaceModel full = factory(train, k);
      for (size_t di = 0; di < dim_candidates.size(); ++di) {
        Index dim = std::min<Index>(dim_candidates[di], full.output_dim);
        SubspaceModel m = truncate_model(full, dim);
        ap_per_dim[di].push_back(
            validation_ap(m, train.positive_mean, val_pos, val_neg, sim));
      }
    }
    for (size_t di = 0; di < dim_candidates.size(); ++di) {
      double mean_ap =
          std::accumulate(ap_per_dim[di].begin(), ap_per_dim[di].end(), 0.0) /
          static_cast<double>(ap_per_dim[di].size());
      out.table.push_back({dim_candidates[di], k, mean_ap});
    }
  }
  // argmax of mean AP; ties to the smallest dim, then the smallest K.
  const CrossValidationEntry* best = &out.table.front();
  for (const CrossValidationEntry& e : out.table) {
    if (e.mean_ap > best->mean_ap + 1e-12 ||
        (std::abs(e.mean_ap - best->mean_ap) <= 1e-12 &&
         (e.dim < best->dim ||
          (e.dim == best->dim && e.num_clusters < best->num_clusters)))) {
      best = &e;
    }
  }
  out.chosen_dim = best->dim;
  out.chosen_clusters = best->num_clusters;
  out.best_mean_ap = best->mean_ap;
  return out;
}

std::vector<DiagnosticsRow> diagnostics_table(
    const std::vector<SubspaceModel>& models, const ScatterSet& scatters_train,
    const ScatterSet& scatters_test) {
  std::vector<DiagnosticsRow> rows;
  for (const SubspaceModel& m : models) {
    CriterionReport train = criterion_values(scatters_train, m.projection);
    CriterionReport test = criterion_values(scatters_test, m.projection);
    rows.push_back({m.method_tag, "train", train.constraint_a_sum,
                    train.constraint_a_frob, train.criterion_b});
    rows.push_back({m.method_tag, "test", test.constraint_a_sum,
                    test.constraint_a_frob, test.criterion_b});
  }
  return rows;
}

}  // namespace csda
