#pragma once

#include "csda/csda_core.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace csda {

enum class Similarity { NegativeEuclidean, Cosine };

/// Samples ranked by descending similarity to the projected positive mean.
/// Ties keep the original sample order.
struct RankedResult {
  Vector scores;
  std::vector<Index> order;
  std::vector<int> labels;  // +1 / -1, may be empty until attached
};

RankedResult score_samples(const SubspaceModel& model, const Matrix& x,
                           const Vector& positive_mean_in,
                           Similarity sim = Similarity::NegativeEuclidean);

double average_precision_11pt(const RankedResult& ranked);

/// Fits a full-width model on a training split; truncation to each candidate
/// dimension is done by the evaluator via the ranking order.
using ModelFactory =
    std::function<SubspaceModel(const ClassSplitData& train, int num_clusters)>;

struct CrossValidationEntry {
  int dim = 0;
  int num_clusters = 0;
  double mean_ap = 0.0;
};

struct CrossValidationResult {
  int chosen_dim = 0;
  int chosen_clusters = 0;
  double best_mean_ap = 0.0;
  std::vector<CrossValidationEntry> table;
};

/// Stratified k-fold selection of (dim, K) by mean validation AP. Ties go to
/// the smallest dim, then the smallest K.
CrossValidationResult cross_validate(
    const Matrix& positives, const Matrix& negatives,
    const ModelFactory& factory, const std::vector<int>& dim_candidates,
    const std::vector<int>& cluster_candidates, int folds, std::uint64_t seed,
    Similarity sim = Similarity::NegativeEuclidean);

struct DiagnosticsRow {
  std::string method_tag;
  std::string split;
  double a_sum = 0.0;
  double a_frob = 0.0;
  double b = 0.0;
};

std::vector<DiagnosticsRow> diagnostics_table(
    const std::vector<SubspaceModel>& models, const ScatterSet& scatters_train,
    const ScatterSet& scatters_test);

/// Stratified fold assignment: positives and negatives are partitioned
/// separately into `folds` groups, deterministically from the seed.
std::vector<int> fold_assignment(Index n, int folds, std::uint64_t seed);

}  // namespace csda
