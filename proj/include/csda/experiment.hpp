#pragma once

#include "csda/dataset.hpp"
#include "csda/eval.hpp"
#include "csda/heterogeneous.hpp"
#include "csda/kernelmap.hpp"
#include "csda/nullspace.hpp"
#include "csda/orthogonal.hpp"

#include <string>
#include <vector>

namespace csda {

/// A method selection parsed from strings like "csda", "ncsda:E_D",
/// "ncsda:E_A+step4+qr", "rocsda:svd_n", "hncsda", "hocsda".
struct MethodSpec {
  enum class Kind { Csda, Ncsda, Ucsda, Ocsda, Rocsda, Hncsda, Hocsda };
  Kind kind = Kind::Csda;
  NullEigenproblem variant = NullEigenproblem::E_D;  // ncsda
  bool step4 = false;
  bool qr = false;
  OrthoStep4 ortho_step4 = OrthoStep4::SVD_N;  // ucsda/ocsda/rocsda
  std::string name;

  bool heterogeneous() const {
    return kind == Kind::Hncsda || kind == Kind::Hocsda;
  }
};

MethodSpec parse_method(const std::string& text);

struct ExperimentConfig {
  std::string dataset_path;  // exactly one of dataset_path / synth set
  bool has_header = false;
  std::string synth;  // compact synthetic spec, see parse_synth_spec
  std::vector<MethodSpec> methods;
  KernelKind kernel = KernelKind::Rbf;
  double sigma = 0.0;  // <= 0 means the automatic formula
  double train_fraction = 0.70;
  int repetitions = 5;
  std::uint64_t seed = 0;
  int dim_min = 1;
  int dim_max = 25;
  std::vector<int> k_grid = {1, 2, 3, 5, 10};
  int folds = 5;
  std::string output_dir = ".";
  Similarity similarity = Similarity::NegativeEuclidean;
};

/// Flat key=value config file; unknown keys are an error.
ExperimentConfig parse_config_file(const std::string& path);

/// Compact synthetic spec: semicolon-separated fields
/// "dim=10;n_pos=20;pos_mean=5;pos_stdev=1;clusters=30@4@1|30@4@1".
/// Cluster i's mean is pos_mean*1 + offset*e_{i mod dim}.
SynthSpec parse_synth_spec(const std::string& text, std::uint64_t seed);

struct ResultRow {
  int positive_class = 0;
  int repetition = 0;
  std::string method;
  int dim = 0;
  int num_clusters = 0;
  std::string split;  // train / test
  double ap = 0.0;
  double a_sum = 0.0;
  double a_frob = 0.0;
  double b = 0.0;
};

struct ExperimentReport {
  std::vector<ResultRow> rows;
  // mean test AP per method, key order = config order
  std::vector<std::pair<std::string, double>> method_means;
};

ExperimentReport run_experiment(const ExperimentConfig& cfg);

/// Writes results.csv (fixed 10-column schema) and summary.md.
void emit_report(const ExperimentReport& report, const std::string& out_dir);

/// Fits the configured method at full width on a centered training split.
SubspaceModel fit_method(const MethodSpec& spec, const ClassSplitData& train,
                         int num_clusters, std::uint64_t seed);

/// Deterministic stratified split indices: per label, floor(frac*n) samples
/// (at least 1) go to train.
struct SplitIndices {
  std::vector<Index> train;
  std::vector<Index> test;
};
SplitIndices stratified_split(const std::vector<int>& labels,
                              double train_fraction, std::uint64_t seed);

}  // namespace csda
