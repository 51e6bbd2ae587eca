#include "csda/experiment.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>

namespace {

using namespace csda;

ClassSplitData binarize_and_center(const Dataset& data, int positive_class) {
  std::vector<Index> pos, neg;
  for (size_t i = 0; i < data.labels.size(); ++i) {
    (data.labels[i] == positive_class ? pos : neg)
        .push_back(static_cast<Index>(i));
  }
  if (pos.empty()) throw DataError("no samples with the requested class");
  if (neg.empty()) throw DataError("no negative samples");
  Matrix xp(data.features.rows(), static_cast<Index>(pos.size()));
  Matrix xn(data.features.rows(), static_cast<Index>(neg.size()));
  for (size_t i = 0; i < pos.size(); ++i) {
    xp.col(static_cast<Index>(i)) = data.features.col(pos[i]);
  }
  for (size_t i = 0; i < neg.size(); ++i) {
    xn.col(static_cast<Index>(i)) = data.features.col(neg[i]);
  }
  return center_to_positive_mean(xp, xn);
}

int run(int argc, char** argv) {
  CLI::App app{"Class-specific discriminant analysis toolkit"};
  app.require_subcommand(1);

  // synth: generate a dataset CSV
  auto* synth = app.add_subcommand("synth", "Generate a synthetic dataset CSV");
  std::string synth_spec, synth_out = "synth.csv";
  std::uint64_t synth_seed = 0;
  synth->add_option("--spec", synth_spec,
                    "dim=..;n_pos=..;pos_mean=..;pos_stdev=..;"
                    "clusters=count@offset@stdev|...")
      ->required();
  synth->add_option("--out", synth_out, "Output CSV path");
  synth->add_option("--seed", synth_seed, "RNG seed");

  // fit: single model, print dims and diagnostics
  auto* fit = app.add_subcommand("fit", "Fit one model and print diagnostics");
  std::string fit_data, fit_method_name = "ncsda:E_D";
  int fit_class = 0, fit_dim = 0, fit_k = 1;
  bool fit_header = false;
  std::uint64_t fit_seed = 0;
  fit->add_option("--data", fit_data, "Dataset CSV")->required();
  fit->add_flag("--header", fit_header, "CSV has a header row");
  fit->add_option("--method", fit_method_name, "Method spec");
  fit->add_option("--class", fit_class, "Positive class label");
  fit->add_option("--dim", fit_dim, "Target dimensionality (0 = full)");
  fit->add_option("--clusters", fit_k, "K for heterogeneous methods");
  fit->add_option("--seed", fit_seed, "RNG seed");

  // eval: model vs test CSV -> AP
  auto* eval = app.add_subcommand("eval",
                                  "Fit on train CSV, report AP on test CSV");
  std::string eval_train, eval_test, eval_method_name = "ncsda:E_D";
  int eval_class = 0, eval_dim = 0, eval_k = 1;
  bool eval_header = false;
  std::uint64_t eval_seed = 0;
  eval->add_option("--train", eval_train, "Training CSV")->required();
  eval->add_option("--test", eval_test, "Test CSV")->required();
  eval->add_flag("--header", eval_header, "CSVs have a header row");
  eval->add_option("--method", eval_method_name, "Method spec");
  eval->add_option("--class", eval_class, "Positive class label");
  eval->add_option("--dim", eval_dim, "Target dimensionality (0 = full)");
  eval->add_option("--clusters", eval_k, "K for heterogeneous methods");
  eval->add_option("--seed", eval_seed, "RNG seed");

  // experiment: full protocol from a config file
  auto* experiment =
      app.add_subcommand("experiment", "Run the full protocol from a config");
  std::string exp_config;
  experiment->add_option("--config", exp_config, "Key=value config file")
      ->required();

  // diagnose: A/B tables for a set of methods
  auto* diagnose = app.add_subcommand("diagnose",
                                      "Emit constraint/criterion tables");
  std::string diag_data, diag_methods = "ncsda:E_A,ncsda:E_B,ncsda:E_D";
  int diag_class = 0, diag_dim = 0;
  bool diag_header = false;
  std::uint64_t diag_seed = 0;
  diagnose->add_option("--data", diag_data, "Dataset CSV")->required();
  diagnose->add_flag("--header", diag_header, "CSV has a header row");
  diagnose->add_option("--methods", diag_methods, "Comma-separated methods");
  diagnose->add_option("--class", diag_class, "Positive class label");
  diagnose->add_option("--dim", diag_dim, "Target dimensionality (0 = full)");
  diagnose->add_option("--seed", diag_seed, "RNG seed");

  CLI11_PARSE(app, argc, argv);

  if (*synth) {
    Dataset data = synth_generate(parse_synth_spec(synth_spec, synth_seed));
    write_csv(synth_out, data);
    std::cout << "wrote " << data.features.cols() << " samples ("
              << data.features.rows() << " features) to " << synth_out << "\n";
    return 0;
  }

  if (*fit) {
    Dataset data = load_csv(fit_data, fit_header);
    ClassSplitData split = binarize_and_center(data, fit_class);
    MethodSpec method = parse_method(fit_method_name);
    SubspaceModel model = fit_method(method, split, fit_k, fit_seed);
    if (fit_dim > 0) {
      model = truncate_model(model, std::min<Index>(fit_dim, model.output_dim));
    }
    ScatterSet sc = scatter_matrices(split);
    CriterionReport crit = criterion_values(sc, model.projection);
    std::cout << "method: " << model.method_tag << "\n"
              << "input_dim: " << model.input_dim << "\n"
              << "output_dim: " << model.output_dim << "\n"
              << "A_sum: " << crit.constraint_a_sum << "\n"
              << "A_frob: " << crit.constraint_a_frob << "\n"
              << "B: " << crit.criterion_b << "\n"
              << "J: " << (crit.j_unbounded ? "inf" : std::to_string(crit.j))
              << "\n";
    return 0;
  }

  if (*eval) {
    Dataset train = load_csv(eval_train, eval_header);
    Dataset test = load_csv(eval_test, eval_header);
    if (train.features.rows() != test.features.rows()) {
      throw DataError("train/test feature dimension mismatch");
    }
    ClassSplitData split = binarize_and_center(train, eval_class);
    MethodSpec method = parse_method(eval_method_name);
    SubspaceModel model = fit_method(method, split, eval_k, eval_seed);
    if (eval_dim > 0) {
      model =
          truncate_model(model, std::min<Index>(eval_dim, model.output_dim));
    }
    RankedResult ranked =
        score_samples(model, test.features, split.positive_mean);
    ranked.labels.resize(test.labels.size());
    for (size_t i = 0; i < test.labels.size(); ++i) {
      ranked.labels[i] = test.labels[i] == eval_class ? 1 : -1;
    }
    std::cout << "AP: " << average_precision_11pt(ranked) << "\n";
    return 0;
  }

  if (*experiment) {
    ExperimentConfig cfg = parse_config_file(exp_config);
    ExperimentReport report = run_experiment(cfg);
    emit_report(report, cfg.output_dir);
    for (const auto& [name, mean] : report.method_means) {
      std::cout << name << " mean test AP: " << mean << "\n";
    }
    std::cout << "reports written to " << cfg.output_dir << "\n";
    return 0;
  }

  if (*diagnose) {
    Dataset data = load_csv(diag_data, diag_header);
    ClassSplitData split = binarize_and_center(data, diag_class);
    ScatterSet sc = scatter_matrices(split);
    std::vector<SubspaceModel> models;
    std::stringstream ss(diag_methods);
    std::string name;
    while (std::getline(ss, name, ',')) {
      MethodSpec method = parse_method(name);
      SubspaceModel model = fit_method(method, split, 1, diag_seed);
      if (diag_dim > 0) {
        model =
            truncate_model(model, std::min<Index>(diag_dim, model.output_dim));
      }
      models.push_back(std::move(model));
    }
    std::cout << "method,split,A_sum,A_frob,B\n";
    for (const DiagnosticsRow& row : diagnostics_table(models, sc, sc)) {
      if (row.split == "test") continue;  // no held-out split here
      std::cout << row.method_tag << ',' << row.split << ',' << row.a_sum
                << ',' << row.a_frob << ',' << row.b << "\n";
    }
    return 0;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const csda::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
