#include "csda/experiment.hpp"

#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace csda {
namespace {

std::vector<std::string> split(const std::string& s, char delim) {
  std::vector<std::string> out;
  std::string item;
  std::stringstream ss(s);
  while (std::getline(ss, item, delim)) out.push_back(item);
  return out;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

MethodSpec parse_method(const std::string& text) {
  MethodSpec spec;
  spec.name = text;
  std::string base = text;
  std::string arg;
  if (auto pos = text.find(':'); pos != std::string::npos) {
    base = text.substr(0, pos);
    arg = text.substr(pos + 1);
  }
  auto flag = [&](const std::string& name) {
    auto pos = arg.find("+" + name);
    if (pos != std::string::npos) {
      arg.erase(pos, name.size() + 1);
      return true;
    }
    return false;
  };
  if (base == "csda") {
    spec.kind = MethodSpec::Kind::Csda;
  } else if (base == "ncsda") {
    spec.kind = MethodSpec::Kind::Ncsda;
    spec.step4 = flag("step4");
    spec.qr = flag("qr");
    if (arg.empty() || arg == "E_D") spec.variant = NullEigenproblem::E_D;
    else if (arg == "E_A") spec.variant = NullEigenproblem::E_A;
    else if (arg == "E_B") spec.variant = NullEigenproblem::E_B;
    else if (arg == "E_C") spec.variant = NullEigenproblem::E_C;
    else if (arg == "E_E") spec.variant = NullEigenproblem::E_E;
    else throw ConfigError("unknown ncsda variant '" + arg + "'");
  } else if (base == "ucsda" || base == "ocsda" || base == "rocsda") {
    spec.kind = base == "ucsda"   ? MethodSpec::Kind::Ucsda
                : base == "ocsda" ? MethodSpec::Kind::Ocsda
                                  : MethodSpec::Kind::Rocsda;
    if (arg.empty() || arg == "svd_n") spec.ortho_step4 = OrthoStep4::SVD_N;
    else if (arg == "svd_p") spec.ortho_step4 = OrthoStep4::SVD_P;
    else if (arg == "gen_d") spec.ortho_step4 = OrthoStep4::GEN_D;
    else throw ConfigError("unknown " + base + " step4 variant '" + arg + "'");
  } else if (base == "hncsda") {
    spec.kind = MethodSpec::Kind::Hncsda;
  } else if (base == "hocsda") {
    spec.kind = MethodSpec::Kind::Hocsda;
  } else {
    throw ConfigError("unknown method '" + text + "'");
  }
  return spec;
}

SynthSpec parse_synth_spec(const std::string& text, std::uint64_t seed) {
  SynthSpec spec;
  spec.seed = seed;
  double pos_mean = 0.0;
  std::vector<std::array<double, 3>> clusters;  // count, offset, stdev
  for (const std::string& field : split(text, ';')) {
    std::string f = trim(field);
    if (f.empty()) continue;
    auto eq = f.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("synth spec: expected key=value in '" + f + "'");
    }
    std::string key = trim(f.substr(0, eq));
    std::string val = trim(f.substr(eq + 1));
    if (key == "dim") spec.dim = std::stol(val);
    else if (key == "n_pos") spec.n_pos = std::stol(val);
    else if (key == "pos_mean") pos_mean = std::stod(val);
    else if (key == "pos_stdev") spec.pos_stdev = std::stod(val);
    else if (key == "clusters") {
      for (const std::string& c : split(val, '|')) {
        std::vector<std::string> parts = split(c, '@');
        if (parts.size() != 3) {
          throw ConfigError("synth spec: cluster must be count@offset@stdev, "
                            "got '" + c + "'");
        }
        clusters.push_back({std::stod(parts[0]), std::stod(parts[1]),
                            std::stod(parts[2])});
      }
    } else {
      throw ConfigError("synth spec: unknown key '" + key + "'");
    }
  }
  if (spec.dim < 1) throw ConfigError("synth spec: dim missing");
  spec.pos_mean = Vector::Constant(spec.dim, pos_mean);
  for (size_t i = 0; i < clusters.size(); ++i) {
    SynthCluster c;
    c.count = static_cast<Index>(clusters[i][0]);
    c.mean = spec.pos_mean;
    c.mean(static_cast<Index>(i) % spec.dim) += clusters[i][1];
    c.stdev = clusters[i][2];
    spec.clusters.push_back(std::move(c));
  }
  return spec;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  ExperimentConfig cfg;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    auto eq = s.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected key = value");
    }
    std::string key = trim(s.substr(0, eq));
    std::string val = trim(s.substr(eq + 1));
    try {
      if (key == "dataset") cfg.dataset_path = val;
      else if (key == "has_header") cfg.has_header = (val == "true" || val == "1");
      else if (key == "synth") cfg.synth = val;
      else if (key == "methods") {
        for (const std::string& m : split(val, ',')) {
          cfg.methods.push_back(parse_method(trim(m)));
        }
      } else if (key == "kernel") {
        if (val == "rbf") cfg.kernel = KernelKind::Rbf;
        else if (val == "linear") cfg.kernel = KernelKind::Linear;
        else throw ConfigError("unknown kernel '" + val + "'");
      } else if (key == "sigma") {
        cfg.sigma = (val == "auto") ? 0.0 : std::stod(val);
      } else if (key == "train_fraction") cfg.train_fraction = std::stod(val);
      else if (key == "repetitions") cfg.repetitions = std::stoi(val);
      else if (key == "seed") cfg.seed = std::stoull(val);
      else if (key == "dim_min") cfg.dim_min = std::stoi(val);
      else if (key == "dim_max") cfg.dim_max = std::stoi(val);
      else if (key == "k_grid") {
        cfg.k_grid.clear();
        for (const std::string& k : split(val, ',')) {
          cfg.k_grid.push_back(std::stoi(trim(k)));
        }
      } else if (key == "folds") cfg.folds = std::stoi(val);
      else if (key == "output_dir") cfg.output_dir = val;
      else if (key == "similarity") {
        if (val == "euclidean") cfg.similarity = Similarity::NegativeEuclidean;
        else if (val == "cosine") cfg.similarity = Similarity::Cosine;
        else throw ConfigError("unknown similarity '" + val + "'");
      } else {
        throw ConfigError("unknown config key '" + key + "'");
      }
    } catch (const std::invalid_argument&) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": bad value for '" + key + "'");
    }
  }
  if (cfg.dataset_path.empty() == cfg.synth.empty()) {
    throw ConfigError("config must set exactly one of 'dataset' or 'synth'");
  }
  if (cfg.methods.empty()) throw ConfigError("config: no methods given");
  if (!(cfg.train_fraction > 0.0 && cfg.train_fraction < 1.0)) {
    throw ConfigError("config: train_fraction must be in (0, 1)");
  }
  if (cfg.repetitions < 1) throw ConfigError("config: repetitions must be >= 1");
  return cfg;
}

SplitIndices stratified_split(const std::vector<int>& labels,
                              double train_fraction, std::uint64_t seed) {
  std::map<int, std::vector<Index>> by_class;
  for (size_t i = 0; i < labels.size(); ++i) {
    by_class[labels[i]].push_back(static_cast<Index>(i));
  }
  SplitIndices out;
  std::uint64_t sub = 0;
  for (auto& [label, idx] : by_class) {
    std::mt19937_64 rng(derive_seed(seed, 0x51ULL, ++sub));
    std::shuffle(idx.begin(), idx.end(), rng);
    Index n_train = std::max<Index>(
        1, static_cast<Index>(train_fraction * static_cast<double>(idx.size())));
    if (n_train >= static_cast<Index>(idx.size())) {
      n_train = static_cast<Index>(idx.size()) - 1;
    }
    for (Index i = 0; i < static_cast<Index>(idx.size()); ++i) {
      (i < n_train ? out.train : out.test).push_back(idx[i]);
    }
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

SubspaceModel fit_method(const MethodSpec& spec, const ClassSplitData& train,
                         int num_clusters, std::uint64_t seed) {
  switch (spec.kind) {
    case MethodSpec::Kind::Csda: {
      ScatterSet sc = scatter_matrices(train);
      Index l = std::min<Index>(train.xp.cols() - 1, train.xp.rows());
      if (l < 1) l = 1;
      return csda_fit(sc, l);
    }
    case MethodSpec::Kind::Ncsda: {
      NcsdaConfig cfg;
      cfg.eigenproblem = spec.variant;
      cfg.use_step4 = spec.step4;
      cfg.use_qr = spec.qr;
      return ncsda_fit(train, cfg);
    }
    case MethodSpec::Kind::Ucsda:
    case MethodSpec::Kind::Ocsda:
    case MethodSpec::Kind::Rocsda: {
      OrthoConfig cfg;
      cfg.method = spec.kind == MethodSpec::Kind::Ucsda   ? OrthoMethod::UCSDA
                   : spec.kind == MethodSpec::Kind::Ocsda ? OrthoMethod::OCSDA
                                                          : OrthoMethod::ROCSDA;
      cfg.step4 = spec.ortho_step4;
      return ortho_fit(train, cfg);
    }
    case MethodSpec::Kind::Hncsda:
    case MethodSpec::Kind::Hocsda: {
      HeteroConfig cfg;
      cfg.num_clusters = std::max(1, num_clusters);
      cfg.seed = seed;
      return spec.kind == MethodSpec::Kind::Hncsda ? hncsda_fit(train, cfg)
                                                   : hocsda_fit(train, cfg);
    }
  }
  throw ConfigError("fit_method: unknown method kind");
}

namespace {

Matrix take_cols(const Matrix& m, const std::vector<Index>& idx) {
  Matrix out(m.rows(), static_cast<Index>(idx.size()));
  for (size_t i = 0; i < idx.size(); ++i) {
    out.col(static_cast<Index>(i)) = m.col(idx[i]);
  }
  return out;
}

double split_ap(const SubspaceModel& model, const Vector& train_mean,
                const Matrix& pos, const Matrix& neg, Similarity sim) {
  Matrix all(pos.rows(), pos.cols() + neg.cols());
  all << pos, neg;
  RankedResult ranked = score_samples(model, all, train_mean, sim);
  ranked.labels.assign(all.cols(), -1);
  for (Index i = 0; i < pos.cols(); ++i) ranked.labels[i] = 1;
  return average_precision_11pt(ranked);
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  Dataset data = cfg.dataset_path.empty()
                     ? synth_generate(parse_synth_spec(cfg.synth, cfg.seed))
                     : load_csv(cfg.dataset_path, cfg.has_header);

  std::set<int> classes(data.labels.begin(), data.labels.end());
  if (classes.size() < 2) {
    throw DataError("run_experiment: need at least 2 classes");
  }

  std::vector<int> dims;
  for (int d = cfg.dim_min; d <= cfg.dim_max; ++d) dims.push_back(d);

  ExperimentReport report;
  std::map<std::string, std::pair<double, int>> method_acc;

  int class_index = 0;
  for (int positive_class : classes) {
    for (int rep = 0; rep < cfg.repetitions; ++rep) {
      std::uint64_t run_seed = derive_seed(cfg.seed, class_index, rep);
      SplitIndices splitix =
          stratified_split(data.labels, cfg.train_fraction, run_seed);
      Matrix train_x = take_cols(data.features, splitix.train);
      Matrix test_x = take_cols(data.features, splitix.test);

      // NPT on the training set only; test samples are only transformed.
      KernelSpec kspec;
      kspec.kind = cfg.kernel;
      kspec.sigma = cfg.sigma > 0.0 ? cfg.sigma
                    : cfg.kernel == KernelKind::Rbf ? compute_sigma(train_x)
                                                    : 1.0;
      NptModel npt = npt_fit(train_x, kspec);
      Matrix z_train = npt.train_mapped();
      Matrix z_test = npt.transform(test_x);

      std::vector<Index> trp, trn, tep, ten;
      for (size_t i = 0; i < splitix.train.size(); ++i) {
        (data.labels[splitix.train[i]] == positive_class ? trp : trn)
            .push_back(static_cast<Index>(i));
      }
      for (size_t i = 0; i < splitix.test.size(); ++i) {
        (data.labels[splitix.test[i]] == positive_class ? tep : ten)
            .push_back(static_cast<Index>(i));
      }
      Matrix ztr_pos = take_cols(z_train, trp);
      Matrix ztr_neg = take_cols(z_train, trn);
      Matrix zte_pos = take_cols(z_test, tep);
      Matrix zte_neg = take_cols(z_test, ten);

      for (const MethodSpec& method : cfg.methods) {
        std::uint64_t method_seed =
            derive_seed(run_seed, std::hash<std::string>{}(method.name));
        std::vector<int> k_grid =
            method.heterogeneous() ? cfg.k_grid : std::vector<int>{};
        // Clip K to the smallest fold-train negative count.
        if (!k_grid.empty()) {
          int max_k = static_cast<int>(ztr_neg.cols()) -
                      static_cast<int>(ztr_neg.cols()) / cfg.folds - 1;
          std::vector<int> clipped;
          for (int k : k_grid) {
            if (k <= max_k) clipped.push_back(k);
          }
          if (clipped.empty()) clipped.push_back(1);
          k_grid = clipped;
        }
        ModelFactory factory = [&](const ClassSplitData& train, int k) {
          return fit_method(method, train, k, method_seed);
        };
        CrossValidationResult cv =
            cross_validate(ztr_pos, ztr_neg, factory, dims, k_grid, cfg.folds,
                           method_seed, cfg.similarity);

        ClassSplitData train = center_to_positive_mean(ztr_pos, ztr_neg);
        SubspaceModel full =
            fit_method(method, train, cv.chosen_clusters, method_seed);
        SubspaceModel model = truncate_model(
            full, std::min<Index>(cv.chosen_dim, full.output_dim));

        ScatterSet sc_train = scatter_matrices(train);
        // Test scatters about the TRAINING positive mean.
        ClassSplitData test_split;
        test_split.xp = zte_pos.colwise() - train.positive_mean;
        test_split.xn = zte_neg.colwise() - train.positive_mean;
        test_split.positive_mean = train.positive_mean;
        test_split.centered = true;
        ScatterSet sc_test = scatter_matrices(test_split);

        CriterionReport crit_train = criterion_values(sc_train, model.projection);
        CriterionReport crit_test = criterion_values(sc_test, model.projection);
        double train_ap = split_ap(model, train.positive_mean, ztr_pos, ztr_neg,
                                   cfg.similarity);
        double test_ap = split_ap(model, train.positive_mean, zte_pos, zte_neg,
                                  cfg.similarity);

        ResultRow base;
        base.positive_class = positive_class;
        base.repetition = rep;
        base.method = method.name;
        base.dim = static_cast<int>(model.output_dim);
        base.num_clusters = method.heterogeneous() ? cv.chosen_clusters : 0;

        ResultRow train_row = base;
        train_row.split = "train";
        train_row.ap = train_ap;
        train_row.a_sum = crit_train.constraint_a_sum;
        train_row.a_frob = crit_train.constraint_a_frob;
        train_row.b = crit_train.criterion_b;
        report.rows.push_back(train_row);

        ResultRow test_row = base;
        test_row.split = "test";
        test_row.ap = test_ap;
        test_row.a_sum = crit_test.constraint_a_sum;
        test_row.a_frob = crit_test.constraint_a_frob;
        test_row.b = crit_test.criterion_b;
        report.rows.push_back(test_row);

        auto& acc = method_acc[method.name];
        acc.first += test_ap;
        acc.second += 1;
      }
    }
    ++class_index;
  }

  for (const MethodSpec& method : cfg.methods) {
    const auto& acc = method_acc.at(method.name);
    report.method_means.emplace_back(method.name,
                                     acc.first / std::max(1, acc.second));
  }
  return report;
}

void emit_report(const ExperimentReport& report, const std::string& out_dir) {
  if (report.rows.empty()) {
    throw DataError("emit_report: no results to write");
  }
  std::filesystem::create_directories(out_dir);
  const std::string csv_path = out_dir + "/results.csv";
  std::ofstream csv(csv_path);
  if (!csv) throw DataError("emit_report: cannot write '" + csv_path + "'");
  csv.precision(17);
  csv << "class,rep,method,dim,K,split,ap,a_sum,a_frob,b\n";
  for (const ResultRow& r : report.rows) {
    csv << r.positive_class << ',' << r.repetition << ',' << r.method << ','
        << r.dim << ',' << r.num_clusters << ',' << r.split << ',' << r.ap
        << ',' << r.a_sum << ',' << r.a_frob << ',' << r.b << '\n';
  }

  const std::string md_path = out_dir + "/summary.md";
  std::ofstream md(md_path);
  if (!md) throw DataError("emit_report: cannot write '" + md_path + "'");
  md.precision(6);
  md << "| method | mean test AP |\n|---|---|\n";
  for (const auto& [name, mean] : report.method_means) {
    md << "| " << name << " | " << mean << " |\n";
  }
}

}  // namespace csda
