#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "csda/experiment.hpp"
#include "oracles.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace csda;

TEST_CASE("parse_method covers every method family") {
  CHECK(parse_method("csda").kind == MethodSpec::Kind::Csda);

  MethodSpec plain = parse_method("ncsda");
  CHECK(plain.kind == MethodSpec::Kind::Ncsda);
  CHECK(plain.variant == NullEigenproblem::E_D);
  CHECK(!plain.step4);
  CHECK(!plain.qr);

  MethodSpec full = parse_method("ncsda:E_A+step4+qr");
  CHECK(full.variant == NullEigenproblem::E_A);
  CHECK(full.step4);
  CHECK(full.qr);
  CHECK(full.name == "ncsda:E_A+step4+qr");

  MethodSpec eb = parse_method("ncsda:E_B+qr");
  CHECK(eb.variant == NullEigenproblem::E_B);
  CHECK(!eb.step4);
  CHECK(eb.qr);

  MethodSpec roc = parse_method("rocsda:svd_n");
  CHECK(roc.kind == MethodSpec::Kind::Rocsda);
  CHECK(roc.ortho_step4 == OrthoStep4::SVD_N);
  CHECK(parse_method("ucsda").kind == MethodSpec::Kind::Ucsda);
  CHECK(parse_method("ocsda:gen_d").ortho_step4 == OrthoStep4::GEN_D);
  CHECK(parse_method("ocsda:svd_p").ortho_step4 == OrthoStep4::SVD_P);

  CHECK(parse_method("hncsda").kind == MethodSpec::Kind::Hncsda);
  CHECK(parse_method("hocsda").kind == MethodSpec::Kind::Hocsda);
  CHECK(parse_method("hncsda").heterogeneous());
  CHECK(!parse_method("csda").heterogeneous());

  CHECK_THROWS_AS(parse_method("nope"), ConfigError);
  CHECK_THROWS_AS(parse_method("ncsda:E_Z"), ConfigError);
  CHECK_THROWS_AS(parse_method("rocsda:qz"), ConfigError);
}

TEST_CASE("parse_synth_spec builds offset cluster means") {
  SynthSpec s = parse_synth_spec(
      "dim=4;n_pos=20;pos_mean=5;pos_stdev=1;clusters=30@4@1|10@-2@0.5", 7);
  CHECK(s.dim == 4);
  CHECK(s.n_pos == 20);
  CHECK(s.seed == 7);
  CHECK((s.pos_mean - Vector::Constant(4, 5.0)).norm() == 0.0);
  REQUIRE(s.clusters.size() == 2);
  CHECK(s.clusters[0].count == 30);
  // cluster 0 offsets axis 0, cluster 1 offsets axis 1
  CHECK(s.clusters[0].mean(0) == doctest::Approx(9.0));
  CHECK(s.clusters[0].mean(1) == doctest::Approx(5.0));
  CHECK(s.clusters[1].mean(1) == doctest::Approx(3.0));
  CHECK(s.clusters[1].stdev == doctest::Approx(0.5));

  CHECK_THROWS_AS(parse_synth_spec("n_pos=5", 0), ConfigError);  // dim missing
  CHECK_THROWS_AS(parse_synth_spec("dim=3;clusters=5@1", 0), ConfigError);
  CHECK_THROWS_AS(parse_synth_spec("dim=3;bogus=1", 0), ConfigError);
}

TEST_CASE("parse_config_file reads keys, comments and validates") {
  std::string path = "/tmp/csda_test_config.cfg";
  {
    std::ofstream out(path);
    out << "# comment line\n"
           "synth = dim=6;n_pos=20;pos_mean=4;pos_stdev=1;clusters=20@3@1\n"
           "methods = csda, ncsda:E_D, hncsda\n"
           "kernel = rbf\n"
           "sigma = auto\n"
           "train_fraction = 0.7\n"
           "repetitions = 2\n"
           "seed = 42\n"
           "dim_min = 1\n"
           "dim_max = 5\n"
           "k_grid = 1, 2, 3\n"
           "folds = 3\n"
           "output_dir = /tmp/csda_test_out\n"
           "similarity = euclidean\n";
  }
  ExperimentConfig cfg = parse_config_file(path);
  CHECK(cfg.synth.substr(0, 5) == "dim=6");
  REQUIRE(cfg.methods.size() == 3);
  CHECK(cfg.methods[1].name == "ncsda:E_D");
  CHECK(cfg.kernel == KernelKind::Rbf);
  CHECK(cfg.sigma == 0.0);
  CHECK(cfg.train_fraction == doctest::Approx(0.7));
  CHECK(cfg.repetitions == 2);
  CHECK(cfg.seed == 42);
  CHECK(cfg.dim_max == 5);
  CHECK(cfg.k_grid == (std::vector<int>{1, 2, 3}));
  CHECK(cfg.folds == 3);
  CHECK(cfg.output_dir == "/tmp/csda_test_out");
  std::remove(path.c_str());
}

TEST_CASE("parse_config_file error cases") {
  CHECK_THROWS_AS(parse_config_file("/nonexistent.cfg"), ConfigError);
  std::string path = "/tmp/csda_test_badcfg.cfg";
  auto write_cfg = [&](const std::string& text) {
    std::ofstream out(path);
    out << text;
  };
  write_cfg("methods = csda\n");  // neither dataset nor synth
  CHECK_THROWS_AS(parse_config_file(path), ConfigError);
  write_cfg("synth = dim=3\ndataset = x.csv\nmethods = csda\n");  // both
  CHECK_THROWS_AS(parse_config_file(path), ConfigError);
  write_cfg("synth = dim=3\n");  // no methods
  CHECK_THROWS_AS(parse_config_file(path), ConfigError);
  write_cfg("synth = dim=3\nmethods = csda\nbogus_key = 1\n");
  CHECK_THROWS_AS(parse_config_file(path), ConfigError);
  write_cfg("synth = dim=3\nmethods = csda\ntrain_fraction = 1.5\n");
  CHECK_THROWS_AS(parse_config_file(path), ConfigError);
  write_cfg("synth = dim=3\nmethods = csda\nrepetitions = abc\n");
  CHECK_THROWS_AS(parse_config_file(path), ConfigError);
  std::remove(path.c_str());
}

TEST_CASE("stratified_split is per-class, deterministic and bounded") {
  std::vector<int> labels;
  for (int i = 0; i < 20; ++i) labels.push_back(0);
  for (int i = 0; i < 10; ++i) labels.push_back(1);
  SplitIndices s = stratified_split(labels, 0.7, 3);
  CHECK(s.train.size() == 21);  // 14 + 7
  CHECK(s.test.size() == 9);
  int train0 = 0, train1 = 0;
  for (Index i : s.train) (labels[size_t(i)] == 0 ? train0 : train1)++;
  CHECK(train0 == 14);
  CHECK(train1 == 7);

  SplitIndices again = stratified_split(labels, 0.7, 3);
  CHECK(s.train == again.train);
  CHECK(s.test == again.test);
  SplitIndices other = stratified_split(labels, 0.7, 4);
  CHECK(s.train != other.train);

  // tiny classes keep at least one sample on each side
  std::vector<int> tiny = {0, 0, 1, 1};
  SplitIndices t = stratified_split(tiny, 0.9, 1);
  CHECK(t.train.size() == 2);
  CHECK(t.test.size() == 2);
}

TEST_CASE("fit_method dispatches every family on a common split") {
  ClassSplitData d =
      center_to_positive_mean(oracles::random_matrix(12, 5, 1),
                              oracles::random_matrix(12, 6, 2));
  for (const char* name :
       {"csda", "ncsda:E_A", "ncsda:E_B", "ncsda:E_C", "ncsda:E_D",
        "ncsda:E_E", "ncsda:E_A+step4+qr", "ucsda", "ocsda", "rocsda",
        "ocsda:svd_p", "ocsda:gen_d", "hncsda", "hocsda"}) {
    MethodSpec spec = parse_method(name);
    SubspaceModel m = fit_method(spec, d, 2, 7);
    CHECK(m.output_dim >= 1);
    CHECK(m.projection.rows() == 12);
    CHECK(m.projection.cols() == m.output_dim);
    CHECK(m.ranking_values.size() == m.output_dim);
  }
}

TEST_CASE("run_experiment end to end on a small synthetic problem") {
  ExperimentConfig cfg;
  cfg.synth = "dim=8;n_pos=15;pos_mean=4;pos_stdev=1;clusters=15@3@1|15@3@1";
  cfg.methods = {parse_method("ncsda:E_D"), parse_method("hncsda")};
  cfg.kernel = KernelKind::Rbf;
  cfg.sigma = 0.0;
  cfg.repetitions = 1;
  cfg.seed = 11;
  cfg.dim_min = 1;
  cfg.dim_max = 3;
  cfg.k_grid = {1, 2};
  cfg.folds = 3;

  ExperimentReport rep = run_experiment(cfg);
  // 3 classes x 1 rep x 2 methods x 2 splits
  REQUIRE(rep.rows.size() == 12);
  REQUIRE(rep.method_means.size() == 2);
  CHECK(rep.method_means[0].first == "ncsda:E_D");
  for (const ResultRow& r : rep.rows) {
    CHECK(r.ap >= 0.0);
    CHECK(r.ap <= 1.0);
    CHECK(r.dim >= 1);
    CHECK(r.dim <= 3);
    CHECK((r.split == "train" || r.split == "test"));
    if (r.method == "hncsda") {
      CHECK(r.num_clusters >= 1);
      CHECK(r.num_clusters <= 2);
    } else {
      CHECK(r.num_clusters == 0);
    }
  }
  for (const auto& [name, mean] : rep.method_means) {
    CHECK(mean >= 0.0);
    CHECK(mean <= 1.0);
  }

  // byte-identical reports across identical runs
  ExperimentReport rep2 = run_experiment(cfg);
  emit_report(rep, "/tmp/csda_test_rep_a");
  emit_report(rep2, "/tmp/csda_test_rep_b");
  auto slurp = [](const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  std::string a = slurp("/tmp/csda_test_rep_a/results.csv");
  std::string b = slurp("/tmp/csda_test_rep_b/results.csv");
  REQUIRE(!a.empty());
  CHECK(a == b);
  CHECK(a.substr(0, a.find('\n')) ==
        "class,rep,method,dim,K,split,ap,a_sum,a_frob,b");
  CHECK(!slurp("/tmp/csda_test_rep_a/summary.md").empty());
}

TEST_CASE("run_experiment rejects single-class data") {
  ExperimentConfig cfg;
  cfg.synth = "dim=3;n_pos=0;pos_mean=1";
  cfg.methods = {parse_method("csda")};
  CHECK_THROWS(run_experiment(cfg));
}
