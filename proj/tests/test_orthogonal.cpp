#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "csda/orthogonal.hpp"
#include "oracles.hpp"

using namespace csda;

namespace {

ClassSplitData tall_split(std::uint64_t seed = 1) {
  return center_to_positive_mean(oracles::random_matrix(12, 5, seed),
                                 oracles::random_matrix(12, 6, seed + 1));
}

OrthoConfig config(OrthoMethod m, OrthoStep4 s = OrthoStep4::SVD_N) {
  OrthoConfig cfg;
  cfg.method = m;
  cfg.step4 = s;
  return cfg;
}

}  // namespace

TEST_CASE("ucsda produces St-orthogonal, non-orthonormal directions") {
  ClassSplitData d = tall_split();
  SubspaceModel m = ortho_fit(d, config(OrthoMethod::UCSDA));
  CHECK(m.method_tag == "ucsda:svd_n");
  ScatterSet s = scatter_matrices(d);
  // W^T St W = I is the defining property of the unwhitened variant
  Matrix g = m.projection.transpose() * s.st * m.projection;
  CHECK((g - Matrix::Identity(m.output_dim, m.output_dim)).norm() <= 1e-6);
}

TEST_CASE("ocsda returns orthonormal columns") {
  ClassSplitData d = tall_split(3);
  SubspaceModel m = ortho_fit(d, config(OrthoMethod::OCSDA));
  CHECK(m.method_tag == "ocsda:svd_n");
  CHECK((m.projection.transpose() * m.projection -
         Matrix::Identity(m.output_dim, m.output_dim))
            .norm() <= 1e-10);
}

TEST_CASE("rocsda regularization changes little on well-conditioned data") {
  ClassSplitData d = tall_split(5);
  SubspaceModel o = ortho_fit(d, config(OrthoMethod::OCSDA));
  SubspaceModel r = ortho_fit(d, config(OrthoMethod::ROCSDA));
  CHECK(r.method_tag == "rocsda:svd_n");
  CHECK(r.output_dim == o.output_dim);
  CHECK(oracles::max_principal_angle(o.projection, r.projection) <= 1e-4);
  CHECK((r.projection.transpose() * r.projection -
         Matrix::Identity(r.output_dim, r.output_dim))
            .norm() <= 1e-10);
}

TEST_CASE("rocsda requires a positive alpha") {
  OrthoConfig cfg = config(OrthoMethod::ROCSDA);
  cfg.alpha = 0.0;
  CHECK_THROWS_AS(ortho_fit(tall_split(7), cfg), ConfigError);
}

TEST_CASE("step4 variants agree on the subspace for ucsda") {
  // In whitened coordinates row(Sn~) can be read off three ways; the spans
  // must match even though the bases differ.
  ClassSplitData d = tall_split(9);
  SubspaceModel svd_n = ortho_fit(d, config(OrthoMethod::UCSDA,
                                            OrthoStep4::SVD_N));
  SubspaceModel gen_d = ortho_fit(d, config(OrthoMethod::UCSDA,
                                            OrthoStep4::GEN_D));
  CHECK(svd_n.output_dim == gen_d.output_dim);
  CHECK(oracles::max_principal_angle(svd_n.projection, gen_d.projection) <=
        1e-4);
}

TEST_CASE("svd_p picks the complement of the whitened positives") {
  ClassSplitData d = tall_split(11);
  SubspaceModel m = ortho_fit(d, config(OrthoMethod::OCSDA,
                                        OrthoStep4::SVD_P));
  CHECK(m.method_tag == "ocsda:svd_p");
  // t = 10, rank(Xp~) = 4 -> 6 columns
  CHECK(m.output_dim == 6);
  ScatterSet s = scatter_matrices(d);
  // complement of the positives: W^T Sp W vanishes
  Matrix a = m.projection.transpose() * s.sp * m.projection;
  CHECK(a.norm() <= 1e-6 * s.sp.trace());
}

TEST_CASE("criterion trace against St is bounded by the dimension") {
  ClassSplitData d = tall_split(13);
  ScatterSet s = scatter_matrices(d);
  for (OrthoMethod method :
       {OrthoMethod::UCSDA, OrthoMethod::OCSDA, OrthoMethod::ROCSDA}) {
    SubspaceModel m = ortho_fit(d, config(method));
    CriterionMaxReport rep = criterion_max_check(s, m.projection);
    CHECK(rep.dim == m.output_dim);
    CHECK(rep.within_bound);
    CHECK(rep.value <= double(rep.dim) + 1e-8);
  }
}

TEST_CASE("target_dim truncation and shortfall tag") {
  ClassSplitData d = tall_split(15);
  OrthoConfig cfg = config(OrthoMethod::OCSDA);
  cfg.target_dim = 2;
  SubspaceModel m = ortho_fit(d, cfg);
  CHECK(m.output_dim == 2);

  cfg.target_dim = 40;
  SubspaceModel wide = ortho_fit(d, cfg);
  CHECK(wide.output_dim < 40);
  CHECK(wide.method_tag.find(":truncated_to_") != std::string::npos);
}

TEST_CASE("ortho_fit validates its input") {
  ClassSplitData raw;
  raw.xp = oracles::random_matrix(4, 3, 17);
  raw.xn = oracles::random_matrix(4, 3, 18);
  raw.positive_mean = Vector::Zero(4);
  raw.centered = false;
  CHECK_THROWS_AS(ortho_fit(raw, config(OrthoMethod::OCSDA)), DataError);
}

TEST_CASE("ortho runs are deterministic") {
  ClassSplitData d = tall_split(19);
  SubspaceModel a = ortho_fit(d, config(OrthoMethod::ROCSDA));
  SubspaceModel b = ortho_fit(d, config(OrthoMethod::ROCSDA));
  CHECK((a.projection - b.projection).norm() == 0.0);
}
