#include <doctest.h>

#include <cmath>

#include "a12/scurvature.hpp"

using namespace a12;

namespace {

Eigen::VectorXd interior_dir(const HomogeneousDatum& hd, Rng& rng) {
  const int n = hd.algebra().dim();
  while (true) {
    Eigen::VectorXd c = rng.unit_vector(n);
    if (c.head(hd.n1()).norm() > 0.1 && c.tail(hd.n2()).norm() > 0.1)
      return hd.datum().from_frame(c);
  }
}

std::shared_ptr<const CompactLieAlgebra> su3() {
  static auto g = std::make_shared<CompactLieAlgebra>(CompactLieAlgebra::su(3));
  return g;
}

}  // namespace

TEST_CASE("cartan datum dimensions and normalization") {
  auto hd = build_cartan_datum(su3(), GeneratingFamily::mroot(2));
  CHECK(hd.n1() == 6);
  CHECK(hd.n2() == 2);
  CHECK(hd.datum().normalized);
  CHECK(hd.family().phi(0.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(hd.family().phi(1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(
      build_cartan_datum(std::make_shared<CompactLieAlgebra>(CompactLieAlgebra::su(2)),
                         GeneratingFamily::mroot(2)),
      DomainError);
}

TEST_CASE("vanishing criterion holds on cartan data for random block scalars") {
  Rng rng(3);
  for (int trial = 0; trial < 4; ++trial) {
    std::vector<double> scal(3);
    for (double& c : scal) c = rng.uniform(0.5, 2.0);
    auto hd = build_cartan_datum(su3(), GeneratingFamily::mroot(2), scal);
    CHECK(vanishing_criterion(hd).holds);
  }
}

TEST_CASE("degenerate toy input with zero bracket holds") {
  auto ab = std::make_shared<CompactLieAlgebra>(CompactLieAlgebra::abelian(6));
  SubspaceDatum sd;
  sd.v1 = Eigen::MatrixXd::Identity(6, 6).leftCols(4);
  sd.v2 = Eigen::MatrixXd::Identity(6, 6).rightCols(2);
  sd.gram1 = Eigen::MatrixXd::Identity(4, 4);
  sd.gram2 = Eigen::MatrixXd::Identity(2, 2);
  HomogeneousDatum toy(ab, GeneratingFamily::mroot(2), sd, "toy");
  CHECK(vanishing_criterion(toy).holds);
}

TEST_CASE("perturbed datum fails with a verified witness") {
  auto hd = build_rootspace_datum(su3(), GeneratingFamily::mroot(2));
  auto crit = vanishing_criterion(hd);
  REQUIRE(!crit.holds);
  REQUIRE(crit.pairing >= 1);
  // the reported witness violates the stated pairing directly
  Eigen::VectorXd w = hd.bracket_m(crit.witness_v1, crit.witness_v2);
  double val = crit.pairing == 1 ? hd.pair_alpha(w, crit.witness_v1)
                                 : hd.pair_alpha(w, crit.witness_v2);
  CHECK(val == doctest::Approx(crit.value));
  CHECK(std::abs(val) > 1e-6);
}

TEST_CASE("phi coefficient: zero for linear L, degree -2 homogeneous") {
  auto lin = build_cartan_datum(su3(), GeneratingFamily::riemannian(1, 1));
  auto pert = build_rootspace_datum(su3(), GeneratingFamily::mroot(2));
  Rng rng(5);
  for (int k = 0; k < 20; ++k) {
    Eigen::VectorXd y = interior_dir(lin, rng);
    CHECK(phi_coefficient(lin, y) == doctest::Approx(0.0).epsilon(1e-14));
  }
  for (int k = 0; k < 20; ++k) {
    Eigen::VectorXd y = interior_dir(pert, rng);
    double p1 = phi_coefficient(pert, y);
    CHECK(std::abs(phi_coefficient(pert, 2.0 * y) - p1 / 4.0) < 1e-9 * (1.0 + std::abs(p1)));
  }
  CHECK_THROWS_AS(phi_coefficient(pert, pert.datum().frame.col(0)), BoundaryDirectionError);
}

TEST_CASE("S-curvature vanishes identically on the cartan datum") {
  auto hd = build_cartan_datum(su3(), GeneratingFamily::mroot(2), {1.3, 0.8, 1.0});
  REQUIRE(vanishing_criterion(hd).holds);
  Rng rng(7);
  double worst_closed = 0, worst_oracle = 0;
  for (int k = 0; k < 50; ++k) {
    Eigen::VectorXd y = interior_dir(hd, rng);
    worst_closed = std::max(worst_closed, std::abs(s_curvature_closed(hd, y)));
    worst_oracle = std::max(worst_oracle, std::abs(s_curvature_oracle(hd, y)));
  }
  CHECK(worst_closed < 1e-12);
  CHECK(worst_oracle < 1e-8);
}

TEST_CASE("closed form matches the oracle on the perturbed datum") {
  // Two non-linear families on the same datum, one oracle check each.
  for (int m : {2, 3}) {
    auto hd = build_rootspace_datum(su3(), GeneratingFamily::mroot(m));
    REQUIRE(!vanishing_criterion(hd).holds);
    Rng rng(11);
    double max_abs = 0, worst_dev = 0;
    for (int k = 0; k < 50; ++k) {
      Eigen::VectorXd y = interior_dir(hd, rng);
      auto s = evaluate_scurvature(hd, y);
      REQUIRE(!s.boundary);
      max_abs = std::max(max_abs, std::abs(s.s_closed));
      worst_dev = std::max(worst_dev, s.deviation);
    }
    CHECK(max_abs > 1e-3);
    CHECK(worst_dev < 1e-5);
  }
}

TEST_CASE("linear L has S identically zero on any datum") {
  for (const char* datum : {"cartan", "perturbed"}) {
    auto hd = build_datum(su3(), GeneratingFamily::riemannian(1, 2), datum);
    Rng rng(13);
    for (int k = 0; k < 20; ++k) {
      Eigen::VectorXd y = interior_dir(hd, rng);
      CHECK(std::abs(s_curvature_closed(hd, y)) < 1e-14);
      CHECK(std::abs(s_curvature_oracle(hd, y)) < 1e-8);
    }
  }
}

TEST_CASE("S is positively 1-homogeneous") {
  auto hd = build_rootspace_datum(su3(), GeneratingFamily::mroot(2));
  Rng rng(17);
  for (int k = 0; k < 20; ++k) {
    Eigen::VectorXd y = interior_dir(hd, rng);
    double s1 = s_curvature_closed(hd, y);
    CHECK(std::abs(s_curvature_closed(hd, 2.0 * y) - 2.0 * s1) < 1e-7 * (1 + std::abs(s1)));
    double o1 = s_curvature_oracle(hd, y);
    CHECK(std::abs(s_curvature_oracle(hd, 2.0 * y) - 2.0 * o1) < 1e-7 * (1 + std::abs(o1)));
  }
}

TEST_CASE("criterion verdict matches sampled S in both directions") {
  auto cartan = build_cartan_datum(su3(), GeneratingFamily::mroot(2));
  auto pert = build_rootspace_datum(su3(), GeneratingFamily::mroot(2));
  Rng rng(19);
  double cartan_max = 0, pert_max = 0;
  for (int k = 0; k < 200; ++k) {
    cartan_max = std::max(cartan_max, std::abs(s_curvature_oracle(cartan, interior_dir(cartan, rng))));
    pert_max = std::max(pert_max, std::abs(s_curvature_closed(pert, interior_dir(pert, rng))));
  }
  CHECK(vanishing_criterion(cartan).holds);
  CHECK(cartan_max < 1e-8);
  CHECK(!vanishing_criterion(pert).holds);
  CHECK(pert_max > 1e-3);
}

TEST_CASE("bi-invariant riemannian baseline: S and mean torsion vanish") {
  auto hd = build_cartan_datum(su3(), GeneratingFamily::riemannian(1, 1));
  Rng rng(23);
  for (int k = 0; k < 20; ++k) {
    Eigen::VectorXd y = interior_dir(hd, rng);
    CHECK(std::abs(s_curvature_oracle(hd, y)) < 1e-8);
    auto t = cartan_tensor(hd.family(), hd.datum(), y);
    REQUIRE(t.mean_torsion.has_value());
    CHECK(t.mean_torsion->lpNorm<Eigen::Infinity>() < 1e-12);
  }
}

TEST_CASE("boundary directions: signal plus one-sided trend") {
  auto hd = build_rootspace_datum(su3(), GeneratingFamily::mroot(2));
  Eigen::VectorXd yb = hd.datum().frame.col(0);            // V1 direction
  Eigen::VectorXd yt = hd.datum().frame.col(hd.n1());      // V2 direction
  CHECK_THROWS_AS(s_curvature_closed(hd, yb), BoundaryDirectionError);
  auto trend = s_curvature_boundary_trend(hd, yb, yt, 6);
  REQUIRE(trend.size() == 6);
  for (double v : trend) CHECK(std::isfinite(v));
  CHECK_THROWS_AS(s_curvature_boundary_trend(hd, yb, yt, 0), DomainError);
}

TEST_CASE("explicit reductive projection defaults to the full bracket") {
  auto hd = build_rootspace_datum(su3(), GeneratingFamily::mroot(2));
  Rng rng(41);
  Eigen::VectorXd y = interior_dir(hd, rng);
  double base = s_curvature_closed(hd, y);
  auto hd2 = hd;
  hd2.set_m_projection(Eigen::MatrixXd::Identity(8, 8));
  CHECK(s_curvature_closed(hd2, y) == doctest::Approx(base));
}

TEST_CASE("datum spec parsing") {
  CHECK(build_datum(su3(), GeneratingFamily::mroot(2), "cartan").kind() == "cartan");
  CHECK(build_datum(su3(), GeneratingFamily::mroot(2), "cartan:1.5,0.5,2").kind() == "cartan");
  CHECK(build_datum(su3(), GeneratingFamily::mroot(2), "perturbed").kind() == "perturbed");
  CHECK_THROWS_AS(build_datum(su3(), GeneratingFamily::mroot(2), "flat"), DomainError);
  CHECK_THROWS_AS(build_cartan_datum(su3(), GeneratingFamily::mroot(2), {1.0, -1.0, 1.0}),
                  DomainError);
  CHECK_THROWS_AS(build_cartan_datum(su3(), GeneratingFamily::mroot(2), {1.0, 1.0}),
                  DomainError);
}
