#include <doctest.h>

#include <cmath>

#include "a12/generating.hpp"

using namespace a12;

TEST_CASE("constant profile converts to the Euclidean L") {
  auto f = GeneratingFamily::from_phi("1");
  for (double u : {0.2, 1.0, 3.0})
    for (double v : {0.0, 0.5, 2.0})
      CHECK(f.l_value(u, v) == doctest::Approx(u + v).epsilon(1e-14));
  auto psi = f.convert(Profile::Psi);
  for (int i = 0; i <= 20; ++i) CHECK(psi.psi(i / 20.0) == doctest::Approx(1.0));
}

TEST_CASE("phi = sqrt(1+s^2) gives psi = sqrt(2-s^2) and L = u+2v") {
  auto f = GeneratingFamily::from_phi("sqrt(1+s^2)");
  for (int i = 0; i <= 50; ++i) {
    double s = i / 50.0;
    CHECK(f.psi(s) == doctest::Approx(std::sqrt(2 - s * s)).epsilon(1e-13));
  }
  for (double u : {0.1, 1.0, 2.0})
    for (double v : {0.0, 0.7, 1.5})
      CHECK(f.l_value(u, v) == doctest::Approx(u + 2 * v).epsilon(1e-13));
}

TEST_CASE("round trips reproduce the profile on a grid") {
  for (const char* spec : {"phi:sqrt(1+s^2)", "mroot:2", "mroot:3", "L:u+v+sqrt(u^2+v^2)"}) {
    auto f = GeneratingFamily::parse(spec);
    auto via_l = f.convert(Profile::L).convert(Profile::Phi);
    auto via_psi = f.convert(Profile::Psi).convert(Profile::Phi);
    for (int i = 0; i <= 100; ++i) {
      double s = i / 100.0;
      CHECK(via_l.phi(s) == doctest::Approx(f.phi(s)).epsilon(1e-12));
      CHECK(via_psi.phi(s) == doctest::Approx(f.phi(s)).epsilon(1e-12));
    }
  }
}

TEST_CASE("validation: constant profile") {
  auto rep = validate_generating(GeneratingFamily::from_phi("1"), 201);
  CHECK(rep.valid);
  CHECK(rep.min_margin == doctest::Approx(1.0));
}

TEST_CASE("validation: sqrt(1+s^2) has margin 1/sqrt(2) at s=b=1") {
  auto rep = validate_generating(GeneratingFamily::from_phi("sqrt(1+s^2)"), 201);
  CHECK(rep.valid);
  CHECK(rep.min_margin == doctest::Approx(0.7071067811865476).epsilon(1e-12));
  CHECK(rep.argmin_s == doctest::Approx(1.0));
  CHECK(rep.argmin_b == doctest::Approx(1.0));
}

TEST_CASE("validation: 1-0.9 s^2 fails with margin -0.8") {
  auto rep = validate_generating(GeneratingFamily::from_phi("1-0.9*s^2"), 201);
  CHECK(!rep.valid);
  CHECK(rep.positive);  // positivity is fine, convexity fails
  CHECK(rep.min_margin == doctest::Approx(-0.8).epsilon(1e-12));
  CHECK(rep.argmin_s == doctest::Approx(0.0));
  CHECK(rep.argmin_b == doctest::Approx(1.0));
}

TEST_CASE("validation: non-positive profile reported separately") {
  // phi crosses zero inside [0,1]; the report flags positivity, which is a
  // different failure from a convexity margin.
  auto rep = validate_generating(GeneratingFamily::from_phi("0.2-0.9*s^2"), 21);
  CHECK(!rep.positive);
  CHECK(!rep.valid);
  CHECK(rep.min_profile < 0.0);
}

TEST_CASE("identity between the phi- and psi-convexity forms") {
  for (const char* spec : {"phi:1", "phi:sqrt(1+s^2)", "mroot:2", "mroot:3",
                           "phi:sqrt(1+s^2+0.1*s^4)", "riemannian:1,2"}) {
    auto rep = validate_generating(GeneratingFamily::parse(spec), 201);
    CHECK_MESSAGE(rep.identity_gap <= 1e-10, spec);
  }
}

TEST_CASE("Euler identities hold on a grid for every registered family") {
  for (const char* spec : {"riemannian:1,2", "mroot:2", "mroot:3", "mroot:4",
                           "phi:sqrt(1+s^2+0.1*s^4)", "L:u+v+sqrt(u^2+0.5*v^2)"}) {
    auto f = GeneratingFamily::parse(spec);
    double worst = 0.0;
    for (int i = 1; i <= 12; ++i)
      for (int j = 1; j <= 12; ++j) {
        double u = i / 6.0, v = j / 6.0;
        LJet3 jet = f.l_jet(u, v);
        worst = std::max(worst, std::abs(u * jet.L1 + v * jet.L2 - jet.L));
        worst = std::max(worst, std::abs(u * jet.L11 + v * jet.L12));
        worst = std::max(worst, std::abs(u * jet.L12 + v * jet.L22));
        worst = std::max(worst, std::abs(u * jet.L112 + v * jet.L122 + jet.L12));
        worst = std::max(worst, std::abs(u * jet.L111 + v * jet.L112 + jet.L11));
      }
    CHECK_MESSAGE(worst <= 1e-10, spec);
  }
}

TEST_CASE("mroot values") {
  auto m2 = GeneratingFamily::mroot(2);
  CHECK(m2.l_value(1, 1) == doctest::Approx(2 + std::sqrt(2.0)).epsilon(1e-14));
  CHECK(m2.phi(0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(m2.phi(1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(validate_generating(m2, 101).valid);
  CHECK(validate_generating(GeneratingFamily::mroot(3), 101).valid);
}

TEST_CASE("family spec parsing errors") {
  CHECK_THROWS_AS(GeneratingFamily::parse("nope:1"), FamilyError);
  CHECK_THROWS_AS(GeneratingFamily::parse("mroot:x"), FamilyError);
  CHECK_THROWS_AS(GeneratingFamily::parse("riemannian:1"), FamilyError);
  CHECK_THROWS_AS(GeneratingFamily::parse("riemannian:-1,2"), FamilyError);
  CHECK_THROWS_AS(GeneratingFamily::parse("mroot:1"), FamilyError);
  CHECK_THROWS_AS(GeneratingFamily::parse("plain"), FamilyError);
}

TEST_CASE("derivative order bounds") {
  auto f = GeneratingFamily::mroot(2);
  CHECK_THROWS_AS(f.phi(0.5, 4), FamilyError);
  CHECK_THROWS_AS(f.psi(0.5, -1), FamilyError);
}
