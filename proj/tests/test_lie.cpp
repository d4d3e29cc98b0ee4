#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "a12/lie_algebra.hpp"

using namespace a12;

TEST_CASE("su(2) textbook cross-check") {
  auto g = CompactLieAlgebra::su(2);
  CHECK(g.dim() == 3);
  CHECK(g.rank() == 1);
  CHECK(g.jacobi_residual() == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(g.antisymmetry_residual() == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("construction residuals stay below 1e-12 for su(2..4)") {
  for (int n : {2, 3, 4}) {
    auto g = CompactLieAlgebra::su(n);
    CHECK(g.dim() == n * n - 1);
    CHECK(g.rank() == n - 1);
    CHECK(g.antisymmetry_residual() < 1e-12);
    CHECK(g.jacobi_residual() < 1e-12);
    CHECK(g.ad_invariance_residual() < 1e-13);
    CHECK((g.bi_form() - Eigen::MatrixXd::Identity(g.dim(), g.dim())).norm() < 1e-12);
  }
}

TEST_CASE("ad is bi-skew on random elements") {
  auto g = CompactLieAlgebra::su(3);
  Rng rng(1);
  for (int k = 0; k < 100; ++k) {
    Eigen::MatrixXd adx = g.ad(rng.gaussian_vector(8));
    CHECK((adx.transpose() * g.bi_form() + g.bi_form() * adx).cwiseAbs().maxCoeff() < 1e-12);
  }
  CHECK(g.ad(Eigen::VectorXd::Zero(8)).norm() == 0.0);
}

TEST_CASE("su(3) root values appear as ad eigenvalues") {
  auto g = CompactLieAlgebra::su(3);
  Eigen::VectorXd w(3);
  w << 1, -1, 0;
  Eigen::MatrixXd adx = g.ad(g.su_diagonal_element(w));
  Eigen::VectorXcd ev = Eigen::EigenSolver<Eigen::MatrixXd>(adx).eigenvalues();
  std::vector<double> imag(ev.size());
  for (int i = 0; i < ev.size(); ++i) {
    CHECK(std::abs(ev[i].real()) < 1e-10);
    imag[i] = ev[i].imag();
  }
  std::sort(imag.begin(), imag.end());
  // roots evaluated at diag(1,-1,0): +-(1-(-1)), +-(1-0), +-(-1-0), and two zeros
  std::vector<double> want = {-2, -1, -1, 0, 0, 1, 1, 2};
  for (size_t i = 0; i < want.size(); ++i) CHECK(imag[i] == doctest::Approx(want[i]).epsilon(1e-10));
}

TEST_CASE("su(3) has six roots recovered from the Cartan action") {
  auto g = CompactLieAlgebra::su(3);
  Eigen::VectorXd w(3);
  w << 0.31, -0.45, 0.14;  // generic
  Eigen::MatrixXd adh = g.ad(g.su_diagonal_element(w));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(-adh * adh);
  int zero = 0, positive = 0;
  for (int i = 0; i < 8; ++i)
    (es.eigenvalues()[i] < 1e-12 ? zero : positive)++;
  CHECK(zero == 2);       // the Cartan
  CHECK(positive == 6);   // three +-root pairs
}

TEST_CASE("centralizers") {
  auto g = CompactLieAlgebra::su(3);
  Eigen::VectorXd reg(3), sub(3);
  reg << 1, -1, 0;
  sub << 1, 1, -2;
  CHECK(centralizer(g, g.su_diagonal_element(reg)).cols() == 2);
  CHECK(centralizer(g, g.su_diagonal_element(sub)).cols() == 4);  // u(2)-type
  CHECK(centralizer(g, Eigen::VectorXd::Zero(8)).cols() == 8);    // whole algebra
}

TEST_CASE("regular elements give exactly rank; dimension is at least rank") {
  for (int n : {2, 3, 4}) {
    auto g = CompactLieAlgebra::su(n);
    Rng rng(5);
    Eigen::VectorXd w(n);
    for (int i = 0; i < n; ++i) w[i] = rng.normal();
    w.array() -= w.mean();
    CHECK(centralizer(g, g.su_diagonal_element(w)).cols() == g.rank());
    for (int k = 0; k < 5; ++k)
      CHECK(centralizer(g, rng.gaussian_vector(g.dim())).cols() >= g.rank());
  }
}

TEST_CASE("adjoint transport") {
  auto g = CompactLieAlgebra::su(3);
  Rng rng(9);
  Eigen::VectorXd x = rng.unit_vector(8);
  CHECK((adjoint_transport(g, rng.unit_vector(8), 0.0, x) - x).norm() == 0.0);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    Eigen::VectorXd s = random_orbit_sample(g, x, 3, rng);
    worst = std::max(worst, std::abs(s.norm() - 1.0));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("Ad maps centralizers to centralizers") {
  auto g = CompactLieAlgebra::su(3);
  Eigen::VectorXd w(3);
  w << 1, -1, 0;
  Eigen::VectorXd x = g.su_diagonal_element(w);
  Eigen::MatrixXd cx = centralizer(g, x);
  Rng rng(13);
  for (int k = 0; k < 20; ++k) {
    Eigen::VectorXd y = rng.unit_vector(8);
    double t = rng.uniform(-1.5, 1.5);
    Eigen::VectorXd gx = adjoint_transport(g, y, t, x);
    Eigen::MatrixXd cgx = centralizer(g, gx);
    CHECK(cgx.cols() == cx.cols());  // constant along the orbit
    Eigen::MatrixXd mapped(8, cx.cols());
    for (int c = 0; c < cx.cols(); ++c) mapped.col(c) = adjoint_transport(g, y, t, cx.col(c));
    // re-orthonormalize the mapped basis before comparing spans
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(mapped);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(8, cx.cols());
    CHECK(subspace_distance(q, cgx) < 1e-8);
  }
}

TEST_CASE("subspace tools") {
  auto g = CompactLieAlgebra::su(3);
  auto cartan = subspace_tools(g, g.cartan_basis());
  CHECK(cartan.commutative);
  CHECK(cartan.complement.cols() == 6);
  CHECK((cartan.pr_onto + cartan.pr_complement - Eigen::MatrixXd::Identity(8, 8)).norm() <
        1e-12);

  // two root-plane generators do not commute
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(8, 2);
  v(2, 0) = 1.0;  // A12 direction
  v(4, 1) = 1.0;  // A13 direction
  auto st = subspace_tools(g, v);
  CHECK(!st.commutative);
  CHECK(st.max_bracket > 0.1);

  Eigen::MatrixXd dep(8, 2);
  dep.col(0) = v.col(0);
  dep.col(1) = 2.0 * v.col(0);
  CHECK_THROWS_AS(subspace_tools(g, dep), DomainError);
}

TEST_CASE("algebra spec parsing") {
  CHECK(CompactLieAlgebra::parse("su4").dim() == 15);
  CHECK_THROWS_AS(CompactLieAlgebra::parse("so3"), DomainError);
  CHECK_THROWS_AS(CompactLieAlgebra::parse("su1"), DomainError);
  CHECK_THROWS_AS(CompactLieAlgebra::su(1), DomainError);
}

TEST_CASE("su diagonal embedding sanity") {
  auto g = CompactLieAlgebra::su(3);
  Eigen::VectorXd w(3);
  w << 2, -1, -1;
  Eigen::VectorXd x = g.su_diagonal_element(w);
  // bi-norm of i*diag(w) is |w| since -tr((i diag w)^2) = |w|^2
  CHECK(x.norm() == doctest::Approx(w.norm()).epsilon(1e-13));
  Eigen::VectorXd bad(3);
  bad << 1, 0, 0;
  CHECK_THROWS_AS(g.su_diagonal_element(bad), DomainError);
}
