#include <doctest.h>

#include "core/linalg.hpp"
#include "core/rng.hpp"
#include "quasi/quasicomm.hpp"

using namespace symloc;

TEST_CASE("quasi_commutes basics") {
  Rng rng(3);
  Mat g = rng.positive_matrix(3);
  CHECK(quasi_commutes(Mat(Mat::Identity(3, 3)), g).value() == doctest::Approx(1.0));

  // diagonal phases against a diagonal gram
  Mat s = Mat::Zero(2, 2);
  s(0, 0) = 1;
  s(1, 1) = std::exp(Cplx(0, 0.7));
  Mat gd = Eigen::Vector2cd(1.4, 0.6).asDiagonal();
  auto lam = quasi_commutes(s, gd);
  REQUIRE(lam.has_value());
  CHECK(*lam == doctest::Approx(1.0));

  // Jordan block never quasi-commutes with a strictly positive gram
  Mat j2 = Mat::Identity(2, 2);
  j2(0, 1) = 1;
  for (int t = 0; t < 20; ++t)
    CHECK_FALSE(quasi_commutes(j2, rng.positive_matrix(2)).has_value());
}

TEST_CASE("scale invariance of the decision") {
  Rng rng(5);
  for (int t = 0; t < 30; ++t) {
    int d = 2 + rng.index(3);
    Mat a_fac = rng.invertible_matrix(d);
    Mat u = rng.unitary_matrix(d);
    Mat b = a_fac.inverse() * u * a_fac;
    Mat g = hermitize(a_fac.adjoint() * a_fac);
    Cplx c = std::polar(rng.uniform(0.2, 5.0), rng.uniform(0.0, 2 * M_PI));

    auto base = quasi_commutes(b, g, 1e-9);
    auto scaled = quasi_commutes(Mat(c * b), g, 1e-9);
    REQUIRE(base.has_value());
    REQUIRE(scaled.has_value());
    CHECK(*scaled == doctest::Approx(*base * std::norm(c)).epsilon(1e-8));

    Mat bad = b;
    bad(0, 0) += 0.3;  // breaks the relation generically
    auto broken = quasi_commutes(bad, g, 1e-9);
    auto broken_scaled = quasi_commutes(Mat(c * bad), g, 1e-9);
    CHECK(broken.has_value() == broken_scaled.has_value());
  }
}

TEST_CASE("factor_unitary_similarity") {
  Rng rng(7);
  // unitary input
  Mat u = rng.unitary_matrix(3);
  auto sim = factor_unitary_similarity(u);
  REQUIRE(sim.has_value());
  CHECK(std::abs(sim->scale - Cplx(1, 0)) < 1e-9);
  CHECK((sim->reconstruct() - u).norm() < 1e-9);

  // diag(2, 2i): phases (0, pi/2), scale 2
  Mat d = Mat::Zero(2, 2);
  d(0, 0) = 2;
  d(1, 1) = Cplx(0, 2);
  auto simd = factor_unitary_similarity(d);
  REQUIRE(simd.has_value());
  CHECK(std::abs(simd->scale - Cplx(2, 0)) < 1e-10);
  std::vector<double> phases = simd->phases;
  std::sort(phases.begin(), phases.end());
  CHECK(phases[0] == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(phases[1] == doctest::Approx(M_PI / 2));

  // mixed moduli are rejected
  Mat mixed = Eigen::Vector2cd(1.0, 2.0).asDiagonal();
  CHECK_FALSE(factor_unitary_similarity(mixed).has_value());

  // defective input comes back indeterminate
  Mat j = Mat::Identity(3, 3);
  j(0, 1) = 1;
  CHECK_FALSE(factor_unitary_similarity(j).has_value());
}

TEST_CASE("unitary-similarity biconditional on random pairs") {
  Rng rng(11);
  for (int t = 0; t < 100; ++t) {
    int d = 2 + rng.index(3);
    Mat a_fac = rng.invertible_matrix(d);
    Mat u = rng.unitary_matrix(d);
    Mat b = a_fac.inverse() * u * a_fac;
    Mat a_pos = hermitize(a_fac.adjoint() * a_fac);

    CHECK(quasi_commutes(b, a_pos, 1e-8).has_value());
    auto space = positive_solution_space(b);
    REQUIRE(space.has_value());
    CHECK(space->contains(a_pos, 1e-8));

    Mat sample = space->sample(rng);
    CHECK(quasi_commutes(b, sample, 1e-7).has_value());
  }

  // the other way: constructed both ways, 100 negative draws
  for (int t = 0; t < 100; ++t) {
    int d = 2 + rng.index(3);
    Mat b = rng.invertible_matrix(d);
    Mat a = rng.positive_matrix(d);
    bool qc = quasi_commutes(b, a, 1e-9).has_value();
    if (qc) {
      auto space = positive_solution_space(b);
      REQUIRE(space.has_value());
      CHECK(space->contains(a, 1e-6));
    }
  }
}

TEST_CASE("degenerate phase classes: B = I admits every positive A") {
  auto space = positive_solution_space(Mat(Mat::Identity(3, 3)));
  REQUIRE(space.has_value());
  CHECK(space->similarity.phase_classes.size() == 1);
  Rng rng(13);
  CHECK(space->contains(rng.positive_matrix(3), 1e-8));
}

TEST_CASE("distinct phases force diagonal X") {
  Mat b = Mat::Zero(3, 3);
  b(0, 0) = 1;
  b(1, 1) = std::exp(Cplx(0, 1.1));
  b(2, 2) = std::exp(Cplx(0, 2.3));
  auto space = positive_solution_space(b);
  REQUIRE(space.has_value());
  CHECK(space->similarity.phase_classes.size() == 3);
  // off-diagonal positive A rejected
  Mat a = Mat::Identity(3, 3);
  a(0, 1) = 0.2;
  a(1, 0) = 0.2;
  CHECK_FALSE(space->contains(a, 1e-8));
}

TEST_CASE("corner_family and characterization") {
  // x = 1: corner slot vanishes, identity family member
  Mat id = corner_family(2, Cplx(0.7, 0.2), Cplx(1, 0));
  CHECK((id - Mat::Identity(3, 3)).norm() < 1e-12);

  // k = 1 specialization [[1, a(1-x)],[0, x]]
  Cplx a(0.3, 0.4), x = std::polar(1.0, 0.9);
  Mat m = corner_family(1, a, x);
  CHECK(std::abs(m(0, 1) - a * (Cplx(1, 0) - x)) < 1e-12);

  // k = 3, x = i, a = 0.2: direct quasi-commutation check
  Mat fam = corner_family(3, Cplx(0.2, 0), Cplx(0, 1));
  Mat g = corner_gram(3, Cplx(0.2, 0));
  CHECK(quasi_commutes(fam, Mat(g.adjoint() * g), 1e-10).has_value());

  CHECK(corner_characterize(3, Cplx(0.2, 0), fam));
  CHECK_THROWS_AS(corner_family(2, a, Cplx(1.1, 0)), SymlocError);

  // |x| = 1.1 shape is rejected and fails quasi-commutation
  Mat off = Mat::Zero(3, 3);
  off(0, 0) = 1;
  off(1, 1) = 1.1;
  off(2, 2) = 1.21;
  Mat g2 = corner_gram(2, a);
  CHECK_FALSE(corner_characterize(2, a, off));
  CHECK_FALSE(quasi_commutes(off, Mat(g2.adjoint() * g2), 1e-9).has_value());

  // diagonal with an extra off-corner entry violates the form
  Mat extra = corner_family(2, a, Cplx(1, 0));
  extra(0, 1) = 0.1;
  CHECK_FALSE(corner_characterize(2, a, extra));
}
