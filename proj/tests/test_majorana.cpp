#include <doctest.h>

#include "core/rng.hpp"
#include "core/tensor.hpp"
#include "states/majorana.hpp"
#include "states/states.hpp"

using namespace symloc;

namespace {
PureState random_symmetric(int n, Rng& rng) {
  PureState s(n, 2);
  std::vector<Cplx> c(n + 1);
  for (auto& v : c) v = rng.cnormal();
  for (std::int64_t idx = 0; idx < s.dim(); ++idx) {
    int ones = 0;
    for (int site = 0; site < n; ++site) ones += s.digit(idx, site);
    s.amps(idx) = c[ones];
  }
  return s;
}
}  // namespace

TEST_CASE("dicke(4,1) root structure {1,3}") {
  MajoranaRep rep = state_to_majorana(dicke(4, 1));
  CHECK(rep.degeneracy_configuration() == std::vector<int>{3, 1});
  CHECK(rep.infinity_multiplicity() == 1);  // one |1> point
  bool found_zero = false;
  for (const auto& r : rep.roots)
    if (!r.at_infinity && r.multiplicity == 3 && std::abs(r.alpha) < 1e-8) found_zero = true;
  CHECK(found_zero);
}

TEST_CASE("|0...0> has a single n-fold root") {
  PureState s(4, 2);
  s.amps(0) = 1;
  MajoranaRep rep = state_to_majorana(s);
  CHECK(rep.diversity_degree() == 1);
  CHECK(rep.roots[0].multiplicity == 4);
  CHECK(rep.roots[0].alpha == doctest::Approx(0.0));
}

TEST_CASE("random symmetric states have configuration {1,...,1}") {
  Rng rng(23);
  for (int t = 0; t < 20; ++t) {
    MajoranaRep rep = state_to_majorana(random_symmetric(5, rng));
    CHECK(rep.degeneracy_configuration() == std::vector<int>{1, 1, 1, 1, 1});
  }
}

TEST_CASE("round trip majorana_to_state . state_to_majorana") {
  Rng rng(29);
  for (int n = 3; n <= 6; ++n) {
    for (int t = 0; t < 25; ++t) {
      PureState s = random_symmetric(n, rng);
      MajoranaRep rep = state_to_majorana(s);
      PureState back = majorana_to_state(rep, n);
      auto lam = proportional(back, s, 1e-7);
      CHECK(lam.has_value());
    }
  }
  // GHZ as a fixed reference point for the round trip
  PureState g = ghz(3, 2);
  PureState back = majorana_to_state(state_to_majorana(g), 3);
  CHECK(proportional(back, g, 1e-9).has_value());
}

TEST_CASE("degeneracy configuration is SLOCC invariant under A^{(x)n}") {
  Rng rng(31);
  for (int t = 0; t < 10; ++t) {
    int n = 4 + rng.index(2);
    PureState s = random_symmetric(n, rng);
    Mat a = rng.invertible_matrix(2);
    PureState mapped = apply_product(s, ProductOp(std::vector<Mat>(n, a)));
    MajoranaRep r1 = state_to_majorana(s);
    MajoranaRep r2 = state_to_majorana(mapped);
    CHECK(r1.degeneracy_configuration() == r2.degeneracy_configuration());
    CHECK(r1.diversity_degree() == r2.diversity_degree());
  }
  // repeated-root case: dicke(5,2)-like states keep their {2,3}-type pattern
  PureState d = dicke(5, 2);
  Mat a = Mat::Zero(2, 2);
  a << Cplx(1.2, 0.3), Cplx(0.2, -0.4), Cplx(-0.1, 0.2), Cplx(0.8, 0.1);
  PureState mapped = apply_product(d, ProductOp(std::vector<Mat>(5, a)));
  CHECK(state_to_majorana(d).degeneracy_configuration() ==
        state_to_majorana(mapped).degeneracy_configuration());
}

TEST_CASE("non-symmetric input is rejected") {
  PureState s(3, 2);
  s.amps(1) = 1;  // |001| alone is not symmetric
  CHECK_THROWS_AS(state_to_majorana(s), SymlocError);
}
