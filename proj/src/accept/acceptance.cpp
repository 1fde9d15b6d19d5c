#include "accept/acceptance.hpp"

#include <cmath>
#include <sstream>

#include "core/linalg.hpp"
#include "core/rng.hpp"
#include "derog/derog.hpp"
#include "locc/decisions.hpp"
#include "locc/monotones.hpp"
#include "locc/witnesses.hpp"
#include "proto/canned.hpp"
#include "quasi/quasicomm.hpp"
#include "stab/stabilizer.hpp"
#include "states/majorana.hpp"

namespace symloc {

namespace {

struct Check {
  double worst = 0.0;
  bool ok = true;
  std::string note;

  void residual(double r, double tol, const std::string& what) {
    worst = std::max(worst, r);
    if (r > tol && ok) {
      ok = false;
      note = what + " residual " + std::to_string(r) + " > " + std::to_string(tol);
    }
  }
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      note = what;
    }
  }
};

// Independent contraction oracle: act with the full Kronecker matrix on the
// flattened amplitude vector (no mode contractions).
PureState kron_oracle_apply(const PureState& s, const ProductOp& op) {
  Mat full = op.ops[0];
  for (int i = 1; i < op.sites(); ++i) full = kron(full, op.ops[i]);
  PureState out = s;
  out.amps = op.scalar * (full * s.amps);
  return out;
}

double relative_residual(const Vec& a, const Vec& b) {  // ||a - b|| / ||b||
  return (a - b).norm() / std::max(1e-300, b.norm());
}

PureState random_symmetric_qubit(int n, Rng& rng) {
  MajoranaRep rep;
  // random Dicke coefficients give a generic symmetric state
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

CriterionResult crit1_exact_fixtures(std::uint64_t) {
  Check ck;
  // e_k(2,2) = |11> + |02> + |20>, exact integers.
  PureState ek22 = e_k(2, 2);
  PureState want(2, 3);
  want.amps(1 * 3 + 1) = 1;
  want.amps(0 * 3 + 2) = 1;
  want.amps(2 * 3 + 0) = 1;
  ck.require((ek22.amps - want.amps).norm() == 0.0, "e_k(2,2) mismatch");

  // <22| psi_derog = 0 at every site pair, exactly.
  PureState psi = psi_derog_5qutrit();
  for (int i = 0; i < 5 && ck.ok; ++i)
    for (int j = 0; j < 5; ++j) {
      if (i == j) continue;
      Vec rest = project_two_sites(psi, i, j, 2, 2);
      ck.require(rest.norm() == 0.0, "psi_derog has |22> support");
    }

  // All eight derogEG1 factorizations, exact integer match after relabeling.
  BlockSpec blocks({1, 1});
  for (int k = 0; k <= 1 && ck.ok; ++k) {
    for (int n1 = 0; n1 <= 3; ++n1) {
      DerogSpec spec(k, {n1, 3 - n1}, blocks);
      PureState direct = derog_ek(spec);
      auto [f1, f2] = multicopy_factorization(spec);
      PureState rebuilt = multicopy_reassemble(f1, f2);
      ck.require((direct.amps - rebuilt.amps).norm() == 0.0,
                 "derogEG1 factorization mismatch at k=" + std::to_string(k) +
                     ", n1=" + std::to_string(n1));
      if (!ck.ok) break;
    }
  }
  // The W (x) W instance explicitly.
  if (ck.ok) {
    DerogSpec spec(1, {2, 1}, blocks);
    auto [f1, f2] = multicopy_factorization(spec);
    ck.require((f1.amps - w_state(3).amps).norm() == 0.0 &&
                   (f2.amps - w_state(3).amps).norm() == 0.0,
               "E_1^{2,1} is not W (x) W");
  }
  return {1, "exact fixtures (E_2, psi_derog overlap, derogEG1)", ck.ok, ck.worst, 0.0, ck.note};
}

CriterionResult crit2_toeplitz(std::uint64_t seed) {
  Check ck;
  Rng rng(seed);
  for (int k = 1; k <= 4; ++k) {
    for (int n = 3; n <= 6; ++n) {
      PureState seed_state = e_k(k, n);
      for (int t = 0; t < 20; ++t) {
        std::vector<Cplx> entries(k + 1);
        entries[0] = std::polar(rng.uniform(0.5, 2.0), rng.uniform(0.0, 2 * M_PI));
        for (int m = 1; m <= k; ++m) entries[m] = rng.cnormal();
        int i = rng.index(n);
        int j = (i + 1 + rng.index(n - 1)) % n;
        SymmetryElement el = toeplitz_bb(k, entries, i, j, n);
        PureState image = apply_product(seed_state, el.op);
        ck.residual(relative_residual(image.amps, seed_state.amps), 1e-10,
                    "toeplitz k=" + std::to_string(k) + " n=" + std::to_string(n));
        if (seed_state.dim() <= 256) {  // independent dense-oracle cross-check
          PureState oracle_image = kron_oracle_apply(seed_state, el.op);
          ck.residual(relative_residual(oracle_image.amps, image.amps), 1e-10,
                      "toeplitz oracle agreement");
        }
      }
    }
  }
  return {2, "Toeplitz symmetry law", ck.ok, ck.worst, 1e-10, ck.note};
}

CriterionResult crit3_sbar_closed_form(std::uint64_t seed) {
  Check ck;
  Rng rng(seed);
  for (int t = 0; t < 50; ++t) {
    int n = 3 + rng.index(6);
    Cplx y1 = rng.cnormal();
    if (std::abs(y1 + Cplx(n - 1, 0)) < 0.1) y1 += Cplx(0.5, 0);
    Cplx y2 = rng.cnormal();
    auto sbar = solve_sbar(2, n, {y1, y2});
    ck.require(sbar.has_value(), "regular k=2 instance has no solution");
    if (!sbar) break;
    Cplx denom = y1 + Cplx(n - 1, 0);
    Cplx want01 = -y2 / denom;
    Cplx want02 = -(static_cast<double>(n - 1)) * y2 * y2 / (2.0 * denom * denom);
    ck.residual(std::abs((*sbar)(0, 1) - want01), 1e-12, "closed form [S]_{0,1}");
    ck.residual(std::abs((*sbar)(0, 2) - want02), 1e-12, "closed form [S]_{0,2}");
  }
  // Exceptional branch y1 = -(n-1).
  for (int n = 3; n <= 6; ++n) {
    ck.require(!solve_sbar(2, n, {Cplx(-(n - 1), 0), Cplx(1, 0)}).has_value(),
               "degenerate instance should be infeasible");
    auto free_case = solve_sbar(2, n, {Cplx(-(n - 1), 0), Cplx(0, 0)}, {Cplx(0.37, 0)});
    ck.require(free_case.has_value(), "free-parameter instance should solve");
    if (free_case)
      ck.residual(std::abs((*free_case)(0, 1) - Cplx(0.37, 0)), 1e-12, "free parameter value");
  }
  return {3, "triangular-solve closed form and exceptional branch", ck.ok, ck.worst, 1e-12, ck.note};
}

CriterionResult crit4_diagonal_law(std::uint64_t seed) {
  Check ck;
  Rng rng(seed);
  int produced = 0;
  while (produced < 100) {
    int k = 1 + rng.index(4);
    int n = std::max(3 + rng.index(4), k - 1);
    Cplx x = std::polar(rng.uniform(0.5, 2.0), rng.uniform(0.0, 2 * M_PI));
    std::vector<Cplx> y(k);
    for (auto& v : y) v = rng.cnormal();
    auto el = ek_an_symmetry(k, n, x, y);
    if (!el) continue;  // measure-zero infeasible draw
    ++produced;
    PureState seed_state = e_k(k, n);
    PureState image = apply_product(seed_state, el->op);
    Cplx lam = std::pow(x, k);
    ck.residual(relative_residual(image.amps, Vec(lam * seed_state.amps)), 1e-10,
                "lambda = x^k");
    const Mat& a = el->op.ops[0];
    Cplx p(1, 0);
    for (int l = 0; l <= k; ++l) {
      ck.residual(std::abs(a(l, l) - p), 1e-10, "[A]_{l,l} = x^l");
      p *= x;
    }
  }
  return {4, "power-diagonal law of the E_k family", ck.ok, ck.worst, 1e-10, ck.note};
}

CriterionResult crit5_w_protocol(std::uint64_t) {
  Check ck;
  for (int n : {3, 4, 5}) {
    for (double pp : {0.1, 0.5, 0.9}) {
      LoccProtocol proto = w_class_protocol(n, pp);
      ck.residual(proto.max_completeness_residual(), 1e-12, "W completeness");
      PureState target(n, 2);
      target.amps(0) = std::sqrt(pp);
      target.amps += std::sqrt(1 - pp) / std::sqrt(static_cast<double>(n)) * w_state(n).amps;
      auto outcomes = simulate(proto, w_state(n).unit(), 1e-10);
      ck.require(static_cast<int>(outcomes.size()) == (1 << n), "leaf count");
      double psum = 0.0;
      for (const auto& o : outcomes) {
        psum += o.probability;
        auto lam = proportional(o.state, target, 1e-10);
        ck.require(lam.has_value(), "W leaf not proportional to target");
      }
      ck.residual(std::abs(psum - 1.0), 1e-10, "W probability sum");
    }
  }
  return {5, "W protocol (completeness, determinism, phases)", ck.ok, ck.worst, 1e-10, ck.note};
}

CriterionResult crit6_ek_protocol(std::uint64_t) {
  Check ck;
  LoccProtocol proto = ek_class_protocol(2, 4, 0.3);
  ck.residual(proto.max_completeness_residual(), 1e-12, "E_k completeness");
  auto outcomes = simulate(proto, e_k(2, 4), 1e-10);
  double psum = 0.0;
  for (const auto& o : outcomes) {
    psum += o.probability;
    auto lam = proportional(o.state, *proto.declared_target, 1e-10);
    ck.require(lam.has_value(), "E_k leaf not proportional to target");
  }
  ck.residual(std::abs(psum - 1.0), 1e-10, "E_k probability sum");
  return {6, "E_k protocol embedding (k=2, n=4)", ck.ok, ck.worst, 1e-10, ck.note};
}

CriterionResult crit7_ghz_protocol(std::uint64_t seed) {
  Check ck;
  Rng rng(seed);
  for (int n : {3, 4}) {
    for (int t = 0; t < 10; ++t) {
      // g_x = u 1 + v sigma_x, normalized to tr(G_x) = 1.
      Mat sx = Mat::Zero(2, 2);
      sx(0, 1) = 1;
      sx(1, 0) = 1;
      Mat gx;
      for (;;) {
        Cplx u = rng.cnormal(), v = 0.4 * rng.cnormal();
        gx = u * Mat::Identity(2, 2) + v * sx;
        if (std::abs(gx.determinant()) < 1e-3) continue;
        Mat gram = gx.adjoint() * gx;
        gx /= std::sqrt(gram.trace().real());
        break;
      }
      LoccProtocol proto = ghz_class_protocol(n, gx);
      ck.residual(proto.max_completeness_residual(), 1e-12, "GHZ completeness");
      auto outcomes = simulate(proto, ghz(n, 2), 1e-10);
      double psum = 0.0;
      for (const auto& o : outcomes) {
        psum += o.probability;
        ck.require(proportional(o.state, *proto.declared_target, 1e-10).has_value(),
                   "GHZ leaf not proportional to target");
      }
      ck.residual(std::abs(psum - 1.0), 1e-10, "GHZ probability sum");
    }
  }
  return {7, "GHZ protocol", ck.ok, ck.worst, 1e-10, ck.note};
}

CriterionResult crit8_qutrit4_protocol(std::uint64_t seed) {
  Check ck;
  Qutrit4Fixture fx = qutrit4_fixture();
  LoccProtocol proto = qutrit4_probabilistic_protocol();

  // Completeness at all three measurement nodes.
  ck.residual(proto.root->completeness_residual(), 1e-9, "round-1 completeness");
  for (const auto& br : proto.root->branches)
    ck.residual(br.child->completeness_residual(), 1e-9, "round-2 completeness");

  auto outcomes = simulate(proto, fx.initial, 1e-8);
  double psum = 0.0;
  for (const auto& o : outcomes) {
    psum += o.probability;
    ck.require(proportional(o.state, fx.target, 1e-9).has_value(),
               "qutrit4 leaf not proportional to target");
  }
  ck.residual(std::abs(psum - 1.0), 1e-9, "qutrit4 probability sum");

  // Depth-1 branch states are LU-inequivalent: sweep the (complete) symmetry
  // family for a gram-equivalence and exhibit the residual gap.
  Mat h1 = fx.h1, g2 = fx.g2;
  const Cplx e3pi4 = std::exp(Cplx(0, 3 * M_PI / 4));
  Mat s1 = Mat::Zero(3, 3);
  s1(0, 1) = e3pi4;
  s1(1, 0) = e3pi4;
  s1(2, 2) = 1;
  Mat h1b = s1.adjoint() * h1 * s1;  // branch-2 gram at site 1

  StabilizerFamily fam = qutrit4_symmetry_family("psi_mu_sqrt2i");
  double gap = 1e300;
  Rng rng(seed);
  auto consider = [&](const SymmetryElement& el) {
    // LU equivalence would need: S1^dag (h1b) S1 ∝ h1, S2^dag g2 S2 ∝ g2,
    // S3, S4 proportional to unitary.
    double r = 0.0;
    {
      Mat lhs = el.op.ops[0].adjoint() * h1b * el.op.ops[0];
      auto lam = proportional_mat(lhs, h1, 1e300);
      r = std::max(r, (lhs - *lam * h1).norm() / h1.norm());
    }
    {
      Mat lhs = el.op.ops[1].adjoint() * g2 * el.op.ops[1];
      auto lam = proportional_mat(lhs, g2, 1e300);
      r = std::max(r, (lhs - *lam * g2).norm() / g2.norm());
    }
    for (int site : {2, 3}) {
      const Mat& m = el.op.ops[site];
      Mat mm = m.adjoint() * m;
      auto lam = proportional_mat(mm, Mat(Mat::Identity(3, 3)), 1e300);
      r = std::max(r, (mm - *lam * Mat::Identity(3, 3)).norm() / mm.norm());
    }
    gap = std::min(gap, r);
  };
  for (const auto& comp : fam.components) {
    for (const auto& el : comp.discrete) consider(el);
    if (!comp.sampler || comp.defaults.empty()) continue;
    for (size_t q = 0; q < comp.defaults.size(); ++q) {
      for (int ai = 0; ai < 12; ++ai) {
        auto p = comp.defaults;
        p[q] = std::polar(1.0, 2 * M_PI * ai / 12);
        if (auto el = comp.sampler(p)) consider(*el);
      }
    }
    for (int t = 0; t < 32; ++t) {
      std::vector<Cplx> p(comp.defaults.size());
      for (auto& v : p) v = std::polar(rng.uniform(0.5, 2.0), rng.uniform(0.0, 2 * M_PI));
      if (auto el = comp.sampler(p)) consider(*el);
    }
  }
  ck.require(gap > 1e-6, "depth-1 branches look LU-equivalent (gap " + std::to_string(gap) + ")");
  std::ostringstream os;
  os << "LU-inequivalence gap " << gap;
  auto res = CriterionResult{8, "4-qutrit probabilistic protocol", ck.ok, ck.worst, 1e-9, ck.note};
  if (ck.ok) res.detail = os.str();
  return res;
}

CriterionResult crit9_generic_triviality(std::uint64_t seed) {
  Check ck;
  Rng rng(seed);
  for (int n : {5, 6}) {
    for (int t = 0; t < 100 && ck.ok; ++t) {
      PureState s = random_symmetric_qubit(n, rng);
      auto syms = qubit_symmetric_symmetry_search(s, 1e-8);
      ck.require(syms.size() == 1, "n=" + std::to_string(n) + " state has nontrivial symmetry");
    }
  }
  for (int n : {3, 4}) {
    for (int t = 0; t < 100 && ck.ok; ++t) {
      PureState s = random_symmetric_qubit(n, rng);
      auto syms = qubit_symmetric_symmetry_search(s, 1e-8);
      ck.require(syms.size() > 1, "n=" + std::to_string(n) + " state missing symmetry");
      for (const auto& el : syms) {
        PureState image = apply_product(s, el.op);
        ck.residual(relative_residual(image.amps, Vec(el.lambda * s.amps)), 1e-8,
                    "search residual");
      }
    }
  }
  return {9, "generic qubit stabilizer triviality (n>=5) / nontriviality (n=3,4)", ck.ok, ck.worst,
          1e-8, ck.note};
}

CriterionResult crit10_quasicomm_dichotomy(std::uint64_t seed) {
  Check ck;
  Rng rng(seed);
  for (int t = 0; t < 100 && ck.ok; ++t) {
    int d = 2 + rng.index(3);
    // Random non-diagonalizable B: Jordan form with at least one block >= 2,
    // conjugated by a moderate similarity.
    Mat j = Mat::Zero(d, d);
    int filled = 0;
    bool has_block = false;
    while (filled < d) {
      int remaining = d - filled;
      int blk = (remaining >= 2 && (!has_block || rng.uniform() < 0.5))
                    ? 2 + (remaining > 2 ? rng.index(remaining - 1) : 0)
                    : 1;
      Cplx ev = std::polar(rng.uniform(0.5, 2.0), rng.uniform(0.0, 2 * M_PI));
      for (int i = 0; i < blk; ++i) {
        j(filled + i, filled + i) = ev;
        if (i + 1 < blk) {
          j(filled + i, filled + i + 1) = 1;
          has_block = true;
        }
      }
      filled += blk;
    }
    if (!has_block) {
      j(0, 1) = 1;
      j(1, 1) = j(0, 0);
    }
    Mat t_sim = rng.unitary_matrix(d) + 0.2 * rng.gaussian_matrix(d, d);
    if (std::abs(t_sim.determinant()) < 1e-2) continue;
    Mat b = t_sim * j * t_sim.inverse();

    ck.require(!positive_solution_space(b).has_value(),
               "defective B produced a solution space");
    for (int r = 0; r < 20; ++r) {
      Mat a = rng.positive_matrix(d);
      ck.require(!quasi_commutes(b, a, 1e-9).has_value(),
                 "defective B quasi-commutes with a positive A");
    }
  }
  for (int t = 0; t < 100 && ck.ok; ++t) {
    int d = 2 + rng.index(3);
    Mat a_fac = rng.invertible_matrix(d);
    Mat u = rng.unitary_matrix(d);
    Mat b = a_fac.inverse() * u * a_fac;
    Mat a_pos = hermitize(a_fac.adjoint() * a_fac);
    auto lam = quasi_commutes(b, a_pos, 1e-9);
    ck.require(lam.has_value(), "a^{-1} U a does not quasi-commute with a^dag a");
    auto space = positive_solution_space(b);
    ck.require(space.has_value(), "no solution space for a^{-1} U a");
    if (space) {
      ck.require(space->contains(a_pos, 1e-9), "a^dag a not in the recovered space");
      Rng rng2(seed + t);
      Mat sample = space->sample(rng2);
      auto lam2 = quasi_commutes(b, sample, 1e-7);
      ck.require(lam2.has_value(), "solution-space sample fails quasi-commutation");
    }
  }
  return {10, "quasi-commutation dichotomy (defective vs unitary-similar)", ck.ok, ck.worst, 1e-9,
          ck.note};
}

CriterionResult crit11_corner(std::uint64_t) {
  Check ck;
  for (int k = 1; k <= 4 && ck.ok; ++k) {
    Mat eye = Mat::Identity(k + 1, k + 1);
    for (int xi = 0; xi < 12 && ck.ok; ++xi) {
      Cplx x = std::polar(1.0, 2 * M_PI * xi / 12);
      for (int ai = 1; ai <= 5; ++ai) {
        Cplx a = Cplx(0.2 * ai, 0.1 * ai);
        Mat g = corner_gram(k, a);
        Mat gram = g.adjoint() * g;
        Mat fam = corner_family(k, a, x);
        ck.require(quasi_commutes(fam, gram, 1e-9).has_value(), "family member fails");
        ck.require(corner_characterize(k, a, fam, 1e-8), "characterization rejects family");
        // Perturb the corner by 1e-6: quasi-commutation must break unless the
        // corner coefficient vanishes (x = 1 has a zero corner slot).
        Mat pert = fam;
        pert(k - 1, k) += 1e-6;
        bool still = quasi_commutes(pert, gram, 1e-9).has_value();
        ck.require(!still, "perturbed corner still quasi-commutes");
        ck.require(!corner_characterize(k, a, pert, 1e-8), "characterization accepts perturbed");
      }
    }
  }
  return {11, "corner-family biconditional on the (k, x, a) grid", ck.ok, ck.worst, 1e-9,
          ck.note};
}

CriterionResult crit12_isolation_witnesses(std::uint64_t seed) {
  Check ck;
  std::ostringstream detail;

  auto expect_isolated = [&](LoccScene scene, const std::string& name) {
    Decision d = weakly_isolated(scene);
    ck.require(d.verdict == Verdict::RefutedComplete,
               name + ": expected isolation, got " +
                   (d.verdict == Verdict::Witnessed ? "witness" : "no-witness"));
    if (d.verdict == Verdict::RefutedComplete) detail << name << ": " << d.closure_argument.substr(0, 40) << "; ";
  };

  // E_k corner witnesses.
  for (int k : {2, 3}) {
    std::vector<Cplx> a;
    for (int i = 0; i < 4; ++i) a.push_back(Cplx(0.25 + 0.2 * i, 0.1));
    auto grams = isolated_witness_ek(k, 4, a);
    expect_isolated(make_scene(ek_stabilizer(k, 4), grams), "ek k=" + std::to_string(k));
  }

  // Direct-sum witnesses.
  for (const std::vector<int>& ks : {std::vector<int>{2, 1}, std::vector<int>{0, 0, 0}}) {
    BlockSpec spec(ks);
    auto grams = isolated_witness_sums(spec, 4, default_sums_params(spec, 4));
    std::string name = "sums(";
    for (int k : ks) name += std::to_string(k);
    name += ")";
    expect_isolated(make_scene(direct_sum_stabilizer(spec, 4), grams), name);
  }

  // MUB witnesses at n = 5.
  {
    auto grams = mub_isolated_witness(2, 5, {1.0, 2.0});
    expect_isolated(make_scene(dicke_stabilizer(5, 2), grams), "mub d=2");
  }
  {
    Rng rng(seed + 3);
    PureState s(5, 3);
    // random symmetric qutrit state; non-ES is verified by the family builder
    PureState raw(5, 3);
    raw.amps = rng.gaussian_vector(raw.dim());
    s = symmetrize(raw);
    auto grams = mub_isolated_witness(3, 5, {1.0, 1.7, 2.6});
    expect_isolated(make_scene(non_es_declared_family(s), grams), "mub d=3");
  }

  // All five 4-qutrit fixtures.
  for (const auto& rep : representatives(4)) {
    auto grams = isolation_fixture_grams(rep);
    auto fam = qutrit4_symmetry_family(rep.id, rep.mu);
    expect_isolated(make_scene(std::move(fam), grams), "qutrit4 " + rep.id);
  }

  auto res = CriterionResult{12, "isolation witnesses certified", ck.ok, ck.worst, 0.0, ck.note};
  if (ck.ok) res.detail = detail.str();
  return res;
}

CriterionResult crit13_reach_convert(std::uint64_t) {
  Check ck;
  for (const auto& rep : representatives(4)) {
    for (const auto& fx : reach_convert_fixtures(rep)) {
      Decision r = reachable(fx.scene);
      ck.require(r.verdict == fx.expect_reach,
                 rep.id + "/" + fx.name + ": reach verdict mismatch");
      Decision c = convertible_locc1(fx.scene);
      ck.require(c.verdict == fx.expect_convert,
                 rep.id + "/" + fx.name + ": convert verdict mismatch");
      if (c.verdict == Verdict::Witnessed && !fx.expect_weights.empty()) {
        ck.require(c.certificate.has_value(), rep.id + "/" + fx.name + ": missing certificate");
        if (c.certificate) {
          const auto& p = c.certificate->probabilities;
          ck.require(p.size() == fx.expect_weights.size(),
                     rep.id + "/" + fx.name + ": weight count mismatch");
          if (p.size() == fx.expect_weights.size())
            for (size_t i = 0; i < p.size(); ++i)
              ck.residual(std::abs(p[i] - fx.expect_weights[i]), 1e-12,
                          rep.id + "/" + fx.name + ": mixing weight");
        }
      }
    }
  }
  return {13, "reach/convert fixtures with pinned mixing weights", ck.ok, ck.worst, 1e-12, ck.note};
}

CriterionResult crit14_slocc_reach(std::uint64_t seed) {
  Check ck;
  Rng rng(seed);
  auto cases = reach_case_representatives();
  for (const auto& rep : cases) {
    for (int t = 0; t < 20; ++t) {
      std::vector<Cplx> b(6);
      for (auto& v : b) v = rng.cnormal();
      // Case admissibility.
      if (rep.id == "F41") {
        b[2] = b[3] = b[4] = 0;
      } else if (rep.id == "S42+F41") {
        b[3] = b[4] = 0;
      } else if (rep.id == "14+F41") {
        Cplx e = std::pow(b[4], 0.25);
        Cplx d = b[3] / (2.0 * e * e * e);
        b[2] = std::sqrt(6.0) * d * d * e * e;
      } else if (rep.id == "S43+F41") {
        b[4] = 0;
      }
      if (std::abs(b[5]) < 0.1) b[5] += Cplx(0.5, 0.2);
      Mat a = slocc_reach(rep, b);
      PureState mapped = apply_product(rep.state, ProductOp(std::vector<Mat>(4, a)));
      PureState target = psi2_state(b, 4);
      auto lam = proportional(mapped, target, 1e-9);
      ck.require(lam.has_value(), rep.id + ": A^{(x)4} image not proportional to target");
      if (lam)
        ck.residual((mapped.amps - *lam * target.amps).norm() / mapped.norm(), 1e-9,
                    rep.id + " residual");
    }
  }
  return {14, "SLOCC reach cases (a)-(e)", ck.ok, ck.worst, 1e-9, ck.note};
}

CriterionResult crit15_psi_derog(std::uint64_t seed) {
  Check ck;
  Rng rng(seed);
  PureState psi = psi_derog_5qutrit();
  for (int t = 0; t < 20; ++t) {
    std::vector<Cplx> a(4);
    for (auto& v : a) v = rng.cnormal();
    SymmetryElement el = psi_derog_element(a);
    PureState image = apply_product(psi, el.op);
    ck.residual(relative_residual(image.amps, Vec(el.lambda * psi.amps)), 1e-10,
                "psi_derog family residual");
  }
  PsiDerogReport report = psi_derog_isolation_report(40, seed + 1);
  ck.require(report.every_nontrivial_has_two_defective, "defective census failed");

  StabilizerFamily fam = psi_derog_stabilizer();
  for (int t = 0; t < 5; ++t) {
    std::vector<GramFactor> grams;
    for (int i = 0; i < 5; ++i) grams.emplace_back(rng.positive_matrix(3, 0.3), true);
    LoccScene scene = make_scene(fam, grams);
    Decision d = reachable(scene);
    ck.require(d.verdict == Verdict::RefutedComplete, "psi_derog random grams should refute reach");
  }
  return {15, "5-qutrit class isolation (family, census, refutation)", ck.ok, ck.worst, 1e-10,
          ck.note};
}

CriterionResult crit16_monotones(std::uint64_t seed) {
  Check ck;
  Rng rng(seed);

  {
    std::vector<GramFactor> g;
    for (int i = 0; i < 4; ++i) g.emplace_back(rng.positive_matrix(2), true);
    double p_self = max_conversion_probability(g, g, 2.3, 2.3);
    ck.residual(std::abs(p_self - 1.0), 1e-12, "P(Psi,Psi) = 1");
  }

  for (int pair = 0; pair < 10 && ck.ok; ++pair) {
    const int n = 5;
    PureState seed_state = random_symmetric_qubit(n, rng);
    auto syms = qubit_symmetric_symmetry_search(seed_state, 1e-8);
    if (syms.size() != 1) continue;  // not trivial-stabilizer; resample

    std::vector<GramFactor> g, h;
    ProductOp gop = ProductOp::identity(n, 2), hop = ProductOp::identity(n, 2);
    for (int i = 0; i < n; ++i) {
      Mat gm = rng.positive_matrix(2, 0.3);
      Mat hm = rng.positive_matrix(2, 0.3);
      g.emplace_back(gm, true);
      h.emplace_back(hm, true);
      gop.ops[i] = hermitian_sqrt(gm);
      hop.ops[i] = hermitian_sqrt(hm);
    }
    double norm_psi = apply_product(seed_state, gop).norm();
    double norm_phi = apply_product(seed_state, hop).norm();
    double closed = max_conversion_probability(g, h, norm_psi, norm_phi);

    double sampled_min = 1e300;
    for (int t = 0; t < 10000; ++t) {
      std::vector<Vec> x(n);
      for (auto& v : x) v = rng.gaussian_vector(2);
      double num = monotone(g, x) / (norm_psi * norm_psi);
      double den = monotone(h, x) / (norm_phi * norm_phi);
      sampled_min = std::min(sampled_min, num / den);
    }
    ck.require(sampled_min >= closed - 1e-9,
               "sampled monotone ratio dips below the closed form");
    ck.worst = std::max(ck.worst, std::max(0.0, closed - sampled_min));
  }
  return {16, "monotones and conversion probability", ck.ok, ck.worst, 1e-9, ck.note};
}

}  // namespace

CriterionResult run_criterion(int number, std::uint64_t seed) {
  switch (number) {
    case 1: return crit1_exact_fixtures(seed);
    case 2: return crit2_toeplitz(seed);
    case 3: return crit3_sbar_closed_form(seed);
    case 4: return crit4_diagonal_law(seed);
    case 5: return crit5_w_protocol(seed);
    case 6: return crit6_ek_protocol(seed);
    case 7: return crit7_ghz_protocol(seed);
    case 8: return crit8_qutrit4_protocol(seed);
    case 9: return crit9_generic_triviality(seed);
    case 10: return crit10_quasicomm_dichotomy(seed);
    case 11: return crit11_corner(seed);
    case 12: return crit12_isolation_witnesses(seed);
    case 13: return crit13_reach_convert(seed);
    case 14: return crit14_slocc_reach(seed);
    case 15: return crit15_psi_derog(seed);
    case 16: return crit16_monotones(seed);
    default: throw SymlocError("run_criterion: number must be 1..16");
  }
}

std::vector<CriterionResult> run_all_criteria(std::uint64_t seed) {
  std::vector<CriterionResult> out;
  for (int i = 1; i <= 16; ++i) out.push_back(run_criterion(i, seed));
  return out;
}

std::string format_criteria_table(const std::vector<CriterionResult>& results) {
  std::ostringstream os;
  for (const auto& r : results) {
    os << (r.passed ? "PASS" : "FAIL") << "  [" << r.number << "] " << r.name;
    if (r.tolerance > 0) os << "  (worst " << r.worst_residual << ", tol " << r.tolerance << ")";
    if (!r.passed && !r.detail.empty()) os << "  -- " << r.detail;
    if (!r.passed && r.detail.empty() && !r.name.empty()) os << "";
    if (!r.detail.empty() && r.passed) os << "  -- " << r.detail;
    os << "\n";
  }
  return os.str();
}

}  // namespace symloc
