#include "derog/derog.hpp"

#include <cmath>

#include "core/linalg.hpp"
#include "core/rng.hpp"
#include "states/majorana.hpp"

namespace symloc {

namespace {

Mat b1_witness() { return Eigen::Vector3cd(1, 1, 2).asDiagonal(); }

Mat b2_witness() {
  Mat b = Mat::Identity(3, 3);
  b(0, 2) = 1;
  return b;
}

PureState sum3(const PureState& a, const PureState& b) {
  PureState out = a;
  out.amps += b.amps;
  return out;
}

}  // namespace

std::vector<QutritRep> representatives(int n, std::optional<Cplx> mu) {
  std::vector<QutritRep> out;
  if (n == 3) {
    out.push_back({"0+2", sum3(snk(3, 0), fnk(3, 3)), RepType::Type1, b1_witness(), {}});
    out.push_back({"0+1+2", ghz(3, 3), RepType::Type1, b1_witness(), {}});
    out.push_back({"S31+2", sum3(snk(3, 1), fnk(3, 3)), RepType::Type1, b1_witness(), {}});
    out.push_back({"F31", fnk(3, 1), RepType::Type2, b2_witness(), {}});
    out.push_back({"S32+F31", sum3(snk(3, 2), fnk(3, 1)), RepType::Type2, b2_witness(), {}});
    return out;
  }
  if (n == 4) {
    out.push_back({"S42+24", sum3(snk(4, 2), fnk(4, 4)), RepType::Type1, b1_witness(), {}});
    out.push_back(
        {"04+S42+24", sum3(sum3(snk(4, 0), snk(4, 2)), fnk(4, 4)), RepType::Type1, b1_witness(), {}});
    out.push_back({"14+S42+F41", sum3(sum3(snk(4, 4), snk(4, 2)), fnk(4, 1)), RepType::Type2,
                   b2_witness(), {}});
    out.push_back({"S43+F41", sum3(snk(4, 3), fnk(4, 1)), RepType::Type2, b2_witness(), {}});
    Cplx mu_val = mu.value_or(Cplx(0, std::sqrt(2.0)));
    QutritRep pm{"psi_mu", psi_mu(mu_val), RepType::Type1, b1_witness(), mu_val};
    out.push_back(std::move(pm));
    return out;
  }
  if (n == 5) {
    Mat b = Mat::Identity(3, 3);
    b(1, 2) = 1;
    out.push_back({"psi_derog5", psi_derog_5qutrit(), RepType::Type2, b, {}});
    return out;
  }
  throw SymlocError("representatives: n must be 3, 4 or 5");
}

QutritRep representative_by_id(const std::string& id, std::optional<Cplx> mu) {
  for (int n : {3, 4, 5})
    for (auto& rep : representatives(n, mu))
      if (rep.id == id) return rep;
  for (auto& rep : reach_case_representatives())
    if (rep.id == id) return rep;
  throw SymlocError("representative_by_id: unknown id " + id);
}

std::vector<QutritRep> reach_case_representatives() {
  std::vector<QutritRep> out;
  out.push_back({"F41", fnk(4, 1), RepType::Type2, b2_witness(), {}});
  out.push_back({"S42+F41", sum3(snk(4, 2), fnk(4, 1)), RepType::Type2, b2_witness(), {}});
  out.push_back({"14+F41", sum3(snk(4, 4), fnk(4, 1)), RepType::Type2, b2_witness(), {}});
  out.push_back({"14+S42+F41", sum3(sum3(snk(4, 4), snk(4, 2)), fnk(4, 1)), RepType::Type2,
                 b2_witness(), {}});
  out.push_back({"S43+F41", sum3(snk(4, 3), fnk(4, 1)), RepType::Type2, b2_witness(), {}});
  return out;
}

namespace {

// Explicit case-wise A matrices for the type-2 representatives. b indexes the
// target coefficients (psi2 coordinates, length n+2).
Mat reach_type2(const std::string& id, const std::vector<Cplx>& b, int n) {
  auto need = [&](bool cond, const char* msg) {
    if (!cond) throw SymlocError(std::string("slocc_reach: ") + msg);
  };
  const double s3 = std::sqrt(3.0), s6 = std::sqrt(6.0);
  Mat a = Mat::Zero(3, 3);
  if (n == 4) {
    const Cplx b0 = b[0], b1 = b[1], b2 = b[2], b3 = b[3], b4 = b[4], b5 = b[5];
    need(std::abs(b5) > 0, "b5 must be nonzero (local rank 3)");
    if (id == "F41") {
      need(std::abs(b2) < 1e-12 && std::abs(b3) < 1e-12 && std::abs(b4) < 1e-12,
           "case (a) needs b2 = b3 = b4 = 0");
      a << 1, 0, b0 / 2.0, 0, 1, b1, 0, 0, b5;
      return a;
    }
    if (id == "S42+F41") {
      need(std::abs(b2) > 0, "case (b) needs b2 != 0");
      need(std::abs(b3) < 1e-12 && std::abs(b4) < 1e-12, "case (b) needs b3 = b4 = 0");
      a << 1, 0, b0 / 2.0, 0, std::sqrt(b2), b1, 0, 0, b5;
      return a;
    }
    if (id == "14+F41") {
      need(std::abs(b4) > 0, "case (c) needs b4 != 0");
      Cplx e = std::pow(b4, 0.25);
      Cplx d = b3 / (2.0 * e * e * e);
      need(std::abs(b2 - s6 * d * d * e * e) < 1e-9 * std::max(1.0, std::abs(b2)),
           "case (c) needs b2 = sqrt(6) b3^2 / (4 b4)");
      Cplx g = (b0 - d * d * d * d) / 2.0;
      Cplx h = b1 - 2.0 * d * d * d * e;
      a << 1, d, g, 0, e, h, 0, 0, b5;
      return a;
    }
    if (id == "14+S42+F41") {
      need(std::abs(b4) > 0, "case (d) needs b4 != 0");
      Cplx e = std::pow(b4, 0.25);
      Cplx d = b3 / (2.0 * e * e * e);
      Cplx rad = b2 / (e * e) - s6 * d * d;
      need(std::abs(rad) > 1e-12, "case (d) needs b2 != sqrt(6) b3^2 / (4 b4)");
      Cplx aa = std::sqrt(rad);
      Cplx g = (b0 - d * d * d * d - s6 * aa * aa * d * d) / (2.0 * aa * aa * aa);
      Cplx h = (b1 - 2.0 * d * d * d * e - s6 * aa * aa * d * e) / (aa * aa * aa);
      a << aa, d, g, 0, e, h, 0, 0, b5 / (aa * aa * aa);
      return a;
    }
    if (id == "S43+F41") {
      need(std::abs(b3) > 0, "case (e) needs b3 != 0");
      need(std::abs(b4) < 1e-12, "case (e) needs b4 = 0");
      Cplx e = std::pow(b3, 1.0 / 3.0);
      Cplx d = b2 / (s6 * e * e);
      Cplx g = b0 / 2.0 - d * d * d;
      Cplx h = b1 - 3.0 * d * d * e;
      a << 1, d, g, 0, e, h, 0, 0, b5;
      return a;
    }
  }
  if (n == 3) {
    const Cplx b0 = b[0], b1 = b[1], b2 = b[2], b3 = b[3], b4 = b[4];
    need(std::abs(b4) > 0, "b4 must be nonzero (local rank 3)");
    if (id == "F31") {
      need(std::abs(b2) < 1e-12 && std::abs(b3) < 1e-12, "case (d) needs b2 = b3 = 0");
      a << 1, 0, b0 / s3, 0, 1, b1, 0, 0, b4;
      return a;
    }
    if (id == "S32+F31") {
      need(std::abs(b2) > 0 && std::abs(b3) < 1e-12, "case (e) needs b2 != 0, b3 = 0");
      a << 1, 0, b0 / s3, 0, std::sqrt(b2), b1, 0, 0, b4;
      return a;
    }
    if (id == "13+F31") {
      need(std::abs(b3) > 0, "case (f) needs b3 != 0");
      Cplx b3_23 = std::pow(b3, 2.0 / 3.0);
      a << 1, b2 / (s3 * b3_23), b0 / s3 - b2 * b2 * b2 / (9.0 * b3 * b3), 0,
          std::pow(b3, 1.0 / 3.0), b1 - b2 * b2 / (s3 * b3), 0, 0, b4;
      return a;
    }
  }
  throw SymlocError("slocc_reach: no explicit construction for " + id);
}

}  // namespace

Mat slocc_reach(const QutritRep& rep, const std::vector<Cplx>& b) {
  const int n = rep.state.n;
  if (static_cast<int>(b.size()) != n + 2)
    throw SymlocError("slocc_reach: need n+2 target coefficients");

  if (rep.type_tag == RepType::Type2) {
    Mat a = reach_type2(rep.id, b, n);
    if (std::abs(a.determinant()) < 1e-12) throw SymlocError("slocc_reach: singular A");
    return a;
  }

  // Type-1: block-diagonal A = A_qubit ⊕ e. The qubit part maps the
  // representative's Majorana points onto the target's; the scalar e matches
  // the |2^n> coefficient.
  PureState target = psi1_state(b, n);
  if (std::abs(b[n + 1]) == 0.0)
    throw SymlocError("slocc_reach: type-1 target needs a nonzero |2^n> coefficient");

  auto qubit_part = [&](const PureState& s) {
    PureState q(n, 2);
    for (std::int64_t idx = 0; idx < q.dim(); ++idx) {
      std::int64_t src = 0;
      for (int site = 0; site < n; ++site) src = src * 3 + q.digit(idx, site);
      q.amps(idx) = s.amps(src);
    }
    return q;
  };
  PureState rep_q = qubit_part(rep.state);
  PureState tgt_q = qubit_part(target);
  MajoranaRep mr = state_to_majorana(rep_q, 1e-9);
  MajoranaRep mt = state_to_majorana(tgt_q, 1e-9);

  // Match multiplicity multisets: for the shipped representatives the
  // configurations are {2,2} (S42-based) or {4},{1,3},... handled greedily.
  if (mr.degeneracy_configuration() != mt.degeneracy_configuration())
    throw SymlocError("slocc_reach: target is outside the representative's qubit class");
  std::vector<int> order(mt.roots.size());
  std::vector<bool> used(mt.roots.size(), false);
  for (size_t i = 0; i < mr.roots.size(); ++i) {
    bool ok = false;
    for (size_t j = 0; j < mt.roots.size(); ++j) {
      if (used[j] || mt.roots[j].multiplicity != mr.roots[i].multiplicity) continue;
      order[i] = static_cast<int>(j);
      used[j] = true;
      ok = true;
      break;
    }
    if (!ok) throw SymlocError("slocc_reach: root matching failed");
  }
  if (mr.roots.size() < 2) throw SymlocError("slocc_reach: need at least two distinct roots");

  Mat e01(2, 2);
  e01.col(0) = mr.roots[0].ket();
  e01.col(1) = mr.roots[1].ket();
  // Fix the relative scale with a third root when present; otherwise free.
  Mat img(2, 2);
  img.col(0) = mt.roots[order[0]].ket();
  img.col(1) = mt.roots[order[1]].ket();
  Mat a_qubit;
  if (mr.roots.size() >= 3) {
    Mat base0 = img, base1 = img;
    base0.col(1).setZero();
    base1.col(0).setZero();
    Mat a0 = base0 * e01.inverse();
    Mat a1 = base1 * e01.inverse();
    Vec src = mr.roots[2].ket();
    Vec dst = mt.roots[order[2]].ket();
    auto cross = [](const Vec& u, const Vec& v) { return u(0) * v(1) - u(1) * v(0); };
    Cplx c0 = cross(a0 * src, dst);
    Cplx c1 = cross(a1 * src, dst);
    if (std::abs(c1) < 1e-12) throw SymlocError("slocc_reach: degenerate root configuration");
    a_qubit = a0 - (c0 / c1) * a1;
  } else {
    a_qubit = img * e01.inverse();
  }

  PureState mapped = apply_product(rep_q, ProductOp(std::vector<Mat>(n, a_qubit)));
  auto lam = proportional(tgt_q, mapped, 1e-7);
  if (!lam) throw SymlocError("slocc_reach: qubit-part map failed verification");
  // Scale A_qubit so the qubit part matches exactly, then fix e from |2^n>.
  Cplx scale = std::pow(*lam, 1.0 / n);
  a_qubit *= scale;
  Cplx e = std::pow(b[n + 1], 1.0 / n);

  Mat a = Mat::Zero(3, 3);
  a.block(0, 0, 2, 2) = a_qubit;
  a(2, 2) = e;
  if (std::abs(a.determinant()) < 1e-12) throw SymlocError("slocc_reach: singular A");
  return a;
}

bool symmetry_structure_check(const QutritRep& rep, const std::vector<Mat>& s, double tol) {
  for (const Mat& m : s) {
    double scale = std::max(1.0, m.norm());
    if (rep.type_tag == RepType::Type1) {
      if (std::abs(m(2, 0)) > tol * scale || std::abs(m(2, 1)) > tol * scale ||
          std::abs(m(0, 2)) > tol * scale || std::abs(m(1, 2)) > tol * scale)
        return false;
    } else if (rep.type_tag == RepType::Type2) {
      if (std::abs(m(1, 0)) > tol * scale || std::abs(m(2, 0)) > tol * scale ||
          std::abs(m(2, 1)) > tol * scale)
        return false;
    }
  }
  return true;
}

namespace {

Mat fixture_tridiagonal() {
  Mat g(3, 3);
  g << Cplx(2.0, 0), Cplx(0.3, -0.1), Cplx(0, 0),
      Cplx(0.3, 0.1), Cplx(1.7, 0), Cplx(0.25, 0.15),
      Cplx(0, 0), Cplx(0.25, -0.15), Cplx(1.4, 0);
  return g;
}

Mat fixture_arrow() {
  Mat g(3, 3);
  g << Cplx(1.8, 0), Cplx(0.28, 0.12), Cplx(0.22, 0),
      Cplx(0.28, -0.12), Cplx(1.5, 0), Cplx(0, 0),
      Cplx(0.22, 0), Cplx(0, 0), Cplx(1.3, 0);
  return g;
}

}  // namespace

std::vector<GramFactor> isolation_fixture_grams(const QutritRep& rep) {
  if (rep.state.n != 4) throw SymlocError("isolation_fixture_grams: 4-qutrit representatives only");
  std::vector<GramFactor> out;
  for (int i = 0; i < 3; ++i) {
    Mat g = fixture_tridiagonal();
    g(0, 1) *= (1.0 + 0.1 * i);  // keep sites generic
    g(1, 0) = std::conj(g(0, 1));
    GramFactor gf(g, true);
    gf.validate();
    out.push_back(std::move(gf));
  }
  GramFactor arrow(fixture_arrow(), true);
  arrow.validate();
  out.push_back(std::move(arrow));
  return out;
}

std::vector<ReachConvertFixture> reach_convert_fixtures(const QutritRep& rep) {
  if (rep.state.n != 4) throw SymlocError("reach_convert_fixtures: 4-qutrit representatives only");
  const bool s43 = rep.id == "S43+F41";

  // The acting-site sign symmetry used by the constructions.
  const double alpha = 1.1, delta = 1.3, nu = 0.9;
  const Cplx beta(0.2, 0.1), eps(0.15, -0.05);

  Mat h_tilde(3, 3);
  h_tilde << Cplx(alpha, 0), std::conj(beta), Cplx(0, 0), beta, Cplx(delta, 0), std::conj(eps),
      Cplx(0, 0), eps, Cplx(nu, 0);

  // S = 1 ⊕ -1 ⊕ 1 (S' = 1 ⊕ -1 ⊕ -1 for the S43 representative).
  Mat s = Eigen::Vector3cd(1, -1, s43 ? -1 : 1).asDiagonal();

  Mat g1 = hermitize(h_tilde / 3.0 + 2.0 / 3.0 * s.adjoint() * h_tilde * s);
  Mat h_conv = h_tilde;  // target of the second conversion
  h_conv(0, 1) = -2.0 * std::conj(beta);
  h_conv(1, 0) = -2.0 * beta;
  if (!s43) {
    h_conv(1, 2) = -2.0 * std::conj(eps);
    h_conv(2, 1) = -2.0 * eps;
  }
  // h_tilde = 1/4 h_conv + 3/4 S^dag h_conv S by construction.

  auto family = [&]() { return qutrit4_symmetry_family(rep.id, rep.mu); };

  std::vector<GramFactor> diag_rest;
  for (int i = 0; i < 3; ++i) {
    Mat d = Eigen::Vector3cd(1.0 + 0.2 * i, 1.4 + 0.1 * i, 0.8 + 0.15 * i).asDiagonal();
    diag_rest.emplace_back(d, true);
  }

  std::vector<ReachConvertFixture> out;

  {
    // Scene A: initial grams (G1, diag..); target hint H-tilde. Reachable
    // (S flips the off-diagonal signs) and LOCC_1-convertible with weights
    // (1/3, 2/3).
    std::vector<GramFactor> grams;
    grams.emplace_back(g1, true);
    for (auto& g : diag_rest) grams.push_back(g);
    LoccScene scene = make_scene(family(), grams);
    scene.target_gram_hint = h_tilde;
    scene.acting_site_hint = 0;
    out.push_back({"reach+convert(1/3,2/3)", std::move(scene), Verdict::Witnessed,
                   Verdict::Witnessed, {1.0 / 3.0, 2.0 / 3.0}});
  }
  {
    // Scene B: initial grams (H-tilde, diag..); target hint H_conv; weights
    // (1/4, 3/4). The initial state is itself reachable.
    std::vector<GramFactor> grams;
    grams.emplace_back(h_tilde, true);
    for (auto& g : diag_rest) grams.push_back(g);
    LoccScene scene = make_scene(family(), grams);
    scene.target_gram_hint = h_conv;
    scene.acting_site_hint = 0;
    out.push_back({"convert(1/4,3/4)", std::move(scene), Verdict::Witnessed, Verdict::Witnessed,
                   {1.0 / 4.0, 3.0 / 4.0}});
  }
  if (rep.id == "04+S42+24") {
    // Scene C: all-diagonal grams; convertible but not reachable.
    std::vector<GramFactor> grams;
    Mat d0 = Eigen::Vector3cd(alpha, delta, nu).asDiagonal();
    grams.emplace_back(d0, true);
    for (auto& g : diag_rest) grams.push_back(g);
    LoccScene scene = make_scene(family(), grams);
    Mat h1 = h_tilde;
    scene.target_gram_hint = h1;
    scene.acting_site_hint = 0;
    out.push_back({"convert-only(1/2,1/2)", std::move(scene), Verdict::RefutedComplete,
                   Verdict::Witnessed, {0.5, 0.5}});
  }
  return out;
}

PsiDerogReport psi_derog_isolation_report(int samples, std::uint64_t seed) {
  PsiDerogReport rep;
  Rng rng(seed);
  rep.samples_checked = samples;
  for (int t = 0; t < samples; ++t) {
    std::vector<Cplx> a(4);
    for (auto& v : a) v = rng.cnormal();
    SymmetryElement el = psi_derog_element(a);
    int defective = 0;
    for (const Mat& m : el.op.ops)
      if (!diagonalizable(m)) ++defective;
    // structural count: nonzero shear parameters
    int nonzero = 0;
    Cplx sum(0, 0);
    for (const Cplx& v : a) sum += v;
    for (const Cplx& v : a)
      if (std::abs(v) > 1e-12) ++nonzero;
    if (std::abs(sum) > 1e-12) ++nonzero;  // the fifth site carries -sum
    if (nonzero > 0 && (defective < 2 || defective != nonzero))
      rep.every_nontrivial_has_two_defective = false;
  }
  rep.argument =
      "each local is 1 + a_i |1><2|, defective iff a_i != 0; the constraint sum a_i = 0 forces "
      "at least two nonzero entries in any nontrivial element, and a defective local cannot "
      "quasi-commute with any positive gram";
  return rep;
}

std::pair<PureState, PureState> multicopy_factorization(const DerogSpec& spec) {
  const int K = spec.blocks.blocks();
  const int k0 = spec.blocks.excitations[0];
  for (int b = 1; b < K; ++b)
    if (spec.blocks.excitations[b] != k0)
      throw SymlocError("multicopy_factorization: equal block sizes required");
  const int n = spec.n();

  // First factor: sum over block assignments with the given occupations.
  PureState blocks(n, std::max(K, 2));
  std::vector<int> assign;
  for (int b = 0; b < K; ++b) assign.insert(assign.end(), spec.occupations[b], b);
  std::sort(assign.begin(), assign.end());
  do {
    std::int64_t idx = 0;
    for (int s = 0; s < n; ++s) idx = idx * blocks.d + assign[s];
    blocks.amps(idx) += Cplx(1, 0);
  } while (std::next_permutation(assign.begin(), assign.end()));

  // Second factor: |E_k> carried on the common block dimension k0 + 1 (which
  // may exceed spec.k + 1 when the excitation number is smaller).
  const int block_dim = std::max(k0 + 1, 2);
  PureState ek_embedded(n, block_dim);
  PureState raw = e_k(spec.k, n);
  for (std::int64_t idx = 0; idx < raw.dim(); ++idx) {
    if (raw.amps(idx) == Cplx(0, 0)) continue;
    std::int64_t dst = 0;
    for (int s = 0; s < n; ++s) dst = dst * block_dim + raw.digit(idx, s);
    ek_embedded.amps(dst) = raw.amps(idx);
  }
  return {blocks, ek_embedded};
}

PureState multicopy_reassemble(const PureState& blocks, const PureState& eks) {
  if (blocks.n != eks.n) throw SymlocError("multicopy_reassemble: site count mismatch");
  const int n = blocks.n;
  const int K = blocks.d;
  const int dk = eks.d;
  PureState out(n, K * dk);
  for (std::int64_t ib = 0; ib < blocks.dim(); ++ib) {
    if (blocks.amps(ib) == Cplx(0, 0)) continue;
    for (std::int64_t ie = 0; ie < eks.dim(); ++ie) {
      if (eks.amps(ie) == Cplx(0, 0)) continue;
      std::int64_t idx = 0;
      for (int s = 0; s < n; ++s) {
        int level = blocks.digit(ib, s) * dk + eks.digit(ie, s);
        idx = idx * (K * dk) + level;
      }
      out.amps(idx) += blocks.amps(ib) * eks.amps(ie);
    }
  }
  return out;
}

}  // namespace symloc
