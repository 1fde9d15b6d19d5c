#include "locc/witnesses.hpp"

#include <cmath>

#include "core/linalg.hpp"
#include "quasi/quasicomm.hpp"

namespace symloc {

std::vector<GramFactor> isolated_witness_ek(int k, int n, const std::vector<Cplx>& a) {
  if (k < 2) throw SymlocError("isolated_witness_ek: need k >= 2");
  if (static_cast<int>(a.size()) != n) throw SymlocError("isolated_witness_ek: need n parameters");
  for (int i = 0; i < n; ++i) {
    if (std::abs(a[i]) == 0.0) throw SymlocError("isolated_witness_ek: a_i must be nonzero");
    if (k == 2)
      for (int j = i + 1; j < n; ++j)
        if (std::abs(a[i] - a[j]) < 1e-12)
          throw SymlocError("isolated_witness_ek: k = 2 needs pairwise distinct a_i");
  }
  std::vector<GramFactor> out;
  for (int i = 0; i < n; ++i) {
    Mat g = corner_gram(k, a[i]);
    GramFactor gf(hermitize(g.adjoint() * g), /*definite=*/true);
    gf.validate();
    out.push_back(std::move(gf));
  }
  return out;
}

SumsWitnessParams default_sums_params(const BlockSpec& spec, int n) {
  SumsWitnessParams p;
  const int K = spec.blocks();
  // Junction moduli pairwise distinct and small.
  for (int b = 1; b < K; ++b) p.junctions.push_back(Cplx(0.05 + 0.03 * b, 0.01 * b));
  p.corner_a.assign(K, {});
  int wcount = 0;
  for (int b = 0; b < K; ++b) {
    int kb = spec.excitations[b];
    if (kb >= 2) {
      for (int i = 0; i < n; ++i)
        p.corner_a[b].push_back(Cplx(0.3 + 0.15 * i + 0.4 * b, 0.05 + 0.02 * i));
    } else if (kb == 1) {
      p.w_diagonal.push_back(1.5 + 0.7 * wcount++);
    }
  }
  return p;
}

std::vector<GramFactor> isolated_witness_sums(const BlockSpec& spec, int n,
                                              const SumsWitnessParams& params) {
  const int K = spec.blocks();
  if (K < 2) throw SymlocError("isolated_witness_sums: need K >= 2 blocks");
  if (static_cast<int>(params.junctions.size()) != K - 1)
    throw SymlocError("isolated_witness_sums: need K-1 junction couplings");
  const int d = spec.local_dim();

  // Rule checks mirroring the proof's parameter conditions.
  std::vector<double> mods2;
  for (int b = 0; b < K; ++b) {
    int kb = spec.excitations[b];
    if (kb >= 2) {
      if (static_cast<int>(params.corner_a[b].size()) != n)
        throw SymlocError("isolated_witness_sums: corner parameters per site required");
      for (const Cplx& c : params.corner_a[b])
        if (std::abs(c) == 0.0) throw SymlocError("isolated_witness_sums: zero corner parameter");
    }
  }
  // Distinct |c_b| among junctions following k = 0 blocks.
  for (int b = 1; b < K; ++b) {
    if (std::abs(params.junctions[b - 1]) == 0.0)
      throw SymlocError("isolated_witness_sums: zero junction coupling");
    if (spec.excitations[b] == 0) mods2.push_back(std::abs(params.junctions[b - 1]));
  }
  for (size_t i = 0; i < mods2.size(); ++i)
    for (size_t j = i + 1; j < mods2.size(); ++j)
      if (std::abs(mods2[i] - mods2[j]) < 1e-9)
        throw SymlocError("isolated_witness_sums: junction moduli must differ on k=0 blocks");

  // Map each k_b = 1 block to its d_b entry.
  std::vector<int> w_index(K, -1);
  {
    int widx = 0;
    for (int b = 0; b < K; ++b)
      if (spec.excitations[b] == 1) w_index[b] = widx++;
  }

  std::vector<GramFactor> out;
  for (int i = 0; i < n; ++i) {
    Mat g = Mat::Zero(d, d);
    for (int b = 0; b < K; ++b) {
      int kb = spec.excitations[b];
      int off = spec.level_offset(b);
      if (kb >= 2) {
        Mat gb = corner_gram(kb, params.corner_a[b][i]);
        g.block(off, off, kb + 1, kb + 1) = gb.adjoint() * gb;
      } else if (kb == 1) {
        double db = params.w_diagonal.at(w_index[b]);
        Mat gb(2, 2);
        gb << Cplx(1, 0), Cplx(params.w_offdiag, 0), Cplx(params.w_offdiag, 0), Cplx(db, 0);
        g.block(off, off, 2, 2) = gb;
      } else {
        g(off, off) = Cplx(1, 0);
      }
    }
    for (int b = 1; b < K; ++b) {
      int lo = spec.level_offset(b - 1);
      int hi = spec.level_offset(b);
      g(lo, hi) = params.junctions[b - 1];
      g(hi, lo) = std::conj(params.junctions[b - 1]);
    }
    GramFactor gf(hermitize(g), /*definite=*/true);
    gf.validate();  // positivity failure -> coupling too large
    out.push_back(std::move(gf));
  }
  return out;
}

std::vector<std::vector<Vec>> mub_bases(int d) {
  std::vector<std::vector<Vec>> bases;
  if (d == 2) {
    Vec z0(2), z1(2), x0(2), x1(2), y0(2), y1(2);
    z0 << 1, 0;
    z1 << 0, 1;
    double s = 1.0 / std::sqrt(2.0);
    x0 << s, s;
    x1 << s, -s;
    y0 << s, Cplx(0, s);
    y1 << s, Cplx(0, -s);
    bases = {{z0, z1}, {x0, x1}, {y0, y1}};
    return bases;
  }
  if (d == 3) {
    // Standard prime-d construction: computational basis plus the bases
    // |v^{(m)}_j> = 3^{-1/2} sum_l w^{m l^2 + j l} |l>, w = e^{2 pi i/3}.
    std::vector<Vec> comp;
    for (int j = 0; j < 3; ++j) {
      Vec v = Vec::Zero(3);
      v(j) = 1;
      comp.push_back(v);
    }
    bases.push_back(comp);
    Cplx w = std::exp(Cplx(0, 2.0 * M_PI / 3.0));
    for (int m = 0; m < 2; ++m) {
      std::vector<Vec> basis;
      for (int j = 0; j < 3; ++j) {
        Vec v(3);
        for (int l = 0; l < 3; ++l) v(l) = std::pow(w, m * l * l + j * l) / std::sqrt(3.0);
        basis.push_back(v);
      }
      bases.push_back(basis);
    }
    return bases;
  }
  throw SymlocError("mub_bases: only d = 2, 3 are shipped");
}

std::vector<GramFactor> mub_isolated_witness(int d, int n, const std::vector<double>& x) {
  if (n < 5) throw SymlocError("mub_isolated_witness: need n >= 5");
  if (static_cast<int>(x.size()) != d) throw SymlocError("mub_isolated_witness: need d eigenvalues");
  for (int i = 0; i < d; ++i) {
    if (x[i] <= 0) throw SymlocError("mub_isolated_witness: eigenvalues must be positive");
    for (int j = i + 1; j < d; ++j)
      if (std::abs(x[i] - x[j]) < 1e-12)
        throw SymlocError("mub_isolated_witness: repeated eigenvalue");
  }
  auto bases = mub_bases(d);
  std::vector<GramFactor> out;
  for (int site = 0; site < 3; ++site) {
    Mat g = Mat::Zero(d, d);
    for (int j = 0; j < d; ++j)
      g += x[j] * (bases[site][j] * bases[site][j].adjoint());
    GramFactor gf(hermitize(g), true);
    gf.validate();
    out.push_back(std::move(gf));
  }
  for (int site = 3; site < n; ++site) out.emplace_back(Mat::Identity(d, d), true);
  return out;
}

}  // namespace symloc
