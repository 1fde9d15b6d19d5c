#pragma once

#include <vector>

#include "core/types.hpp"
#include "states/states.hpp"

namespace symloc {

// Corner witnesses for |E_k> classes: G_i = g_i^dag g_i with
// g_i = 1 + a_i |k-1><k|.
// a_i nonzero; pairwise distinct required when k = 2.
std::vector<GramFactor> isolated_witness_ek(int k, int n, const std::vector<Cplx>& a);

struct SumsWitnessParams {
  // Junction couplings c_b for b = 1..K-1 (between blocks b-1 and b); must be
  // nonzero, small enough for positivity, and of pairwise distinct modulus
  // among junctions that follow k = 0 blocks.
  std::vector<Cplx> junctions;
  // Per block with k_b >= 2: corner parameters a_{i,b} per site.
  // Per block with k_b = 1: the (1, d_b) diagonal with off-diagonal p.
  std::vector<std::vector<Cplx>> corner_a;  // [block][site]
  std::vector<double> w_diagonal;           // d_b per k_b = 1 block
  double w_offdiag = 0.25;
};

SumsWitnessParams default_sums_params(const BlockSpec& spec, int n);

// Junction-coupled construction: direct sums of per-block grams plus couplings at
// block junctions; verified strictly positive.
std::vector<GramFactor> isolated_witness_sums(const BlockSpec& spec, int n,
                                              const SumsWitnessParams& params);

// Three mutually unbiased bases for d (shipped for d = 2, 3).
std::vector<std::vector<Vec>> mub_bases(int d);

// G_1..G_3 spectral in three MUBs with eigenvalue list x (pairwise distinct
// positive); G_4 = G_5 = 1; any further sites identity.
std::vector<GramFactor> mub_isolated_witness(int d, int n, const std::vector<double>& x);

}  // namespace symloc
