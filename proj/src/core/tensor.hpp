#pragma once

#include <optional>
#include <vector>

#include "core/types.hpp"

namespace symloc {

// Single-mode contraction of `op` at `site`; cost O(d^{n+1}).
PureState apply_at_site(const PureState& state, const Mat& op, int site);

// scalar * (op_1 ⊗ ... ⊗ op_n) |state>, by successive mode contractions.
PureState apply_product(const PureState& state, const ProductOp& op);

// Least-squares proportionality: the scalar λ minimizing ||a - λ b||, kept
// only when the residual is within tol * ||a||. λ = <b|a>/<b|b>.
std::optional<Cplx> proportional(const PureState& a, const PureState& b, double tol = kPropTol);
std::optional<Cplx> proportional_vec(const Vec& a, const Vec& b, double tol = kPropTol);
std::optional<Cplx> proportional_mat(const Mat& a, const Mat& b, double tol = kPropTol);

// Projector onto Sym(C^d)^{\otimes n}: average over all n! site permutations.
PureState symmetrize(const PureState& state);

bool is_permutation_symmetric(const PureState& state, double tol = kPropTol);

// Rank of each single-site reduced density matrix, thresholded at
// tol * (largest eigenvalue).
std::vector<int> local_ranks(const PureState& state, double tol = kPropTol);

Mat reduced_density(const PureState& state, int site);

Cplx inner(const PureState& a, const PureState& b);  // <a|b>

// Overlap of |ψ> with |v_i v_j> at the two given sites: the (d^{n-2})-dim
// residual vector <v_i|_i <v_j|_j |ψ>; used for structure probes.
Vec project_two_sites(const PureState& state, int site_i, int site_j, int level_i, int level_j);

}  // namespace symloc
