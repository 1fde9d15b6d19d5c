#pragma once

#include <vector>

#include "core/tensor.hpp"
#include "core/types.hpp"

namespace symloc {

// One Jordan block per entry; k_b excitations means block size k_b + 1.
// Blocks are stored in non-increasing order so representatives are canonical.
struct BlockSpec {
  std::vector<int> excitations;

  explicit BlockSpec(std::vector<int> ks);
  int blocks() const { return static_cast<int>(excitations.size()); }
  int local_dim() const;
  int level_offset(int block) const;  // first level of block (0-based)
};

// |E_k^{n_1..n_K}>: k total excitations, n_b parties supported on block b.
// Support condition: n_b = 0 whenever the block cannot carry k excitations.
struct DerogSpec {
  int k = 0;
  std::vector<int> occupations;  // per block, sums to n
  BlockSpec blocks;

  DerogSpec(int k_, std::vector<int> occ, BlockSpec blocks_);
  int n() const;
};

// Seed state with k excitations, local dimension k+1 (unnormalized).
PureState e_k(int k, int n);

// \oplus_b |E_{k_b}>, each block embedded on its own level range.
PureState direct_sum_ek(const BlockSpec& spec, int n);

// The derogatory seed of the double sum, unnormalized.
PureState derog_ek(const DerogSpec& spec);

// Named states. Dicke/W/GHZ are unnormalized with integer coefficients;
// snk/fnk are the normalized qutrit S/F basis states.
PureState dicke(int n, int k);
PureState w_state(int n);
PureState ghz(int n, int d);
PureState snk(int n, int k);
PureState fnk(int n, int k);

// |psi(mu)> = |0^4> + mu |S^4_2> + |1^4> + |2^4>.
PureState psi_mu(Cplx mu);

// The 5-qutrit derogatory seed |E_0^{5,0}> + |E_0^{3,2}> + |E_0^{2,3}> + |E_1^{0,5}>.
PureState psi_derog_5qutrit();

// n-qutrit state b_0|0^n> + sum_k b_k|S^n_k> + b_n|1^n> + b_{n+1}|F^n_1>
// (type-2 coordinates; b has n+2 entries).
PureState psi2_state(const std::vector<Cplx>& b, int n);

// n-qutrit state a_0|0^n> + sum_k a_k|S^n_k> + a_n|1^n> + a_{n+1}|2^n>
// (type-1 coordinates; a has n+2 entries).
PureState psi1_state(const std::vector<Cplx>& a, int n);

}  // namespace symloc
