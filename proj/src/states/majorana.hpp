#pragma once

#include <vector>

#include "core/types.hpp"

namespace symloc {

// One distinct Majorana point |eps> = cos(alpha)|0> + e^{i beta} sin(alpha)|1>
// with its multiplicity. alpha in [0, pi/2], beta in [0, 2pi). Points with
// alpha = pi/2 (i.e. |1>) are the "roots at infinity" of the amplitude
// polynomial and carry an explicit flag.
struct MajoranaRoot {
  double alpha = 0.0;
  double beta = 0.0;
  int multiplicity = 1;
  bool at_infinity = false;

  Vec ket() const;  // the single-qubit vector
};

struct MajoranaRep {
  std::vector<MajoranaRoot> roots;

  int total_multiplicity() const;
  int diversity_degree() const { return static_cast<int>(roots.size()); }
  std::vector<int> degeneracy_configuration() const;  // sorted descending
  int infinity_multiplicity() const;
};

// Permutation sum over the eps-product, unnormalized.
PureState majorana_to_state(const MajoranaRep& rep, int n);

// Amplitude polynomial convention: with c_k = (coefficient of the normalized
// Dicke basis vector) * sqrt(C(n,k)), the polynomial q(z) = sum_k
// (-1)^{n-k} c_{n-k} z^k has the Majorana points as roots z_j with
// |eps_j> ∝ |0> + z_j|1>; missing leading coefficients are roots at
// infinity (|1> points). Roots are clustered into multiplicities by
// single linkage in the chordal metric with radius 10 * tol^{1/n}.
MajoranaRep state_to_majorana(const PureState& state, double tol = kPropTol);

// Dicke-basis coefficients c_k (length n+1) in the convention above.
std::vector<Cplx> dicke_coefficients(const PureState& state, double tol = kPropTol);

double chordal_distance(Cplx a, bool a_inf, Cplx b, bool b_inf);

}  // namespace symloc
