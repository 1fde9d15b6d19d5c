#pragma once

#include <vector>

#include "core/types.hpp"

namespace symloc {

// E_x(Psi) = prod_i <x_i| G_i |x_i> for a product vector x.
double monotone(const std::vector<GramFactor>& grams, const std::vector<Vec>& x);

// Eq. form of the maximal conversion success probability for
// trivial-stabilizer classes: (||Phi||^2 / ||Psi||^2) / lambda_max(G^{-1}H),
// with lambda_max of the tensor product taken as the product of the per-site
// maxima. The caller asserts the trivial-stabilizer hypothesis.
double max_conversion_probability(const std::vector<GramFactor>& g,
                                  const std::vector<GramFactor>& h, double norm_psi,
                                  double norm_phi);

// Probabilities p_k >= 0 with sum p_k = 1 and sum p_k e^{ik alpha} = 0.
// Rational alpha = 2 pi / m yields the uniform distribution on m roots of
// unity; otherwise a three-point solution of the two moment constraints.
std::vector<double> zero_sum_distribution(double alpha, int m_max = 64);

}  // namespace symloc
