#pragma once

#include "proto/protocol.hpp"

namespace symloc {

// n-round transfer |W> -> sqrt(p') |0...0> + sqrt(1-p') |W| (normalized
// forms); round k is measured by party k with the two upper triangular Kraus
// operators built from the diagonal phase symmetries, phase arccos
// sqrt((k-1)/k).
LoccProtocol w_class_protocol(int n, double p_prime);

// The |E_k> embedding of the W protocol: all operators act trivially on the
// middle levels, the diagonal symmetries carry phases e^{+/- i phi j / k}.
LoccProtocol ek_class_protocol(int k, int n, double p_prime);

// GHZ ladder: each party measures {g_x Z(pi/4), g_x Z(pi/4) sigma_x} (with
// tr(g_x^dag g_x) = 1 making the pair complete), sigma_x / Z(-pi/4)
// corrections, the last party special-cased.
LoccProtocol ghz_class_protocol(int n, const Mat& g_x);

// The fixed 4-qutrit two-round fixture on psi(mu = sqrt(2) i) with the
// closed-form G_i, H_i, p, q and all correction unitaries.
LoccProtocol qutrit4_probabilistic_protocol();

// The matrices of the 4-qutrit fixture, exposed for tests and the CLI.
struct Qutrit4Fixture {
  PureState seed;
  Mat g1, g2, h1, h2;
  double p, q;
  PureState initial;  // g1 (x) g2 (x) 1 (x) 1 |seed>
  PureState target;   // h1 (x) h2 (x) 1 (x) 1 |seed>
};
Qutrit4Fixture qutrit4_fixture();

}  // namespace symloc
