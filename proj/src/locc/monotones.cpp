#include "locc/monotones.hpp"

#include <cmath>

#include "core/linalg.hpp"

namespace symloc {

double monotone(const std::vector<GramFactor>& grams, const std::vector<Vec>& x) {
  if (grams.size() != x.size()) throw SymlocError("monotone: site count mismatch");
  double acc = 1.0;
  for (size_t i = 0; i < grams.size(); ++i) {
    if (x[i].norm() == 0.0) throw SymlocError("monotone: zero probe vector");
    Cplx q = x[i].dot(grams[i].matrix * x[i]);
    acc *= q.real();
  }
  return acc;
}

double max_conversion_probability(const std::vector<GramFactor>& g,
                                  const std::vector<GramFactor>& h, double norm_psi,
                                  double norm_phi) {
  if (g.size() != h.size()) throw SymlocError("max_conversion_probability: site mismatch");
  double lam = 1.0;
  for (size_t i = 0; i < g.size(); ++i) lam *= max_gen_eigenvalue(g[i].matrix, h[i].matrix);
  return (norm_phi * norm_phi) / (norm_psi * norm_psi) / lam;
}

std::vector<double> zero_sum_distribution(double alpha, int m_max) {
  const double tau = 2.0 * M_PI;
  double a = std::fmod(alpha, tau);
  if (a < 0) a += tau;
  if (a == 0.0) throw SymlocError("zero_sum_distribution: alpha must be nonzero mod 2pi");

  // Roots-of-unity shortcut: alpha = 2 pi / m exactly on the grid.
  for (int m = 2; m <= m_max; ++m) {
    double target = tau / m;
    if (std::abs(a - target) < 1e-13 || std::abs(a - (tau - target)) < 1e-13) {
      return std::vector<double>(m, 1.0 / m);
    }
  }

  // Three-point solution: support {0, k1, k2}; solve the two real moment
  // equations for (p1, p2) with p0 = 1 - p1 - p2 and pick a nonnegative
  // solution. The orbit {k a mod 2pi} reaches both half-planes for any
  // irrational-looking a within m_max steps.
  auto angle = [&](int k) { return std::fmod(k * a, tau); };
  for (int k1 = 1; k1 <= m_max; ++k1) {
    for (int k2 = k1 + 1; k2 <= m_max; ++k2) {
      double c1 = std::cos(angle(k1)), s1 = std::sin(angle(k1));
      double c2 = std::cos(angle(k2)), s2 = std::sin(angle(k2));
      // p0 + p1 c1 + p2 c2 = 0 ; p1 s1 + p2 s2 = 0 ; p0 = 1 - p1 - p2
      // Solve [c1-1, c2-1; s1, s2] (p1, p2)^T = (-1, 0)^T by Cramer's rule.
      double a11 = c1 - 1.0, a12 = c2 - 1.0;
      double det = a11 * s2 - a12 * s1;
      if (std::abs(det) < 1e-12) continue;
      double p1 = -s2 / det;
      double p2 = s1 / det;
      double p0 = 1.0 - p1 - p2;
      if (p1 < -1e-15 || p2 < -1e-15 || p0 < -1e-15) continue;
      std::vector<double> p(k2 + 1, 0.0);
      p[0] = std::max(0.0, p0);
      p[k1] = std::max(0.0, p1);
      p[k2] = std::max(0.0, p2);
      // Moment residual must be at solver precision.
      double re = 0, im = 0;
      for (int k = 0; k <= k2; ++k) {
        re += p[k] * std::cos(angle(k));
        im += p[k] * std::sin(angle(k));
      }
      if (std::hypot(re, im) < 1e-12 && std::abs(p[0] + p[k1] + p[k2] - 1.0) < 1e-12) return p;
    }
  }
  throw SymlocError("zero_sum_distribution: no nonnegative solution within m_max");
}

}  // namespace symloc
