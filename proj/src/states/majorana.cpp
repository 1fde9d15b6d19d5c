#include "states/majorana.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "core/linalg.hpp"
#include "core/tensor.hpp"

namespace symloc {

Vec MajoranaRoot::ket() const {
  Vec v(2);
  if (at_infinity) {
    v << Cplx(0, 0), Cplx(1, 0);
  } else {
    v << Cplx(std::cos(alpha), 0), std::exp(Cplx(0, beta)) * std::sin(alpha);
  }
  return v;
}

int MajoranaRep::total_multiplicity() const {
  int t = 0;
  for (const auto& r : roots) t += r.multiplicity;
  return t;
}

std::vector<int> MajoranaRep::degeneracy_configuration() const {
  std::vector<int> cfg;
  for (const auto& r : roots) cfg.push_back(r.multiplicity);
  std::sort(cfg.begin(), cfg.end(), std::greater<int>());
  return cfg;
}

int MajoranaRep::infinity_multiplicity() const {
  int t = 0;
  for (const auto& r : roots)
    if (r.at_infinity) t += r.multiplicity;
  return t;
}

namespace {

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

PureState majorana_to_state(const MajoranaRep& rep, int n) {
  if (rep.total_multiplicity() != n)
    throw SymlocError("majorana_to_state: total multiplicity != n");

  // Amplitude of any string with k ones is k!(n-k)! * [t^k] prod_j (u_j + v_j t),
  // with (u_j, v_j) the components of the j-th point.
  std::vector<Cplx> poly{Cplx(1, 0)};
  for (const auto& root : rep.roots) {
    Vec eps = root.ket();
    for (int m = 0; m < root.multiplicity; ++m) {
      std::vector<Cplx> next(poly.size() + 1, Cplx(0, 0));
      for (size_t i = 0; i < poly.size(); ++i) {
        next[i] += poly[i] * eps(0);
        next[i + 1] += poly[i] * eps(1);
      }
      poly = std::move(next);
    }
  }

  std::vector<double> fact(n + 1, 1.0);
  for (int i = 1; i <= n; ++i) fact[i] = fact[i - 1] * i;

  PureState out(n, 2);
  for (std::int64_t idx = 0; idx < out.dim(); ++idx) {
    int ones = 0;
    for (int s = 0; s < n; ++s) ones += out.digit(idx, s);
    out.amps(idx) = fact[ones] * fact[n - ones] * poly[ones];
  }
  return out;
}

std::vector<Cplx> dicke_coefficients(const PureState& state, double tol) {
  if (state.d != 2) throw SymlocError("dicke_coefficients: qubits only");
  if (!is_permutation_symmetric(state, tol))
    throw SymlocError("dicke_coefficients: state is not permutation symmetric");
  const int n = state.n;
  std::vector<Cplx> c(n + 1, Cplx(0, 0));
  std::vector<int> counts(n + 1, 0);
  for (std::int64_t idx = 0; idx < state.dim(); ++idx) {
    int ones = 0;
    for (int s = 0; s < n; ++s) ones += state.digit(idx, s);
    c[ones] += state.amps(idx);
    counts[ones] += 1;
  }
  // c_k = (string amplitude) * C(n,k); averaging over the orbit washes out
  // residual asymmetry within tolerance.
  for (int k = 0; k <= n; ++k) c[k] = c[k] / static_cast<double>(counts[k]) * binom(n, k);
  return c;
}

double chordal_distance(Cplx a, bool a_inf, Cplx b, bool b_inf) {
  if (a_inf && b_inf) return 0.0;
  if (a_inf) return 1.0 / std::sqrt(1.0 + std::norm(b));
  if (b_inf) return 1.0 / std::sqrt(1.0 + std::norm(a));
  return std::abs(a - b) / std::sqrt((1.0 + std::norm(a)) * (1.0 + std::norm(b)));
}

MajoranaRep state_to_majorana(const PureState& state, double tol) {
  const int n = state.n;
  std::vector<Cplx> c = dicke_coefficients(state, tol);

  // q(z) = sum_k (-1)^{n-k} c_{n-k} z^k; degree deficit = roots at infinity.
  std::vector<Cplx> q(n + 1);
  double scale = 0.0;
  for (int k = 0; k <= n; ++k) {
    q[k] = ((n - k) % 2 == 0 ? 1.0 : -1.0) * c[n - k];
    scale = std::max(scale, std::abs(q[k]));
  }
  if (scale == 0.0) throw SymlocError("state_to_majorana: zero state");

  int degree = n;
  while (degree > 0 && std::abs(q[degree]) <= tol * scale) --degree;
  int inf_count = n - degree;

  q.resize(degree + 1);
  std::vector<Cplx> finite = poly_roots(q);

  // Agglomerative single linkage on the Riemann sphere. A root of
  // multiplicity m perturbs like tol^{1/m}, so two clusters merge when their
  // closest members sit within 10 * tol^{1/(combined size)}; distinct simple
  // roots never reach the m = 2 radius.
  struct Node {
    Cplx z;
    bool inf;
  };
  std::vector<Node> nodes;
  for (Cplx z : finite) nodes.push_back({z, false});
  for (int i = 0; i < inf_count; ++i) nodes.push_back({Cplx(0, 0), true});

  std::vector<std::vector<int>> clusters;
  for (int i = 0; i < static_cast<int>(nodes.size()); ++i) clusters.push_back({i});
  const double base = std::max(tol, 1e-16);
  bool merged = true;
  while (merged) {
    merged = false;
    for (size_t a = 0; a < clusters.size() && !merged; ++a) {
      for (size_t b = a + 1; b < clusters.size() && !merged; ++b) {
        double dmin = 1e300;
        for (int i : clusters[a])
          for (int j : clusters[b])
            dmin = std::min(dmin, chordal_distance(nodes[i].z, nodes[i].inf, nodes[j].z,
                                                   nodes[j].inf));
        int m = static_cast<int>(clusters[a].size() + clusters[b].size());
        double radius = 10.0 * std::pow(base, 1.0 / m);
        if (dmin <= radius) {
          clusters[a].insert(clusters[a].end(), clusters[b].begin(), clusters[b].end());
          clusters.erase(clusters.begin() + b);
          merged = true;
        }
      }
    }
  }

  MajoranaRep rep;
  for (const auto& cluster : clusters) {
    int mult = static_cast<int>(cluster.size());
    int inf_mult = 0;
    Cplx sum(0, 0);
    for (int i : cluster) {
      if (nodes[i].inf)
        ++inf_mult;
      else
        sum += nodes[i].z;
    }
    MajoranaRoot root;
    root.multiplicity = mult;
    if (2 * inf_mult >= mult) {
      root.at_infinity = true;
      root.alpha = M_PI / 2;
      root.beta = 0.0;
    } else {
      Cplx z = sum / static_cast<double>(mult - inf_mult);
      root.alpha = std::atan(std::abs(z));
      root.beta = std::arg(z);
      if (root.beta < 0) root.beta += 2.0 * M_PI;
    }
    rep.roots.push_back(root);
  }
  return rep;
}

}  // namespace symloc
