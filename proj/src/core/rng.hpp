#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "core/types.hpp"

namespace symloc {

// Deterministic random source. std::mt19937_64 output is pinned by the
// standard; the distributions below are hand-rolled because the stdlib ones
// are implementation-defined and would break cross-platform reproducibility.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0x5d15u) : eng_(seed) {}

  double uniform() {  // [0,1)
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {  // Box-Muller
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  Cplx cnormal() { return Cplx(normal(), normal()); }

  Cplx unit_phase() {
    double t = uniform(0.0, 2.0 * M_PI);
    return Cplx(std::cos(t), std::sin(t));
  }

  int index(int m) { return static_cast<int>(eng_() % static_cast<std::uint64_t>(m)); }

  Mat gaussian_matrix(int r, int c) {
    Mat m(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) m(i, j) = cnormal();
    return m;
  }

  Vec gaussian_vector(int len) {
    Vec v(len);
    for (int i = 0; i < len; ++i) v(i) = cnormal();
    return v;
  }

  // Invertible with a mild condition number; entries resampled if needed.
  Mat invertible_matrix(int d, double min_abs_det = 1e-3) {
    for (;;) {
      Mat m = gaussian_matrix(d, d);
      if (std::abs(m.determinant()) > min_abs_det) return m;
    }
  }

  Mat unitary_matrix(int d) {
    Mat m = gaussian_matrix(d, d);
    Eigen::HouseholderQR<Mat> qr(m);
    Mat q = qr.householderQ();
    Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < d; ++i) {
      Cplx ri = r(i, i);
      q.col(i) *= (std::abs(ri) > 0 ? ri / std::abs(ri) : Cplx(1, 0));
    }
    return q;
  }

  Mat positive_matrix(int d, double floor = 0.1) {
    Mat a = gaussian_matrix(d, d);
    return Mat(a.adjoint() * a) + floor * Mat::Identity(d, d);
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace symloc
