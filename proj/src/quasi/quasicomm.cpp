#include "quasi/quasicomm.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "core/linalg.hpp"

namespace symloc {

Mat UnitarySimilarity::reconstruct() const {
  int d = static_cast<int>(R.rows());
  Mat diag = Mat::Zero(d, d);
  for (int i = 0; i < d; ++i) diag(i, i) = std::exp(Cplx(0, phases[i]));
  return scale * R * diag * R.inverse();
}

std::optional<double> quasi_commutes(const Mat& s, const Mat& g, double tol) {
  Mat lhs = s.adjoint() * g * s;
  double gn2 = g.squaredNorm();
  if (gn2 == 0.0) throw SymlocError("quasi_commutes: zero gram");
  // Frobenius least squares: lambda = <G, S^dag G S> / <G, G>.
  Cplx lambda(0, 0);
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < g.cols(); ++j) lambda += std::conj(g(i, j)) * lhs(i, j);
  lambda /= gn2;
  double lr = lambda.real();
  if (lr <= 0.0) return std::nullopt;
  // All thresholds scale with lambda so the decision is invariant under
  // rescaling S -> cS (lambda -> |c|^2 lambda).
  if (std::abs(lambda.imag()) > tol * lr) return std::nullopt;
  if ((lhs - lr * g).norm() > tol * g.norm() * lr) return std::nullopt;
  return lr;
}

std::optional<UnitarySimilarity> factor_unitary_similarity(const Mat& b, double tol) {
  const int d = static_cast<int>(b.rows());
  if (std::abs(b.determinant()) < 1e-14 * std::max(1.0, b.norm()))
    throw SymlocError("factor_unitary_similarity: singular input");
  Eigen::ComplexEigenSolver<Mat> es(b, /*computeEigenvectors=*/true);
  Mat r = es.eigenvectors();
  if (cond_number(r) >= 1.0 / tol) return std::nullopt;  // defective or near-defective

  std::vector<double> mods(d);
  double mean = 0.0;
  for (int i = 0; i < d; ++i) {
    mods[i] = std::abs(es.eigenvalues()(i));
    mean += mods[i];
  }
  mean /= d;
  for (double m : mods)
    if (std::abs(m - mean) > tol * mean) return std::nullopt;

  UnitarySimilarity out;
  out.R = r;
  out.scale = Cplx(mean, 0);
  out.phases.resize(d);
  for (int i = 0; i < d; ++i) out.phases[i] = std::arg(es.eigenvalues()(i));

  // Single-linkage phase clustering on the unit circle, radius 10 tol.
  double radius = 10.0 * std::max(tol, 1e-12);
  std::vector<int> cls(d, -1);
  int nc = 0;
  for (int i = 0; i < d; ++i) {
    if (cls[i] >= 0) continue;
    cls[i] = nc;
    bool grew = true;
    while (grew) {
      grew = false;
      for (int a = 0; a < d; ++a) {
        if (cls[a] != nc) continue;
        for (int c = 0; c < d; ++c) {
          if (cls[c] >= 0) continue;
          double diff = std::abs(
              std::exp(Cplx(0, out.phases[a])) - std::exp(Cplx(0, out.phases[c])));
          if (diff <= radius) {
            cls[c] = nc;
            grew = true;
          }
        }
      }
    }
    ++nc;
  }
  out.phase_classes.assign(nc, {});
  for (int i = 0; i < d; ++i) out.phase_classes[cls[i]].push_back(i);
  return out;
}

Mat PositiveSolutionSpace::sample(Rng& rng, double floor) const {
  const Mat& r = similarity.R;
  int d = static_cast<int>(r.rows());
  Mat x = Mat::Zero(d, d);
  for (const auto& cls : similarity.phase_classes) {
    int m = static_cast<int>(cls.size());
    Mat blk = rng.positive_matrix(m, floor);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) x(cls[i], cls[j]) = blk(i, j);
  }
  Mat rinv = r.inverse();
  return hermitize(rinv.adjoint() * x * rinv);
}

bool PositiveSolutionSpace::contains(const Mat& a, double tol) const {
  const Mat& r = similarity.R;
  Mat x = r.adjoint() * a * r;
  double scale = x.norm();
  std::vector<int> cls(r.rows(), -1);
  for (size_t c = 0; c < similarity.phase_classes.size(); ++c)
    for (int idx : similarity.phase_classes[c]) cls[idx] = static_cast<int>(c);
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j)
      if (cls[i] != cls[j] && std::abs(x(i, j)) > tol * scale) return false;
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(x));
  return es.eigenvalues().minCoeff() >= -tol * scale;
}

std::optional<PositiveSolutionSpace> positive_solution_space(const Mat& b, double tol) {
  auto sim = factor_unitary_similarity(b, tol);
  if (!sim) return std::nullopt;
  return PositiveSolutionSpace{*sim};
}

Mat corner_gram(int k, Cplx a) {
  Mat g = Mat::Identity(k + 1, k + 1);
  g(k - 1, k) = a;
  return g;
}

Mat corner_family(int k, Cplx a, Cplx x, double tol) {
  if (k < 1) throw SymlocError("corner_family: need k >= 1");
  if (std::abs(std::abs(x) - 1.0) > tol) throw SymlocError("corner_family: need |x| = 1");
  Mat m = Mat::Zero(k + 1, k + 1);
  Cplx p(1, 0);
  for (int l = 0; l <= k; ++l) {
    m(l, l) = p;
    p *= x;
  }
  Cplx xb = std::conj(x);
  m(k - 1, k) = a * (Cplx(1, 0) / std::pow(xb, k - 1) - std::pow(x, k));
  return m;
}

bool corner_characterize(int k, Cplx a, const Mat& A, double tol) {
  if (A.rows() != k + 1 || A.cols() != k + 1) return false;
  double scale = A.norm();
  if (scale == 0.0) return false;
  if (std::abs(A(0, 0)) < tol * scale) return false;
  Mat m = A / A(0, 0);
  Cplx x = m(1, 1);
  if (std::abs(std::abs(x) - 1.0) > tol) return false;
  Mat expect = corner_family(k, a, x / std::abs(x), tol);
  bool match = (m - expect).norm() <= tol * std::max(1.0, expect.norm());
  // Cross-validate against the quasi-commutation relation itself.
  Mat g = corner_gram(k, a);
  bool qc = quasi_commutes(m, Mat(g.adjoint() * g), std::max(tol, 1e-10)).has_value();
  return match && qc;
}

}  // namespace symloc
