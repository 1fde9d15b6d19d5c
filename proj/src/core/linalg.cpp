#include "core/linalg.hpp"

#include <Eigen/Eigenvalues>

namespace symloc {

Mat hermitian_sqrt(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(m));
  Eigen::VectorXd ev = es.eigenvalues();
  for (int i = 0; i < ev.size(); ++i) ev(i) = ev(i) > 0 ? std::sqrt(ev(i)) : 0.0;
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

double cond_number(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m);
  double lo = svd.singularValues().minCoeff();
  double hi = svd.singularValues().maxCoeff();
  if (lo <= 0.0) return 1e300;
  return hi / lo;
}

bool is_unitary(const Mat& m, double tol) {
  Mat r = m.adjoint() * m - Mat::Identity(m.rows(), m.cols());
  return r.norm() <= tol * std::max(1.0, m.squaredNorm());
}

double max_gen_eigenvalue(const Mat& g, const Mat& h) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(g));
  Eigen::VectorXd ev = es.eigenvalues();
  Eigen::VectorXd inv_sqrt(ev.size());
  for (int i = 0; i < ev.size(); ++i) {
    if (ev(i) <= 0.0) throw SymlocError("max_gen_eigenvalue: G not strictly positive");
    inv_sqrt(i) = 1.0 / std::sqrt(ev(i));
  }
  Mat gih = es.eigenvectors() * inv_sqrt.asDiagonal() * es.eigenvectors().adjoint();
  Mat reduced = gih * hermitize(h) * gih;
  Eigen::SelfAdjointEigenSolver<Mat> es2(hermitize(reduced));
  return es2.eigenvalues().maxCoeff();
}

Mat nullspace(const Mat& m, double tol) {
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  double top = svd.singularValues().size() ? svd.singularValues().maxCoeff() : 0.0;
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > tol * std::max(top, 1e-300)) ++rank;
  return svd.matrixV().rightCols(m.cols() - rank);
}

std::vector<Cplx> poly_roots(const std::vector<Cplx>& coeffs) {
  int deg = static_cast<int>(coeffs.size()) - 1;
  if (deg < 1) return {};
  Mat companion = Mat::Zero(deg, deg);
  Cplx lead = coeffs[deg];
  for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -coeffs[i] / lead;
  for (int i = 1; i < deg; ++i) companion(i, i - 1) = Cplx(1, 0);
  Eigen::ComplexEigenSolver<Mat> es(companion, /*computeEigenvectors=*/false);
  std::vector<Cplx> roots(deg);
  for (int i = 0; i < deg; ++i) roots[i] = es.eigenvalues()(i);
  return roots;
}

bool diagonalizable(const Mat& m, double tol) {
  Eigen::ComplexEigenSolver<Mat> es(m, /*computeEigenvectors=*/true);
  return cond_number(es.eigenvectors()) < 1.0 / tol;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace symloc
