#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace symloc {

using Cplx = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using LocalOp = Eigen::MatrixXcd;

// Default tolerances. Proportionality / symmetry residuals are relative,
// POVM completeness is absolute on unit-scaled operators. Callers may
// override per operation.
inline constexpr double kPropTol = 1e-9;
inline constexpr double kCompletenessTol = 1e-12;
inline constexpr double kPositivityTol = 1e-9;
// Gate for "diagonalizable within tolerance" (eigenvector condition number
// < 1/tol). Defective matrices surface with condition ~ eps^{-1/2} ~ 1e8, so
// the gate sits below that; near-defective inputs report indeterminate.
inline constexpr double kDiagGateTol = 1e-7;

struct SymlocError : std::runtime_error {
  explicit SymlocError(const std::string& what) : std::runtime_error(what) {}
};

// Dense state on (C^d)^{\otimes n}. Site 0 is the most significant digit of
// the flattened index; this encoding is fixed so file formats stay
// bit-stable. States are unnormalized unless `normalized` says otherwise.
struct PureState {
  int n = 0;
  int d = 0;
  Vec amps;
  bool normalized = false;

  PureState() = default;
  PureState(int n_, int d_) : n(n_), d(d_) {
    if (n_ < 1 || d_ < 2) throw SymlocError("PureState: need n >= 1, d >= 2");
    amps = Vec::Zero(dim());
  }
  PureState(int n_, int d_, Vec a) : n(n_), d(d_), amps(std::move(a)) {
    if (amps.size() != dim()) throw SymlocError("PureState: amps length != d^n");
  }

  std::int64_t dim() const {
    std::int64_t m = 1;
    for (int i = 0; i < n; ++i) m *= d;
    return m;
  }
  double norm() const { return amps.norm(); }

  // Multi-index helpers in the fixed encoding.
  std::int64_t stride(int site) const {
    std::int64_t s = 1;
    for (int i = site + 1; i < n; ++i) s *= d;
    return s;
  }
  int digit(std::int64_t index, int site) const {
    return static_cast<int>((index / stride(site)) % d);
  }

  PureState unit() const {
    PureState out = *this;
    double nr = norm();
    if (nr == 0.0) throw SymlocError("cannot normalize the zero vector");
    out.amps /= nr;
    out.normalized = true;
    return out;
  }
};

// Local operators on each site plus a scalar prefactor; the carrier for
// symmetries, SLOCC maps and measurement branches.
struct ProductOp {
  std::vector<Mat> ops;
  Cplx scalar{1.0, 0.0};

  ProductOp() = default;
  ProductOp(std::vector<Mat> o, Cplx s = Cplx{1.0, 0.0}) : ops(std::move(o)), scalar(s) {}

  static ProductOp identity(int n, int d) {
    std::vector<Mat> o(n, Mat::Identity(d, d));
    return ProductOp(std::move(o));
  }

  int sites() const { return static_cast<int>(ops.size()); }
  int dim() const { return ops.empty() ? 0 : static_cast<int>(ops.front().rows()); }

  // this ∘ rhs, i.e. apply rhs first.
  ProductOp composed(const ProductOp& rhs) const {
    if (sites() != rhs.sites()) throw SymlocError("ProductOp::composed: site count mismatch");
    ProductOp out;
    out.scalar = scalar * rhs.scalar;
    out.ops.reserve(ops.size());
    for (int i = 0; i < sites(); ++i) out.ops.push_back(ops[i] * rhs.ops[i]);
    return out;
  }

  ProductOp adjoint() const {
    ProductOp out;
    out.scalar = std::conj(scalar);
    out.ops.reserve(ops.size());
    for (const Mat& m : ops) out.ops.push_back(m.adjoint());
    return out;
  }

  ProductOp power(int k) const {
    ProductOp acc = identity(sites(), dim());
    for (int i = 0; i < k; ++i) acc = acc.composed(*this);
    return acc;
  }
};

// G = g^\dagger g attached to one site; the object every LOCC decision
// condition is stated on.
struct GramFactor {
  Mat matrix;
  bool definite = true;

  GramFactor() = default;
  explicit GramFactor(Mat m, bool definite_ = true) : matrix(std::move(m)), definite(definite_) {}

  int dim() const { return static_cast<int>(matrix.rows()); }

  // Hermiticity residual and eigenvalue floor, relative to the matrix scale.
  void validate(double tol = kPositivityTol) const {
    double scale = matrix.norm();
    if (scale == 0.0) throw SymlocError("GramFactor: zero matrix");
    if ((matrix - matrix.adjoint()).norm() > tol * scale)
      throw SymlocError("GramFactor: not Hermitian within tolerance");
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (matrix + matrix.adjoint()));
    double lo = es.eigenvalues().minCoeff();
    if (definite) {
      if (lo <= tol * scale) throw SymlocError("GramFactor: not strictly positive");
    } else if (lo < -tol * scale) {
      throw SymlocError("GramFactor: negative eigenvalue beyond tolerance");
    }
  }
};

inline Mat hermitize(const Mat& m) { return 0.5 * (m + m.adjoint()); }

}  // namespace symloc
