#include "core/tensor.hpp"

#include <algorithm>
#include <numeric>

namespace symloc {

PureState apply_at_site(const PureState& state, const Mat& op, int site) {
  if (site < 0 || site >= state.n) throw SymlocError("apply_at_site: site out of range");
  if (op.rows() != state.d || op.cols() != state.d)
    throw SymlocError("apply_at_site: operator dimension mismatch");

  const int d = state.d;
  const std::int64_t stride = state.stride(site);
  const std::int64_t block = stride * d;
  const std::int64_t nblocks = state.dim() / block;

  PureState out(state.n, state.d);
  Vec in_col(d), out_col(d);
  for (std::int64_t b = 0; b < nblocks; ++b) {
    const std::int64_t base = b * block;
    for (std::int64_t r = 0; r < stride; ++r) {
      for (int i = 0; i < d; ++i) in_col(i) = state.amps(base + i * stride + r);
      out_col.noalias() = op * in_col;
      for (int i = 0; i < d; ++i) out.amps(base + i * stride + r) = out_col(i);
    }
  }
  return out;
}

PureState apply_product(const PureState& state, const ProductOp& op) {
  if (op.sites() != state.n) throw SymlocError("apply_product: site count mismatch");
  PureState cur = state;
  for (int s = 0; s < state.n; ++s) cur = apply_at_site(cur, op.ops[s], s);
  cur.amps *= op.scalar;
  cur.normalized = false;
  return cur;
}

std::optional<Cplx> proportional_vec(const Vec& a, const Vec& b, double tol) {
  double bn = b.squaredNorm();
  if (bn == 0.0) throw SymlocError("proportional: reference vector is zero");
  Cplx lambda = b.dot(a) / bn;  // Eigen dot conjugates the left argument
  double resid = (a - lambda * b).norm();
  if (resid <= tol * a.norm() || (a.norm() == 0.0 && resid == 0.0))
    return lambda;
  return std::nullopt;
}

std::optional<Cplx> proportional(const PureState& a, const PureState& b, double tol) {
  if (a.n != b.n || a.d != b.d) throw SymlocError("proportional: shape mismatch");
  return proportional_vec(a.amps, b.amps, tol);
}

std::optional<Cplx> proportional_mat(const Mat& a, const Mat& b, double tol) {
  Vec av = Eigen::Map<const Vec>(a.data(), a.size());
  Vec bv = Eigen::Map<const Vec>(b.data(), b.size());
  return proportional_vec(av, bv, tol);
}

PureState symmetrize(const PureState& state) {
  const int n = state.n;
  const int d = state.d;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);

  PureState out(n, d);
  std::vector<int> digits(n);
  std::int64_t count = 0;
  do {
    // Accumulate P_perm |state>: out[i_1..i_n] += state[i_{perm(1)}..i_{perm(n)}].
    for (std::int64_t idx = 0; idx < state.dim(); ++idx) {
      std::int64_t rem = idx;
      for (int s = n - 1; s >= 0; --s) {
        digits[s] = static_cast<int>(rem % d);
        rem /= d;
      }
      std::int64_t src = 0;
      for (int s = 0; s < n; ++s) src = src * d + digits[perm[s]];
      out.amps(idx) += state.amps(src);
    }
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  out.amps /= static_cast<double>(count);
  return out;
}

bool is_permutation_symmetric(const PureState& state, double tol) {
  PureState sym = symmetrize(state);
  return (sym.amps - state.amps).norm() <= tol * std::max(1e-300, state.norm());
}

Mat reduced_density(const PureState& state, int site) {
  const int d = state.d;
  const std::int64_t stride = state.stride(site);
  const std::int64_t block = stride * d;
  const std::int64_t nblocks = state.dim() / block;

  Mat rho = Mat::Zero(d, d);
  Vec col(d);
  for (std::int64_t b = 0; b < nblocks; ++b) {
    const std::int64_t base = b * block;
    for (std::int64_t r = 0; r < stride; ++r) {
      for (int i = 0; i < d; ++i) col(i) = state.amps(base + i * stride + r);
      rho.noalias() += col * col.adjoint();
    }
  }
  return rho;
}

std::vector<int> local_ranks(const PureState& state, double tol) {
  std::vector<int> ranks(state.n, 0);
  for (int s = 0; s < state.n; ++s) {
    Eigen::SelfAdjointEigenSolver<Mat> es(reduced_density(state, s));
    double top = es.eigenvalues().maxCoeff();
    int r = 0;
    for (int i = 0; i < state.d; ++i)
      if (es.eigenvalues()(i) > tol * top) ++r;
    ranks[s] = r;
  }
  return ranks;
}

Cplx inner(const PureState& a, const PureState& b) {
  if (a.n != b.n || a.d != b.d) throw SymlocError("inner: shape mismatch");
  return a.amps.dot(b.amps);
}

Vec project_two_sites(const PureState& state, int site_i, int site_j, int level_i, int level_j) {
  if (site_i == site_j) throw SymlocError("project_two_sites: sites must differ");
  const int d = state.d;
  const std::int64_t rest_dim = state.dim() / (d * static_cast<std::int64_t>(d));
  Vec out = Vec::Zero(rest_dim);
  std::int64_t k = 0;
  for (std::int64_t idx = 0; idx < state.dim(); ++idx) {
    if (state.digit(idx, site_i) != level_i || state.digit(idx, site_j) != level_j) continue;
    out(k++) = state.amps(idx);
  }
  return out;
}

}  // namespace symloc
