#include "proto/canned.hpp"

#include <cmath>

#include "core/linalg.hpp"
#include "states/states.hpp"

namespace symloc {

namespace {

Mat embed_qubit(const Mat& m2, int dim, int hi_level) {
  Mat m = Mat::Identity(dim, dim);
  m(0, 0) = m2(0, 0);
  m(0, hi_level) = m2(0, 1);
  m(hi_level, 0) = m2(1, 0);
  m(hi_level, hi_level) = m2(1, 1);
  return m;
}

Mat zrot(double phi) {
  Mat z = Mat::Zero(2, 2);
  z(0, 0) = std::exp(Cplx(0, phi));
  z(1, 1) = std::exp(Cplx(0, -phi));
  return z;
}

}  // namespace

LoccProtocol ek_class_protocol(int k, int n, double p_prime) {
  if (k < 1) throw SymlocError("ek_class_protocol: need k >= 1");
  if (n < 3) throw SymlocError("ek_class_protocol: need n >= 3");
  if (!(p_prime > 0.0 && p_prime < 1.0))
    throw SymlocError("ek_class_protocol: need 0 < p' < 1");
  const int d = k + 1;
  const double b = std::sqrt(1.0 - p_prime);

  auto x_of = [&](int r) { return std::sqrt(r * p_prime); };

  std::shared_ptr<LoccRound> next;  // build from the last round backwards
  for (int r = n; r >= 1; --r) {
    double xr = x_of(r);
    double xprev = x_of(r - 1);
    double phi = std::acos(xprev / xr);  // arccos sqrt((r-1)/r)

    Mat h2(2, 2), gprev2(2, 2);
    h2 << 1, xr, 0, b;
    gprev2 << 1, xprev, 0, 1;
    Mat h = embed_qubit(h2, d, k);
    Mat gprev_inv = embed_qubit(gprev2, d, k).inverse();

    auto round = std::make_shared<LoccRound>();
    round->acting_party = r - 1;
    for (int m = 0; m < 2; ++m) {
      double sign = (m == 0) ? -1.0 : 1.0;
      Mat s = Mat::Zero(d, d);
      for (int j = 0; j < d; ++j) s(j, j) = std::exp(Cplx(0, sign * phi * j / k));
      LoccRound::Branch br;
      br.kraus = (1.0 / std::sqrt(2.0)) * h * s * gprev_inv;
      // The other parties complete the diagonal symmetry S^(x)n, which leaves
      // the branch state proportional to the corrected-frame target.
      for (int i = 0; i < n; ++i)
        if (i != r - 1) br.corrections.push_back({i, s});
      br.child = next;
      round->branches.push_back(std::move(br));
    }
    next = round;
  }

  LoccProtocol proto;
  proto.root = next;

  // Declared target: diag(1,..,1,b) everywhere, last party carries x_n.
  ProductOp op = ProductOp::identity(n, d);
  Mat diag_b = Mat::Identity(d, d);
  diag_b(k, k) = b;
  Mat last2(2, 2);
  last2 << 1, x_of(n), 0, b;
  for (int i = 0; i + 1 < n; ++i) op.ops[i] = diag_b;
  op.ops[n - 1] = embed_qubit(last2, d, k);
  proto.declared_target = apply_product(e_k(k, n), op);
  return proto;
}

LoccProtocol w_class_protocol(int n, double p_prime) { return ek_class_protocol(1, n, p_prime); }

LoccProtocol ghz_class_protocol(int n, const Mat& g_x) {
  if (n < 3) throw SymlocError("ghz_class_protocol: need n >= 3");
  Mat sx = Mat::Zero(2, 2);
  sx(0, 1) = 1;
  sx(1, 0) = 1;
  if ((g_x * sx - sx * g_x).norm() > 1e-10 * std::max(1.0, g_x.norm()))
    throw SymlocError("ghz_class_protocol: g_x must commute with sigma_x");
  Mat gram = g_x.adjoint() * g_x;
  if (std::abs(gram.trace().real() - 1.0) > 1e-10 || std::abs(gram.trace().imag()) > 1e-12)
    throw SymlocError("ghz_class_protocol: need tr(g_x^dag g_x) = 1");

  const Mat z4 = zrot(M_PI / 4);
  const Mat zm4 = zrot(-M_PI / 4);
  const Mat m1 = g_x * z4;
  const Mat m2 = g_x * z4 * sx;

  std::shared_ptr<LoccRound> next;
  for (int j = n - 1; j >= 0; --j) {
    auto round = std::make_shared<LoccRound>();
    round->acting_party = j;
    LoccRound::Branch b1, b2;
    b1.kraus = m1;
    b2.kraus = m2;
    if (j < n - 1) {
      b1.corrections.push_back({n - 1, zm4});
      for (int i = 0; i < n; ++i)
        if (i != j && i != n - 1) b2.corrections.push_back({i, sx});
      b2.corrections.push_back({n - 1, zm4 * sx});
    } else {
      for (int i = 0; i < n - 1; ++i) b2.corrections.push_back({i, sx});
    }
    b1.child = next;
    b2.child = next;
    round->branches = {std::move(b1), std::move(b2)};
    next = round;
  }

  LoccProtocol proto;
  proto.root = next;
  ProductOp op(std::vector<Mat>(n, g_x));
  op.ops[n - 1] = g_x * z4;
  proto.declared_target = apply_product(ghz(n, 2), op);
  return proto;
}

Qutrit4Fixture qutrit4_fixture() {
  Qutrit4Fixture fx;
  const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0);
  const double p = (1.0 - s2 + s3) / 2.0;
  const double q = (std::sqrt(2.0 + s2) - 1.0) / (1.0 + s2);
  fx.p = p;
  fx.q = q;
  fx.seed = psi_mu(Cplx(0, s2));

  Mat g1(3, 3), g2(3, 3), h1(3, 3), h2(3, 3);
  g1 << Cplx(2 * p + 2, 0), Cplx(1, -(2 * p - 1)), p * Cplx(1, -s3),
      Cplx(1, 2 * p - 1), Cplx(4 - 2 * p, 0), Cplx(0, 0),
      p * Cplx(1, s3), Cplx(0, 0), Cplx(2, 0);
  g2 << Cplx(3, 0), Cplx(3 - 2 / (1 - q), -1), q / s2 * Cplx(3 + s2, 1),
      Cplx(3 - 2 / (1 - q), 1), Cplx(5, 0), Cplx(0, 0),
      q / s2 * Cplx(3 + s2, -1), Cplx(0, 0), Cplx(4, 0);
  h1 << Cplx(4, 0), Cplx(1, -1), (1 + s3) / 2 * Cplx(1, -1),
      Cplx(1, 1), Cplx(2, 0), Cplx(1, 0),
      (1 + s3) / 2 * Cplx(1, 1), Cplx(1, 0), Cplx(2, 0);
  h2 << Cplx(5, 0), Cplx(-(1 + q) / (1 - q), -1), Cplx(1, 1) / s2,
      Cplx(-(1 + q) / (1 - q), 1), Cplx(3, 0), Cplx(1, 0),
      Cplx(1, -1) / s2, Cplx(1, 0), Cplx(4, 0);
  fx.g1 = g1;
  fx.g2 = g2;
  fx.h1 = h1;
  fx.h2 = h2;

  ProductOp init_op = ProductOp::identity(4, 3);
  init_op.ops[0] = hermitian_sqrt(g1);
  init_op.ops[1] = hermitian_sqrt(g2);
  fx.initial = apply_product(fx.seed, init_op);
  ProductOp tgt_op = ProductOp::identity(4, 3);
  tgt_op.ops[0] = hermitian_sqrt(h1);
  tgt_op.ops[1] = hermitian_sqrt(h2);
  fx.target = apply_product(fx.seed, tgt_op);
  return fx;
}

LoccProtocol qutrit4_probabilistic_protocol() {
  Qutrit4Fixture fx = qutrit4_fixture();
  const double p = fx.p, q = fx.q;
  const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0), s6 = std::sqrt(6.0);

  Mat g1s = hermitian_sqrt(fx.g1), g2s = hermitian_sqrt(fx.g2);
  Mat h1s = hermitian_sqrt(fx.h1), h2s = hermitian_sqrt(fx.h2);
  Mat g1inv = g1s.inverse(), g2inv = g2s.inverse();

  auto block2 = [](Cplx a00, Cplx a01, Cplx a10, Cplx a11, Cplx corner) {
    Mat m = Mat::Zero(3, 3);
    m(0, 0) = a00;
    m(0, 1) = a01;
    m(1, 0) = a10;
    m(1, 1) = a11;
    m(2, 2) = corner;
    return m;
  };

  const Cplx e3pi4 = std::exp(Cplx(0, 3 * M_PI / 4));
  const Cplx em3pi4 = std::exp(Cplx(0, -3 * M_PI / 4));

  // Round-1 symmetry and the branch-2 round-2 frame symmetries.
  Mat sy1 = block2(0, e3pi4, e3pi4, 0, 1);
  Mat sy2 = block2(0, 1, 1, 0, Cplx(1, 1) / s2);
  Mat sy3 = block2(0, 1, 1, 0, 1);
  Mat sy4 = block2(0, em3pi4, em3pi4, 0, Cplx(1, -1) / s2);

  // Branch-1 deterministic-step symmetries (bar family).
  Cplx xb2 = q * Cplx(1 + s2, 1) / (2 * (1 - q));
  Cplx xb1 = Cplx(1, s3) / (4.0 * xb2);
  Cplx yb1 = (Cplx(1, 1) - s6 * e3pi4) / 2.0 * xb1;
  Mat sb2 = block2(xb2, -Cplx(0, 1) * xb2, xb2, Cplx(0, 1) * xb2, 1);
  Mat sb1 = block2(xb1, -Cplx(0, 1) * xb1, xb1, Cplx(0, 1) * xb1, yb1);
  Mat sb3 = block2(1 / s2, -Cplx(0, 1) / s2, 1 / s2, Cplx(0, 1) / s2, 1);
  Mat sb4 = block2(1 / s2, -Cplx(0, 1) / s2, 1 / s2, Cplx(0, 1) / s2, 1.0 / yb1);

  // Branch-2 deterministic-step symmetries (tilde family).
  Cplx xt2 = Cplx(0, 1) * q * Cplx(1 + s2, 1) / (2 * (1 - q));
  Cplx xt1 = Cplx(1, -s3) / (4.0 * xt2);
  Cplx yt1 = (Cplx(1, -1) + s6 * std::exp(Cplx(0, M_PI / 4))) / 2.0 * xt1;
  Mat st2 = block2(xt2, xt2, Cplx(0, 1) * xt2, -Cplx(0, 1) * xt2, 1);
  Mat st1 = block2(xt1, xt1, Cplx(0, 1) * xt1, -Cplx(0, 1) * xt1, yt1);
  Mat st3 = block2(1 / s2, 1 / s2, Cplx(0, 1) / s2, -Cplx(0, 1) / s2, 1);
  Mat st4 = block2(1 / s2, 1 / s2, Cplx(0, 1) / s2, -Cplx(0, 1) / s2, 1.0 / yt1);

  // Round 2, branch 1: measurement {sqrt(q) h2 g2^{-1}, sqrt(1-q) h2 sb2 g2^{-1}}.
  auto round2a = std::make_shared<LoccRound>();
  round2a->acting_party = 1;
  {
    LoccRound::Branch m1, m2;
    m1.kraus = std::sqrt(q) * h2s * g2inv;
    m2.kraus = std::sqrt(1 - q) * h2s * sb2 * g2inv;
    m2.corrections.push_back({0, h1s * sb1 * h1s.inverse()});
    m2.corrections.push_back({2, sb3});
    m2.corrections.push_back({3, sb4});
    round2a->branches = {std::move(m1), std::move(m2)};
  }

  // Round 2, branch 2: measurement {sqrt(q) h2 s2 g2^{-1}, sqrt(1-q) h2 st2 s2 g2^{-1}}.
  auto round2b = std::make_shared<LoccRound>();
  round2b->acting_party = 1;
  {
    LoccRound::Branch m1, m2;
    m1.kraus = std::sqrt(q) * h2s * sy2 * g2inv;
    m1.corrections.push_back({2, sy3});
    m1.corrections.push_back({3, sy4});
    m2.kraus = std::sqrt(1 - q) * h2s * st2 * sy2 * g2inv;
    m2.corrections.push_back({0, h1s * st1 * h1s.inverse()});
    m2.corrections.push_back({2, st3 * sy3});
    m2.corrections.push_back({3, st4 * sy4});
    round2b->branches = {std::move(m1), std::move(m2)};
  }

  auto round1 = std::make_shared<LoccRound>();
  round1->acting_party = 0;
  {
    LoccRound::Branch m1, m2;
    m1.kraus = std::sqrt(p) * h1s * g1inv;
    m1.child = round2a;
    m2.kraus = std::sqrt(1 - p) * h1s * sy1 * g1inv;
    m2.child = round2b;
    round1->branches = {std::move(m1), std::move(m2)};
  }

  LoccProtocol proto;
  proto.root = round1;
  proto.declared_target = fx.target;
  return proto;
}

}  // namespace symloc
