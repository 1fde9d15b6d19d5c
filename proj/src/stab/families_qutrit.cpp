#include <cmath>

#include "core/linalg.hpp"
#include "stab/stabilizer.hpp"

namespace symloc {

namespace {

Cplx param_or(const std::vector<Cplx>& p, size_t i, Cplx fallback) {
  return i < p.size() ? p[i] : fallback;
}

std::optional<SymmetryElement> checked(const PureState& seed, ProductOp op, SymTag tag,
                                       double tol = 1e-8) {
  auto lam = verify_symmetry(seed, op, tol);
  if (!lam) return std::nullopt;
  return SymmetryElement{std::move(op), *lam, tag};
}

Mat diag3(Cplx a, Cplx b, Cplx c) {
  Mat m = Mat::Zero(3, 3);
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  return m;
}

// x_j with the product constraint folded into the last site.
std::vector<Cplx> constrained_four(const std::vector<Cplx>& p, size_t base, Cplx product) {
  std::vector<Cplx> x(4);
  Cplx acc(1, 0);
  for (int j = 0; j < 3; ++j) {
    x[j] = param_or(p, base + j, Cplx(1, 0));
    if (std::abs(x[j]) == 0.0) x[j] = Cplx(1, 0);
    acc *= x[j];
  }
  x[3] = product / acc;
  return x;
}

// B-pair components shared by the type-1 / type-2 representatives.
void add_b1_pairs(StabilizerFamily& fam) {
  PureState seed = fam.seed;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i == j) continue;
      FamilyComponent c;
      c.tag = SymTag::ToeplitzBB;
      c.name = "b1(" + std::to_string(i) + "," + std::to_string(j) + ")";
      c.angular_params = 1;
      c.radial_params = 1;
      c.structure = {ComponentStructure::Diagonal, ComponentStructure::PairLocalized};
      c.defaults = {Cplx(2, 0)};
      c.sampler = [seed, i, j](const std::vector<Cplx>& p) -> std::optional<SymmetryElement> {
        Cplx w = param_or(p, 0, Cplx(2, 0));
        if (std::abs(w) == 0.0) return std::nullopt;
        ProductOp op = ProductOp::identity(4, 3);
        op.ops[i] = diag3(1, 1, w);
        op.ops[j] = diag3(1, 1, Cplx(1, 0) / w);
        return checked(seed, std::move(op), SymTag::ToeplitzBB);
      };
      fam.components.push_back(std::move(c));
    }
  }
}

void add_b2_pairs(StabilizerFamily& fam) {
  PureState seed = fam.seed;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i == j) continue;
      FamilyComponent c;
      c.tag = SymTag::ToeplitzBB;
      c.name = "b2(" + std::to_string(i) + "," + std::to_string(j) + ")";
      c.free_complex_params = 1;
      c.structure = {ComponentStructure::UpperTriangular, ComponentStructure::PairLocalized};
      c.defaults = {Cplx(1, 0)};
      c.sampler = [seed, i, j](const std::vector<Cplx>& p) -> std::optional<SymmetryElement> {
        Cplx w = param_or(p, 0, Cplx(1, 0));
        Mat b = Mat::Identity(3, 3);
        b(0, 2) = w;
        Mat binv = Mat::Identity(3, 3);
        binv(0, 2) = -w;
        ProductOp op = ProductOp::identity(4, 3);
        op.ops[i] = b;
        op.ops[j] = binv;
        return checked(seed, std::move(op), SymTag::ToeplitzBB);
      };
      fam.components.push_back(std::move(c));
    }
  }
}

void add_type1_diag(StabilizerFamily& fam, double sign) {
  PureState seed = fam.seed;
  FamilyComponent c;
  c.tag = SymTag::BlockGauge;
  c.name = sign > 0 ? "diag(+)" : "diag(-)";
  c.free_complex_params = 6;
  c.structure = {ComponentStructure::Diagonal};
  c.defaults.assign(6, Cplx(1, 0));
  c.sampler = [seed, sign](const std::vector<Cplx>& p) -> std::optional<SymmetryElement> {
    auto x = constrained_four(p, 0, Cplx(1, 0));
    auto y = constrained_four(p, 3, Cplx(1, 0));
    std::vector<Mat> ops(4);
    for (int j = 0; j < 4; ++j) ops[j] = diag3(x[j], sign * x[j], y[j]);
    return checked(seed, ProductOp(std::move(ops)), SymTag::BlockGauge);
  };
  fam.components.push_back(std::move(c));
}

// Swap on the qubit block: [[0, s/b],[b, 0]] times x_j, plus y_j on level 2.
void add_type1_swap(StabilizerFamily& fam, double sign, bool with_b) {
  PureState seed = fam.seed;
  FamilyComponent c;
  c.tag = SymTag::BlockPerm;
  c.name = sign > 0 ? "swap(+)" : "swap(-)";
  c.free_complex_params = 6 + (with_b ? 1 : 0);
  c.structure = {ComponentStructure::Monomial};
  c.defaults.assign(6 + (with_b ? 1 : 0), Cplx(1, 0));
  c.sampler = [seed, sign, with_b](const std::vector<Cplx>& p) -> std::optional<SymmetryElement> {
    auto x = constrained_four(p, 0, Cplx(1, 0));
    auto y = constrained_four(p, 3, Cplx(1, 0));
    Cplx b = with_b ? param_or(p, 6, Cplx(1, 0)) : Cplx(1, 0);
    if (std::abs(b) == 0.0) return std::nullopt;
    std::vector<Mat> ops(4);
    for (int j = 0; j < 4; ++j) {
      Mat m = Mat::Zero(3, 3);
      m(0, 1) = sign * x[j] / b;
      m(1, 0) = x[j] * b;
      m(2, 2) = y[j];
      ops[j] = m;
    }
    return checked(seed, ProductOp(std::move(ops)), SymTag::BlockPerm);
  };
  fam.components.push_back(std::move(c));
}

// diag(x_j a, +/- x_j / a, y_j) with the shared scale a of |S^4_2>+|2^4>.
void add_s42_diag(StabilizerFamily& fam, double sign) {
  PureState seed = fam.seed;
  FamilyComponent c;
  c.tag = SymTag::BlockGauge;
  c.name = sign > 0 ? "diag_a(+)" : "diag_a(-)";
  c.angular_params = 1;
  c.radial_params = 1;
  c.free_complex_params = 6;
  c.structure = {ComponentStructure::Diagonal};
  c.defaults.assign(6, Cplx(1, 0));
  c.sampler = [seed, sign](const std::vector<Cplx>& p) -> std::optional<SymmetryElement> {
    Cplx a = param_or(p, 0, Cplx(1, 0));
    if (std::abs(a) == 0.0) return std::nullopt;
    auto x = constrained_four(p, 1, Cplx(1, 0));
    auto y = constrained_four(p, 4, Cplx(1, 0));
    std::vector<Mat> ops(4);
    for (int j = 0; j < 4; ++j) ops[j] = diag3(x[j] * a, sign * x[j] / a, y[j]);
    return checked(seed, ProductOp(std::move(ops)), SymTag::BlockGauge);
  };
  fam.components.push_back(std::move(c));
}

// The extra A_3-type component of |psi(mu = sqrt(2) i)>. The discrete phase
// table enumerates delta, phi in {pi/2, 3pi/2}, alpha+beta fixed by
// e^{i(alpha+beta+phi)} = i, and the product of the x'_j pinned per branch.
// For mu = -sqrt(2) i everything is conjugated.
void add_psimu_a3(StabilizerFamily& fam, bool conjugated) {
  PureState seed = fam.seed;
  const double pi = M_PI;
  int idx = 0;
  for (double delta : {pi / 2, 3 * pi / 2}) {
    for (double phi : {pi / 2, 3 * pi / 2}) {
      for (int ab = 0; ab < 2; ++ab) {
        // alpha + beta = pi/2 - phi (mod 2pi); split into the two sign choices.
        double alpha, beta;
        double target = pi / 2 - phi;
        if (ab == 0) {
          alpha = 0.0;
          beta = target;
        } else {
          alpha = pi;
          beta = target - pi;
        }
        Mat kblock(2, 2);
        kblock(0, 0) = Cplx(1, 0);
        kblock(0, 1) = std::exp(Cplx(0, (delta + phi) / 2 + beta));
        kblock(1, 0) = Cplx(0, 1) * std::exp(Cplx(0, (delta + phi) / 2 + alpha));
        kblock(1, 1) = std::exp(Cplx(0, delta));
        bool branch_plus = std::abs(std::exp(Cplx(0, delta + phi)) - Cplx(1, 0)) < 1e-9;
        Cplx xprod = branch_plus ? Cplx(1.0 / 8, -std::sqrt(3.0) / 8)
                                 : Cplx(1.0 / 8, std::sqrt(3.0) / 8);
        if (conjugated) {
          kblock = kblock.conjugate();
          xprod = std::conj(xprod);
        }

        FamilyComponent c;
        c.tag = SymTag::Explicit;
        c.name = "a3_" + std::to_string(idx++);
        c.free_complex_params = 6;
        c.structure = {ComponentStructure::General};
        c.defaults.assign(6, Cplx(1, 0));
        c.sampler = [seed, kblock, xprod](const std::vector<Cplx>& p)
            -> std::optional<SymmetryElement> {
          auto x = constrained_four(p, 0, xprod);
          auto y = constrained_four(p, 3, Cplx(1, 0));
          std::vector<Mat> ops(4);
          for (int j = 0; j < 4; ++j) {
            Mat m = Mat::Zero(3, 3);
            m.block(0, 0, 2, 2) = x[j] * kblock;
            m(2, 2) = y[j];
            ops[j] = m;
          }
          return checked(seed, ProductOp(std::move(ops)), SymTag::Explicit);
        };
        fam.components.push_back(std::move(c));
      }
    }
  }
}

// Type-2 corner family: diagonal part plus y_j |0><2| with sum y_j/x_j = 0.
void add_type2_corner(StabilizerFamily& fam, std::function<Mat(Cplx, const std::vector<Cplx>&, int)> local,
                      const std::string& name, int shared_params) {
  PureState seed = fam.seed;
  FamilyComponent c;
  c.tag = SymTag::SbarGroup;
  c.name = name;
  c.angular_params = shared_params > 0 ? 1 : 0;
  c.radial_params = shared_params > 0 ? 1 : 0;
  c.free_complex_params = 6;
  c.structure = {ComponentStructure::UpperTriangular};
  c.defaults.assign(shared_params > 0 ? 7 : 6, Cplx(1, 0));
  for (size_t q = c.defaults.size() - 3; q < c.defaults.size(); ++q) c.defaults[q] = Cplx(0, 0);
  c.sampler = [seed, local, shared_params](const std::vector<Cplx>& p)
      -> std::optional<SymmetryElement> {
    Cplx a = shared_params > 0 ? param_or(p, 0, Cplx(1, 0)) : Cplx(1, 0);
    if (std::abs(a) == 0.0) return std::nullopt;
    size_t base = shared_params > 0 ? 1 : 0;
    auto x = constrained_four(p, base, Cplx(1, 0));
    std::vector<Cplx> y(4);
    Cplx ratio_sum(0, 0);
    for (int j = 0; j < 3; ++j) {
      y[j] = param_or(p, base + 3 + j, Cplx(0, 0));
      ratio_sum += y[j] / x[j];
    }
    y[3] = -ratio_sum * x[3];
    std::vector<Mat> ops(4);
    for (int j = 0; j < 4; ++j) {
      std::vector<Cplx> xy{x[j], y[j]};
      ops[j] = local(a, xy, j);
    }
    return checked(seed, ProductOp(std::move(ops)), SymTag::SbarGroup);
  };
  fam.components.push_back(std::move(c));
}

}  // namespace

StabilizerFamily qutrit4_symmetry_family(const std::string& rep_id, std::optional<Cplx> mu_in) {
  StabilizerFamily fam;
  fam.kind = SeedKind::Qutrit4Rep;
  fam.completeness = Completeness::Complete;
  fam.rep_id = rep_id;

  if (rep_id == "S42+24") {
    PureState seed = snk(4, 2);
    seed.amps += fnk(4, 4).amps;  // |2^4>
    fam.seed = seed;
    add_s42_diag(fam, +1.0);
    add_s42_diag(fam, -1.0);
    add_type1_swap(fam, +1.0, /*with_b=*/true);
    add_type1_swap(fam, -1.0, /*with_b=*/true);
    add_b1_pairs(fam);
    return fam;
  }
  if (rep_id == "04+S42+24") {
    PureState seed = snk(4, 0);
    seed.amps += snk(4, 2).amps;
    seed.amps += fnk(4, 4).amps;
    fam.seed = seed;
    add_type1_diag(fam, +1.0);
    add_type1_diag(fam, -1.0);
    add_b1_pairs(fam);
    return fam;
  }
  if (rep_id == "psi_mu" || rep_id == "psi_mu_sqrt2i") {
    Cplx mu = rep_id == "psi_mu_sqrt2i" ? Cplx(0, std::sqrt(2.0)) : Cplx(0.7, 0.4);
    if (mu_in) mu = *mu_in;
    static const double kMuKeyTol = 1e-9;
    const Cplx sqrt2i(0, std::sqrt(2.0));
    for (Cplx bad : {Cplx(0, 0), Cplx(std::sqrt(2.0 / 3.0), 0), Cplx(-std::sqrt(2.0 / 3.0), 0),
                     Cplx(std::sqrt(6.0), 0), Cplx(-std::sqrt(6.0), 0)})
      if (std::abs(mu - bad) <= kMuKeyTol)
        throw SymlocError("qutrit4_symmetry_family: mu value excluded (non-derogatory class)");
    fam.seed = psi_mu(mu);
    add_type1_diag(fam, +1.0);
    add_type1_diag(fam, -1.0);
    add_type1_swap(fam, +1.0, /*with_b=*/false);
    add_type1_swap(fam, -1.0, /*with_b=*/false);
    if (std::abs(mu - sqrt2i) <= kMuKeyTol) add_psimu_a3(fam, /*conjugated=*/false);
    if (std::abs(mu + sqrt2i) <= kMuKeyTol) add_psimu_a3(fam, /*conjugated=*/true);
    add_b1_pairs(fam);
    return fam;
  }
  if (rep_id == "14+S42+F41") {
    PureState seed = snk(4, 4);  // |1^4>
    seed.amps += snk(4, 2).amps;
    seed.amps += fnk(4, 1).amps;
    fam.seed = seed;
    for (double sign : {+1.0, -1.0}) {
      add_type2_corner(
          fam,
          [sign](Cplx, const std::vector<Cplx>& xy, int) {
            Mat m = diag3(xy[0], sign * xy[0], xy[0]);
            m(0, 2) = xy[1];
            return m;
          },
          sign > 0 ? "corner(+)" : "corner(-)", /*shared_params=*/0);
    }
    add_b2_pairs(fam);
    return fam;
  }
  if (rep_id == "S43+F41") {
    PureState seed = snk(4, 3);
    seed.amps += fnk(4, 1).amps;
    fam.seed = seed;
    {
      // The sign element 1 ⊕ -1 ⊕ -1 at every site (lambda = -1); it lives
      // at a^4 = -1 with a compensating gauge, so the sweeps cannot reach it.
      FamilyComponent c;
      c.tag = SymTag::Explicit;
      c.name = "sign";
      c.structure = {ComponentStructure::Diagonal};
      c.homogeneous = true;
      ProductOp op(std::vector<Mat>(4, diag3(1, -1, -1)));
      auto el = checked(seed, std::move(op), SymTag::Explicit);
      if (!el) throw SymlocError("S43+F41 sign element failed verification");
      c.discrete.push_back(*el);
      fam.components.push_back(std::move(c));
    }
    for (int m3 = 0; m3 < 3; ++m3) {
      Cplx phase = std::exp(Cplx(0, 2.0 * M_PI * m3 / 3.0));
      add_type2_corner(
          fam,
          [phase](Cplx a, const std::vector<Cplx>& xy, int) {
            Cplx a13 = std::pow(a, 1.0 / 3.0);
            Mat m = diag3(xy[0] * a, xy[0] * phase / a13, xy[0] / (a * a * a));
            m(0, 2) = xy[1];
            return m;
          },
          "corner_m" + std::to_string(m3), /*shared_params=*/1);
    }
    add_b2_pairs(fam);
    return fam;
  }
  throw SymlocError("qutrit4_symmetry_family: unknown representative id " + rep_id);
}

SymmetryElement psi_derog_element(const std::vector<Cplx>& a4) {
  if (a4.size() != 4) throw SymlocError("psi_derog_element: need a_1..a_4");
  std::vector<Mat> ops(5);
  Cplx sum(0, 0);
  for (int i = 0; i < 4; ++i) {
    Mat m = Mat::Identity(3, 3);
    m(1, 2) = a4[i];
    ops[i] = m;
    sum += a4[i];
  }
  Mat last = Mat::Identity(3, 3);
  last(1, 2) = -sum;
  ops[4] = last;
  auto lam = verify_symmetry(psi_derog_5qutrit(), ProductOp(ops), 1e-8);
  if (!lam) throw SymlocError("psi_derog_element: verification failed");
  return SymmetryElement{ProductOp(std::move(ops)), *lam, SymTag::Explicit};
}

StabilizerFamily psi_derog_stabilizer() {
  StabilizerFamily fam;
  fam.seed = psi_derog_5qutrit();
  fam.kind = SeedKind::PsiDerog5;
  fam.completeness = Completeness::Complete;
  FamilyComponent c;
  c.tag = SymTag::Explicit;
  c.name = "shear";
  c.free_complex_params = 4;
  c.structure = {ComponentStructure::UpperTriangular};
  c.defaults.assign(4, Cplx(0, 0));
  c.sampler = [](const std::vector<Cplx>& p) -> std::optional<SymmetryElement> {
    std::vector<Cplx> a(4, Cplx(0, 0));
    for (size_t i = 0; i < 4 && i < p.size(); ++i) a[i] = p[i];
    return psi_derog_element(a);
  };
  fam.components.push_back(std::move(c));
  return fam;
}

}  // namespace symloc
