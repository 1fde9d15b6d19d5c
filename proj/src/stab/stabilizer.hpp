#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "core/rng.hpp"
#include "core/tensor.hpp"
#include "core/types.hpp"
#include "states/states.hpp"

namespace symloc {

enum class SymTag {
  ToeplitzBB,
  PowerDiag,
  SbarGroup,
  BlockGauge,
  BlockPerm,
  MajoranaPerm,
  WFamily,
  DickeDiag,
  DickeSwap,
  Explicit,
};

const char* to_string(SymTag tag);

// A verified local symmetry: op |seed> = lambda |seed>.
struct SymmetryElement {
  ProductOp op;
  Cplx lambda{1.0, 0.0};
  SymTag tag = SymTag::Explicit;

  bool is_trivial(double tol = kPropTol) const;  // all locals proportional to 1
};

// op |seed> =? lambda |seed>; absent when no scalar fits within tol.
std::optional<Cplx> verify_symmetry(const PureState& seed, const ProductOp& op,
                                    double tol = kPropTol);

// Structural facts a family component guarantees for every element it can
// produce; the decision procedures' closure arguments key off these.
enum class ComponentStructure {
  Diagonal,          // every local is diagonal
  Monomial,          // one nonzero per row/column, fixed pattern per element
  UpperTriangular,   // every local upper triangular
  Homogeneous,       // all sites carry the same local (A^{\otimes n})
  PairLocalized,     // identity except at two sites (B (x) B^{-1})
  General,
};

struct FamilyComponent {
  SymTag tag = SymTag::Explicit;
  std::string name;
  int angular_params = 0;  // unit-circle parameters
  int radial_params = 0;   // positive magnitudes attached to the angles
  int free_complex_params = 0;
  std::vector<ComponentStructure> structure;
  bool homogeneous = false;  // same local at every site
  // Continuous sampler over complex parameters; `defaults` fixes the neutral
  // value of each parameter (and the parameter count) for the grid sweeps.
  std::vector<Cplx> defaults;
  std::function<std::optional<SymmetryElement>(const std::vector<Cplx>&)> sampler;
  // Exactly enumerated elements (discrete components).
  std::vector<SymmetryElement> discrete;

  bool has_structure(ComponentStructure s) const;
};

enum class Completeness { Complete, GeneratorsOnly, Heuristic };

// What kind of seed the family describes; closure arguments use this.
enum class SeedKind {
  EkSeed,
  SumsSeed,
  DickeSeed,
  WSeed,
  GenericSymmetricQubit,
  Qutrit4Rep,
  PsiDerog5,
  NonEsDeclared,
  Custom,
};

struct StabilizerFamily {
  PureState seed;
  SeedKind kind = SeedKind::Custom;
  Completeness completeness = Completeness::Heuristic;
  std::vector<FamilyComponent> components;
  // Extra payload for closure arguments.
  int ek_k = 0;
  std::vector<int> block_excitations;  // SumsSeed
  int dicke_k = 0;
  std::string rep_id;  // Qutrit4Rep

  // Every element any component can emit is homogeneous (A^{\otimes n} form).
  bool all_homogeneous() const;
  bool all_diagonal() const;
};

// --- E_k stabilizer machinery ---------------------------------------------

// B at site i, B^{-1} at site j, identity elsewhere, for B the invertible
// upper triangular Toeplitz matrix with first row `entries` (b_0 != 0).
SymmetryElement toeplitz_bb(int k, const std::vector<Cplx>& entries, int site_i, int site_j,
                            int n);

Mat toeplitz_matrix(int k, const std::vector<Cplx>& entries);

// Triangular solve for the unipotent factor: S-bar upper triangular,
// rows generated by [S]_{i+1,l} = sum_j [S]_{i,l-j} y_j, and the level-l
// projections of S^{(x)n}|E_k> forced to zero by solving for [S]_{0,l} in
// increasing l. Free-parameter steps take caller-supplied values (default 0);
// absent when a step is infeasible.
std::optional<Mat> solve_sbar(int k, int n, const std::vector<Cplx>& toeplitz_row,
                              const std::vector<Cplx>& free_values = {}, double tol = 1e-12);

// A = D S-bar with D = diag(1, x, ..., x^k); lambda = x^k.
std::optional<SymmetryElement> ek_an_symmetry(int k, int n, Cplx x, const std::vector<Cplx>& y);

// --- families -------------------------------------------------------------

StabilizerFamily ek_stabilizer(int k, int n);
StabilizerFamily w_stabilizer(int n);
SymmetryElement w_family_element(int n, Cplx x, const std::vector<Cplx>& y);
StabilizerFamily direct_sum_stabilizer(const BlockSpec& spec, int n);
StabilizerFamily dicke_stabilizer(int n, int k);
// rep_id in {"S42+24", "04+S42+24", "psi_mu", "psi_mu_sqrt2i", "14+S42+F41",
// "S43+F41"}. For "psi_mu" an explicit mu may be supplied; the mu = ±sqrt(2)i
// special branch (extra A_3 component) is keyed on exact match within tol.
StabilizerFamily qutrit4_symmetry_family(const std::string& rep_id,
                                         std::optional<Cplx> mu = std::nullopt);
StabilizerFamily psi_derog_stabilizer();
SymmetryElement psi_derog_element(const std::vector<Cplx>& a4);  // a_5 = -(a_1+..+a_4)

// All A^{(x)n} symmetries of a symmetric qubit state with degeneracy
// configuration {1,...,1}, from Majorana root permutations. Includes identity.
std::vector<SymmetryElement> qubit_symmetric_symmetry_search(const PureState& state,
                                                             double tol = 1e-8);

StabilizerFamily qubit_symmetric_family(const PureState& state, double tol = 1e-8);

// Nullspace search for B with (B_(i) - B_(j))|psi> = 0; returns a basis of
// the solution space (always contains the identity). A state is ES iff the
// space is larger than span{1}.
std::vector<Mat> es_witness_space(const PureState& state, double tol = kPropTol);
bool is_exceptionally_symmetric(const PureState& state, double tol = kPropTol);

// Family for a state established to be non-ES: only identity is enumerated,
// but the homogeneity flag is set so structural arguments may fire.
StabilizerFamily non_es_declared_family(const PureState& state);

}  // namespace symloc
