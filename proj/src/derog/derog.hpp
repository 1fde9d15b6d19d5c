#pragma once

#include <string>
#include <vector>

#include "locc/decisions.hpp"
#include "stab/stabilizer.hpp"
#include "states/states.hpp"

namespace symloc {

enum class RepType { Type1, Type2, None };

struct QutritRep {
  std::string id;
  PureState state;
  RepType type_tag = RepType::None;
  Mat b_matrix;  // Jordan witness of the B (x) B^{-1} symmetry
  std::optional<Cplx> mu;
};

// n = 3: the five non-derogatory classes (a)-(e); n = 4: the four fixed
// derogatory representatives plus the psi(mu) family member; n = 5: the
// all-isolated derogatory class.
std::vector<QutritRep> representatives(int n, std::optional<Cplx> mu = std::nullopt);

QutritRep representative_by_id(const std::string& id, std::optional<Cplx> mu = std::nullopt);

// The five 4-qutrit type-2 case states of the SLOCC-reach constructions
// (cases (a)-(e)); three of them are non-derogatory.
std::vector<QutritRep> reach_case_representatives();

// The case-wise SLOCC map A with A^{(x)n} |rep> ∝ target; `b` are the
// type-appropriate coefficients of the target (psi2 coordinates for type-2
// representatives, psi1 coordinates for type-1).
Mat slocc_reach(const QutritRep& rep, const std::vector<Cplx>& b);

// Structural zero-pattern check of the local symmetries:
// block-diagonal for type 1, upper triangular for type 2.
bool symmetry_structure_check(const QutritRep& rep, const std::vector<Mat>& s, double tol = 1e-9);

// Strictly positive fixture grams (tridiagonal pattern at three sites, arrow
// pattern at the fourth) that defeat every family component.
std::vector<GramFactor> isolation_fixture_grams(const QutritRep& rep);

struct ReachConvertFixture {
  std::string name;
  LoccScene scene;
  Verdict expect_reach;
  Verdict expect_convert;
  std::vector<double> expect_weights;  // certificate mixing weights
};

// The reach/convert scenes of the 4-qutrit analysis with their expected
// verdicts and mixing weights.
std::vector<ReachConvertFixture> reach_convert_fixtures(const QutritRep& rep);

// Class-level isolation certificate for the 5-qutrit derogatory class: the
// non-diagonalizability census plus the quasi-commutation corollary; holds
// for arbitrary grams.
struct PsiDerogReport {
  bool every_nontrivial_has_two_defective = true;
  int samples_checked = 0;
  std::string argument;
};
PsiDerogReport psi_derog_isolation_report(int samples = 50, std::uint64_t seed = 17);

// |E_k^{n_1..n_K}> = |Psi_{n_b}> (x) |E_k> for equal block sizes; returns the
// two tensor factors.
std::pair<PureState, PureState> multicopy_factorization(const DerogSpec& spec);

// Reassemble the two factors through |i^(b)> -> |b-1> (x) |i>.
PureState multicopy_reassemble(const PureState& blocks, const PureState& eks);

}  // namespace symloc
