#pragma once

#include <optional>
#include <vector>

#include "core/rng.hpp"
#include "core/types.hpp"

namespace symloc {

// B ∝ scale * R diag(e^{i phases}) R^{-1}; phase_classes partitions the
// eigenvalue indices by degenerate phase.
struct UnitarySimilarity {
  Mat R;
  std::vector<double> phases;
  Cplx scale{1.0, 0.0};
  std::vector<std::vector<int>> phase_classes;

  Mat reconstruct() const;
};

// All positive A with B^dag A B ∝ A: A ∝ R^{-dag} X R^{-1} with X block
// positive on the degenerate phase classes.
struct PositiveSolutionSpace {
  UnitarySimilarity similarity;

  Mat sample(Rng& rng, double floor = 0.1) const;
  bool contains(const Mat& a, double tol = kPropTol) const;
};

// S^dag G S = lambda G with lambda real positive; the scalar is a complex
// least-squares fit, reported absent when its imaginary part exceeds tol or
// the residual does.
std::optional<double> quasi_commutes(const Mat& s, const Mat& g, double tol = kPropTol);

// Eigen-factorization side of the quasi-commutation dichotomy: succeeds
// iff B is diagonalizable within tol (eigenvector condition number < 1/tol)
// and all eigenvalue moduli agree within tol. Near-defective inputs come back
// absent (indeterminate), never misclassified.
std::optional<UnitarySimilarity> factor_unitary_similarity(const Mat& b,
                                                            double tol = kDiagGateTol);

std::optional<PositiveSolutionSpace> positive_solution_space(const Mat& b,
                                                              double tol = kDiagGateTol);

// The unique family quasi-commuting with the corner gram:
// A = diag(1, x, ..., x^k) + a (1/conj(x)^{k-1} - x^k) |k-1><k| for |x| = 1.
Mat corner_family(int k, Cplx a, Cplx x, double tol = kPropTol);

// The corner factor g = 1 + a |k-1><k|.
Mat corner_gram(int k, Cplx a);

// Both directions of the characterization: true iff A matches the family form with
// |x| = 1 (cross-validated against quasi_commutes on g^dag g).
bool corner_characterize(int k, Cplx a, const Mat& A, double tol = kPropTol);

}  // namespace symloc
