#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "core/tensor.hpp"
#include "core/types.hpp"

namespace symloc {

// One measurement round: the acting party's Kraus operators with, per
// outcome, correcting unitaries for the other parties and an optional
// follow-up round. Corrections are applied eagerly so branch states are
// carried in the corrected frame.
struct LoccRound {
  struct Branch {
    Mat kraus;
    std::vector<std::pair<int, Mat>> corrections;
    std::shared_ptr<LoccRound> child;
  };
  int acting_party = 0;
  std::vector<Branch> branches;

  // || sum_m kraus^dag kraus - 1 ||, the POVM completeness residual.
  double completeness_residual() const;
};

struct LoccProtocol {
  std::shared_ptr<LoccRound> root;
  std::optional<PureState> declared_target;

  int depth() const;
  // Maximum completeness residual over all rounds in the tree.
  double max_completeness_residual() const;
};

struct BranchOutcome {
  std::vector<int> path;
  double probability = 0.0;
  PureState state;  // normalized at leaves
};

// Depth-first evaluation; leaf probabilities are squared norms of the
// unnormalized branch states relative to the initial norm. Throws when a
// round's completeness residual exceeds completeness_tol.
std::vector<BranchOutcome> simulate(const LoccProtocol& protocol, const PureState& initial,
                                    double completeness_tol = 1e-10);

// Every leaf state proportional to the target within tol.
bool is_deterministic(const std::vector<BranchOutcome>& outcomes, const PureState& target,
                      double tol = kPropTol);

}  // namespace symloc
