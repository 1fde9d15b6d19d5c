#include "proto/protocol.hpp"

#include <cmath>
#include <functional>

namespace symloc {

double LoccRound::completeness_residual() const {
  if (branches.empty()) return 1.0;
  int d = static_cast<int>(branches.front().kraus.rows());
  Mat acc = Mat::Zero(d, d);
  for (const Branch& b : branches) acc += b.kraus.adjoint() * b.kraus;
  return (acc - Mat::Identity(d, d)).norm();
}

int LoccProtocol::depth() const {
  std::function<int(const LoccRound*)> rec = [&](const LoccRound* r) -> int {
    if (!r) return 0;
    int best = 0;
    for (const auto& b : r->branches) best = std::max(best, rec(b.child.get()));
    return 1 + best;
  };
  return rec(root.get());
}

double LoccProtocol::max_completeness_residual() const {
  double worst = 0.0;
  std::function<void(const LoccRound*)> rec = [&](const LoccRound* r) {
    if (!r) return;
    worst = std::max(worst, r->completeness_residual());
    for (const auto& b : r->branches) rec(b.child.get());
  };
  rec(root.get());
  return worst;
}

std::vector<BranchOutcome> simulate(const LoccProtocol& protocol, const PureState& initial,
                                    double completeness_tol) {
  if (!protocol.root) throw SymlocError("simulate: empty protocol");
  const double init_norm2 = initial.amps.squaredNorm();
  if (init_norm2 == 0.0) throw SymlocError("simulate: zero initial state");

  std::vector<BranchOutcome> outcomes;
  std::function<void(const LoccRound*, const PureState&, std::vector<int>&)> rec =
      [&](const LoccRound* round, const PureState& state, std::vector<int>& path) {
        double resid = round->completeness_residual();
        if (resid > completeness_tol)
          throw SymlocError("simulate: POVM completeness violated (residual " +
                            std::to_string(resid) + ")");
        for (size_t m = 0; m < round->branches.size(); ++m) {
          const auto& br = round->branches[m];
          PureState next = apply_at_site(state, br.kraus, round->acting_party);
          for (const auto& [party, u] : br.corrections) {
            Mat gram = u.adjoint() * u;
            if ((gram - Mat::Identity(gram.rows(), gram.cols())).norm() > 1e-8)
              throw SymlocError("simulate: correction at party " + std::to_string(party) +
                                " is not unitary");
            next = apply_at_site(next, u, party);
          }
          path.push_back(static_cast<int>(m));
          if (br.child) {
            rec(br.child.get(), next, path);
          } else {
            BranchOutcome out;
            out.path = path;
            out.probability = next.amps.squaredNorm() / init_norm2;
            out.state = out.probability > 0 ? next.unit() : next;
            outcomes.push_back(std::move(out));
          }
          path.pop_back();
        }
      };
  std::vector<int> path;
  rec(protocol.root.get(), initial, path);
  return outcomes;
}

bool is_deterministic(const std::vector<BranchOutcome>& outcomes, const PureState& target,
                      double tol) {
  if (outcomes.empty()) return false;
  for (const auto& o : outcomes) {
    if (o.probability <= 0) continue;
    if (!proportional(o.state, target, tol)) return false;
  }
  return true;
}

}  // namespace symloc
