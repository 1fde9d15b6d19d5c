#pragma once

#include <optional>
#include <string>
#include <vector>

#include "locc/monotones.hpp"
#include "proto/protocol.hpp"
#include "stab/stabilizer.hpp"

namespace symloc {

struct GridConfig {
  int angular_points = 12;
  int radial_points = 5;
  int joint_samples = 64;
  int refine_steps = 8;
  std::uint64_t rng_seed = 0x5d15u;
};

struct LoccScene {
  PureState seed;
  StabilizerFamily stabilizer;
  std::vector<GramFactor> grams;
  double tol = kPropTol;
  GridConfig grid;
  // Optional hint consumed by convertible_locc1: a candidate target gram at
  // the acting site whose mixture weights should be solved for directly.
  std::optional<Mat> target_gram_hint;
  std::optional<int> acting_site_hint;

  void validate() const;
};

LoccScene make_scene(StabilizerFamily family, std::vector<GramFactor> grams,
                     double tol = kPropTol);

enum class Verdict { Witnessed, RefutedComplete, NoWitnessFound };

struct ConversionCertificate {
  int acting_site = 0;
  GramFactor target_gram;                 // H_1
  std::vector<SymmetryElement> symmetries;  // S_k = S^k
  std::vector<double> probabilities;
  double mixture_residual = 0.0;
  bool nontriviality_grid_checked = false;  // clause (ii) swept on the grid only
};

struct Decision {
  Verdict verdict = Verdict::NoWitnessFound;
  // Witnessed payloads.
  std::optional<SymmetryElement> witness;
  std::optional<int> distinguished_site;
  std::optional<ConversionCertificate> certificate;
  // RefutedComplete provenance.
  std::string closure_argument;
  // Search transcript.
  std::string search_report;
};

// Reachability: exists S with quasi-commutation at n-1 sites and a
// proportionality failure at the distinguished one.
Decision reachable(const LoccScene& scene);

// Single-round convertibility via the constructive recipe
// (H_j = G_j + beta X, zero-sum phase distribution).
Decision convertible_locc1(const LoccScene& scene);

// Weak isolation: no nontrivial S quasi-commutes at any n-1 sites.
// Witnessed means NOT isolated (the witness S is returned); RefutedComplete
// certifies isolation.
Decision weakly_isolated(const LoccScene& scene);

// One-round reaching construction. `scene` describes the TARGET state
// (grams = H_i); requires the reachability conditions for (S, site). The protocol's
// initial state is g_1 (x) h_2 ... h_n |seed> with
// G_1 = p H_1 + (1-p) S^dag H_1 S.
LoccProtocol build_reaching_protocol(const LoccScene& scene, const SymmetryElement& s, int site,
                                     double p);

// The initial state the reaching protocol starts from.
PureState reaching_protocol_initial_state(const LoccScene& scene, const SymmetryElement& s,
                                          int site, double p);

// One-round LOCC realization of a conversion certificate: the acting site
// measures A_k = sqrt(p_k) h_1 S_k^(1) g_1^{-1}, the rest rotate back by the
// unitary directions of g_i S_k^(i) g_i^{-1}. `scene` holds the initial
// grams; the certificate's target gram replaces the acting site's.
LoccProtocol build_conversion_protocol(const LoccScene& scene,
                                       const ConversionCertificate& cert);

// Quasi-commutation scan of one element against the scene's grams: the list
// of sites where S^(i) dag G_i S^(i) ∝ G_i holds.
std::vector<bool> quasi_sites(const SymmetryElement& s, const std::vector<GramFactor>& grams,
                              double tol);

}  // namespace symloc
