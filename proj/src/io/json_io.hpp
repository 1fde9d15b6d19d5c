#pragma once

#include <json.hpp>

#include "derog/derog.hpp"
#include "locc/decisions.hpp"
#include "proto/protocol.hpp"
#include "states/majorana.hpp"

namespace symloc {

using Json = nlohmann::ordered_json;

// Every file carries {"schema": <name>, "schema_version": 1}; readers refuse
// unknown versions.
inline constexpr int kSchemaVersion = 1;

Json state_to_json(const PureState& s);
PureState state_from_json(const Json& j);

Json matrix_to_json(const Mat& m);  // row-major [[re, im], ...] with dims
Mat matrix_from_json(const Json& j);

Json complex_to_json(Cplx c);
Cplx complex_from_json(const Json& j);

Json symmetry_to_json(const SymmetryElement& el, const PureState& seed);
Json majorana_to_json(const MajoranaRep& rep);
MajoranaRep majorana_from_json(const Json& j);

Json grams_to_json(const std::vector<GramFactor>& grams);
std::vector<GramFactor> grams_from_json(const Json& j);

Json protocol_to_json(const LoccProtocol& p);
LoccProtocol protocol_from_json(const Json& j);

Json outcomes_to_json(const std::vector<BranchOutcome>& outcomes);

Json decision_to_json(const Decision& d);

// Scene files: {seed_spec, gram_matrices, stabilizer_spec, tolerances,
// grid_config}. seed/stabilizer specs name one of the shipped families.
LoccScene scene_from_json(const Json& j);
Json scene_to_json_skeleton(const LoccScene& s);

// Named-state construction shared by the CLI and the C API.
PureState named_state(const std::string& name, const Json& params);

// Named stabilizer families: {"ek", "w", "sums", "dicke", "qutrit4",
// "psi_derog5", "qubit_symmetric"}.
StabilizerFamily named_family(const std::string& name, const Json& params);

void check_schema(const Json& j, const std::string& expected);

}  // namespace symloc
