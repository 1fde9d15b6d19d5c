#include "io/json_io.hpp"

#include <cmath>

namespace symloc {

void check_schema(const Json& j, const std::string& expected) {
  if (!j.is_object()) throw SymlocError("json: object expected");
  if (j.value("schema", "") != expected)
    throw SymlocError("json: expected schema '" + expected + "'");
  if (j.value("schema_version", -1) != kSchemaVersion)
    throw SymlocError("json: unsupported schema_version");
}

Json complex_to_json(Cplx c) { return Json::array({c.real(), c.imag()}); }

Cplx complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw SymlocError("json: [re, im] expected");
  return Cplx(j[0].get<double>(), j[1].get<double>());
}

Json state_to_json(const PureState& s) {
  Json j;
  j["schema"] = "symloc/state";
  j["schema_version"] = kSchemaVersion;
  j["n"] = s.n;
  j["d"] = s.d;
  Json amps = Json::array();
  for (std::int64_t i = 0; i < s.dim(); ++i) amps.push_back(complex_to_json(s.amps(i)));
  j["amps"] = std::move(amps);
  return j;
}

PureState state_from_json(const Json& j) {
  check_schema(j, "symloc/state");
  PureState s(j.at("n").get<int>(), j.at("d").get<int>());
  const Json& amps = j.at("amps");
  if (static_cast<std::int64_t>(amps.size()) != s.dim())
    throw SymlocError("json: amps length != d^n");
  for (std::int64_t i = 0; i < s.dim(); ++i) s.amps(i) = complex_from_json(amps[i]);
  return s;
}

Json matrix_to_json(const Mat& m) {
  Json j;
  j["rows"] = static_cast<int>(m.rows());
  j["cols"] = static_cast<int>(m.cols());
  Json entries = Json::array();
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) entries.push_back(complex_to_json(m(r, c)));
  j["entries"] = std::move(entries);
  return j;
}

Mat matrix_from_json(const Json& j) {
  int rows = j.at("rows").get<int>();
  int cols = j.at("cols").get<int>();
  const Json& entries = j.at("entries");
  if (static_cast<int>(entries.size()) != rows * cols)
    throw SymlocError("json: matrix entry count mismatch");
  Mat m(rows, cols);
  int k = 0;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = complex_from_json(entries[k++]);
  return m;
}

Json symmetry_to_json(const SymmetryElement& el, const PureState& seed) {
  Json j;
  j["schema"] = "symloc/symmetry";
  j["schema_version"] = kSchemaVersion;
  j["tag"] = to_string(el.tag);
  j["lambda"] = complex_to_json(el.lambda);
  j["scalar"] = complex_to_json(el.op.scalar);
  Json locals = Json::array();
  for (const Mat& m : el.op.ops) locals.push_back(matrix_to_json(m));
  j["locals"] = std::move(locals);
  PureState image = apply_product(seed, el.op);
  j["residual"] = (image.amps - el.lambda * seed.amps).norm() / seed.norm();
  return j;
}

Json majorana_to_json(const MajoranaRep& rep) {
  Json j;
  j["schema"] = "symloc/majorana";
  j["schema_version"] = kSchemaVersion;
  Json roots = Json::array();
  int inf = 0;
  for (const auto& r : rep.roots) {
    if (r.at_infinity) {
      inf += r.multiplicity;
      continue;
    }
    roots.push_back(Json{{"alpha", r.alpha}, {"beta", r.beta}, {"mult", r.multiplicity}});
  }
  j["roots"] = std::move(roots);
  j["infinity_mult"] = inf;
  return j;
}

MajoranaRep majorana_from_json(const Json& j) {
  check_schema(j, "symloc/majorana");
  MajoranaRep rep;
  for (const auto& r : j.at("roots")) {
    MajoranaRoot root;
    root.alpha = r.at("alpha").get<double>();
    root.beta = r.at("beta").get<double>();
    root.multiplicity = r.at("mult").get<int>();
    rep.roots.push_back(root);
  }
  int inf = j.value("infinity_mult", 0);
  if (inf > 0) {
    MajoranaRoot root;
    root.at_infinity = true;
    root.alpha = M_PI / 2;
    root.multiplicity = inf;
    rep.roots.push_back(root);
  }
  return rep;
}

Json grams_to_json(const std::vector<GramFactor>& grams) {
  Json arr = Json::array();
  for (const auto& g : grams) arr.push_back(matrix_to_json(g.matrix));
  return arr;
}

std::vector<GramFactor> grams_from_json(const Json& j) {
  std::vector<GramFactor> out;
  for (const auto& m : j) {
    GramFactor g(matrix_from_json(m), true);
    g.validate();
    out.push_back(std::move(g));
  }
  return out;
}

namespace {

Json round_to_json(const LoccRound& r) {
  Json j;
  j["acting_party"] = r.acting_party;
  Json branches = Json::array();
  for (const auto& b : r.branches) {
    Json jb;
    jb["kraus"] = matrix_to_json(b.kraus);
    Json corr = Json::array();
    for (const auto& [party, u] : b.corrections)
      corr.push_back(Json{{"party", party}, {"unitary", matrix_to_json(u)}});
    jb["corrections"] = std::move(corr);
    if (b.child) jb["child"] = round_to_json(*b.child);
    branches.push_back(std::move(jb));
  }
  j["branches"] = std::move(branches);
  return j;
}

std::shared_ptr<LoccRound> round_from_json(const Json& j) {
  auto r = std::make_shared<LoccRound>();
  r->acting_party = j.at("acting_party").get<int>();
  for (const auto& jb : j.at("branches")) {
    LoccRound::Branch b;
    b.kraus = matrix_from_json(jb.at("kraus"));
    if (jb.contains("corrections"))
      for (const auto& c : jb.at("corrections"))
        b.corrections.push_back({c.at("party").get<int>(), matrix_from_json(c.at("unitary"))});
    if (jb.contains("child")) b.child = round_from_json(jb.at("child"));
    r->branches.push_back(std::move(b));
  }
  return r;
}

}  // namespace

Json protocol_to_json(const LoccProtocol& p) {
  Json j;
  j["schema"] = "symloc/protocol";
  j["schema_version"] = kSchemaVersion;
  if (!p.root) throw SymlocError("protocol_to_json: empty protocol");
  j["root"] = round_to_json(*p.root);
  if (p.declared_target) j["declared_target"] = state_to_json(*p.declared_target);
  return j;
}

LoccProtocol protocol_from_json(const Json& j) {
  check_schema(j, "symloc/protocol");
  LoccProtocol p;
  p.root = round_from_json(j.at("root"));
  if (j.contains("declared_target")) p.declared_target = state_from_json(j.at("declared_target"));
  return p;
}

Json outcomes_to_json(const std::vector<BranchOutcome>& outcomes) {
  Json arr = Json::array();
  for (const auto& o : outcomes) {
    Json j;
    j["path"] = o.path;
    j["probability"] = o.probability;
    j["state"] = state_to_json(o.state);
    arr.push_back(std::move(j));
  }
  return arr;
}

namespace {
const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Witnessed: return "Witnessed";
    case Verdict::RefutedComplete: return "RefutedComplete";
    case Verdict::NoWitnessFound: return "NoWitnessFound";
  }
  return "?";
}
}  // namespace

Json decision_to_json(const Decision& d) {
  Json j;
  j["schema"] = "symloc/decision";
  j["schema_version"] = kSchemaVersion;
  j["verdict"] = verdict_name(d.verdict);
  if (d.witness) {
    Json locals = Json::array();
    for (const Mat& m : d.witness->op.ops) locals.push_back(matrix_to_json(m));
    j["witness"] = Json{{"tag", to_string(d.witness->tag)},
                        {"lambda", complex_to_json(d.witness->lambda)},
                        {"locals", std::move(locals)}};
  }
  if (d.distinguished_site) j["distinguished_site"] = *d.distinguished_site;
  if (d.certificate) {
    Json c;
    c["acting_site"] = d.certificate->acting_site;
    c["target_gram"] = matrix_to_json(d.certificate->target_gram.matrix);
    c["probabilities"] = d.certificate->probabilities;
    c["mixture_residual"] = d.certificate->mixture_residual;
    c["nontriviality_grid_checked"] = d.certificate->nontriviality_grid_checked;
    j["certificate"] = std::move(c);
  }
  if (!d.closure_argument.empty()) j["closure_argument"] = d.closure_argument;
  j["search_report"] = d.search_report;
  return j;
}

PureState named_state(const std::string& name, const Json& params) {
  auto geti = [&](const char* key, int fallback) { return params.value(key, fallback); };
  if (name == "ek") return e_k(geti("k", 1), geti("n", 3));
  if (name == "dicke") return dicke(geti("n", 4), geti("k", 2));
  if (name == "w") return w_state(geti("n", 3));
  if (name == "ghz") return ghz(geti("n", 3), geti("d", 2));
  if (name == "snk") return snk(geti("n", 4), geti("k", 2));
  if (name == "fnk") return fnk(geti("n", 4), geti("k", 1));
  if (name == "psi_mu") {
    Cplx mu = params.contains("mu") ? complex_from_json(params.at("mu")) : Cplx(0, std::sqrt(2.0));
    return psi_mu(mu);
  }
  if (name == "psi_derog5") return psi_derog_5qutrit();
  if (name == "sum_ek") {
    std::vector<int> ks = params.at("blocks").get<std::vector<int>>();
    return direct_sum_ek(BlockSpec(ks), geti("n", 3));
  }
  if (name == "derog_ek") {
    std::vector<int> ks = params.at("blocks").get<std::vector<int>>();
    std::vector<int> occ = params.at("occupations").get<std::vector<int>>();
    return derog_ek(DerogSpec(geti("k", 0), occ, BlockSpec(ks)));
  }
  throw SymlocError("named_state: unknown state '" + name + "'");
}

StabilizerFamily named_family(const std::string& name, const Json& params) {
  auto geti = [&](const char* key, int fallback) { return params.value(key, fallback); };
  if (name == "ek") return ek_stabilizer(geti("k", 2), geti("n", 4));
  if (name == "w") return w_stabilizer(geti("n", 3));
  if (name == "sums") {
    std::vector<int> ks = params.at("blocks").get<std::vector<int>>();
    return direct_sum_stabilizer(BlockSpec(ks), geti("n", 4));
  }
  if (name == "dicke") return dicke_stabilizer(geti("n", 4), geti("k", 2));
  if (name == "qutrit4") {
    std::optional<Cplx> mu;
    if (params.contains("mu")) mu = complex_from_json(params.at("mu"));
    return qutrit4_symmetry_family(params.at("rep").get<std::string>(), mu);
  }
  if (name == "psi_derog5") return psi_derog_stabilizer();
  if (name == "qubit_symmetric") {
    PureState s = state_from_json(params.at("state"));
    return qubit_symmetric_family(s);
  }
  if (name == "non_es_declared") {
    PureState s = state_from_json(params.at("state"));
    return non_es_declared_family(s);
  }
  throw SymlocError("named_family: unknown family '" + name + "'");
}

LoccScene scene_from_json(const Json& j) {
  check_schema(j, "symloc/scene");
  const Json& spec = j.at("stabilizer_spec");
  StabilizerFamily fam =
      named_family(spec.at("name").get<std::string>(), spec.value("params", Json::object()));
  std::vector<GramFactor> grams = grams_from_json(j.at("gram_matrices"));
  LoccScene scene = make_scene(std::move(fam), std::move(grams),
                               j.value("tolerances", Json::object()).value("proportionality", kPropTol));
  if (j.contains("grid_config")) {
    const Json& g = j.at("grid_config");
    scene.grid.angular_points = g.value("angular_points", scene.grid.angular_points);
    scene.grid.radial_points = g.value("radial_points", scene.grid.radial_points);
    scene.grid.joint_samples = g.value("joint_samples", scene.grid.joint_samples);
    scene.grid.rng_seed = g.value("rng_seed", scene.grid.rng_seed);
  }
  if (j.contains("target_gram_hint"))
    scene.target_gram_hint = matrix_from_json(j.at("target_gram_hint"));
  if (j.contains("acting_site_hint")) scene.acting_site_hint = j.at("acting_site_hint").get<int>();
  return scene;
}

Json scene_to_json_skeleton(const LoccScene& s) {
  Json j;
  j["schema"] = "symloc/scene";
  j["schema_version"] = kSchemaVersion;
  j["gram_matrices"] = grams_to_json(s.grams);
  j["tolerances"] = Json{{"proportionality", s.tol}};
  j["grid_config"] = Json{{"angular_points", s.grid.angular_points},
                          {"radial_points", s.grid.radial_points},
                          {"joint_samples", s.grid.joint_samples},
                          {"rng_seed", s.grid.rng_seed}};
  if (s.target_gram_hint) j["target_gram_hint"] = matrix_to_json(*s.target_gram_hint);
  if (s.acting_site_hint) j["acting_site_hint"] = *s.acting_site_hint;
  return j;
}

}  // namespace symloc
