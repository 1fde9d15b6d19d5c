#include <doctest.h>

#include "io/json_io.hpp"
#include "proto/canned.hpp"
#include "symloc/symloc.h"

using namespace symloc;

TEST_CASE("state JSON round trips bit-exactly") {
  PureState s = e_k(2, 3);
  Json j = state_to_json(s);
  PureState back = state_from_json(j);
  CHECK(back.n == s.n);
  CHECK(back.d == s.d);
  CHECK((back.amps - s.amps).norm() == 0.0);
  // serialized twice gives identical text
  CHECK(state_to_json(back).dump() == j.dump());

  Json bad = j;
  bad["schema_version"] = 99;
  CHECK_THROWS_AS(state_from_json(bad), SymlocError);
  bad = j;
  bad["schema"] = "something/else";
  CHECK_THROWS_AS(state_from_json(bad), SymlocError);
}

TEST_CASE("matrix and protocol JSON round trips") {
  Mat m(2, 2);
  m << Cplx(1, 2), Cplx(0, -1), Cplx(0.5, 0), Cplx(-3, 4);
  Mat back = matrix_from_json(matrix_to_json(m));
  CHECK((back - m).norm() == 0.0);

  LoccProtocol proto = w_class_protocol(3, 0.5);
  Json j = protocol_to_json(proto);
  LoccProtocol back_proto = protocol_from_json(j);
  CHECK(protocol_to_json(back_proto).dump() == j.dump());
  auto a = simulate(proto, w_state(3), 1e-11);
  auto b = simulate(back_proto, w_state(3), 1e-11);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i)
    CHECK(a[i].probability == doctest::Approx(b[i].probability).epsilon(1e-14));
}

TEST_CASE("majorana JSON round trip") {
  MajoranaRep rep = state_to_majorana(dicke(4, 1));
  Json j = majorana_to_json(rep);
  MajoranaRep back = majorana_from_json(j);
  CHECK(back.total_multiplicity() == 4);
  CHECK(back.infinity_multiplicity() == rep.infinity_multiplicity());
}

TEST_CASE("C API: named states, handles, local ranks") {
  symloc_state* st = nullptr;
  REQUIRE(symloc_state_named("ek", R"({"k": 2, "n": 2})", &st) == SYMLOC_OK);
  int n = 0, d = 0;
  REQUIRE(symloc_state_sites(st, &n, &d) == SYMLOC_OK);
  CHECK(n == 2);
  CHECK(d == 3);
  double norm = 0;
  REQUIRE(symloc_state_norm(st, &norm) == SYMLOC_OK);
  CHECK(norm == doctest::Approx(std::sqrt(3.0)));

  char* js = nullptr;
  REQUIRE(symloc_state_to_json(st, &js) == SYMLOC_OK);
  symloc_state* parsed = nullptr;
  REQUIRE(symloc_state_parse(js, &parsed) == SYMLOC_OK);
  char* js2 = nullptr;
  REQUIRE(symloc_state_to_json(parsed, &js2) == SYMLOC_OK);
  CHECK(std::string(js) == std::string(js2));
  symloc_string_free(js);
  symloc_string_free(js2);
  symloc_state_free(parsed);
  symloc_state_free(st);

  symloc_state* g = nullptr;
  REQUIRE(symloc_state_named("ghz", R"({"n": 3, "d": 2})", &g) == SYMLOC_OK);
  int ranks[3] = {0, 0, 0};
  REQUIRE(symloc_state_local_ranks(g, ranks, 3) == SYMLOC_OK);
  CHECK(ranks[0] == 2);
  CHECK(ranks[2] == 2);
  symloc_state_free(g);

  symloc_state* bad = nullptr;
  CHECK(symloc_state_named("no_such_state", "{}", &bad) == SYMLOC_ERR_INVALID);
  CHECK(std::string(symloc_last_error()).find("no_such_state") != std::string::npos);
}

TEST_CASE("C API: canned protocol simulation and commands") {
  symloc_protocol* proto = nullptr;
  REQUIRE(symloc_protocol_canned("w", R"({"n": 3, "p_prime": 0.5})", &proto) == SYMLOC_OK);
  symloc_state* w = nullptr;
  REQUIRE(symloc_state_named("w", R"({"n": 3})", &w) == SYMLOC_OK);
  char* out = nullptr;
  REQUIRE(symloc_protocol_simulate(proto, w, &out) == SYMLOC_OK);
  Json outcomes = Json::parse(out);
  CHECK(outcomes.size() == 8);
  symloc_string_free(out);
  symloc_state_free(w);
  symloc_protocol_free(proto);

  char* resp = nullptr;
  REQUIRE(symloc_run("quasicomm",
                     R"({"mode": "family", "k": 2, "a": [0.3, 0.1], "x": [0, 1]})",
                     &resp) == SYMLOC_OK);
  Json parsed = Json::parse(resp);
  CHECK(parsed["lambda"].get<double>() == doctest::Approx(1.0));
  symloc_string_free(resp);

  // determinism: identical requests give byte-identical responses
  const char* req = R"({"family": {"name": "w", "params": {"n": 3}}, "sample": 2, "seed": 5})";
  char* r1 = nullptr;
  char* r2 = nullptr;
  REQUIRE(symloc_run("stabilizer", req, &r1) == SYMLOC_OK);
  REQUIRE(symloc_run("stabilizer", req, &r2) == SYMLOC_OK);
  CHECK(std::string(r1) == std::string(r2));
  symloc_string_free(r1);
  symloc_string_free(r2);
}

TEST_CASE("C API: single acceptance criterion through reproduce") {
  char* resp = nullptr;
  REQUIRE(symloc_run("reproduce", R"({"criterion": 1, "seed": 7})", &resp) == SYMLOC_OK);
  Json parsed = Json::parse(resp);
  CHECK(parsed["all_passed"].get<bool>());
  symloc_string_free(resp);
}

TEST_CASE("scene JSON drives a decision") {
  // Dicke(5,2) with proportional grams: reach refuted.
  Json scene;
  scene["schema"] = "symloc/scene";
  scene["schema_version"] = 1;
  scene["stabilizer_spec"] = Json{{"name", "dicke"}, {"params", Json{{"n", 5}, {"k", 2}}}};
  Mat g(2, 2);
  g << 1.5, Cplx(0.2, 0.1), Cplx(0.2, -0.1), 0.9;
  Json grams = Json::array();
  for (int i = 0; i < 5; ++i) grams.push_back(matrix_to_json(g));
  scene["gram_matrices"] = grams;
  Json req;
  req["mode"] = "reach";
  req["scene"] = scene;
  char* resp = nullptr;
  REQUIRE(symloc_run("decide", req.dump().c_str(), &resp) == SYMLOC_OK);
  Json parsed = Json::parse(resp);
  CHECK(parsed["verdict"] == "RefutedComplete");
  symloc_string_free(resp);
}
