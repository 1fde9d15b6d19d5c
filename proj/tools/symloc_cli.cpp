// symloc command-line front end. Talks to the shared library exclusively
// through the C API in symloc/symloc.h; every subcommand assembles a JSON
// request and prints the JSON (or tabular) response.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "symloc/symloc.h"

namespace {

using Json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& payload, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << payload << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << payload << "\n";
  }
}

struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { symloc_string_free(ptr); }
  std::string str() const { return ptr ? std::string(ptr) : std::string(); }
};

int fail(symloc_status status) {
  Json err;
  err["error"] = symloc_last_error();
  err["status"] = static_cast<int>(status);
  std::cerr << err.dump() << "\n";
  return status == SYMLOC_ERR_NUMERIC ? 2 : 1;
}

int run_command(const std::string& command, const Json& request, const std::string& out_path,
                bool table_field = false) {
  OwnedString result;
  symloc_status status = symloc_run(command.c_str(), request.dump().c_str(), &result.ptr);
  if (status != SYMLOC_OK) return fail(status);
  if (table_field) {
    Json parsed = Json::parse(result.str());
    if (parsed.contains("table")) {
      std::cout << parsed["table"].get<std::string>();
      bool ok = parsed.value("all_passed", false);
      if (!out_path.empty()) emit(result.str(), out_path);
      return ok ? 0 : 2;
    }
  }
  emit(result.str(), out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symloc: symmetric-state LOCC toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  std::string out_path;
  app.add_option("--out", out_path, "write the JSON result to a file")->capture_default_str();
  double tol = 1e-9;
  app.add_option("--tol", tol, "proportionality tolerance");
  int grid = 12;
  app.add_option("--grid", grid, "angular grid points for decision sweeps");
  std::uint64_t seed = 7;
  app.add_option("--seed", seed, "rng seed for reproducible sweeps");
  std::string format = "json";
  app.add_option("--format", format, "output format (json)")
      ->check(CLI::IsMember({"json"}));

  // state -----------------------------------------------------------------
  auto* state_cmd = app.add_subcommand("state", "construct a named state");
  std::string state_name;
  state_cmd->add_option("name", state_name, "state name (ek, dicke, w, ghz, snk, fnk, psi_mu, "
                                            "psi_derog5, sum_ek, derog_ek)")
      ->required();
  int s_n = 3, s_k = 1, s_d = 2;
  std::string s_blocks, s_occ;
  state_cmd->add_option("--n", s_n, "site count");
  state_cmd->add_option("--k", s_k, "excitation number");
  state_cmd->add_option("--d", s_d, "local dimension (ghz)");
  state_cmd->add_option("--blocks", s_blocks, "comma-separated block excitations");
  state_cmd->add_option("--occupations", s_occ, "comma-separated block occupations");
  bool majorana = false;
  state_cmd->add_flag("--majorana", majorana, "emit the Majorana representation (qubits)");

  // stabilizer --------------------------------------------------------------
  auto* stab_cmd = app.add_subcommand("stabilizer", "sample a stabilizer family");
  std::string fam_name = "ek", fam_params_file, fam_rep;
  int fam_samples = 3;
  stab_cmd->add_option("family", fam_name, "family name (ek, w, sums, dicke, qutrit4, psi_derog5)")
      ->required();
  stab_cmd->add_option("--n", s_n, "site count");
  stab_cmd->add_option("--k", s_k, "excitation number");
  stab_cmd->add_option("--blocks", s_blocks, "block excitations for sums");
  stab_cmd->add_option("--rep", fam_rep, "qutrit4 representative id");
  stab_cmd->add_option("--sample", fam_samples, "samples per component");
  stab_cmd->add_option("--params", fam_params_file, "JSON file with family parameters");

  // quasicomm ---------------------------------------------------------------
  auto* quasi_cmd = app.add_subcommand("quasicomm", "quasi-commutation checks");
  std::string quasi_mode = "check", quasi_file;
  quasi_cmd->add_option("mode", quasi_mode, "check | factor | family")->required();
  quasi_cmd->add_option("--input", quasi_file, "JSON file with matrices / parameters")
      ->required();

  // decide --------------------------------------------------------------
  auto* decide_cmd = app.add_subcommand("decide", "LOCC decision procedures");
  std::string decide_mode, scene_file;
  decide_cmd->add_option("mode", decide_mode, "reach | convert | isolated")->required();
  decide_cmd->add_option("--scene", scene_file, "scene JSON file")->required();

  // simulate --------------------------------------------------------------
  auto* sim_cmd = app.add_subcommand("simulate", "run a protocol");
  std::string sim_protocol_file, sim_state_file, sim_canned;
  double sim_pprime = 0.5;
  sim_cmd->add_option("--protocol", sim_protocol_file, "protocol JSON file");
  sim_cmd->add_option("--state", sim_state_file, "initial state JSON file");
  sim_cmd->add_option("--canned", sim_canned, "w | ek | ghz | qutrit4");
  sim_cmd->add_option("--n", s_n, "site count for canned protocols");
  sim_cmd->add_option("--k", s_k, "excitations for the ek protocol");
  sim_cmd->add_option("--p-prime", sim_pprime, "target weight p'");

  // measure ---------------------------------------------------------------
  auto* measure_cmd = app.add_subcommand("measure", "entanglement monotones");
  std::string measure_mode, measure_file;
  measure_cmd->add_option("mode", measure_mode, "monotone | maxprob")->required();
  measure_cmd->add_option("--input", measure_file, "JSON file with grams / vectors")->required();

  // derog ---------------------------------------------------------------
  auto* derog_cmd = app.add_subcommand("derog", "qutrit derogatory analysis");
  std::string derog_mode, derog_rep, derog_b_file;
  int derog_n = 4;
  derog_cmd->add_option("mode", derog_mode, "reps | reach | isolate | fixtures | report5")
      ->required();
  derog_cmd->add_option("--n", derog_n, "3, 4 or 5");
  derog_cmd->add_option("--rep", derog_rep, "representative id");
  derog_cmd->add_option("--b", derog_b_file, "JSON file with target coefficients");

  // reproduce --------------------------------------------------------------
  auto* repro_cmd = app.add_subcommand("reproduce", "run the acceptance suite");
  std::string suite = "all";
  int criterion = 0;
  repro_cmd->add_option("--suite", suite, "all (default) or a criterion number");
  repro_cmd->add_option("--criterion", criterion, "single criterion number");

  CLI11_PARSE(app, argc, argv);

  auto parse_int_list = [](const std::string& csv) {
    Json arr = Json::array();
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) arr.push_back(std::stoi(item));
    return arr;
  };

  try {
    if (*state_cmd) {
      Json params;
      params["n"] = s_n;
      params["k"] = s_k;
      params["d"] = s_d;
      if (!s_blocks.empty()) params["blocks"] = parse_int_list(s_blocks);
      if (!s_occ.empty()) params["occupations"] = parse_int_list(s_occ);
      symloc_state* st = nullptr;
      symloc_status status = symloc_state_named(state_name.c_str(), params.dump().c_str(), &st);
      if (status != SYMLOC_OK) return fail(status);
      OwnedString js;
      status = symloc_state_to_json(st, &js.ptr);
      symloc_state_free(st);
      if (status != SYMLOC_OK) return fail(status);
      if (majorana) {
        Json req;
        req["mode"] = "majorana";
        req["state"] = Json::parse(js.str());
        return run_command("state_analysis", req, out_path);
      }
      emit(js.str(), out_path);
      return 0;
    }
    if (*stab_cmd) {
      Json req;
      Json params;
      if (!fam_params_file.empty()) params = Json::parse(read_file(fam_params_file));
      params["n"] = s_n;
      params["k"] = s_k;
      if (!s_blocks.empty()) params["blocks"] = parse_int_list(s_blocks);
      if (!fam_rep.empty()) params["rep"] = fam_rep;
      req["family"] = Json{{"name", fam_name}, {"params", params}};
      req["sample"] = fam_samples;
      req["seed"] = seed;
      return run_command("stabilizer", req, out_path);
    }
    if (*quasi_cmd) {
      Json req = Json::parse(read_file(quasi_file));
      req["mode"] = quasi_mode;
      req["tol"] = tol;
      return run_command("quasicomm", req, out_path);
    }
    if (*decide_cmd) {
      Json req;
      req["mode"] = decide_mode;
      Json scene = Json::parse(read_file(scene_file));
      if (!scene.contains("grid_config")) scene["grid_config"] = Json::object();
      scene["grid_config"]["angular_points"] = grid;
      scene["grid_config"]["rng_seed"] = seed;
      req["scene"] = std::move(scene);
      return run_command("decide", req, out_path);
    }
    if (*sim_cmd) {
      Json req;
      if (!sim_canned.empty()) {
        req["canned"] = sim_canned;
        req["params"] = Json{{"n", s_n}, {"k", s_k}, {"p_prime", sim_pprime}};
      } else {
        req["protocol"] = Json::parse(read_file(sim_protocol_file));
      }
      if (!sim_state_file.empty()) req["state"] = Json::parse(read_file(sim_state_file));
      return run_command("simulate", req, out_path);
    }
    if (*measure_cmd) {
      Json req = Json::parse(read_file(measure_file));
      req["mode"] = measure_mode;
      return run_command("measure", req, out_path);
    }
    if (*derog_cmd) {
      Json req;
      req["mode"] = derog_mode;
      req["n"] = derog_n;
      if (!derog_rep.empty()) req["rep"] = derog_rep;
      if (!derog_b_file.empty()) req["b"] = Json::parse(read_file(derog_b_file));
      return run_command("derog", req, out_path);
    }
    if (*repro_cmd) {
      Json req;
      req["seed"] = seed;
      if (criterion > 0)
        req["criterion"] = criterion;
      else if (suite != "all")
        req["criterion"] = std::stoi(suite);
      return run_command("reproduce", req, out_path, /*table_field=*/true);
    }
  } catch (const std::exception& e) {
    Json err;
    err["error"] = e.what();
    std::cerr << err.dump() << "\n";
    return 1;
  }
  return 1;
}
