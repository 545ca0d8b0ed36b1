#include "session.hpp"

#include <fstream>
#include <set>

#include "gerbe/error.hpp"
#include "gerbe/mesh_io.hpp"

namespace gerbe::cli {

using nlohmann::json;

MassKind parse_mass(const std::string& s) {
  if (s == "whitney") return MassKind::Whitney;
  if (s == "lumped") return MassKind::Lumped;
  throw Error(ErrorCode::InvalidInput, "unknown mass kind '" + s + "' (whitney | lumped)");
}

SolverProfile parse_profile(const std::string& s) {
  if (s == "deterministic") return SolverProfile::Deterministic;
  if (s == "fast") return SolverProfile::Fast;
  throw Error(ErrorCode::InvalidInput, "unknown profile '" + s + "' (deterministic | fast)");
}

HodgeOptions SessionConfig::hodge_options() const {
  HodgeOptions o;
  o.mass = mass;
  o.rank_gap = rank_gap;
  o.solver_tolerance = solver_tol;
  o.profile = profile;
  return o;
}

json to_json(const SessionConfig& c) {
  json j;
  j["command"] = c.command;
  j["mode"] = c.mode;
  if (!c.mesh.path.empty()) j["mesh"] = c.mesh.path;
  if (!c.mesh.generator.empty()) {
    j["generator"] = c.mesh.generator;
    j["dim"] = c.mesh.dim;
    if (c.mesh.res) j["res"] = *c.mesh.res;
    j["g"] = c.mesh.genus;
  }
  if (c.degree) j["degree"] = *c.degree;
  if (!c.cycle.empty()) j["cycle"] = c.cycle;
  if (!c.cycle2.empty()) j["cycle2"] = c.cycle2;
  if (!c.chain.empty()) j["chain"] = c.chain;
  j["tol"] = c.tol;
  j["rank-gap"] = c.rank_gap;
  j["solver-tol"] = c.solver_tol;
  j["mass"] = std::string(to_string(c.mass));
  j["profile"] = std::string(to_string(c.profile));
  if (!c.output.empty()) j["output"] = c.output;
  j["seed"] = c.seed;
  j["budget"] = c.budget;
  j["json"] = c.json;
  return j;
}

SessionConfig session_from_json(const json& j) {
  static const std::set<std::string> known = {
      "command", "mode", "mesh",       "generator",  "dim",  "res",     "g",    "degree", "cycle", "cycle2",
      "chain",   "tol",  "rank-gap",   "solver-tol", "mass", "profile", "output", "seed", "budget", "json"};
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "config must be an object");
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw Error(ErrorCode::ParseError, "unknown config key '" + key + "'");
  }
  SessionConfig c;
  try {
    c.command = j.value("command", c.command);
    c.mode = j.value("mode", c.mode);
    c.mesh.path = j.value("mesh", c.mesh.path);
    c.mesh.generator = j.value("generator", c.mesh.generator);
    c.mesh.dim = j.value("dim", c.mesh.dim);
    if (j.contains("res")) c.mesh.res = j.at("res").get<int>();
    c.mesh.genus = j.value("g", c.mesh.genus);
    if (j.contains("degree")) c.degree = j.at("degree").get<int>();
    c.cycle = j.value("cycle", c.cycle);
    c.cycle2 = j.value("cycle2", c.cycle2);
    c.chain = j.value("chain", c.chain);
    c.tol = j.value("tol", c.tol);
    c.rank_gap = j.value("rank-gap", c.rank_gap);
    c.solver_tol = j.value("solver-tol", c.solver_tol);
    if (j.contains("mass")) c.mass = parse_mass(j.at("mass").get<std::string>());
    if (j.contains("profile")) c.profile = parse_profile(j.at("profile").get<std::string>());
    c.output = j.value("output", c.output);
    c.seed = j.value("seed", c.seed);
    c.budget = j.value("budget", c.budget);
    c.json = j.value("json", c.json);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("config: ") + e.what());
  }
  return c;
}

SessionConfig load_session(const std::filesystem::path& path) {
  try {
    return session_from_json(json::parse(read_text(path)));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
}

void save_session(const std::filesystem::path& path, const SessionConfig& c) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidInput, "cannot write " + path.string());
  out << to_json(c).dump(2) << "\n";
}

}  // namespace gerbe::cli
