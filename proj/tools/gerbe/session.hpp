#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "gerbe/hodge.hpp"

namespace gerbe::cli {

/// Where the complex comes from: a mesh file or a named generator.
struct MeshSource {
  std::string path;
  std::string generator;  // torus | genus | sphere | rp3
  int dim = 2;
  /// Defaults per generator: torus 4, genus 0 (subdivisions), rp3 2.
  std::optional<int> res;
  int genus = 2;
};

/// Everything needed to replay a run. Keys of the persisted form match the
/// long flag names.
struct SessionConfig {
  std::string command;  // generate | report | abel | scan
  std::string mode;     // positional argument of the command
  MeshSource mesh;
  std::optional<int> degree;
  std::string cycle;
  std::string cycle2;
  std::string chain;
  double tol = 1e-6;
  double rank_gap = 1e3;
  double solver_tol = 1e-12;
  MassKind mass = MassKind::Whitney;
  SolverProfile profile = SolverProfile::Deterministic;
  std::string output;
  std::uint64_t seed = 1;
  std::size_t budget = 10000;
  bool json = false;

  HodgeOptions hodge_options() const;
};

nlohmann::json to_json(const SessionConfig& c);
/// Unknown keys are rejected so typos do not silently fall back to defaults.
SessionConfig session_from_json(const nlohmann::json& j);
SessionConfig load_session(const std::filesystem::path& path);
void save_session(const std::filesystem::path& path, const SessionConfig& c);

MassKind parse_mass(const std::string& s);
SolverProfile parse_profile(const std::string& s);

}  // namespace gerbe::cli
