// gerbe: batch front end for mesh generation, homology/Hodge reports,
// Abel-Jacobi checks and Jacobi scans. Exit codes: 0 ok / trivial,
// 1 non-trivial verdict, 2 invariant violation, 3 bad input.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "commands.hpp"
#include "gerbe/error.hpp"
#include "session.hpp"

namespace {

using namespace gerbe;
using namespace gerbe::cli;

// Flag values that override the config file only when given.
struct Flags {
  std::optional<std::string> config, save_config, mesh, generator, output, cycle, cycle2, chain, mass, profile;
  std::optional<int> dim, res, genus, degree;
  std::optional<double> tol, rank_gap, solver_tol;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> budget;
  bool json = false;
  std::string mode;
};

template <typename T, typename U>
void apply(const std::optional<T>& flag, U& target) {
  if (flag) target = *flag;
}

SessionConfig resolve(const Flags& f, const std::string& command) {
  SessionConfig c = f.config ? load_session(*f.config) : SessionConfig{};
  if (!command.empty()) {
    if (command != c.command) c.mode.clear();
    c.command = command;
  }
  if (!f.mode.empty()) c.mode = f.mode;
  if (f.mesh) {
    c.mesh.path = *f.mesh;
    c.mesh.generator.clear();
  }
  if (f.generator) {
    c.mesh.generator = *f.generator;
    c.mesh.path.clear();
  }
  apply(f.dim, c.mesh.dim);
  if (f.res) c.mesh.res = *f.res;
  apply(f.genus, c.mesh.genus);
  if (f.degree) c.degree = *f.degree;
  apply(f.cycle, c.cycle);
  apply(f.cycle2, c.cycle2);
  apply(f.chain, c.chain);
  apply(f.tol, c.tol);
  apply(f.rank_gap, c.rank_gap);
  apply(f.solver_tol, c.solver_tol);
  if (f.mass) c.mass = parse_mass(*f.mass);
  if (f.profile) c.profile = parse_profile(*f.profile);
  apply(f.output, c.output);
  apply(f.seed, c.seed);
  apply(f.budget, c.budget);
  if (f.json) c.json = true;
  return c;
}

void emit(const SessionConfig& c, const Outcome& out) {
  std::string text;
  if (out.raw) {
    text = *out.raw;
  } else {
    text = c.json ? out.body.dump(2) + "\n" : render_text(out.body);
  }
  // generate writes its mesh to --output itself; everything else may be redirected.
  if (!c.output.empty() && c.command != "generate") {
    std::ofstream file(c.output);
    if (!file) throw Error(ErrorCode::InvalidInput, "cannot write " + c.output);
    file << text;
  } else {
    std::fwrite(text.data(), 1, text.size(), stdout);
  }
}

void fail(bool json, ErrorCode code, const std::string& message) {
  if (json) {
    nlohmann::ordered_json e = {{"error", std::string(to_string(code))}, {"message", message}};
    std::cout << e.dump(2) << "\n";
  }
  std::cerr << "gerbe: " << message << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete Abel-Jacobi toolkit for triangulated manifolds", "gerbe"};
  app.fallthrough();
  app.require_subcommand(0, 1);
  Flags f;

  app.add_option("--config", f.config, "Session config (JSON) supplying defaults for every flag");
  app.add_option("--save-config", f.save_config, "Write the effective session config and continue");
  app.add_flag("--json", f.json, "Machine-readable output");
  app.add_option("-o,--output,--out", f.output, "Output file (the mesh for generate, the report otherwise)");
  app.add_option("--mesh", f.mesh, "Mesh file");
  app.add_option("--generator", f.generator, "Generate the mesh instead: torus | genus | sphere | rp3");
  app.add_option("--dim", f.dim, "Generator dimension (torus, sphere)");
  app.add_option("--res", f.res, "Generator resolution (torus grid, genus subdivisions, rp3 box radius)");
  app.add_option("--g", f.genus, "Genus (genus generator)");
  app.add_option("--degree", f.degree, "Degree");
  app.add_option("--tol", f.tol, "Integrality tolerance");
  app.add_option("--rank-gap", f.rank_gap, "Required spectral gap ratio");
  app.add_option("--solver-tol", f.solver_tol, "Iterative solver relative tolerance");
  app.add_option("--mass", f.mass, "Mass matrix: whitney | lumped");
  app.add_option("--profile", f.profile, "Solver profile: deterministic | fast");
  app.add_option("--seed", f.seed, "Random seed");

  auto* generate = app.add_subcommand("generate", "Write a generated mesh");
  generate->add_option("kind", f.mode, "torus | genus | sphere | rp3")->required();

  auto* report = app.add_subcommand("report", "Homology, Hodge or period report");
  report->add_option("kind", f.mode, "homology | hodge | periods")->required();

  auto* abel = app.add_subcommand("abel", "Linear-equivalence verdicts and Jacobi vectors");
  abel->add_option("mode", f.mode, "check | jacobi | equiv")->required();
  abel->add_option("--cycle", f.cycle, "Cycle file");
  abel->add_option("--cycle2", f.cycle2, "Second cycle file (equiv)");
  abel->add_option("--chain", f.chain, "Bounding chain (check) or chain (jacobi)");

  auto* scan = app.add_subcommand("scan", "Empirical image of the Jacobi map");
  scan->add_option("--budget", f.budget, "Number of random chains");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  std::string command;
  for (const auto* sub : app.get_subcommands()) command = sub->get_name();

  bool json = f.json;
  try {
    const SessionConfig c = resolve(f, command);
    json = c.json;
    if (f.save_config) save_session(*f.save_config, c);
    const Outcome out = run(c);
    emit(c, out);
    return out.exit_code;
  } catch (const Error& e) {
    fail(json, e.code(), e.what());
    return is_invariant_violation(e.code()) ? kInvariant : kUsage;
  } catch (const std::exception& e) {
    fail(json, ErrorCode::InvalidInput, e.what());
    return kUsage;
  }
}
