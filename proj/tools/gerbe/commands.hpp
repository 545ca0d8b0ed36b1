#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "gerbe/complex.hpp"
#include "session.hpp"

namespace gerbe::cli {

enum ExitCode : int {
  kOk = 0,
  kNegative = 1,   // non-trivial / inequivalent verdict
  kInvariant = 2,  // numerical or algebraic invariant violated
  kUsage = 3,      // bad input, parse failure, bad flags
};

struct Outcome {
  nlohmann::ordered_json body;
  int exit_code = kOk;
  /// Printed verbatim instead of the body when set.
  std::optional<std::string> raw;
};

SimplicialComplex load_complex(const MeshSource& source);

/// Runs the command named in the config. Library errors propagate.
Outcome run(const SessionConfig& config);

/// Indented "key: value" text; numbers use the shortest round-trip form.
std::string render_text(const nlohmann::ordered_json& body);

}  // namespace gerbe::cli
