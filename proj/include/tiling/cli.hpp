#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "tiling/group.hpp"
#include "tiling/multitile.hpp"

namespace tiling::cli {

/// Process exit codes.
enum ExitCode : int {
  kYes = 0,
  kNo = 1,
  kUnknown = 2,
  kInputError = 3,
  kCapacityExceeded = 4,
};

/// A validated problem file. See docs/problem-format.md for the schema.
struct ProblemFile {
  GroupSpec group;
  FinMap f;
  std::optional<PeriodicMap> g;
  std::optional<PeriodicMap> a;
  std::optional<PeriodicMap> phi;
  std::optional<SearchBudget> budget;
};

/// Parses and validates a problem file. Throws InputError whose message
/// names the byte offset (syntax errors) or JSON pointer (schema errors).
ProblemFile parse_problem(std::string_view text);

/// JSON encodings shared by the subcommands and the verify round trip.
nlohmann::json encode_int(const Int& v);
nlohmann::json encode_group(const GroupSpec& g);
nlohmann::json encode_periodic(const PeriodicMap& m);
PeriodicMap decode_periodic(const GroupSpec& group, const nlohmann::json& j, const std::string& where);
nlohmann::json encode_torus(const TorusAssignment& t);
TorusAssignment decode_torus(const nlohmann::json& j);

/// Runs the command line; args[0] is the program name. Verdict JSON goes to
/// `out`, diagnostics and renderings to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tiling::cli
