#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tlsf/ast.hpp"

namespace tlsf {

struct CliConfig {
  enum class Output { Basic, Formula };

  std::string input = "-";  // "-" reads stdin
  std::map<std::string, Nat> params;
  std::optional<Target> target;
  std::optional<Semantics> semantics;
  std::vector<std::string> transforms;
  Output output = Output::Basic;
  std::string profile = "tlsf";
  std::string output_path;  // empty writes to stdout
  bool check = false;
  bool verbose = false;
};

/// Names accepted by `-t/--transform`, in documentation order.
const std::vector<std::string>& transform_names();

/// Applies one named transformation; throws a usage error for unknown names.
Formula apply_transform(const std::string& name, const Formula& f);

/// Parses the command line. Throws Error(Usage) on bad arguments. Returns
/// nullopt when help was requested (and printed to `out`).
std::optional<CliConfig> parse_args(int argc, const char* const* argv, std::ostream& out);

/// Runs one invocation. Returns the exit status: 0 on success, 1 on an
/// input error, 2 on a usage error. Diagnostics go to `err` as
/// "file:line:col: error: message".
int run(const CliConfig& config, std::ostream& out, std::ostream& err, std::istream& in);

/// parse_args followed by run.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
             std::istream& in);

}  // namespace tlsf
