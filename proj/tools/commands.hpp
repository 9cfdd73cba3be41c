#pragma once

// Command implementations behind the `opoly` executable. Each command turns a
// RunConfig into a Report; rendering and exit codes are kept separate so the
// commands can be driven directly from tests.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "opoly/xreal.hpp"

namespace opoly::cli {

enum class Command { hfun, recurrence, opoly, gram, qms, verify };
enum class Format { json, csv };

enum ExitCode : int {
  exit_ok = 0,
  exit_usage = 1,
  exit_numerical = 2,
  exit_singular_gram = 3,
};

struct RunConfig {
  Command command = Command::hfun;
  int d = 3;
  std::string a = "1";
  std::optional<std::string> t;
  long N = 10;
  Bits precision_bits = default_precision_bits;
  Format format = Format::json;
  std::string output_path;  // empty: standard output
};

struct Report {
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  std::vector<nlohmann::ordered_json> rows;
  int exit_code = exit_ok;
};

/// Precision used when --precision-bits is absent: $OPOLY_DEFAULT_PRECISION
/// if set and valid, otherwise 256.
Bits default_precision();

std::optional<Command> parse_command(const std::string& name);
std::string command_name(Command c);

/// Runs one command. Library exceptions are mapped to a Report carrying an
/// "error" entry in meta and the matching exit code.
Report run(const RunConfig& config);

std::string to_json(const Report& report);
std::string to_csv(const Report& report);

/// {"value", "digits", "error"}; the digit count is what the error supports.
nlohmann::ordered_json decimal(const XReal& value, const XReal& error, Bits p);
/// Three-digit rendering for residuals and other diagnostics.
nlohmann::ordered_json diagnostic(const XReal& value);

}  // namespace opoly::cli
