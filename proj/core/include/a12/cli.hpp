#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace a12 {

struct ConfigError : std::runtime_error {
  ConfigError(const std::string& msg, int line_no = 0)
      : std::runtime_error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + msg : msg),
        line(line_no) {}
  int line;
};

/// One batch run: a command plus every knob it may need, with defaults
/// filled so serialization round-trips. Unknown keys are rejected.
struct RunConfig {
  std::string command;  // validate-norm | tensors | scurvature | vanishing | keylemma | kvfcl
  std::string family = "mroot:2";
  std::string algebra = "su3";
  std::string datum = "cartan";
  std::string type;                 // root system label for keylemma
  std::string strategy = "random";  // keylemma scan strategy
  int n1 = 4;
  int n2 = 2;
  long long samples = 100000;
  unsigned long long seed = 0;
  std::optional<double> tol;   // per-command default when unset
  std::optional<double> step;  // per-command default when unset
  int grid = 201;
  int word_length = 5;
  std::string x = "regular";  // kvfcl left part
  std::string xp = "zero";    // kvfcl right part
  std::string format = "json";
  std::string out = "-";

  std::string to_text() const;
  bool operator==(const RunConfig&) const = default;
};

/// Parses the key=value config format ('#' comments, UTF-8). Throws
/// ConfigError with a line number on syntax errors and unknown keys; the
/// command field is required.
RunConfig parse_config(const std::string& text);

/// Applies key=value overrides (CLI flags) on top of a config.
void apply_override(RunConfig& config, const std::string& key, const std::string& value,
                    int line_no = 0);

struct RunResult {
  int exit_code = 2;
  std::string report;  // serialized per config.format
};

/// Runs the command and renders the report. Exit code 0: pass verdict,
/// 1: a mathematical check failed, 2: usage or configuration error.
RunResult run(const RunConfig& config);

/// run() plus writing the report to config.out ("-" = stdout).
int execute(const RunConfig& config);

}  // namespace a12
