// Batch front end: runs one command per invocation and writes a
// machine-readable report. Exit codes: 0 pass, 1 failed mathematical
// check, 2 usage or configuration error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "a12/cli.hpp"

namespace {

constexpr const char* kUsageExtra = R"(Commands:
  validate-norm   strong-convexity grid scan of a generating profile
  tensors         closed-form g and mean torsion vs finite-difference oracles
  scurvature      closed-form S-curvature vs the homogeneous-space oracle
  vanishing       basis test of the vanishing-S-curvature criterion
  keylemma        four-roots assertion scan over a root system
  kvfcl           constant-length sampling test for a Killing candidate

Arguments after the command are key=value pairs (same keys as config
files); --key flags override both. Examples:
  a12tool keylemma type=B2 strategy=exhaustive-directions
  a12tool vanishing algebra=su3 datum=cartan family=mroot:2
  a12tool validate-norm family=phi:1-0.9*s^2
)";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification toolkit for two-block Minkowski norms and the "
               "S-curvature of left-invariant metrics on compact Lie groups"};
  app.footer(kUsageExtra);

  std::string config_path;
  app.add_option("--config", config_path, "key=value config file");
  std::vector<std::pair<std::string, std::string>> flag_overrides;
  auto add_flag = [&](const std::string& name, const std::string& help) {
    app.add_option_function<std::string>(
        "--" + name,
        [&flag_overrides, name](const std::string& v) { flag_overrides.emplace_back(name, v); },
        help);
  };
  add_flag("seed", "random seed");
  add_flag("samples", "number of samples");
  add_flag("tol", "pass/fail tolerance");
  add_flag("step", "finite-difference step");
  add_flag("format", "report format: json|csv");
  add_flag("out", "report path ('-' = stdout)");
  add_flag("family", "norm family spec (riemannian:c1,c2 | mroot:m | phi:<expr> | L:<expr>)");
  add_flag("algebra", "algebra spec (su2, su3, ...)");
  add_flag("datum", "datum spec (cartan[:c,...] | perturbed)");
  add_flag("type", "root system label (A2, B3, E8, ...)");
  add_flag("strategy", "keylemma strategy (random | exhaustive-directions)");
  add_flag("n1", "first block dimension");
  add_flag("n2", "second block dimension");
  add_flag("grid", "validation grid size");
  add_flag("word_length", "orbit word length");
  add_flag("x", "kvfcl left part (regular | zero | v2:k | coords)");
  add_flag("xp", "kvfcl right part");

  app.allow_extras();
  CLI11_PARSE(app, argc, argv);

  try {
    std::string text;
    if (!config_path.empty()) {
      std::ifstream f(config_path, std::ios::binary);
      if (!f) {
        std::cerr << "error: cannot read config file '" << config_path << "'\n";
        return 2;
      }
      std::ostringstream ss;
      ss << f.rdbuf();
      text = ss.str();
      if (!text.empty() && text.back() != '\n') text += '\n';
    }

    // Positionals: one bare token names the command, the rest are
    // key=value pairs appended after the config (later lines win).
    bool saw_command_token = false;
    for (const std::string& tok : app.remaining()) {
      if (tok.find('=') == std::string::npos) {
        if (saw_command_token) {
          std::cerr << "error: unexpected argument '" << tok << "'\n";
          return 2;
        }
        saw_command_token = true;
        text += "command=" + tok + "\n";
      } else {
        text += tok + "\n";
      }
    }

    a12::RunConfig cfg = a12::parse_config(text);
    for (const auto& [key, value] : flag_overrides) a12::apply_override(cfg, key, value);
    return a12::execute(cfg);
  } catch (const a12::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
