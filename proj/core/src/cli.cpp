#include "a12/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>

#include <json.hpp>

#include "a12/kvfcl.hpp"
#include "a12/root_system.hpp"

namespace a12 {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kSpecVersion = "1";

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

long long parse_ll(const std::string& v, const std::string& key, int line) {
  try {
    size_t used = 0;
    long long out = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument("trailing");
    return out;
  } catch (const std::exception&) {
    throw ConfigError("invalid integer for key '" + key + "': '" + v + "'", line);
  }
}

double parse_dbl(const std::string& v, const std::string& key, int line) {
  try {
    size_t used = 0;
    double out = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument("trailing");
    return out;
  } catch (const std::exception&) {
    throw ConfigError("invalid number for key '" + key + "': '" + v + "'", line);
  }
}

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

ordered_json qvec_json(const QVec& v) {
  ordered_json arr = ordered_json::array();
  for (const QF& q : v) arr.push_back(q.to_string());
  return arr;
}

ordered_json vec_json(const Eigen::VectorXd& v) {
  ordered_json arr = ordered_json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

Eigen::VectorXd interior_direction(Rng& rng, int n1, int n2) {
  while (true) {
    Eigen::VectorXd c = rng.unit_vector(n1 + n2);
    if (c.head(n1).norm() > 0.05 && c.tail(n2).norm() > 0.05) return c;
  }
}

Eigen::VectorXd parse_vector_spec(const std::string& spec, const HomogeneousDatum& hd) {
  const int dim = hd.algebra().dim();
  if (spec == "zero") return Eigen::VectorXd::Zero(dim);
  if (spec == "regular") {
    Eigen::VectorXd h = Eigen::VectorXd::Zero(dim);
    for (int a = 0; a < hd.algebra().rank(); ++a)
      h += double(a + 1) * hd.algebra().cartan_basis().col(a);
    return h / h.norm();
  }
  if (spec.rfind("v2:", 0) == 0) {
    int idx = static_cast<int>(parse_ll(spec.substr(3), "x/xp", 0));
    if (idx < 0 || idx >= hd.n2()) throw ConfigError("v2 index out of range in '" + spec + "'");
    return hd.datum().frame.col(hd.n1() + idx);
  }
  // Comma separated coordinates in the datum frame.
  std::vector<double> vals;
  size_t pos = 0;
  while (pos <= spec.size()) {
    size_t comma = spec.find(',', pos);
    std::string tok = spec.substr(pos, comma == std::string::npos ? comma : comma - pos);
    vals.push_back(parse_dbl(trim(tok), "x/xp", 0));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (static_cast<int>(vals.size()) != dim)
    throw ConfigError("vector spec '" + spec + "' has " + std::to_string(vals.size()) +
                      " coordinates, the frame dimension is " + std::to_string(dim));
  return hd.datum().from_frame(Eigen::VectorXd::Map(vals.data(), dim));
}

std::string render(const ordered_json& j, const std::string& format) {
  if (format == "json") return j.dump(2) + "\n";
  // csv: flattened dotted keys.
  std::string out = "key,value\n";
  std::function<void(const ordered_json&, const std::string&)> walk =
      [&](const ordered_json& node, const std::string& prefix) {
        if (node.is_object()) {
          for (auto it = node.begin(); it != node.end(); ++it)
            walk(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key());
        } else if (node.is_array()) {
          for (size_t i = 0; i < node.size(); ++i) walk(node[i], prefix + "." + std::to_string(i));
        } else if (node.is_string()) {
          out += prefix + ",\"" + node.get<std::string>() + "\"\n";
        } else {
          out += prefix + "," + node.dump() + "\n";
        }
      };
  walk(j, "");
  return out;
}

// --- command implementations -------------------------------------------

RunResult run_validate_norm(const RunConfig& cfg) {
  GeneratingFamily family = GeneratingFamily::parse(cfg.family);
  ValidityReport rep = validate_generating(family, cfg.grid);
  ordered_json j;
  j["spec_version"] = kSpecVersion;
  j["command"] = cfg.command;
  j["family"] = cfg.family;
  j["grid"] = cfg.grid;
  j["valid"] = rep.valid;
  j["positive"] = rep.positive;
  j["min_margin"] = rep.min_margin;
  j["argmin"] = ordered_json{{"s", rep.argmin_s}, {"b", rep.argmin_b}, {"form", rep.argmin_form}};
  j["identity_gap"] = rep.identity_gap;
  j["min_profile"] = rep.min_profile;
  return {rep.valid ? 0 : 1, render(j, cfg.format)};
}

RunResult run_tensors(const RunConfig& cfg) {
  GeneratingFamily family = GeneratingFamily::parse(cfg.family);
  DatumDecomposition datum = DatumDecomposition::standard(cfg.n1, cfg.n2);
  const double step = cfg.step.value_or(1e-4);
  const double grad_step = 1e-5;
  const double tol = cfg.tol.value_or(1e-6);
  Rng rng(cfg.seed);
  double max_g_dev = 0.0, max_i_dev = 0.0, max_sym = 0.0, max_euler = 0.0;
  for (long long k = 0; k < cfg.samples; ++k) {
    Eigen::VectorXd y = interior_direction(rng, cfg.n1, cfg.n2);
    TensorBundleAtPoint t = cartan_tensor(family, datum, y);
    FdHessian fd = hessian_fd_oracle(family, datum, y, step);
    double scale = std::max(1.0, t.g.cwiseAbs().maxCoeff());
    max_g_dev = std::max(max_g_dev, (fd.h - t.g).cwiseAbs().maxCoeff() / scale);
    Eigen::VectorXd gfd = log_det_gradient_fd(family, datum, y, grad_step);
    max_i_dev = std::max(max_i_dev, (gfd - *t.mean_torsion).lpNorm<Eigen::Infinity>());
    max_sym = std::max(max_sym, t.cartan.symmetry_gap());
    max_euler = std::max(max_euler, t.cartan.contract(t.y).cwiseAbs().maxCoeff());
  }
  bool pass = max_g_dev < tol && max_i_dev < tol;
  ordered_json j;
  j["spec_version"] = kSpecVersion;
  j["command"] = cfg.command;
  j["family"] = cfg.family;
  j["n1"] = cfg.n1;
  j["n2"] = cfg.n2;
  j["samples"] = cfg.samples;
  j["seed"] = cfg.seed;
  j["step"] = step;
  j["tol"] = tol;
  j["max_g_deviation"] = max_g_dev;
  j["max_torsion_deviation"] = max_i_dev;
  j["max_cartan_symmetry_gap"] = max_sym;
  j["max_cartan_euler_residual"] = max_euler;
  j["pass"] = pass;
  return {pass ? 0 : 1, render(j, cfg.format)};
}

ordered_json criterion_json(const CriterionReport& crit) {
  ordered_json c;
  c["holds"] = crit.holds;
  if (!crit.holds) {
    c["witness"] = ordered_json{{"y1", vec_json(crit.witness_v1)},
                                {"y2", vec_json(crit.witness_v2)},
                                {"pairing", crit.pairing},
                                {"value", crit.value}};
  } else {
    c["witness"] = nullptr;
  }
  return c;
}

RunResult run_scurvature(const RunConfig& cfg) {
  auto algebra = std::make_shared<CompactLieAlgebra>(CompactLieAlgebra::parse(cfg.algebra));
  GeneratingFamily family = GeneratingFamily::parse(cfg.family);
  HomogeneousDatum hd = build_datum(algebra, family, cfg.datum);
  const double step = cfg.step.value_or(1e-5);
  const double tol = cfg.tol.value_or(1e-5);
  Rng rng(cfg.seed);
  double max_abs_closed = 0.0, max_dev = 0.0;
  for (long long k = 0; k < cfg.samples; ++k) {
    Eigen::VectorXd y = hd.datum().from_frame(interior_direction(rng, hd.n1(), hd.n2()));
    SCurvatureSample s = evaluate_scurvature(hd, y, step);
    max_abs_closed = std::max(max_abs_closed, std::abs(s.s_closed));
    max_dev = std::max(max_dev, s.deviation);
  }
  CriterionReport crit = vanishing_criterion(hd);
  bool pass = max_dev < tol;
  ordered_json j;
  j["spec_version"] = kSpecVersion;
  j["command"] = cfg.command;
  j["algebra"] = cfg.algebra;
  j["family"] = cfg.family;
  j["datum_kind"] = hd.kind();
  j["samples"] = cfg.samples;
  j["seed"] = cfg.seed;
  j["step"] = step;
  j["tol"] = tol;
  j["max_abs_S_closed"] = max_abs_closed;
  j["max_rel_deviation"] = max_dev;
  j["criterion"] = criterion_json(crit);
  j["pass"] = pass;
  return {pass ? 0 : 1, render(j, cfg.format)};
}

RunResult run_vanishing(const RunConfig& cfg) {
  auto algebra = std::make_shared<CompactLieAlgebra>(CompactLieAlgebra::parse(cfg.algebra));
  GeneratingFamily family = GeneratingFamily::parse(cfg.family);
  HomogeneousDatum hd = build_datum(algebra, family, cfg.datum);
  CriterionReport crit = vanishing_criterion(hd);
  ordered_json j;
  j["spec_version"] = kSpecVersion;
  j["command"] = cfg.command;
  j["algebra"] = cfg.algebra;
  j["family"] = cfg.family;
  j["datum_kind"] = hd.kind();
  j["criterion"] = criterion_json(crit);
  j["holds"] = crit.holds;
  return {crit.holds ? 0 : 1, render(j, cfg.format)};
}

RunResult run_keylemma(const RunConfig& cfg) {
  if (cfg.type.empty())
    throw ConfigError("keylemma requires the 'type' field (e.g. type=B2)");
  RootSystem rs = RootSystem::parse(cfg.type);
  ScanReport rep = assertion_scan(rs, cfg.strategy, cfg.samples, cfg.seed);
  ordered_json j;
  j["spec_version"] = kSpecVersion;
  j["command"] = cfg.command;
  j["type"] = std::string(1, rs.family);
  j["rank"] = rs.rank;
  j["strategy"] = rep.strategy;
  j["samples"] = rep.samples;
  j["seed"] = rep.seed;
  j["root_count"] = static_cast<long long>(rs.roots.size());
  j["min_count"] = rep.min_count;
  j["expected_min"] = rep.expected_min;
  j["argmin_U"] = qvec_json(rep.argmin_u);
  j["argmin_X"] = qvec_json(rep.argmin_x);
  j["certified"] = rep.certified;
  if (rep.certified) {
    j["flats"] = rep.flats;
    j["minimizing_pair_count"] = rep.minimizing_pair_count;
  }
  j["pass"] = rep.pass;
  return {rep.pass ? 0 : 1, render(j, cfg.format)};
}

RunResult run_kvfcl(const RunConfig& cfg) {
  auto algebra = std::make_shared<CompactLieAlgebra>(CompactLieAlgebra::parse(cfg.algebra));
  GeneratingFamily family = GeneratingFamily::parse(cfg.family);
  HomogeneousDatum hd = build_datum(algebra, family, cfg.datum);
  KillingCandidate cand;
  cand.x = parse_vector_spec(cfg.x, hd);
  cand.x_prime = parse_vector_spec(cfg.xp, hd);
  cand.g_prime = hd.datum().frame.rightCols(hd.n2());
  DeviationReport rep =
      length_deviation(hd, cand, static_cast<int>(cfg.samples), cfg.seed, cfg.word_length);
  KvfclClass cls = classify_candidate(hd, cand, rep);
  ordered_json j;
  j["spec_version"] = kSpecVersion;
  j["command"] = cfg.command;
  j["algebra"] = cfg.algebra;
  j["family"] = cfg.family;
  j["datum_kind"] = hd.kind();
  j["x"] = cfg.x;
  j["xp"] = cfg.xp;
  j["samples"] = cfg.samples;
  j["seed"] = cfg.seed;
  j["word_length"] = cfg.word_length;
  j["min"] = rep.min_f;
  j["max"] = rep.max_f;
  j["spread"] = rep.spread;
  j["verdict"] = to_string(rep.verdict);
  j["class"] = to_string(cls);
  int code = cls == KvfclClass::Inconsistent ? 1 : 0;
  return {code, render(j, cfg.format)};
}

}  // namespace

std::string RunConfig::to_text() const {
  std::string s;
  s += "command=" + command + "\n";
  s += "algebra=" + algebra + "\n";
  s += "datum=" + datum + "\n";
  s += "family=" + family + "\n";
  s += "format=" + format + "\n";
  s += "grid=" + std::to_string(grid) + "\n";
  s += "n1=" + std::to_string(n1) + "\n";
  s += "n2=" + std::to_string(n2) + "\n";
  s += "out=" + out + "\n";
  s += "samples=" + std::to_string(samples) + "\n";
  s += "seed=" + std::to_string(seed) + "\n";
  if (step) s += "step=" + format_double(*step) + "\n";
  s += "strategy=" + strategy + "\n";
  if (tol) s += "tol=" + format_double(*tol) + "\n";
  if (!type.empty()) s += "type=" + type + "\n";
  s += "word_length=" + std::to_string(word_length) + "\n";
  s += "x=" + x + "\n";
  s += "xp=" + xp + "\n";
  return s;
}

void apply_override(RunConfig& c, const std::string& key, const std::string& value,
                    int line) {
  if (key == "command") c.command = value;
  else if (key == "family") c.family = value;
  else if (key == "algebra") c.algebra = value;
  else if (key == "datum") c.datum = value;
  else if (key == "type") c.type = value;
  else if (key == "strategy") c.strategy = value;
  else if (key == "n1") c.n1 = static_cast<int>(parse_ll(value, key, line));
  else if (key == "n2") c.n2 = static_cast<int>(parse_ll(value, key, line));
  else if (key == "samples") c.samples = parse_ll(value, key, line);
  else if (key == "seed") c.seed = static_cast<unsigned long long>(parse_ll(value, key, line));
  else if (key == "tol") c.tol = parse_dbl(value, key, line);
  else if (key == "step") c.step = parse_dbl(value, key, line);
  else if (key == "grid") c.grid = static_cast<int>(parse_ll(value, key, line));
  else if (key == "word_length") c.word_length = static_cast<int>(parse_ll(value, key, line));
  else if (key == "x") c.x = value;
  else if (key == "xp") c.xp = value;
  else if (key == "format") {
    if (value != "json" && value != "csv")
      throw ConfigError("format must be json or csv, got '" + value + "'", line);
    c.format = value;
  } else if (key == "out") c.out = value;
  else throw ConfigError("unknown key '" + key + "'", line);
}

RunConfig parse_config(const std::string& text) {
  RunConfig c;
  bool have_command = false;
  int line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    std::string line = text.substr(pos, eol == std::string::npos ? eol : eol - pos);
    ++line_no;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) {
      size_t eq = line.find('=');
      if (eq == std::string::npos)
        throw ConfigError("syntax error: expected key=value, got '" + line + "'", line_no);
      std::string key = trim(line.substr(0, eq));
      std::string value = trim(line.substr(eq + 1));
      if (key.empty()) throw ConfigError("syntax error: empty key", line_no);
      apply_override(c, key, value, line_no);
      if (key == "command") have_command = true;
    }
    if (eol == std::string::npos) break;
    pos = eol + 1;
  }
  if (!have_command) throw ConfigError("missing required field 'command'");
  return c;
}

RunResult run(const RunConfig& cfg) {
  if (cfg.command == "validate-norm") return run_validate_norm(cfg);
  if (cfg.command == "tensors") return run_tensors(cfg);
  if (cfg.command == "scurvature") return run_scurvature(cfg);
  if (cfg.command == "vanishing") return run_vanishing(cfg);
  if (cfg.command == "keylemma") return run_keylemma(cfg);
  if (cfg.command == "kvfcl") return run_kvfcl(cfg);
  throw ConfigError("unknown command '" + cfg.command + "'");
}

int execute(const RunConfig& cfg) {
  RunResult res = run(cfg);
  if (cfg.out == "-") {
    std::cout << res.report;
  } else {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw ConfigError("cannot open output file '" + cfg.out + "'");
    f << res.report;
  }
  return res.exit_code;
}

}  // namespace a12
