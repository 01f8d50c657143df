#pragma once

// Command implementations behind the confint executable. Each command returns
// a Report holding the JSON document and the CSV rendering; the executable
// only parses flags, picks the format and maps exceptions to exit codes.

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "confint/boundary.hpp"
#include "confint/invariants.hpp"
#include "confint/relations.hpp"
#include "confint/strata.hpp"

namespace confint {

enum ExitCode : int { kOk = 0, kFailure = 1, kParse = 2, kPrecondition = 3, kGuard = 4 };

inline int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return kParse;
  if (dynamic_cast<const PreconditionError*>(&e) || dynamic_cast<const DegenerateError*>(&e)) return kPrecondition;
  if (dynamic_cast<const GuardExceeded*>(&e)) return kGuard;
  return kFailure;
}

/// Everything needed to rerun a command. `workers` and `out` are not
/// recorded: they change wall time and destination, never the report.
struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  std::uint64_t budget = 1'000'000;
  std::uint64_t seed = 1;
  int workers = 1;
  std::optional<double> rejection_cutoff;
  std::string anomaly_policy = "cited-zero";
  std::string format = "json";
  std::string out;
  nlohmann::json params = nlohmann::json::object();  // command-specific settings

  void validate() const {
    if (budget == 0) throw PreconditionError("budget must be positive");
    if (rejection_cutoff && !(*rejection_cutoff > 0)) throw PreconditionError("rejection cutoff must be positive");
    if (workers < 1) throw PreconditionError("workers must be at least 1");
    if (format != "json" && format != "csv" && format != "dot")
      throw PreconditionError("format must be json, csv or dot");
  }

  IntegratorOptions integrator() const {
    IntegratorOptions o;
    o.budget = budget;
    o.seed = seed;
    o.workers = workers;
    if (rejection_cutoff) o.rejection_cutoff = *rejection_cutoff;
    return o;
  }
};

inline nlohmann::json to_json(const RunConfig& c) {
  nlohmann::json j = {{"command", c.command}, {"inputs", c.inputs},  {"budget", c.budget},
                      {"seed", c.seed},       {"anomaly_policy", c.anomaly_policy}, {"format", c.format},
                      {"params", c.params}};
  if (c.rejection_cutoff) j["rejection_cutoff"] = *c.rejection_cutoff;
  return j;
}

inline RunConfig run_config_from_json(const nlohmann::json& j) {
  RunConfig c;
  try {
    c.command = j.at("command").get<std::string>();
    c.inputs = j.at("inputs").get<std::vector<std::string>>();
    c.budget = j.at("budget").get<std::uint64_t>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.anomaly_policy = j.value("anomaly_policy", c.anomaly_policy);
    c.format = j.value("format", c.format);
    c.params = j.value("params", nlohmann::json::object());
    if (j.contains("rejection_cutoff")) c.rejection_cutoff = j["rejection_cutoff"].get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("run config: ") + e.what());
  }
  return c;
}

struct Report {
  nlohmann::json json;
  std::string csv;

  std::string render(const std::string& format) const {
    if (format == "csv") return csv;
    if (format == "dot" && json.contains("dot")) return json["dot"].get<std::string>();
    return json.dump(2) + "\n";
  }
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// A built-in knot name, or a path to a knot JSON file.
inline KnotCurve load_knot(const std::string& arg) {
  if (std::filesystem::is_regular_file(arg)) {
    KnotCurve k;
    try {
      k = parse_knot_json(read_file(arg));
    } catch (const ParseError& e) {
      throw ParseError(arg + ": " + e.what());
    }
    if (k.name().empty()) k.set_name(std::filesystem::path(arg).stem().string());
    return k;
  }
  return standard_knot(arg);
}

/// crossed | side-by-side | nested | single, or diagram text.
inline Diagram load_diagram(const std::string& arg) {
  if (arg == "crossed") return crossed_chords();
  if (arg == "side-by-side") return side_by_side_chords();
  if (arg == "nested") return nested_chords();
  if (arg == "single") return single_chord();
  return parse_diagram(arg, 1).diagram;
}

/// "primitive" for the degree-2 primitive weight system, or a JSON file
/// mapping chord diagram text to values in the unsigned chord convention.
inline WeightSystem load_weights(const std::string& arg, int degree) {
  if (arg == "primitive") {
    if (degree != 0 && degree != 2) throw PreconditionError("the built-in primitive weight system has degree 2");
    return primitive_degree_two();
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(arg));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(arg + ": " + e.what());
  }
  if (!j.is_object() || j.empty()) throw ParseError(arg + ": expected a non-empty object of chord values");
  std::map<Diagram, Rational> values;
  int n = degree;
  for (const auto& [key, value] : j.items()) {
    const Diagram d = parse_diagram(key).diagram;
    if (n == 0) n = d.degree();
    if (value.is_number_integer()) {
      values[d] = Rational(value.get<long>());
    } else if (value.is_string()) {
      values[d] = Rational(value.get<std::string>());
    } else {
      throw ParseError(arg + ": value for " + key + " must be an integer or a rational string");
    }
  }
  return from_chord_values(n, values);
}

namespace detail {

inline std::string csv_number(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

inline std::string config_comment(const RunConfig& c) { return "# config: " + to_json(c).dump() + "\n"; }

inline std::string summary_csv(const RunConfig& c, const std::string& knot, const std::string& invariant,
                               double value, double se, const std::optional<double>& oracle) {
  return config_comment(c) + "knot,invariant,value,stderr,oracle_value\n" + knot + "," + invariant + "," +
         csv_number(value) + "," + csv_number(se) + "," + (oracle ? csv_number(*oracle) : "") + "\n";
}

}  // namespace detail

// ---------------------------------------------------------------- commands

inline Report cmd_dims(int n_max, const RunConfig& c) {
  if (n_max < 1) throw PreconditionError("n_max must be at least 1");
  Report r;
  nlohmann::json rows = nlohmann::json::array();
  r.csv = detail::config_comment(c) + "n,dim_CD_mod_4T,dim_TD_mod_STU,equal\n";
  for (int n = 1; n <= n_max; ++n) {
    const int a = dim_chord_mod_4t(n), b = dim_trivalent_mod_stu(n);
    rows.push_back({{"n", n}, {"dim_CD_mod_4T", a}, {"dim_TD_mod_STU", b}, {"equal", a == b}});
    r.csv += std::to_string(n) + "," + std::to_string(a) + "," + std::to_string(b) + "," + (a == b ? "true" : "false") + "\n";
  }
  r.json = {{"config", to_json(c)}, {"dims", rows}};
  return r;
}

inline Report cmd_link(const std::string& a, const std::string& b, const RunConfig& c) {
  const KnotCurve k1 = load_knot(a), k2 = load_knot(b);
  const IntegralEstimate e = linking_integral(k1, k2, c.integrator());
  const double oracle = linking_number_by_crossings(k1, k2, default_projection());
  Report r;
  r.json = {{"config", to_json(c)}, {"result", to_json(e)}, {"oracle_value", oracle}};
  r.csv = detail::summary_csv(c, k1.name() + "+" + k2.name(), "linking", e.value, e.standard_error, oracle);
  return r;
}

inline Report cmd_v2(const std::string& knot, const RunConfig& c) {
  const KnotCurve k = load_knot(knot);
  const InvariantResult res = v2(k, c.integrator());
  const double oracle = static_cast<double>(pv_v2(k));
  Report r;
  r.json = {{"config", to_json(c)}, {"result", to_json(res)}, {"oracle_value", oracle}};
  r.csv = detail::summary_csv(c, k.name(), "v2", res.value, res.standard_error, oracle);
  return r;
}

inline Report cmd_tw(const std::string& weights, int degree, const std::string& knot, const RunConfig& c) {
  const WeightSystem w = load_weights(weights, degree);
  const KnotCurve k = load_knot(knot);
  TwOptions topt;
  topt.policy = AnomalyPolicy::parse(c.anomaly_policy);
  const InvariantResult res = t_of_w(w, k, c.integrator(), topt);
  // A degree-2 primitive weight system is w(crossed) times the Polyak-Viro invariant.
  std::optional<double> oracle;
  if (w.degree == 2) oracle = w.chord_value(crossed_chords()).convert_to<double>() * static_cast<double>(pv_v2(k));
  if (w.degree == 1) oracle = 0;
  Report r;
  r.json = {{"config", to_json(c)}, {"result", to_json(res)}};
  r.json["oracle_value"] = oracle ? nlohmann::json(*oracle) : nlohmann::json();
  r.csv = detail::summary_csv(c, k.name(), "T(W)", res.value, res.standard_error, oracle);
  return r;
}

inline Report cmd_strata(int k, const std::string& mode, int max_codim, const RunConfig& c) {
  const auto fs = enumerate_strata(k, max_codim, parse_strata_mode(mode));
  Report r;
  std::map<int, std::size_t> counts;
  for (const auto& f : fs) ++counts[f.codim()];
  nlohmann::json cj = nlohmann::json::object();
  for (const auto& [codim, n] : counts) cj[std::to_string(codim)] = n;
  r.json = {{"config", to_json(c)}, {"k", k}, {"mode", mode}, {"counts", cj}, {"strata", to_json(fs)}};
  if (c.format == "dot") r.json["dot"] = to_dot(fs);
  r.csv = detail::config_comment(c) + "codim,subsets\n";
  for (const auto& f : fs) r.csv += std::to_string(f.codim()) + ",\"" + family_label(f) + "\"\n";
  return r;
}

inline Report cmd_universality(const std::string& diagram, const std::string& weights, bool integral,
                               const RunConfig& c) {
  const Diagram d = load_diagram(diagram);
  const WeightSystem w = load_weights(weights, d.degree() == 1 ? 0 : d.degree());
  const UniversalityReport u = universality_check(d, w, c.integrator(), integral);
  Report r;
  r.json = {{"config", to_json(c)}, {"result", to_json(u)}};
  r.csv = detail::config_comment(c) + "resolution,parity,pv_v2,v2_integral,stderr\n";
  for (const auto& row : u.rows)
    r.csv += row.signs + "," + std::to_string(row.parity) + "," + std::to_string(row.pv) + "," +
             (row.integral ? detail::csv_number(row.integral->value) + "," +
                                 detail::csv_number(row.integral->standard_error)
                           : ",") +
             "\n";
  r.csv += "sum,," + std::to_string(u.combinatorial) + "," +
           (u.integral_value ? detail::csv_number(*u.integral_value) + "," + detail::csv_number(*u.integral_stderr)
                             : ",") +
           "\n";
  r.csv += "expected,," + u.expected.str() + ",,\n";
  return r;
}

/// Knot spec JSON of a built-in knot or a knot file, with its oracle data.
inline Report cmd_knot(const std::string& knot, const RunConfig& c) {
  const KnotCurve k = load_knot(knot);
  const EmbeddingReport e = embedding_report(k);
  Report r;
  r.json = to_json(k);
  r.csv = detail::config_comment(c) + "knot,harmonics,min_speed,min_separation\n" + k.name() + "," +
          std::to_string(k.harmonics()) + "," + detail::csv_number(e.min_speed) + "," +
          detail::csv_number(e.min_separation) + "\n";
  return r;
}

/// Polyak-Viro degree-2 invariant of a knot (name or JSON file) or of a Gauss
/// code text file.
inline Report cmd_pv(const std::string& input, bool gauss, const RunConfig& c) {
  GaussCode g;
  std::string name = std::filesystem::path(input).stem().string();
  if (gauss) {
    std::istringstream in(read_file(input));
    std::string line;
    int line_no = 0;
    bool found = false;
    while (!found && std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
      g = parse_gauss_code(line, line_no);
      found = true;
    }
    if (!found) throw ParseError(input + ": no Gauss code found");
  } else {
    const KnotCurve k = load_knot(input);
    name = k.name();
    g = gauss_code(k, default_projection());
  }
  const long v = pv_v2(g);
  Report r;
  r.json = {{"config", to_json(c)}, {"knot", name}, {"gauss_code", to_text(g)}, {"pv_v2", v}};
  r.csv = detail::config_comment(c) + "knot,invariant,value,stderr,oracle_value\n" + name + ",pv_v2," +
          std::to_string(v) + ",0,\n";
  return r;
}

/// Runs the command a RunConfig describes; command-specific settings come
/// from `inputs` and `params`.
inline Report run(const RunConfig& c) {
  c.validate();
  const auto& p = c.params;
  auto input = [&](std::size_t i) {
    if (i >= c.inputs.size()) throw PreconditionError(c.command + ": missing input " + std::to_string(i + 1));
    return c.inputs[i];
  };
  try {
    if (c.command == "dims") return cmd_dims(p.value("n_max", 3), c);
    if (c.command == "link") return cmd_link(input(0), input(1), c);
    if (c.command == "v2") return cmd_v2(input(0), c);
    if (c.command == "tw") return cmd_tw(p.value("weights", std::string("primitive")), p.value("degree", 0), input(0), c);
    if (c.command == "strata")
      return cmd_strata(p.value("k", 4), p.value("mode", std::string("interval")), p.value("max_codim", 2), c);
    if (c.command == "universality")
      return cmd_universality(input(0), p.value("weights", std::string("primitive")), p.value("integral", false), c);
    if (c.command == "knot") return cmd_knot(input(0), c);
    if (c.command == "pv") return cmd_pv(input(0), p.value("gauss", false), c);
  } catch (const nlohmann::json::type_error& e) {
    throw ParseError(std::string("run config params: ") + e.what());
  }
  throw PreconditionError("unknown command " + c.command);
}

}  // namespace confint
