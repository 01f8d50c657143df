#pragma once

// Knot invariants assembled from configuration-space integrals, and the
// combinatorial checks they are compared against.
//
// Integrals are taken in the vertex-order orientation, paired with weight
// values in the same orientation, so W(D) * I(D, K) does not depend on how a
// class is labeled. Every integral is reported relative to the same integral
// on the round unknot with the same derived seed.

#include <cmath>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "confint/diagram.hpp"
#include "confint/integrator.hpp"
#include "confint/knot.hpp"
#include "confint/polyak_viro.hpp"
#include "confint/singular.hpp"
#include "confint/weight_system.hpp"

namespace confint {

// ---------------------------------------------------------------- anomaly

struct AnomalyPolicy {
  enum class Kind { CitedZero, AllZero, File };
  Kind kind = Kind::CitedZero;
  std::string path;
  std::map<std::string, double> values;  // canonical diagram text -> M_D

  std::string name() const {
    switch (kind) {
      case Kind::CitedZero: return "cited-zero";
      case Kind::AllZero: return "all-zero";
      case Kind::File: return "file:" + path;
    }
    return "";
  }

  /// Parses cited-zero | all-zero | file:<path>. The file is a JSON object
  /// from diagram text to M_D.
  static AnomalyPolicy parse(const std::string& text) {
    AnomalyPolicy p;
    if (text == "cited-zero") return p;
    if (text == "all-zero") {
      p.kind = Kind::AllZero;
      return p;
    }
    if (text.rfind("file:", 0) == 0) {
      p.kind = Kind::File;
      p.path = text.substr(5);
      std::ifstream in(p.path);
      if (!in) throw PreconditionError("cannot open anomaly file " + p.path);
      std::stringstream buf;
      buf << in.rdbuf();
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(buf.str());
      } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("anomaly file: ") + e.what(), 0);
      }
      if (!j.is_object()) throw ParseError("anomaly file must hold a JSON object", 0);
      for (const auto& [key, value] : j.items()) {
        if (!value.is_number()) throw ParseError("anomaly value for " + key + " is not a number", 0);
        p.values[to_text(canonicalize(parse_diagram(key).diagram).diagram)] = value.get<double>();
      }
      return p;
    }
    throw PreconditionError("unknown anomaly policy " + text);
  }
};

/// True for degrees where the anomaly is known to vanish.
inline bool anomaly_cited_zero(int n) { return n % 2 == 0 || n == 3 || n == 5; }

/// M_D for the canonical class d. Sets `warned` when a value was assumed.
inline double anomaly_coefficient(const Diagram& d, const AnomalyPolicy& p, bool& warned) {
  warned = false;
  if (d.has_chord() || anomaly_cited_zero(d.degree()) || p.kind == AnomalyPolicy::Kind::AllZero) return 0;
  if (p.kind == AnomalyPolicy::Kind::File) {
    auto it = p.values.find(to_text(d));
    if (it != p.values.end()) return it->second;
  }
  warned = true;
  return 0;
}

// ---------------------------------------------------------------- results

struct InvariantTerm {
  Diagram diagram;
  Rational weight = 0;  // W(D) in the vertex-order orientation
  int automorphisms = 1;
  IntegralEstimate integral;
  IntegralEstimate baseline;
  double anomaly = 0;  // M_D
  bool anomaly_assumed = false;

  double factor() const { return static_cast<double>(weight) / automorphisms; }
};

struct InvariantResult {
  std::string invariant;
  std::string knot;
  int degree = 0;
  double value = 0;
  double standard_error = 0;
  std::vector<InvariantTerm> terms;
  std::optional<IntegralEstimate> self_link, baseline_self_link;
  std::string anomaly_policy = "cited-zero";
  std::vector<std::string> warnings;
  std::uint64_t seed = 0;
  std::uint64_t budget = 0;
};

/// The value from the stored terms, in stored order.
inline double recompute_value(const InvariantResult& r) {
  const double s = r.self_link ? r.self_link->value : 0.0;
  const double sb = r.baseline_self_link ? r.baseline_self_link->value : 0.0;
  double total = 0;
  for (const auto& t : r.terms) {
    double c = t.integral.value - t.baseline.value;
    if (t.anomaly != 0) c -= t.anomaly * (s - sb);
    total += t.factor() * c;
  }
  return total;
}

/// Error of recompute_value treating every estimate as independent. The
/// self-link term enters every corrected diagram, so it is added coherently.
inline double recompute_standard_error(const InvariantResult& r) {
  auto sq = [](double x) { return x * x; };
  double var = 0, anomaly_weight = 0;
  for (const auto& t : r.terms) {
    var += sq(t.factor()) * (sq(t.integral.standard_error) + sq(t.baseline.standard_error));
    anomaly_weight += t.factor() * t.anomaly;
  }
  if (r.self_link && r.baseline_self_link)
    var += sq(anomaly_weight) * (sq(r.self_link->standard_error) + sq(r.baseline_self_link->standard_error));
  return std::sqrt(var);
}

inline nlohmann::json to_json(const InvariantResult& r) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : r.terms) {
    nlohmann::json jt = {{"diagram", to_text(t.diagram)},
                         {"weight", t.weight.str()},
                         {"automorphisms", t.automorphisms},
                         {"integral", to_json(t.integral)},
                         {"baseline", to_json(t.baseline)},
                         {"anomaly", t.anomaly}};
    if (t.anomaly_assumed) jt["anomaly_assumed"] = true;
    terms.push_back(jt);
  }
  nlohmann::json j = {{"invariant", r.invariant}, {"knot", r.knot},       {"degree", r.degree},
                      {"value", r.value},         {"stderr", r.standard_error}, {"terms", terms},
                      {"anomaly_policy", r.anomaly_policy}, {"warnings", r.warnings},
                      {"seed", r.seed},           {"budget", r.budget}};
  if (r.self_link) j["self_link"] = to_json(*r.self_link);
  if (r.baseline_self_link) j["baseline_self_link"] = to_json(*r.baseline_self_link);
  return j;
}

namespace detail {

inline InvariantTerm integrate_term(const Diagram& d, const Rational& weight, int automorphisms, const KnotCurve& k,
                                    const KnotCurve& base, const IntegratorOptions& opt) {
  InvariantTerm t;
  t.diagram = d;
  t.weight = weight;
  t.automorphisms = automorphisms;
  IntegratorOptions o = opt;
  o.seed = derive_seed(opt.seed, to_text(d));
  t.integral = integrate(d, k, o);
  t.baseline = integrate(d, base, o);
  return t;
}

inline void finish(InvariantResult& r) {
  r.value = recompute_value(r);
  r.standard_error = recompute_standard_error(r);
}

}  // namespace detail

/// Degree-2 invariant from the crossed-chords and tripod integrals. In the
/// unsigned chord convention the crossed chords carry +1; in the
/// vertex-order orientation used by the integrals that is -1, and STU then
/// puts +1 on the tripod.
inline InvariantResult v2(const KnotCurve& k, const IntegratorOptions& opt,
                          const InvariantResult* baseline_from = nullptr) {
  check_embedded(k);
  InvariantResult r;
  r.invariant = "v2";
  r.knot = k.name();
  r.degree = 2;
  r.seed = opt.seed;
  r.budget = opt.budget;
  const Diagram x = crossed_chords(), y = tripod();
  const std::vector<std::pair<Diagram, Rational>> parts = {{x, standard_chord_sign(x)}, {y, -standard_chord_sign(x)}};
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto& [d, wd] = parts[i];
    IntegratorOptions o = opt;
    o.seed = derive_seed(opt.seed, to_text(d));
    InvariantTerm t;
    t.diagram = d;
    t.weight = wd;
    t.automorphisms = automorphism_count(d);
    t.integral = integrate(d, k, o);
    // Reuse a baseline computed with the same options.
    t.baseline = baseline_from ? baseline_from->terms.at(i).baseline : integrate(d, round_unknot(), o);
    r.terms.push_back(std::move(t));
  }
  detail::finish(r);
  return r;
}

struct TwOptions {
  AnomalyPolicy policy;
  EnumerationGuards guards;
};

/// T(W)(K) as a sum over canonical classes of W(D)/|Aut D| times the
/// baseline-subtracted integral, with the anomaly correction M_D I(D1, K).
inline InvariantResult t_of_w(const WeightSystem& w, const KnotCurve& k, const IntegratorOptions& opt,
                              const TwOptions& topt = {}) {
  if (w.degree < 1) throw PreconditionError("weight system degree must be positive");
  if (w.degree > topt.guards.max_trivalent_degree) throw GuardExceeded("degree exceeds the trivalent guard");
  if (!is_primitive(w, topt.guards)) throw PreconditionError("weight system is not primitive");
  check_embedded(k);
  InvariantResult r;
  r.invariant = "T(W)";
  r.knot = k.name();
  r.degree = w.degree;
  r.seed = opt.seed;
  r.budget = opt.budget;
  r.anomaly_policy = topt.policy.name();
  const KnotCurve base = round_unknot();
  bool need_self_link = false;
  for (const DiagramClass& c : enumerate_trivalent_diagrams(w.degree, topt.guards)) {
    if (c.vanishes) continue;
    const Rational wd = w(c.diagram);
    if (wd == 0) continue;
    InvariantTerm t;
    if (c.diagram.has_multi_edge()) {
      t.diagram = c.diagram;
      t.weight = wd;
      t.automorphisms = c.automorphisms;
      t.integral.diagram = t.baseline.diagram = to_text(c.diagram);
      t.integral.knot = k.name();
      t.baseline.knot = base.name();
    } else {
      t = detail::integrate_term(c.diagram, wd, c.automorphisms, k, base, opt);
    }
    t.anomaly = anomaly_coefficient(c.diagram, topt.policy, t.anomaly_assumed);
    if (t.anomaly_assumed) r.warnings.push_back("anomaly coefficient assumed 0 for " + to_text(c.diagram));
    need_self_link = need_self_link || t.anomaly != 0;
    r.terms.push_back(std::move(t));
  }
  if (need_self_link) {
    IntegratorOptions o = opt;
    o.seed = derive_seed(opt.seed, "self-link");
    r.self_link = self_link_integral(k, o);
    r.baseline_self_link = self_link_integral(base, o);
  }
  detail::finish(r);
  return r;
}

// ---------------------------------------------------------------- universality

/// Sum over all resolutions of (-1)^(negative count) pv_v2(resolution).
inline long alternating_pv_v2(const SingularKnot& s) {
  long total = 0;
  for (unsigned mask = 0; mask < (1u << s.order()); ++mask) {
    std::set<int> pos;
    for (int i = 0; i < s.order(); ++i)
      if ((mask >> i) & 1u) pos.insert(i);
    const int negatives = s.order() - static_cast<int>(pos.size());
    total += (negatives % 2 ? -1 : 1) * pv_v2(resolve(s, pos));
  }
  return total;
}

/// Focus points for integrating over resolutions of s: both parameters of
/// every double point, with the bump half-width as scale.
inline std::vector<std::pair<double, double>> resolution_focus(const SingularKnot& s) {
  std::vector<std::pair<double, double>> f;
  for (const auto& [a, b] : s.double_points) {
    const double w = s.rho / (2 * s.base.derivative(a).norm());
    f.emplace_back(a - std::floor(a), w);
    f.emplace_back(b - std::floor(b), s.rho / (2 * s.base.derivative(b).norm()));
  }
  return f;
}

struct ResolutionRow {
  std::string signs;  // '+' / '-' per double point
  int parity = 1;     // (-1)^(negative count)
  long pv = 0;
  std::optional<InvariantResult> integral;
};

struct UniversalityReport {
  std::string diagram;
  bool trivial = false;
  Rational expected = 0;  // w on the diagram, unsigned chord convention
  long combinatorial = 0;
  bool combinatorial_ok = false;
  std::vector<ResolutionRow> rows;
  std::optional<double> integral_value, integral_stderr;
};

inline nlohmann::json to_json(const UniversalityReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows) {
    nlohmann::json j = {{"resolution", row.signs}, {"parity", row.parity}, {"pv_v2", row.pv}};
    if (row.integral) j["v2_integral"] = {{"value", row.integral->value}, {"stderr", row.integral->standard_error}};
    rows.push_back(j);
  }
  nlohmann::json j = {{"diagram", r.diagram},
                      {"trivial", r.trivial},
                      {"expected", r.expected.str()},
                      {"combinatorial_sum", r.combinatorial},
                      {"combinatorial_ok", r.combinatorial_ok},
                      {"resolutions", rows}};
  if (r.integral_value) {
    j["integral_sum"] = *r.integral_value;
    j["integral_stderr"] = *r.integral_stderr;
  }
  return j;
}

/// Checks that the degree-2 invariant, differenced over the resolutions of
/// a singular realization of d_prime, returns w(d_prime). With `integral`
/// set the same sum is also formed from v2 integrals.
inline UniversalityReport universality_check(const Diagram& d_prime, const WeightSystem& w,
                                             const IntegratorOptions& opt, bool integral = false,
                                             const RealizationOptions& ropt = {}) {
  if (!d_prime.is_chord_diagram()) throw PreconditionError("expected a chord diagram");
  UniversalityReport rep;
  rep.diagram = to_text(d_prime);
  if (d_prime.degree() == 1) {
    // Degree-1 invariants are constant on knots.
    rep.trivial = true;
    rep.combinatorial_ok = true;
    return rep;
  }
  if (d_prime.degree() != 2) throw PreconditionError("universality is checked at degree 2");
  if (w.degree != 2) throw PreconditionError("weight system must have degree 2");
  rep.expected = w.chord_value(d_prime);
  const SingularKnot s = realize_chord_diagram(d_prime, ropt);
  IntegratorOptions iopt = opt;
  if (iopt.focus.empty()) iopt.focus = resolution_focus(s);
  double sum = 0, var = 0;
  std::optional<InvariantResult> first;
  for (unsigned mask = 0; mask < (1u << s.order()); ++mask) {
    std::set<int> pos;
    ResolutionRow row;
    for (int i = 0; i < s.order(); ++i) {
      const bool p = (mask >> i) & 1u;
      if (p) pos.insert(i);
      row.signs += p ? '+' : '-';
      if (!p) row.parity = -row.parity;
    }
    const KnotCurve kr = resolve(s, pos);
    row.pv = pv_v2(kr);
    rep.combinatorial += row.parity * row.pv;
    if (integral) {
      // One seed for all rows: the baselines cancel exactly.
      row.integral = v2(kr, iopt, first ? &*first : nullptr);
      if (!first) first = row.integral;
      sum += row.parity * row.integral->value;
      for (const auto& t : row.integral->terms) var += t.factor() * t.factor() * t.integral.standard_error * t.integral.standard_error;
    }
    rep.rows.push_back(std::move(row));
  }
  rep.combinatorial_ok = Rational(rep.combinatorial) == rep.expected;
  if (integral) {
    rep.integral_value = sum;
    rep.integral_stderr = std::sqrt(var);
  }
  return rep;
}

}  // namespace confint
