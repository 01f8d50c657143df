#pragma once

// Singular knots with transverse double points, realizations of chord
// diagrams, and their resolutions by local bumps.

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <limits>
#include <numbers>
#include <cmath>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "confint/diagram.hpp"
#include "confint/gauss_code.hpp"
#include "confint/knot.hpp"

namespace confint {

struct SingularKnot {
  KnotCurve base;
  std::vector<std::pair<double, double>> double_points;  // (a_i, b_i)
  double rho = 0;

  int order() const { return static_cast<int>(double_points.size()); }

  void validate(double tol = 1e-8) const {
    std::vector<double> ts;
    for (const auto& [a, b] : double_points) {
      ts.push_back(a);
      ts.push_back(b);
      const Vec3 pa = base.point(a), pb = base.point(b);
      if ((pa - pb).norm() > tol * std::max(1.0, pa.norm()))
        throw PreconditionError("double point parameters do not meet");
      const Vec3 ta = base.derivative(a).normalized(), tb = base.derivative(b).normalized();
      if (ta.cross(tb).norm() < 1e-6) throw PreconditionError("tangents at a double point are dependent");
    }
    std::sort(ts.begin(), ts.end());
    for (std::size_t i = 1; i < ts.size(); ++i)
      if (ts[i] - ts[i - 1] < 1e-9) throw PreconditionError("double point parameters must be distinct");
    for (std::size_t i = 0; i < double_points.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if ((base.point(double_points[i].first) - base.point(double_points[j].first)).norm() <= 2 * rho)
          throw PreconditionError("perturbation balls overlap");
  }

  /// Chord diagram of the double points read from t = 0.
  Diagram chord_diagram() const {
    std::vector<std::pair<double, int>> ends;
    for (int i = 0; i < order(); ++i) {
      ends.emplace_back(double_points[i].first - std::floor(double_points[i].first), i);
      ends.emplace_back(double_points[i].second - std::floor(double_points[i].second), i);
    }
    std::sort(ends.begin(), ends.end());
    std::vector<int> first(order(), 0);
    Diagram d;
    for (int p = 1; p <= 2 * order(); ++p) {
      d.interval.push_back(p);
      const int i = ends[p - 1].second;
      if (first[i]) d.edges.push_back({first[i], p});
      else first[i] = p;
    }
    std::sort(d.edges.begin(), d.edges.end());
    return d;
  }
};

/// Pushes the a_i strand by +-rho/2 along normalize(K'(a_i) x K'(b_i)) inside
/// a parameter window of arc length about rho: indices in `positive` get the
/// positive crossing, all others the negative one.
inline KnotCurve resolve(const SingularKnot& s, const std::set<int>& positive, bool check = true) {
  for (int i : positive)
    if (i < 0 || i >= s.order()) throw PreconditionError("resolution index out of range");
  KnotCurve k = s.base;
  for (int i = 0; i < s.order(); ++i) {
    const auto [a, b] = s.double_points[i];
    const Vec3 ka = s.base.derivative(a), kb = s.base.derivative(b);
    const Vec3 n = ka.cross(kb).normalized();
    const double sign = positive.count(i) ? 1.0 : -1.0;
    k = k.with_bump({a - std::floor(a), s.rho / (2 * ka.norm()), sign * (s.rho / 2) * n});
  }
  std::string name = s.base.name() + "[";
  for (int i = 0; i < s.order(); ++i) name += positive.count(i) ? '+' : '-';
  k.set_name(name + "]");
  if (check) check_embedded(k);
  return k;
}

namespace detail {

inline double min_ball_distance(const KnotCurve& k, const std::vector<std::pair<double, double>>& dps) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < dps.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) best = std::min(best, (k.point(dps[i].first) - k.point(dps[j].first)).norm());
  return best;
}

/// Replaces the height of a knot diagram's curve so that crossings in
/// `singular` become double points and the rest keep their over/under
/// information with heights +-h0. Heights are the minimum-norm trig
/// polynomial of the given degree meeting those constraints.
inline SingularKnot flatten_crossings(const KnotCurve& tmpl, const std::vector<Crossing>& crossings,
                                      const std::set<int>& singular, int z_harmonics, double h0) {
  auto row = [&](double t) {
    Eigen::RowVectorXd r(2 * z_harmonics + 1);
    r[0] = 1;
    for (int h = 1; h <= z_harmonics; ++h) {
      r[2 * h - 1] = std::cos(2 * std::numbers::pi * h * t);
      r[2 * h] = std::sin(2 * std::numbers::pi * h * t);
    }
    return r;
  };
  std::vector<Eigen::RowVectorXd> rows;
  std::vector<double> rhs;
  for (int i = 0; i < static_cast<int>(crossings.size()); ++i) {
    const auto& c = crossings[i];
    if (singular.count(i)) {
      rows.push_back(row(c.over_t) - row(c.under_t));
      rhs.push_back(0);
    } else {
      rows.push_back(row(c.over_t));
      rhs.push_back(h0);
      rows.push_back(row(c.under_t));
      rhs.push_back(-h0);
    }
  }
  Eigen::MatrixXd m(rows.size(), 2 * z_harmonics + 1);
  Eigen::VectorXd b(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    m.row(i) = rows[i];
    b[i] = rhs[i];
  }
  const Eigen::VectorXd z = m.completeOrthogonalDecomposition().solve(b);
  if ((m * z - b).norm() > 1e-9) throw DegenerateError("height constraints are not solvable");

  KnotCurve::Coefficients c = tmpl.coefficients();
  c[2].assign(z_harmonics + 1, {0.0, 0.0});
  c[2][0] = {z[0], 0.0};
  for (int h = 1; h <= z_harmonics; ++h) c[2][h] = {z[2 * h - 1], z[2 * h]};
  SingularKnot s;
  s.base = KnotCurve(c, tmpl.name() + "-singular");
  for (int i : singular) s.double_points.emplace_back(crossings[i].over_t, crossings[i].under_t);
  return s;
}

}  // namespace detail

struct RealizationOptions {
  int z_harmonics = 6;
  double h0 = 0.5;
  double rho = 0;  // 0: 1/20 of the minimal distance between double points
};

/// Makes the chosen crossings of the template's projection along z into
/// double points; other crossings keep their over/under structure.
inline SingularKnot singular_from_template(const KnotCurve& tmpl, const std::set<int>& crossing_indices,
                                           const RealizationOptions& opt = {}) {
  CrossingOptions copt;
  copt.max_retries = 0;
  const auto cs = detail::find_crossings_once({&tmpl}, Vec3::UnitZ(), copt);
  for (int i : crossing_indices)
    if (i < 0 || i >= static_cast<int>(cs.size())) throw PreconditionError("crossing index out of range");
  SingularKnot s = detail::flatten_crossings(tmpl, cs, crossing_indices, opt.z_harmonics, opt.h0);
  if (opt.rho > 0) {
    s.rho = opt.rho;
  } else if (s.order() >= 2) {
    s.rho = detail::min_ball_distance(s.base, s.double_points) / 20;
  } else {
    s.rho = embedding_report(s.base).diameter / 40;
  }
  s.validate();
  return s;
}

/// Number of crossings of the template projected along z.
inline int template_crossing_count(const KnotCurve& tmpl) {
  CrossingOptions copt;
  copt.max_retries = 0;
  return static_cast<int>(detail::find_crossings_once({&tmpl}, Vec3::UnitZ(), copt).size());
}

/// A singular knot whose double points, read from the basepoint, form the
/// chord diagram d. Searches crossing subsets of standard templates and
/// basepoint positions.
inline SingularKnot realize_chord_diagram(const Diagram& d, const RealizationOptions& opt = {}) {
  if (!d.is_chord_diagram()) throw PreconditionError("expected a chord diagram");
  const Diagram target = canonicalize(d).diagram;
  const int n = d.edge_count();
  for (const KnotCurve& tmpl : {trefoil(), figure_eight(), torus_knot(2, 5)}) {
    const int c = template_crossing_count(tmpl);
    if (c < n) continue;
    for (unsigned mask = 0; mask < (1u << c); ++mask) {
      if (std::popcount(mask) != n) continue;
      std::set<int> pick;
      for (int i = 0; i < c; ++i)
        if ((mask >> i) & 1u) pick.insert(i);
      SingularKnot s = singular_from_template(tmpl, pick, opt);
      // Try basepoints between consecutive double-point parameters.
      std::vector<double> ts;
      for (const auto& [a, b] : s.double_points) {
        ts.push_back(a);
        ts.push_back(b);
      }
      std::sort(ts.begin(), ts.end());
      for (std::size_t j = 0; j < ts.size(); ++j) {
        const double next = j + 1 < ts.size() ? ts[j + 1] : ts[0] + 1;
        const double shift = 0.5 * (ts[j] + next);
        SingularKnot t = s;
        t.base = shifted_parameter(s.base, shift);
        for (auto& [a, b] : t.double_points) {
          a -= shift;
          a -= std::floor(a);
          b -= shift;
          b -= std::floor(b);
        }
        if (t.chord_diagram() == target) {
          t.base.set_name(tmpl.name() + "-singular");
          return t;
        }
      }
    }
  }
  throw DegenerateError("no singular realization found for " + to_text(d));
}

}  // namespace confint
