#pragma once

// Crossings of regular projections, Gauss codes, and the combinatorial
// linking number and degree-2 invariant computed from them.

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "confint/errors.hpp"
#include "confint/knot.hpp"

namespace confint {

/// Orthonormal e1, e2 with e1 x e2 = h, built from the coordinate axis along
/// which h has its smallest component.
inline void sphere_frame(const Vec3& h, Vec3& e1, Vec3& e2) {
  int axis = 0;
  if (std::abs(h[1]) < std::abs(h[axis])) axis = 1;
  if (std::abs(h[2]) < std::abs(h[axis])) axis = 2;
  e1 = h.cross(Vec3::Unit(axis)).normalized();
  e2 = h.cross(e1);
}

struct Crossing {
  int over_component = 0;
  double over_t = 0;
  int under_component = 0;
  double under_t = 0;
  int sign = 0;  // sign of det(over tangent, under tangent, direction)
};

struct CrossingOptions {
  int samples = 4096;
  int max_retries = 8;
  double min_height_gap = 1e-9;  // relative to the curve scale
  double min_angle_sine = 1e-4;
};

namespace detail {

inline bool segment_hit(const Eigen::Vector2d& p, const Eigen::Vector2d& p2, const Eigen::Vector2d& q,
                        const Eigen::Vector2d& q2, double& s, double& u) {
  const Eigen::Vector2d r = p2 - p, w = q2 - q;
  const double den = r.x() * w.y() - r.y() * w.x();
  if (den == 0) return false;
  const Eigen::Vector2d qp = q - p;
  s = (qp.x() * w.y() - qp.y() * w.x()) / den;
  u = (qp.x() * r.y() - qp.y() * r.x()) / den;
  return s >= 0 && s < 1 && u >= 0 && u < 1;
}

struct Projection {
  Vec3 d, e1, e2;
  Eigen::Vector2d operator()(const Vec3& x) const { return {x.dot(e1), x.dot(e2)}; }
};

inline std::vector<Crossing> find_crossings_once(const std::vector<const KnotCurve*>& comps, const Vec3& direction,
                                                 const CrossingOptions& opt) {
  Projection pr;
  pr.d = direction.normalized();
  sphere_frame(pr.d, pr.e1, pr.e2);
  const int n = opt.samples;
  const int nc = static_cast<int>(comps.size());
  std::vector<std::vector<Eigen::Vector2d>> poly(nc, std::vector<Eigen::Vector2d>(n));
  double scale = 0;
  for (int c = 0; c < nc; ++c)
    for (int i = 0; i < n; ++i) {
      const Vec3 x = comps[c]->point(static_cast<double>(i) / n);
      poly[c][i] = pr(x);
      scale = std::max(scale, x.norm());
    }
  scale = std::max(scale, 1e-12);

  // Bucket segments on a grid to avoid testing all pairs.
  Eigen::Vector2d lo(1e300, 1e300), hi(-1e300, -1e300);
  for (const auto& p : poly)
    for (const auto& x : p) {
      lo = lo.cwiseMin(x);
      hi = hi.cwiseMax(x);
    }
  const int g = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(n * nc)) / 2));
  const Eigen::Vector2d span = (hi - lo).cwiseMax(1e-12);
  std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> buckets;
  for (int c = 0; c < nc; ++c)
    for (int i = 0; i < n; ++i) {
      const Eigen::Vector2d a = poly[c][i], b = poly[c][(i + 1) % n];
      const Eigen::Vector2d mn = a.cwiseMin(b), mx = a.cwiseMax(b);
      const int x0 = std::clamp(static_cast<int>((mn.x() - lo.x()) / span.x() * g), 0, g - 1);
      const int x1 = std::clamp(static_cast<int>((mx.x() - lo.x()) / span.x() * g), 0, g - 1);
      const int y0 = std::clamp(static_cast<int>((mn.y() - lo.y()) / span.y() * g), 0, g - 1);
      const int y1 = std::clamp(static_cast<int>((mx.y() - lo.y()) / span.y() * g), 0, g - 1);
      for (int x = x0; x <= x1; ++x)
        for (int y = y0; y <= y1; ++y) buckets[{x, y}].emplace_back(c, i);
    }

  std::set<std::tuple<int, int, int, int>> tested;
  std::vector<Crossing> out;
  for (const auto& [cell, segs] : buckets) {
    for (std::size_t a = 0; a < segs.size(); ++a)
      for (std::size_t b = a + 1; b < segs.size(); ++b) {
        auto [ca, ia] = segs[a];
        auto [cb, ib] = segs[b];
        if (std::make_pair(ca, ia) > std::make_pair(cb, ib)) {
          std::swap(ca, cb);
          std::swap(ia, ib);
        }
        if (ca == cb && (ib - ia <= 1 || (ia == 0 && ib == n - 1))) continue;
        if (!tested.emplace(ca, ia, cb, ib).second) continue;
        double s, u;
        if (!segment_hit(poly[ca][ia], poly[ca][(ia + 1) % n], poly[cb][ib], poly[cb][(ib + 1) % n], s, u)) continue;
        double ta = (ia + s) / n, tb = (ib + u) / n;
        // Newton refinement of P(Ka(ta)) = P(Kb(tb)).
        for (int it = 0; it < 30; ++it) {
          Vec3 xa, da, xb, db;
          comps[ca]->point_and_derivative(ta, xa, da);
          comps[cb]->point_and_derivative(tb, xb, db);
          const Eigen::Vector2d f = pr(xa) - pr(xb);
          Eigen::Matrix2d jac;
          jac.col(0) = pr(da);
          jac.col(1) = -pr(db);
          const Eigen::Vector2d step = jac.fullPivLu().solve(f);
          ta -= step[0];
          tb -= step[1];
          if (step.norm() < 1e-15) break;
        }
        ta -= std::floor(ta);
        tb -= std::floor(tb);
        Vec3 xa, da, xb, db;
        comps[ca]->point_and_derivative(ta, xa, da);
        comps[cb]->point_and_derivative(tb, xb, db);
        if ((pr(xa) - pr(xb)).norm() > 1e-9 * scale) throw DegenerateError("crossing refinement did not converge");
        const Eigen::Vector2d pa = pr(da), pb = pr(db);
        const double sine = std::abs(pa.x() * pb.y() - pa.y() * pb.x()) / (pa.norm() * pb.norm());
        if (!(sine > opt.min_angle_sine)) throw DegenerateError("non-transverse crossing in projection");
        const double gap = (xa - xb).dot(pr.d);
        if (!(std::abs(gap) > opt.min_height_gap * scale)) throw DegenerateError("projection hits a double point");
        Crossing c;
        const bool a_over = gap > 0;
        c.over_component = a_over ? ca : cb;
        c.over_t = a_over ? ta : tb;
        c.under_component = a_over ? cb : ca;
        c.under_t = a_over ? tb : ta;
        const Vec3 o = a_over ? da : db, un = a_over ? db : da;
        c.sign = o.cross(un).dot(pr.d) > 0 ? 1 : -1;
        out.push_back(c);
      }
  }
  // Crossings found twice (through a shared polyline vertex) are merged.
  auto pdist = [](double x, double y) {
    const double d = std::abs(x - y);
    return std::min(d, 1 - d);
  };
  std::vector<Crossing> uniq;
  for (const auto& c : out) {
    bool dup = false;
    for (const auto& e : uniq)
      dup = dup || (e.over_component == c.over_component && e.under_component == c.under_component &&
                    pdist(e.over_t, c.over_t) < 1e-9 && pdist(e.under_t, c.under_t) < 1e-9);
    if (!dup) uniq.push_back(c);
  }
  // Distinct crossings must not share a parameter (triple points).
  for (std::size_t i = 0; i < uniq.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      auto same = [&](int c1, double t1, int c2, double t2) { return c1 == c2 && pdist(t1, t2) < 1e-7; };
      const auto& a = uniq[i];
      const auto& b = uniq[j];
      if (same(a.over_component, a.over_t, b.over_component, b.over_t) ||
          same(a.over_component, a.over_t, b.under_component, b.under_t) ||
          same(a.under_component, a.under_t, b.over_component, b.over_t) ||
          same(a.under_component, a.under_t, b.under_component, b.under_t))
        throw DegenerateError("projection has a triple point");
    }
  return uniq;
}

inline Vec3 perturbed_direction(const Vec3& d, int attempt) {
  if (attempt == 0) return d.normalized();
  // Deterministic small tilts.
  const double a = 0.0123 * attempt;
  const Vec3 t(std::sin(1.7 * attempt), std::cos(2.3 * attempt), std::sin(0.9 * attempt + 0.4));
  return (d.normalized() + a * t).normalized();
}

}  // namespace detail

struct CrossingSet {
  Vec3 direction;  // direction actually used (after retries)
  std::vector<Crossing> crossings;
};

/// Crossings of the projection of the given components along `direction`,
/// viewed from +direction. Retries with deterministically perturbed
/// directions when the projection is not regular.
inline CrossingSet find_crossings(const std::vector<const KnotCurve*>& comps, const Vec3& direction,
                                  const CrossingOptions& opt = {}) {
  std::string last;
  for (int attempt = 0; attempt <= opt.max_retries; ++attempt) {
    const Vec3 d = detail::perturbed_direction(direction, attempt);
    try {
      return {d, detail::find_crossings_once(comps, d, opt)};
    } catch (const DegenerateError& e) {
      last = e.what();
    }
  }
  throw DegenerateError("no regular projection found: " + last);
}

/// Sum of inter-component crossing signs divided by two.
inline double linking_number_by_crossings(const KnotCurve& a, const KnotCurve& b, const Vec3& direction,
                                          const CrossingOptions& opt = {}) {
  const auto cs = find_crossings({&a, &b}, direction, opt);
  int total = 0;
  for (const auto& c : cs.crossings)
    if (c.over_component != c.under_component) total += c.sign;
  return total / 2.0;
}

// ---------------------------------------------------------------------------
// Gauss codes

struct GaussVisit {
  int label = 0;
  bool over = false;
  int sign = 1;
  bool operator==(const GaussVisit&) const = default;
};

/// Cyclic sequence of crossing visits along the knot from a basepoint.
struct GaussCode {
  std::vector<GaussVisit> visits;
  bool operator==(const GaussCode&) const = default;

  int crossing_count() const { return static_cast<int>(visits.size() / 2); }

  void validate() const {
    std::map<int, std::pair<int, int>> seen;  // label -> (over count, under count)
    std::map<int, int> sign;
    for (const auto& v : visits) {
      auto& s = seen[v.label];
      (v.over ? s.first : s.second)++;
      if (v.sign != 1 && v.sign != -1) throw ParseError("crossing sign must be + or -");
      auto [it, inserted] = sign.emplace(v.label, v.sign);
      if (!inserted && it->second != v.sign)
        throw ParseError("crossing " + std::to_string(v.label) + " has inconsistent signs");
    }
    for (const auto& [l, s] : seen)
      if (s.first != 1 || s.second != 1)
        throw ParseError("crossing " + std::to_string(l) + " must appear once over and once under");
  }

  /// Code read from the basepoint moved forward by `shift` visits.
  GaussCode rotated(int shift) const {
    GaussCode g = *this;
    if (!visits.empty()) {
      shift = ((shift % static_cast<int>(visits.size())) + static_cast<int>(visits.size())) % static_cast<int>(visits.size());
      std::rotate(g.visits.begin(), g.visits.begin() + shift, g.visits.end());
    }
    return g;
  }

  /// Switches over/under at `label`, which also negates its sign.
  GaussCode switched(int label) const {
    GaussCode g = *this;
    bool found = false;
    for (auto& v : g.visits)
      if (v.label == label) {
        v.over = !v.over;
        v.sign = -v.sign;
        found = true;
      }
    if (!found) throw PreconditionError("no crossing labeled " + std::to_string(label));
    return g;
  }
};

inline std::string to_text(const GaussCode& g) {
  std::ostringstream os;
  for (std::size_t i = 0; i < g.visits.size(); ++i) {
    const auto& v = g.visits[i];
    os << (i ? " " : "") << (v.over ? 'O' : 'U') << v.label << (v.sign > 0 ? '+' : '-');
  }
  return os.str();
}

inline GaussCode parse_gauss_code(const std::string& text, int line_no = 0) {
  GaussCode g;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    if (tok.size() < 3 || (tok[0] != 'O' && tok[0] != 'U') || (tok.back() != '+' && tok.back() != '-'))
      throw ParseError("bad Gauss code token '" + tok + "'", line_no);
    const std::string digits = tok.substr(1, tok.size() - 2);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw ParseError("bad crossing label in '" + tok + "'", line_no);
    g.visits.push_back({std::stoi(digits), tok[0] == 'O', tok.back() == '+' ? 1 : -1});
  }
  try {
    g.validate();
  } catch (const ParseError& e) {
    throw ParseError(e.what(), line_no);
  }
  return g;
}

/// Gauss code of a knot projected along `direction`, read from t = 0.
/// Crossings are labeled 1, 2, ... in order of first visit.
inline GaussCode gauss_code(const KnotCurve& k, const Vec3& direction, const CrossingOptions& opt = {}) {
  const auto cs = find_crossings({&k}, direction, opt);
  struct Visit {
    double t;
    int idx;
    bool over;
  };
  std::vector<Visit> vs;
  for (int i = 0; i < static_cast<int>(cs.crossings.size()); ++i) {
    vs.push_back({cs.crossings[i].over_t, i, true});
    vs.push_back({cs.crossings[i].under_t, i, false});
  }
  std::sort(vs.begin(), vs.end(), [](const Visit& a, const Visit& b) { return a.t < b.t; });
  std::map<int, int> label;
  GaussCode g;
  for (const auto& v : vs) {
    auto [it, inserted] = label.emplace(v.idx, static_cast<int>(label.size()) + 1);
    g.visits.push_back({it->second, v.over, cs.crossings[v.idx].sign});
  }
  g.validate();
  return g;
}

/// Default projection direction: slightly off the z axis so that standard
/// planar-symmetric curves project regularly.
inline Vec3 default_projection() { return Vec3(0.0123, 0.0311, 1.0).normalized(); }

}  // namespace confint
