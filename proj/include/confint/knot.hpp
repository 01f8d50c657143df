#pragma once

// Closed curves in R^3 given by truncated trigonometric series with period 1,
// optionally carrying compactly supported smooth bumps.

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <regex>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "confint/errors.hpp"

namespace confint {

using Vec3 = Eigen::Vector3d;

/// displacement * beta((t - center) / half_width), beta(u) = exp(1 - 1/(1-u^2))
/// on |u| < 1, with t - center taken as the periodic distance in (-1/2, 1/2].
struct Bump {
  double center = 0;
  double half_width = 0;
  Vec3 displacement = Vec3::Zero();
};

class KnotCurve {
 public:
  /// coeffs[c][h] = {a_cos, a_sin} of harmonic h for coordinate c.
  using Coefficients = std::array<std::vector<std::array<double, 2>>, 3>;

  KnotCurve() = default;
  KnotCurve(Coefficients coeffs, std::string name = "") : coeffs_(std::move(coeffs)), name_(std::move(name)) {
    harmonics_ = 0;
    for (auto& c : coeffs_) harmonics_ = std::max<int>(harmonics_, static_cast<int>(c.size()) - 1);
    for (auto& c : coeffs_) c.resize(harmonics_ + 1, {0.0, 0.0});
  }

  int harmonics() const { return harmonics_; }
  const Coefficients& coefficients() const { return coeffs_; }
  const std::vector<Bump>& bumps() const { return bumps_; }
  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

  KnotCurve with_bump(const Bump& b) const {
    if (!(b.half_width > 0 && b.half_width < 0.5)) throw PreconditionError("bump half width must lie in (0, 1/2)");
    KnotCurve k = *this;
    k.bumps_.push_back(b);
    return k;
  }

  Vec3 point(double t) const {
    Vec3 p;
    eval(t, &p, nullptr);
    return p;
  }
  Vec3 derivative(double t) const {
    Vec3 d;
    eval(t, nullptr, &d);
    return d;
  }
  void point_and_derivative(double t, Vec3& p, Vec3& d) const { eval(t, &p, &d); }

 private:
  void eval(double t, Vec3* p, Vec3* d) const {
    t -= std::floor(t);
    constexpr double tau = 2 * std::numbers::pi;
    const double c1 = std::cos(tau * t);
    const double s1 = std::sin(tau * t);
    Vec3 pos = Vec3::Zero();
    Vec3 der = Vec3::Zero();
    double ch = 1, sh = 0;
    for (int h = 0; h <= harmonics_; ++h) {
      for (int c = 0; c < 3; ++c) {
        const auto& a = coeffs_[c][h];
        pos[c] += a[0] * ch + a[1] * sh;
        der[c] += tau * h * (-a[0] * sh + a[1] * ch);
      }
      const double cn = ch * c1 - sh * s1;
      sh = sh * c1 + ch * s1;
      ch = cn;
    }
    for (const Bump& b : bumps_) {
      double x = t - b.center;
      x -= std::round(x);
      const double u = x / b.half_width;
      if (std::abs(u) >= 1) continue;
      const double q = 1 - u * u;
      const double beta = std::exp(1 - 1 / q);
      pos += beta * b.displacement;
      der += beta * (-2 * u / (q * q)) / b.half_width * b.displacement;
    }
    if (p) *p = pos;
    if (d) *d = der;
  }

  Coefficients coeffs_;
  std::vector<Bump> bumps_;
  int harmonics_ = 0;
  std::string name_;
};

// ---------------------------------------------------------------------------
// Geometry helpers

struct EmbeddingReport {
  double min_speed = 0;
  double min_separation = 0;  // over grid pairs with parameter distance > 1/64
  double diameter = 0;
};

inline EmbeddingReport embedding_report(const KnotCurve& k, int grid = 4096, double min_param_gap = 1.0 / 64) {
  std::vector<Vec3> pts(grid);
  EmbeddingReport r;
  r.min_speed = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid; ++i) {
    Vec3 d;
    k.point_and_derivative(static_cast<double>(i) / grid, pts[i], d);
    r.min_speed = std::min(r.min_speed, d.norm());
  }
  const int gap = static_cast<int>(std::ceil(min_param_gap * grid));
  double best2 = std::numeric_limits<double>::infinity();
  double diam2 = 0;
  for (int i = 0; i < grid; ++i)
    for (int j = i + 1; j < grid; ++j) {
      const double dd = (pts[i] - pts[j]).squaredNorm();
      diam2 = std::max(diam2, dd);
      const int sep = std::min(j - i, grid - (j - i));
      if (sep > gap) best2 = std::min(best2, dd);
    }
  r.min_separation = std::sqrt(best2);
  r.diameter = std::sqrt(diam2);
  return r;
}

/// Throws DegenerateError unless the curve is immersed and embedded at the
/// grid resolution. Separation is compared against 1e-9 of the diameter.
inline void check_embedded(const KnotCurve& k, int grid = 4096) {
  const auto r = embedding_report(k, grid);
  if (!(r.min_speed > 0)) throw DegenerateError("curve " + k.name() + " is not immersed on the check grid");
  if (!(r.min_separation > 1e-9 * r.diameter))
    throw DegenerateError("curve " + k.name() + " self-intersects at the check grid resolution");
}

/// Minimum distance between two curves on a grid; throws if they meet.
inline void check_disjoint(const KnotCurve& a, const KnotCurve& b, int grid = 2048) {
  std::vector<Vec3> pa(grid), pb(grid);
  for (int i = 0; i < grid; ++i) {
    pa[i] = a.point(static_cast<double>(i) / grid);
    pb[i] = b.point(static_cast<double>(i) / grid);
  }
  double best = std::numeric_limits<double>::infinity();
  double scale = 0;
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) best = std::min(best, (pa[i] - pb[j]).squaredNorm());
  for (int i = 0; i < grid; ++i) scale = std::max({scale, pa[i].norm(), pb[i].norm()});
  if (!(std::sqrt(best) > 1e-9 * std::max(scale, 1.0))) throw DegenerateError("link components intersect");
}

/// Centroid and radius of a grid sample of the curve.
inline std::pair<Vec3, double> bounding_sphere(const KnotCurve& k, int grid = 1024) {
  Vec3 c = Vec3::Zero();
  for (int i = 0; i < grid; ++i) c += k.point(static_cast<double>(i) / grid);
  c /= grid;
  double r = 0;
  for (int i = 0; i < grid; ++i) r = std::max(r, (k.point(static_cast<double>(i) / grid) - c).norm());
  return {c, r};
}

// ---------------------------------------------------------------------------
// Transformations

/// x -> scale * R x + shift, applied to coefficients and bumps.
inline KnotCurve transformed(const KnotCurve& k, const Eigen::Matrix3d& rot, double scale, const Vec3& shift) {
  KnotCurve::Coefficients c = k.coefficients();
  for (int h = 0; h <= k.harmonics(); ++h)
    for (int j = 0; j < 2; ++j) {
      Vec3 v(c[0][h][j], c[1][h][j], c[2][h][j]);
      v = scale * (rot * v);
      if (h == 0 && j == 0) v += shift;
      for (int i = 0; i < 3; ++i) c[i][h][j] = v[i];
    }
  KnotCurve out(c, k.name());
  for (Bump b : k.bumps()) {
    b.displacement = scale * (rot * b.displacement);
    out = out.with_bump(b);
  }
  return out;
}

/// Reparametrizes t -> t + shift.
inline KnotCurve shifted_parameter(const KnotCurve& k, double shift) {
  KnotCurve::Coefficients c = k.coefficients();
  for (int h = 0; h <= k.harmonics(); ++h) {
    const double ang = 2 * std::numbers::pi * h * shift;
    const double ca = std::cos(ang), sa = std::sin(ang);
    for (int i = 0; i < 3; ++i) {
      const double a = c[i][h][0], b = c[i][h][1];
      // a cos(h(t+s)) + b sin(h(t+s)) in terms of cos ht, sin ht
      c[i][h][0] = a * ca + b * sa;
      c[i][h][1] = -a * sa + b * ca;
    }
  }
  KnotCurve out(c, k.name());
  for (Bump b : k.bumps()) {
    b.center -= shift;
    b.center -= std::floor(b.center);
    out = out.with_bump(b);
  }
  return out;
}

/// Reverses orientation: t -> -t.
inline KnotCurve reversed(const KnotCurve& k) {
  KnotCurve::Coefficients c = k.coefficients();
  for (auto& coord : c)
    for (auto& h : coord) h[1] = -h[1];
  KnotCurve out(c, k.name());
  for (Bump b : k.bumps()) {
    b.center = 1 - b.center;
    b.center -= std::floor(b.center);
    out = out.with_bump(b);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Standard library

namespace detail {

inline void add_harmonic(KnotCurve::Coefficients& c, int coord, int h, double a_cos, double a_sin) {
  if (h < 0) {
    h = -h;
    a_sin = -a_sin;
  }
  if (static_cast<int>(c[coord].size()) <= h) c[coord].resize(h + 1, {0.0, 0.0});
  c[coord][h][0] += a_cos;
  c[coord][h][1] += a_sin;
}

}  // namespace detail

inline KnotCurve round_unknot() {
  KnotCurve::Coefficients c;
  detail::add_harmonic(c, 0, 1, 1, 0);
  detail::add_harmonic(c, 1, 1, 0, 1);
  detail::add_harmonic(c, 2, 0, 0, 0);
  return KnotCurve(c, "unknot");
}

/// ((R + r cos q th) cos p th, (R + r cos q th) sin p th, r sin q th).
inline KnotCurve torus_knot(int p, int q, double big_r = 2, double small_r = 1) {
  if (p <= 0 || q <= 0) throw PreconditionError("torus knot parameters must be positive");
  if (std::gcd(p, q) != 1) throw PreconditionError("torus knot parameters must be coprime");
  KnotCurve::Coefficients c;
  detail::add_harmonic(c, 0, p, big_r, 0);
  detail::add_harmonic(c, 0, p + q, small_r / 2, 0);
  detail::add_harmonic(c, 0, p - q, small_r / 2, 0);
  detail::add_harmonic(c, 1, p, 0, big_r);
  detail::add_harmonic(c, 1, p + q, 0, small_r / 2);
  detail::add_harmonic(c, 1, p - q, 0, small_r / 2);
  detail::add_harmonic(c, 2, q, 0, small_r);
  return KnotCurve(c, "torus(" + std::to_string(p) + "," + std::to_string(q) + ")");
}

inline KnotCurve trefoil() {
  KnotCurve k = torus_knot(2, 3);
  k.set_name("trefoil");
  return k;
}

/// ((2 + cos 2th) cos 3th, (2 + cos 2th) sin 3th, sin 4th).
inline KnotCurve figure_eight() {
  KnotCurve::Coefficients c;
  detail::add_harmonic(c, 0, 3, 2, 0);
  detail::add_harmonic(c, 0, 5, 0.5, 0);
  detail::add_harmonic(c, 0, 1, 0.5, 0);
  detail::add_harmonic(c, 1, 3, 0, 2);
  detail::add_harmonic(c, 1, 5, 0, 0.5);
  detail::add_harmonic(c, 1, 1, 0, 0.5);
  detail::add_harmonic(c, 2, 4, 0, 1);
  return KnotCurve(c, "figure8");
}

/// (sin th + 2 sin 2th, cos th - 2 cos 2th, -sin 3th), rotated, scaled,
/// shifted and with a moved parameter origin: a second trefoil
/// parametrization with different harmonic content.
inline KnotCurve trefoil_alt() {
  KnotCurve::Coefficients c;
  detail::add_harmonic(c, 0, 1, 0, 1);
  detail::add_harmonic(c, 0, 2, 0, 2);
  detail::add_harmonic(c, 1, 1, 1, 0);
  detail::add_harmonic(c, 1, 2, -2, 0);
  detail::add_harmonic(c, 2, 3, 0, -1);
  KnotCurve k(c, "trefoil-alt");
  const Eigen::Matrix3d rot =
      (Eigen::AngleAxisd(0.7, Vec3(1, 2, 3).normalized()) * Eigen::AngleAxisd(0.3, Vec3::UnitX())).toRotationMatrix();
  k = transformed(k, rot, 0.8, Vec3(0.5, -0.25, 1.0));
  k = shifted_parameter(k, 0.137);
  k.set_name("trefoil-alt");
  return k;
}

/// A non-planar unknot: a round circle tilted along a saddle.
inline KnotCurve wiggly_unknot() {
  KnotCurve::Coefficients c;
  detail::add_harmonic(c, 0, 1, 1, 0);
  detail::add_harmonic(c, 0, 2, 0.2, 0);
  detail::add_harmonic(c, 1, 1, 0, 1);
  detail::add_harmonic(c, 1, 3, 0, 0.15);
  detail::add_harmonic(c, 2, 2, 0, 0.5);
  detail::add_harmonic(c, 2, 3, 0.2, 0);
  return KnotCurve(c, "unknot-wiggly");
}

/// Hopf link with linking number +1.
inline std::pair<KnotCurve, KnotCurve> hopf_link() {
  KnotCurve a = round_unknot();
  a.set_name("hopf-a");
  KnotCurve::Coefficients c;
  detail::add_harmonic(c, 0, 0, 1, 0);
  detail::add_harmonic(c, 0, 1, 1, 0);
  detail::add_harmonic(c, 1, 0, 0, 0);
  detail::add_harmonic(c, 2, 1, 0, -1);
  return {a, KnotCurve(c, "hopf-b")};
}

/// Two circles far apart.
inline std::pair<KnotCurve, KnotCurve> split_link() {
  KnotCurve a = round_unknot();
  a.set_name("split-a");
  KnotCurve::Coefficients c;
  detail::add_harmonic(c, 0, 0, 5, 0);
  detail::add_harmonic(c, 0, 1, 1, 0);
  detail::add_harmonic(c, 1, 0, 0, 0);
  detail::add_harmonic(c, 2, 1, 0, 1);
  return {a, KnotCurve(c, "split-b")};
}

/// unknot, trefoil, figure8, torus(p,q), trefoil-alt, unknot-wiggly,
/// hopf-a, hopf-b, split-a, split-b.
inline KnotCurve standard_knot(const std::string& name) {
  if (name == "unknot") return round_unknot();
  if (name == "trefoil") return trefoil();
  if (name == "figure8") return figure_eight();
  if (name == "trefoil-alt") return trefoil_alt();
  if (name == "unknot-wiggly") return wiggly_unknot();
  if (name == "hopf-a") return hopf_link().first;
  if (name == "hopf-b") return hopf_link().second;
  if (name == "split-a") return split_link().first;
  if (name == "split-b") return split_link().second;
  static const std::regex torus(R"(torus\((\d+),(\d+)\))");
  std::smatch m;
  if (std::regex_match(name, m, torus)) return torus_knot(std::stoi(m[1]), std::stoi(m[2]));
  throw PreconditionError("unknown knot name: " + name);
}

// ---------------------------------------------------------------------------
// JSON:  { "dim": 3, "harmonics": H, "coeffs": [[[a_cos, a_sin], ...] x 3],
//          optional "name", optional "bumps": [{center, half_width, displacement}] }

inline nlohmann::json to_json(const KnotCurve& k) {
  nlohmann::json j;
  j["dim"] = 3;
  j["harmonics"] = k.harmonics();
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& coord : k.coefficients()) {
    nlohmann::json cj = nlohmann::json::array();
    for (const auto& h : coord) cj.push_back({h[0], h[1]});
    coeffs.push_back(cj);
  }
  j["coeffs"] = coeffs;
  if (!k.name().empty()) j["name"] = k.name();
  if (!k.bumps().empty()) {
    nlohmann::json bj = nlohmann::json::array();
    for (const auto& b : k.bumps())
      bj.push_back({{"center", b.center},
                    {"half_width", b.half_width},
                    {"displacement", {b.displacement[0], b.displacement[1], b.displacement[2]}}});
    j["bumps"] = bj;
  }
  return j;
}

inline KnotCurve knot_from_json(const nlohmann::json& j) {
  try {
    if (j.value("dim", 3) != 3) throw ParseError("only dim = 3 is supported");
    const auto& cj = j.at("coeffs");
    if (!cj.is_array() || cj.size() != 3) throw ParseError("coeffs must list three coordinates");
    KnotCurve::Coefficients c;
    for (int i = 0; i < 3; ++i)
      for (const auto& h : cj[i]) {
        if (!h.is_array() || h.size() != 2) throw ParseError("each harmonic must be [a_cos, a_sin]");
        c[i].push_back({h[0].get<double>(), h[1].get<double>()});
      }
    if (j.contains("harmonics")) {
      const int hh = j["harmonics"].get<int>();
      for (const auto& coord : c)
        if (static_cast<int>(coord.size()) != hh + 1)
          throw ParseError("harmonics = " + std::to_string(hh) + " but a coordinate lists " +
                           std::to_string(coord.size()) + " coefficient pairs");
    }
    KnotCurve k(c, j.value("name", std::string()));
    if (j.contains("bumps"))
      for (const auto& b : j["bumps"]) {
        const auto& d = b.at("displacement");
        k = k.with_bump({b.at("center").get<double>(), b.at("half_width").get<double>(),
                         Vec3(d.at(0).get<double>(), d.at(1).get<double>(), d.at(2).get<double>())});
      }
    return k;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("knot JSON: ") + e.what());
  }
}

inline KnotCurve parse_knot_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // Translate the byte offset into a line number.
    const auto upto = text.substr(0, std::min<std::size_t>(e.byte, text.size()));
    throw ParseError(std::string("knot JSON: ") + e.what(),
                     1 + static_cast<int>(std::count(upto.begin(), upto.end(), '\n')));
  }
  return knot_from_json(j);
}

}  // namespace confint
