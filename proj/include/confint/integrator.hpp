#pragma once

// Configuration-space integrals: the pulled-back product of sphere volume
// forms as a density on (knot parameters, free points), and deterministic
// chunked Monte Carlo estimation of its integral.

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <memory>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "confint/diagram.hpp"
#include "confint/gauss_code.hpp"
#include "confint/knot.hpp"

namespace confint {

inline Vec3 edge_direction(const Vec3& p, const Vec3& q) {
  const Vec3 d = q - p;
  const double n = d.norm();
  if (!(n > 0)) throw DegenerateError("edge_direction of coincident points");
  return d / n;
}

/// Knot parameters of the interval vertices (in interval order) and
/// positions of the free vertices (in ascending label order).
struct ConfigSample {
  std::vector<double> t;
  std::vector<Vec3> y;
  double weight = 1;
};

/// Evaluates the pullback density of one diagram. Columns of the Jacobian are
/// ordered by vertex label: one column per interval vertex, three per free
/// vertex.
class DensityEvaluator {
 public:
  DensityEvaluator(const Diagram& d, const KnotCurve& k) : d_(d), k_(&k) {
    validate_labels(d);
    if (2 * d.edge_count() != d.interval_count() + 3 * d.free_count())
      throw PreconditionError("form degree " + std::to_string(2 * d.edge_count()) + " does not match fiber dimension " +
                              std::to_string(d.interval_count() + 3 * d.free_count()));
    const int nv = d.vertex_count();
    slot_.assign(nv + 1, 0);
    is_free_.assign(nv + 1, 0);
    col_.assign(nv + 1, 0);
    for (int p = 0; p < d.interval_count(); ++p) slot_[d.interval[p]] = p;
    for (int j = 0; j < d.free_count(); ++j) {
      slot_[d.free[j]] = j;
      is_free_[d.free[j]] = 1;
    }
    int c = 0;
    for (int l = 1; l <= nv; ++l) {
      col_[l] = c;
      c += is_free_[l] ? 3 : 1;
    }
    dim_ = c;
    norm_ = std::pow(4 * std::numbers::pi, -d.edge_count());
  }

  int dimension() const { return dim_; }
  const Diagram& diagram() const { return d_; }

  /// Vertex positions and knot tangents for a sample.
  void positions(const ConfigSample& s, std::vector<Vec3>& x, std::vector<Vec3>& dx) const {
    const int nv = d_.vertex_count();
    x.resize(nv + 1);
    dx.resize(nv + 1);
    for (int l = 1; l <= nv; ++l) {
      if (is_free_[l]) {
        x[l] = s.y[slot_[l]];
      } else {
        k_->point_and_derivative(s.t[slot_[l]], x[l], dx[l]);
      }
    }
  }

  /// Density at a sample; nullopt when two endpoints of an edge coincide.
  std::optional<double> operator()(const ConfigSample& s) const {
    std::vector<Vec3> x, dx;
    positions(s, x, dx);
    return from_positions(x, dx);
  }

  std::optional<double> from_positions(const std::vector<Vec3>& x, const std::vector<Vec3>& dx) const {
    Eigen::MatrixXd m = jacobian(x, dx);
    if (m.rows() == 0) return std::nullopt;
    return norm_ * m.partialPivLu().determinant();
  }

  /// Rows: for each edge (i, j), i < j, the components along e1, e2 of
  /// d(h_ij) with h_ij = (x_j - x_i)/|x_j - x_i|. Empty on degeneracy.
  Eigen::MatrixXd jacobian(const std::vector<Vec3>& x, const std::vector<Vec3>& dx) const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim_, dim_);
    int row = 0;
    for (const Edge& e : d_.edges) {
      const Vec3 delta = x[e.hi] - x[e.lo];
      const double len = delta.norm();
      if (!(len > 0)) return {};
      const Vec3 h = delta / len;
      Vec3 e1, e2;
      sphere_frame(h, e1, e2);
      const Vec3 f1 = e1 / len, f2 = e2 / len;
      auto put = [&](int label, double sign) {
        const int c = col_[label];
        if (is_free_[label]) {
          for (int a = 0; a < 3; ++a) {
            m(row, c + a) += sign * f1[a];
            m(row + 1, c + a) += sign * f2[a];
          }
        } else {
          m(row, c) += sign * f1.dot(dx[label]);
          m(row + 1, c) += sign * f2.dot(dx[label]);
        }
      };
      put(e.hi, 1);
      put(e.lo, -1);
      row += 2;
    }
    return m;
  }

  double normalization() const { return norm_; }

 private:
  Diagram d_;
  const KnotCurve* k_;
  std::vector<int> slot_, is_free_, col_;
  int dim_ = 0;
  double norm_ = 1;
};

inline std::optional<double> pullback_density(const Diagram& d, const KnotCurve& k, const ConfigSample& s) {
  return DensityEvaluator(d, k)(s);
}

// ---------------------------------------------------------------------------
// Deterministic chunked Monte Carlo

struct IntegratorOptions {
  std::uint64_t budget = 1'000'000;
  std::uint64_t seed = 1;
  int workers = 1;
  std::uint64_t chunk_size = 16384;
  double rejection_cutoff = 1e-9;  // relative to the curve diameter
  double far_probability = 0.3;    // mixture weight of the ball map proposal
  double near_radius = 0.75;       // near-anchor proposal radius, relative to the curve radius
  bool stratify = false;           // stratify the first uniform of the knot parameters within chunks
  // Knot parameters are drawn i.i.d. from (1-p) uniform + p wrapped Cauchy
  // about a focus (centre, width) chosen uniformly, then sorted. Empty: uniform.
  std::vector<std::pair<double, double>> focus;
  double focus_probability = 0.5;
};

struct IntegralEstimate {
  double value = 0;
  double standard_error = 0;
  std::uint64_t samples = 0;
  std::uint64_t rejected = 0;
  std::uint64_t seed = 0;
  std::string diagram;
  std::string knot;
};

inline nlohmann::json to_json(const IntegralEstimate& e) {
  return {{"diagram", e.diagram}, {"knot", e.knot},         {"value", e.value},
          {"stderr", e.standard_error},  {"samples", e.samples},   {"rejected", e.rejected},
          {"seed", e.seed}};
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Seed of chunk `index` under master seed `seed`.
inline std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632BE59BD9B4E019ull));
}

/// Derived seed for a named sub-computation, e.g. one diagram of a sum.
inline std::uint64_t derive_seed(std::uint64_t seed, const std::string& tag) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : tag) h = (h ^ c) * 1099511628211ull;
  return splitmix64(seed ^ splitmix64(h));
}

class Uniform {
 public:
  explicit Uniform(std::uint64_t seed) : gen_(seed) {}
  double operator()() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  /// In (0, 1).
  double open() {
    double u;
    do u = (*this)();
    while (u == 0);
    return u;
  }

 private:
  std::mt19937_64 gen_;
};

struct RunningStats {
  std::uint64_t n = 0;
  double mean = 0;
  double m2 = 0;
  std::uint64_t rejected = 0;

  void add(double x) {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }
  void merge(const RunningStats& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    const double na = static_cast<double>(n), nb = static_cast<double>(o.n);
    const double d = o.mean - mean;
    const double tot = na + nb;
    mean += d * nb / tot;
    m2 += o.m2 + d * d * na * nb / tot;
    n += o.n;
    rejected += o.rejected;
  }
  double standard_error_of_mean() const { return n > 1 ? std::sqrt(m2 / static_cast<double>(n - 1) / static_cast<double>(n)) : 0; }
};

/// Runs `draw(rng, index_in_chunk, chunk_length, stats)` budget times, split
/// into fixed chunks with independent seeds; chunk results are merged in
/// index order, so the result does not depend on the worker count.
template <class MakeDraw>
RunningStats run_chunks(const IntegratorOptions& opt, MakeDraw make_draw) {
  if (opt.budget == 0) throw PreconditionError("sample budget must be positive");
  const std::uint64_t chunk = std::max<std::uint64_t>(1, opt.chunk_size);
  const std::uint64_t nchunks = (opt.budget + chunk - 1) / chunk;
  std::vector<RunningStats> results(nchunks);
  std::atomic<std::uint64_t> next{0};
  auto work = [&] {
    auto draw = make_draw();
    for (std::uint64_t c = next++; c < nchunks; c = next++) {
      Uniform rng(chunk_seed(opt.seed, c));
      const std::uint64_t len = std::min(chunk, opt.budget - c * chunk);
      RunningStats st;
      for (std::uint64_t i = 0; i < len; ++i) draw(rng, i, len, st);
      results[c] = st;
    }
  };
  const int w = std::max(1, opt.workers);
  if (w == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < w; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  // Pairwise merge in index order.
  while (results.size() > 1) {
    std::vector<RunningStats> next_level((results.size() + 1) / 2);
    for (std::size_t i = 0; i < results.size(); i += 2) {
      next_level[i / 2] = results[i];
      if (i + 1 < results.size()) next_level[i / 2].merge(results[i + 1]);
    }
    results.swap(next_level);
  }
  return results[0];
}

namespace detail {

inline Vec3 uniform_direction(Uniform& rng) {
  const double z = 2 * rng() - 1;
  const double phi = 2 * std::numbers::pi * rng();
  const double r = std::sqrt(std::max(0.0, 1 - z * z));
  return {r * std::cos(phi), r * std::sin(phi), z};
}

/// Free-point proposal: with probability p_far, the radial bijection of the
/// unit ball onto R^3 (r -> L r/(1-r) about the curve centre); otherwise a
/// point at distance uniform in (0, r0] from a randomly chosen anchor, whose
/// density 1/(4 pi r0 |y-a|^2) matches the singularity of the integrand.
struct FreePointProposal {
  Vec3 centre;
  double scale = 1;
  double r0 = 1;
  double p_far = 0.3;

  Vec3 draw(Uniform& rng, const std::vector<Vec3>& anchors) const {
    if (anchors.empty() || rng() < p_far) {
      const double rho = std::cbrt(rng());
      return centre + scale * (rho / (1 - rho)) * uniform_direction(rng);
    }
    const std::size_t a = std::min(anchors.size() - 1, static_cast<std::size_t>(rng() * anchors.size()));
    return anchors[a] + r0 * rng.open() * uniform_direction(rng);
  }

  double density(const Vec3& y, const std::vector<Vec3>& anchors) const {
    const double r = (y - centre).norm() / scale;
    const double rho = r / (1 + r);
    const double far = 3 / (4 * std::numbers::pi) * std::pow(1 - rho, 4) / (scale * scale * scale);
    if (anchors.empty()) return far;
    double near = 0;
    for (const Vec3& a : anchors) {
      const double d = (y - a).norm();
      if (d < r0 && d > 0) near += 1 / (4 * std::numbers::pi * r0 * d * d);
    }
    return p_far * far + (1 - p_far) * near / static_cast<double>(anchors.size());
  }
};

}  // namespace detail

namespace detail {

/// Wrapped Cauchy density on the unit circle with scale `width`.
inline double wrapped_cauchy(double x, double width) {
  const double r = std::exp(-2 * std::numbers::pi * width);
  return (1 - r * r) / (1 + r * r - 2 * r * std::cos(2 * std::numbers::pi * x));
}

/// Mixture over knot parameters; see IntegratorOptions::focus.
struct ParameterProposal {
  std::vector<std::pair<double, double>> focus;
  double p = 0;

  double draw(Uniform& rng) const {
    if (focus.empty() || rng() >= p) return rng();
    const std::size_t i = std::min(focus.size() - 1, static_cast<std::size_t>(rng() * focus.size()));
    const double t = focus[i].first + focus[i].second * std::tan(std::numbers::pi * (rng.open() - 0.5));
    return t - std::floor(t);
  }

  double density(double t) const {
    if (focus.empty()) return 1;
    double m = 0;
    for (const auto& [c, w] : focus) m += wrapped_cauchy(t - c, w);
    return (1 - p) + p * m / static_cast<double>(focus.size());
  }
};

}  // namespace detail

/// Importance sampler over the ordered simplex of knot parameters and R^3
/// for each free vertex. Free vertices are placed in breadth-first order from
/// the interval, each proposing near its already-placed neighbours.
class DiagramSampler {
 public:
  DiagramSampler(const Diagram& d, const KnotCurve& k, const IntegratorOptions& opt)
      : eval_(d, k), opt_(opt), knot_(&k) {
    const auto [c, r] = bounding_sphere(k);
    prop_.centre = c;
    prop_.scale = r;
    prop_.r0 = opt.near_radius * r;
    prop_.p_far = opt.far_probability;
    tprop_.focus = opt.focus;
    tprop_.p = opt.focus_probability;
    for (const auto& [c, w] : opt.focus)
      if (!(w > 0)) throw PreconditionError("focus width must be positive");
    diameter_ = 2 * r;
    const int nv = d.vertex_count();
    std::vector<int> is_free(nv + 1, 0), placed(nv + 1, 0), slot(nv + 1, 0);
    for (int j = 0; j < d.free_count(); ++j) {
      is_free[d.free[j]] = 1;
      slot[d.free[j]] = j;
    }
    std::vector<int> queue(d.interval.begin(), d.interval.end());
    for (int l : d.interval) placed[l] = 1;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const int v = queue[qi];
      for (const Edge& e : d.edges) {
        const int u = e.lo == v ? e.hi : (e.hi == v ? e.lo : 0);
        if (u && is_free[u] && !placed[u]) {
          placed[u] = 1;
          queue.push_back(u);
        }
      }
    }
    if (static_cast<int>(queue.size()) != nv) throw PreconditionError("diagram is not connected");
    for (std::size_t qi = d.interval.size(); qi < queue.size(); ++qi) {
      const int v = queue[qi];
      Step st;
      st.label = v;
      st.slot = slot[v];
      std::vector<int> before(queue.begin(), queue.begin() + static_cast<long>(qi));
      for (const Edge& e : d.edges) {
        const int u = e.lo == v ? e.hi : (e.hi == v ? e.lo : 0);
        if (u && std::find(before.begin(), before.end(), u) != before.end()) st.anchors.push_back(u);
      }
      std::sort(st.anchors.begin(), st.anchors.end());
      st.anchors.erase(std::unique(st.anchors.begin(), st.anchors.end()), st.anchors.end());
      steps_.push_back(st);
    }
    double fact = 1;
    for (int i = 2; i <= d.interval_count(); ++i) fact *= i;
    simplex_volume_ = 1 / fact;
    x_.resize(nv + 1);
    dx_.resize(nv + 1);
  }

  /// One weighted sample value; nullopt on rejection.
  std::optional<double> draw(Uniform& rng, std::uint64_t index, std::uint64_t len) {
    const Diagram& d = eval_.diagram();
    const int k = d.interval_count();
    ts_.resize(k);
    for (int i = 0; i < k; ++i) ts_[i] = tprop_.draw(rng);
    if (opt_.stratify && k > 0 && tprop_.focus.empty())
      ts_[0] = (static_cast<double>(index) + ts_[0]) / static_cast<double>(len);
    std::sort(ts_.begin(), ts_.end());
    sample_.t = ts_;
    sample_.y.resize(d.free_count());
    double q = 1;
    for (int p = 0; p < k; ++p) {
      knot().point_and_derivative(ts_[p], x_[d.interval[p]], dx_[d.interval[p]]);
      q *= tprop_.density(ts_[p]);
    }
    for (const Step& st : steps_) {
      anchors_.clear();
      for (int a : st.anchors) anchors_.push_back(x_[a]);
      const Vec3 y = prop_.draw(rng, anchors_);
      q *= prop_.density(y, anchors_);
      x_[st.label] = y;
      sample_.y[st.slot] = y;
    }
    // Reject near-coincident configurations.
    const double cut = opt_.rejection_cutoff * diameter_;
    const int nv = d.vertex_count();
    for (int a = 1; a <= nv; ++a)
      for (int b = a + 1; b <= nv; ++b)
        if ((x_[a] - x_[b]).norm() < cut) return std::nullopt;
    const auto f = eval_.from_positions(x_, dx_);
    if (!f) return std::nullopt;
    return *f * simplex_volume_ / q;
  }

  const KnotCurve& knot() const { return *knot_; }

 private:

  struct Step {
    int label = 0;
    int slot = 0;
    std::vector<int> anchors;
  };
  DensityEvaluator eval_;
  IntegratorOptions opt_;
  detail::FreePointProposal prop_;
  detail::ParameterProposal tprop_;
  std::vector<Step> steps_;
  double simplex_volume_ = 1;
  double diameter_ = 1;
  const KnotCurve* knot_;
  std::vector<double> ts_;
  std::vector<Vec3> x_, dx_, anchors_;
  ConfigSample sample_;
};

/// Monte Carlo estimate of I(D, K). Diagrams with a repeated edge integrate
/// to zero identically and return 0 without sampling.
inline IntegralEstimate integrate(const Diagram& d, const KnotCurve& k, const IntegratorOptions& opt) {
  IntegralEstimate est;
  est.seed = opt.seed;
  est.samples = opt.budget;
  est.diagram = to_text(d);
  est.knot = k.name();
  if (opt.budget == 0) throw PreconditionError("sample budget must be positive");
  if (2 * d.edge_count() != d.interval_count() + 3 * d.free_count())
    throw PreconditionError("form degree does not match fiber dimension");
  if (d.has_multi_edge()) return est;
  const RunningStats st = run_chunks(opt, [&] {
    auto sampler = std::make_shared<DiagramSampler>(d, k, opt);
    return [sampler](Uniform& rng, std::uint64_t i, std::uint64_t len, RunningStats& acc) {
      const auto v = sampler->draw(rng, i, len);
      if (!v) ++acc.rejected;
      acc.add(v ? *v : 0.0);
    };
  });
  est.value = st.mean;
  est.standard_error = st.standard_error_of_mean();
  est.rejected = st.rejected;
  return est;
}

/// Gauss linking integral over the torus of parameter pairs.
inline IntegralEstimate linking_integral(const KnotCurve& k1, const KnotCurve& k2, const IntegratorOptions& opt) {
  check_disjoint(k1, k2);
  IntegralEstimate est;
  est.seed = opt.seed;
  est.samples = opt.budget;
  est.diagram = "link";
  est.knot = k1.name() + "," + k2.name();
  const double diam = std::max(bounding_sphere(k1).second, bounding_sphere(k2).second) * 2;
  const RunningStats st = run_chunks(opt, [&] {
    return [&, diam](Uniform& rng, std::uint64_t i, std::uint64_t len, RunningStats& acc) {
      double s = rng();
      if (opt.stratify) s = (static_cast<double>(i) + s) / static_cast<double>(len);
      const double t = rng();
      Vec3 p1, d1, p2, d2;
      k1.point_and_derivative(s, p1, d1);
      k2.point_and_derivative(t, p2, d2);
      const Vec3 delta = p2 - p1;
      const double len3 = delta.norm();
      if (len3 < opt.rejection_cutoff * diam) {
        ++acc.rejected;
        acc.add(0);
        return;
      }
      // Single-edge pullback: -det(K1', K2', delta) / (4 pi |delta|^3).
      acc.add(-d1.cross(d2).dot(delta) / (4 * std::numbers::pi * len3 * len3 * len3));
    };
  });
  est.value = st.mean;
  est.standard_error = st.standard_error_of_mean();
  est.rejected = st.rejected;
  return est;
}

/// I(D1, K): the single-chord integral over ordered parameter pairs.
inline IntegralEstimate self_link_integral(const KnotCurve& k, const IntegratorOptions& opt) {
  return integrate(single_chord(), k, opt);
}

}  // namespace confint
