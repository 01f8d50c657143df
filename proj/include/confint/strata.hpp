#pragma once

// Combinatorics of compactified configuration spaces: strata as nested
// families of subsets, the face order, and the codimension-one faces of the
// configuration space attached to a diagram.

#include <algorithm>
#include <bit>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "confint/diagram.hpp"
#include "confint/errors.hpp"

namespace confint {

/// A family of subsets of {1..ground}, each of size >= 2, pairwise nested or
/// disjoint. Subsets are stored sorted; the family is sorted.
struct NestedFamily {
  int ground = 0;
  std::vector<std::vector<int>> subsets;

  int codim() const { return static_cast<int>(subsets.size()); }

  void normalize() {
    for (auto& s : subsets) std::sort(s.begin(), s.end());
    std::sort(subsets.begin(), subsets.end());
  }

  void validate() const {
    for (const auto& s : subsets) {
      if (s.size() < 2) throw PreconditionError("subsets must have at least two elements");
      for (int x : s)
        if (x < 1 || x > ground) throw PreconditionError("subset element out of range");
      for (std::size_t i = 1; i < s.size(); ++i)
        if (s[i] == s[i - 1]) throw PreconditionError("repeated element in subset");
    }
    for (std::size_t i = 0; i < subsets.size(); ++i)
      for (std::size_t j = 0; j < i; ++j) {
        const auto& a = subsets[i];
        const auto& b = subsets[j];
        if (a == b) throw PreconditionError("repeated subset");
        std::vector<int> meet;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(meet));
        if (!meet.empty() && meet.size() != a.size() && meet.size() != b.size())
          throw PreconditionError("subsets are neither nested nor disjoint");
      }
  }

  auto operator<=>(const NestedFamily&) const = default;
};

enum class StrataMode { Abstract, Interval };

inline StrataMode parse_strata_mode(const std::string& s) {
  if (s == "abstract") return StrataMode::Abstract;
  if (s == "interval") return StrataMode::Interval;
  throw PreconditionError("unknown strata mode " + s);
}

struct StrataGuards {
  int max_points = 8;
  std::size_t max_families = 2'000'000;
};

namespace detail {

inline bool compatible(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> meet;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(meet));
  return meet.empty() || meet.size() == a.size() || meet.size() == b.size();
}

inline std::vector<std::vector<int>> candidate_subsets(int k, StrataMode mode) {
  std::vector<std::vector<int>> out;
  if (mode == StrataMode::Interval) {
    for (int len = 2; len <= k; ++len)
      for (int i = 1; i + len - 1 <= k; ++i) {
        std::vector<int> s;
        for (int j = i; j < i + len; ++j) s.push_back(j);
        out.push_back(s);
      }
  } else {
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
      if (std::popcount(mask) < 2) continue;
      std::vector<int> s;
      for (int i = 0; i < k; ++i)
        if ((mask >> i) & 1u) s.push_back(i + 1);
      out.push_back(s);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// All nested families with 1 <= codim <= max_codim. Interval mode keeps only
/// runs of consecutive points, the collisions possible for points on a line.
inline std::vector<NestedFamily> enumerate_strata(int k, int max_codim, StrataMode mode,
                                                  const StrataGuards& g = {}) {
  if (k < 1) throw PreconditionError("need at least one point");
  if (k > g.max_points) throw GuardExceeded("point count exceeds the strata guard");
  if (max_codim < 0) throw PreconditionError("codimension must be non-negative");
  const auto cand = detail::candidate_subsets(k, mode);
  const int m = static_cast<int>(cand.size());
  std::vector<std::vector<char>> ok(m, std::vector<char>(m, 0));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) ok[i][j] = detail::compatible(cand[i], cand[j]);
  std::vector<NestedFamily> out;
  std::vector<int> pick;
  auto rec = [&](auto&& self, int from) -> void {
    if (!pick.empty()) {
      NestedFamily f;
      f.ground = k;
      for (int i : pick) f.subsets.push_back(cand[i]);
      out.push_back(std::move(f));
      if (out.size() > g.max_families) throw GuardExceeded("too many strata");
    }
    if (static_cast<int>(pick.size()) == max_codim) return;
    for (int i = from; i < m; ++i) {
      bool good = true;
      for (int j : pick) good = good && ok[i][j];
      if (!good) continue;
      pick.push_back(i);
      self(self, i + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end(), [](const NestedFamily& a, const NestedFamily& b) {
    return a.codim() != b.codim() ? a.codim() < b.codim() : a.subsets < b.subsets;
  });
  return out;
}

/// True iff every subset of f1 occurs in f2, so that the stratum of f2 lies
/// in the closure of the stratum of f1.
inline bool face_contains(const NestedFamily& f1, const NestedFamily& f2) {
  if (f1.ground != f2.ground) throw PreconditionError("families live on different ground sets");
  for (const auto& s : f1.subsets)
    if (std::find(f2.subsets.begin(), f2.subsets.end(), s) == f2.subsets.end()) return false;
  return true;
}

inline nlohmann::json to_json(const NestedFamily& f) { return {{"subsets", f.subsets}, {"codim", f.codim()}}; }

inline nlohmann::json to_json(const std::vector<NestedFamily>& fs) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& f : fs) j.push_back(to_json(f));
  return j;
}

inline std::string family_label(const NestedFamily& f) {
  std::string s = "{";
  for (std::size_t i = 0; i < f.subsets.size(); ++i) {
    if (i) s += ",";
    s += "{";
    for (std::size_t j = 0; j < f.subsets[i].size(); ++j) s += (j ? "," : "") + std::to_string(f.subsets[i][j]);
    s += "}";
  }
  return s + "}";
}

/// Hasse diagram of the face order in DOT: an arrow f -> g when g is a face
/// of f one codimension lower.
inline std::string to_dot(const std::vector<NestedFamily>& fs) {
  std::ostringstream out;
  out << "digraph strata {\n  rankdir=TB;\n";
  for (std::size_t i = 0; i < fs.size(); ++i)
    out << "  n" << i << " [label=\"" << family_label(fs[i]) << "\"];\n";
  for (std::size_t i = 0; i < fs.size(); ++i)
    for (std::size_t j = 0; j < fs.size(); ++j)
      if (fs[j].codim() == fs[i].codim() + 1 && face_contains(fs[i], fs[j])) out << "  n" << i << " -> n" << j << ";\n";
  out << "}\n";
  return out.str();
}

// ---------------------------------------------------------------- faces

enum class FaceKind { Principal, Hidden, Anomalous, Infinity };

inline std::string to_string(FaceKind k) {
  switch (k) {
    case FaceKind::Principal: return "principal";
    case FaceKind::Hidden: return "hidden";
    case FaceKind::Anomalous: return "anomalous";
    case FaceKind::Infinity: return "infinity";
  }
  return "";
}

/// A codimension-one face: interval labels A and free labels B collide, or
/// with `kind == Infinity` the free labels B escape to infinity.
struct FaceDescriptor {
  std::vector<int> interval_set;  // A
  std::vector<int> free_set;      // B
  FaceKind kind = FaceKind::Principal;
  int dimension = 0;  // k + 3s - 1, metadata only; no chart is evaluated
};

/// True iff the interval labels in `a` occupy a cyclically consecutive run
/// of the diagram's interval positions.
inline bool cyclically_consecutive(const Diagram& d, const std::vector<int>& a) {
  const int k = d.interval_count();
  if (a.empty() || static_cast<int>(a.size()) == k) return true;
  std::vector<char> in(k, 0);
  for (int l : a) {
    auto it = std::find(d.interval.begin(), d.interval.end(), l);
    in[it - d.interval.begin()] = 1;
  }
  int starts = 0;
  for (int p = 0; p < k; ++p) starts += in[p] && !in[(p + k - 1) % k];
  return starts == 1;
}

/// Classifies the collision of A (interval labels) and B (free labels), or
/// the escape of B when `at_infinity` is set.
inline FaceDescriptor classify_face(const Diagram& d, std::vector<int> a, std::vector<int> b,
                                    bool at_infinity = false) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (std::adjacent_find(a.begin(), a.end()) != a.end() || std::adjacent_find(b.begin(), b.end()) != b.end())
    throw PreconditionError("repeated label in face");
  for (int l : a)
    if (!d.is_interval_vertex(l)) throw PreconditionError("A must contain interval labels");
  for (int l : b)
    if (std::find(d.free.begin(), d.free.end(), l) == d.free.end()) throw PreconditionError("B must contain free labels");
  FaceDescriptor f{a, b, FaceKind::Principal, d.interval_count() + 3 * d.free_count() - 1};
  if (at_infinity) {
    if (!a.empty() || b.empty()) throw PreconditionError("only free points escape to infinity");
    f.kind = FaceKind::Infinity;
    return f;
  }
  const std::size_t n = a.size() + b.size();
  if (n < 2) throw PreconditionError("a collision face needs at least two points");
  if (!cyclically_consecutive(d, a)) throw PreconditionError("interval points are not consecutive, the face is empty");
  if (n == 2) f.kind = FaceKind::Principal;
  else if (static_cast<int>(n) == d.vertex_count()) f.kind = FaceKind::Anomalous;
  else f.kind = FaceKind::Hidden;
  return f;
}

/// Every nonempty codimension-one face of the diagram's configuration space.
inline std::vector<FaceDescriptor> enumerate_faces(const Diagram& d) {
  std::vector<FaceDescriptor> out;
  const int k = d.interval_count(), s = d.free_count();
  if (k + s > 20) throw GuardExceeded("too many vertices for face enumeration");
  for (unsigned mb = 0; mb < (1u << s); ++mb) {
    std::vector<int> b;
    for (int j = 0; j < s; ++j)
      if ((mb >> j) & 1u) b.push_back(d.free[j]);
    for (unsigned ma = 0; ma < (1u << k); ++ma) {
      std::vector<int> a;
      for (int p = 0; p < k; ++p)
        if ((ma >> p) & 1u) a.push_back(d.interval[p]);
      if (a.size() + b.size() < 2 || !cyclically_consecutive(d, a)) continue;
      out.push_back(classify_face(d, a, b));
    }
    if (!b.empty()) out.push_back(classify_face(d, {}, b, true));
  }
  return out;
}

/// Chordless diagrams are the only ones whose anomalous face may contribute.
inline bool needs_anomaly_correction(const Diagram& d) { return !d.has_chord(); }

struct DisconnectionReport {
  bool disconnected = false;
  bool exception = false;  // two interval points and no free points
};

/// Whether the subgraph of d induced on `subset` has two or more components.
inline DisconnectionReport is_disconnected_vertex_set(const Diagram& d, const std::vector<int>& subset) {
  std::vector<int> s = subset;
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  for (int l : s)
    if (l < 1 || l > d.vertex_count()) throw PreconditionError("label outside the diagram");
  DisconnectionReport r;
  if (s.size() < 2) return r;
  std::vector<int> parent(d.vertex_count() + 1);
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto in = [&](int l) { return std::binary_search(s.begin(), s.end(), l); };
  for (const Edge& e : d.edges)
    if (in(e.lo) && in(e.hi)) parent[find(e.lo)] = find(e.hi);
  for (int l : s) r.disconnected = r.disconnected || find(l) != find(s.front());
  int a = 0;
  for (int l : s) a += d.is_interval_vertex(l);
  r.exception = r.disconnected && a == 2 && s.size() == 2;
  return r;
}

}  // namespace confint
