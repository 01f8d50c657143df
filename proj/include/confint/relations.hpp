#pragma once

// STU, IHX, 4T and closure relation vectors over canonical classes, and
// quotient dimensions by exact elimination.

#include <map>
#include <string>
#include <vector>

#include "confint/diagram.hpp"
#include "confint/linalg.hpp"

namespace confint {

namespace detail {

inline int sgn_order(int a, int b) { return a < b ? 1 : -1; }

inline std::vector<int> other_neighbours(const Diagram& d, int v, int skip_edge_index) {
  std::vector<int> out;
  for (int i = 0; i < d.edge_count(); ++i) {
    if (i == skip_edge_index) continue;
    const Edge& e = d.edges[i];
    if (e.lo == v) out.push_back(e.hi);
    if (e.hi == v) out.push_back(e.lo);
  }
  return out;
}

inline Diagram with_edges(const Diagram& base, std::vector<Edge> edges) {
  Diagram d = base;
  std::sort(edges.begin(), edges.end());
  d.edges = std::move(edges);
  return d;
}

}  // namespace detail

/// Maps the non-vanishing canonical classes of one degree to column indices.
class ClassIndex {
 public:
  ClassIndex() = default;
  explicit ClassIndex(const std::vector<Diagram>& classes) {
    for (const auto& d : classes) add(d);
  }
  int add(const Diagram& d) {
    auto [it, inserted] = index_.try_emplace(d, static_cast<int>(classes_.size()));
    if (inserted) classes_.push_back(d);
    return it->second;
  }
  int find(const Diagram& d) const {
    auto it = index_.find(d);
    return it == index_.end() ? -1 : it->second;
  }
  int size() const { return static_cast<int>(classes_.size()); }
  const std::vector<Diagram>& classes() const { return classes_; }

  SparseRow row(const DiagramVector& v) const {
    SparseRow r;
    for (const auto& [d, c] : v) {
      const int i = find(d);
      if (i < 0) throw PreconditionError("relation references a class outside the generators: " + to_text(d));
      r[i] = c;
    }
    return r;
  }

 private:
  std::map<Diagram, int> index_;
  std::vector<Diagram> classes_;
};

/// Non-vanishing canonical trivalent classes of degree n.
inline std::vector<Diagram> trivalent_generators(int n, const EnumerationGuards& g = {}) {
  std::vector<Diagram> out;
  for (const auto& c : enumerate_trivalent_diagrams(n, g))
    if (!c.vanishes) out.push_back(c.diagram);
  return out;
}

/// The STU relation at the free vertex v adjacent to interval vertex u.
/// With x, y the other neighbours of v, T places v on the interval just
/// after u with edges u-x, v-y, and U uses u-y, v-x. The returned vector is
/// S + s(u,v)s(u,x)s(v,x) T + s(u,v)s(u,y)s(v,y) U over canonical classes,
/// where s(a,b) = +1 if a < b and -1 otherwise.
inline DiagramVector stu_vector(const Diagram& s, int u, int v) {
  int uv = -1;
  for (int i = 0; i < s.edge_count(); ++i)
    if (s.edges[i] == make_edge(u, v)) uv = i;
  if (uv < 0 || !s.is_interval_vertex(u) || s.is_interval_vertex(v))
    throw PreconditionError("STU needs an edge from a free vertex to an interval vertex");
  const auto nb = detail::other_neighbours(s, v, uv);
  if (nb.size() != 2) throw PreconditionError("STU needs a trivalent free vertex");
  const int x = nb[0];
  const int y = nb[1];

  Diagram base = s;
  base.free.erase(std::find(base.free.begin(), base.free.end(), v));
  base.interval.insert(std::find(base.interval.begin(), base.interval.end(), u) + 1, v);
  std::vector<Edge> rest;
  for (const Edge& e : s.edges)
    if (e.lo != v && e.hi != v) rest.push_back(e);
  auto edges_t = rest;
  edges_t.push_back(make_edge(u, x));
  edges_t.push_back(make_edge(v, y));
  auto edges_u = rest;
  edges_u.push_back(make_edge(u, y));
  edges_u.push_back(make_edge(v, x));

  using detail::sgn_order;
  DiagramVector out;
  add_term(out, canonicalize(s), 1);
  add_term(out, canonicalize(detail::with_edges(base, edges_t)), sgn_order(u, v) * sgn_order(u, x) * sgn_order(v, x));
  add_term(out, canonicalize(detail::with_edges(base, edges_u)), sgn_order(u, v) * sgn_order(u, y) * sgn_order(v, y));
  return out;
}

inline std::vector<DiagramVector> stu_relation_vectors(int n, const EnumerationGuards& g = {}) {
  std::vector<DiagramVector> out;
  for (const auto& c : enumerate_trivalent_diagrams(n, g)) {
    const Diagram& d = c.diagram;
    for (const Edge& e : d.edges) {
      const bool lo_i = d.is_interval_vertex(e.lo);
      const bool hi_i = d.is_interval_vertex(e.hi);
      if (lo_i == hi_i) continue;
      const int u = lo_i ? e.lo : e.hi;
      const int v = lo_i ? e.hi : e.lo;
      DiagramVector r = stu_vector(d, u, v);
      if (!r.empty()) out.push_back(std::move(r));
    }
  }
  return out;
}

/// 4T relations among chord diagrams: for each degree-n diagram with a single
/// free vertex whose three legs end on the interval, the chord-only sides of
/// the STU relations at two different legs agree.
inline std::vector<DiagramVector> four_t_relation_vectors(int n, const EnumerationGuards& g = {}) {
  std::vector<DiagramVector> out;
  if (n < 2) {
    if (n < 1) throw PreconditionError("degree must be positive");
    return out;
  }
  for (const auto& c : enumerate_trivalent_diagrams(n, g)) {
    const Diagram& d = c.diagram;
    if (d.free_count() != 1) continue;
    const int v = d.free[0];
    std::vector<int> legs;
    for (const Edge& e : d.edges)
      if (e.hi == v || e.lo == v) legs.push_back(e.lo == v ? e.hi : e.lo);
    if (legs.size() != 3 || !std::all_of(legs.begin(), legs.end(), [&](int l) { return d.is_interval_vertex(l); }))
      continue;
    auto chord_side = [&](int u) {
      DiagramVector r = stu_vector(d, u, v);
      // Drop the S term: what remains equals -S.
      DiagramVector out_side;
      for (const auto& [dd, coef] : r)
        if (dd.is_chord_diagram()) add_term(out_side, dd, coef);
      return out_side;
    };
    const DiagramVector first = chord_side(legs[0]);
    for (int j = 1; j < 3; ++j) {
      DiagramVector r = first;
      for (const auto& [dd, coef] : chord_side(legs[j])) add_term(r, dd, -coef);
      if (!r.empty()) out.push_back(std::move(r));
    }
  }
  return out;
}

/// IHX relations at every simple edge joining two free vertices.
inline std::vector<DiagramVector> ihx_relation_vectors(int n, const EnumerationGuards& g = {}) {
  std::vector<DiagramVector> out;
  for (const auto& c : enumerate_trivalent_diagrams(n, g)) {
    const Diagram& d = c.diagram;
    for (int i = 0; i < d.edge_count(); ++i) {
      const Edge e = d.edges[i];
      if (d.is_interval_vertex(e.lo) || d.is_interval_vertex(e.hi)) continue;
      if (std::count(d.edges.begin(), d.edges.end(), e) != 1) continue;
      const int vv = e.lo;
      const int ww = e.hi;
      const auto nv = detail::other_neighbours(d, vv, i);
      const auto nw = detail::other_neighbours(d, ww, i);
      std::vector<Edge> rest;
      for (const Edge& f : d.edges)
        if (f.lo != vv && f.hi != vv && f.lo != ww && f.hi != ww) rest.push_back(f);
      const int a = nv[0], b = nv[1], cc = nw[0], dd = nw[1];
      const int pairs[3][4] = {{a, b, cc, dd}, {a, cc, b, dd}, {a, dd, b, cc}};
      DiagramVector r;
      for (const auto& p : pairs) {
        auto edges = rest;
        edges.push_back(make_edge(vv, ww));
        edges.push_back(make_edge(vv, p[0]));
        edges.push_back(make_edge(vv, p[1]));
        edges.push_back(make_edge(ww, p[2]));
        edges.push_back(make_edge(ww, p[3]));
        using detail::sgn_order;
        const int coef =
            sgn_order(vv, p[0]) * sgn_order(vv, p[1]) * sgn_order(ww, p[2]) * sgn_order(ww, p[3]);
        add_term(r, canonicalize(detail::with_edges(d, edges)), coef);
      }
      if (!r.empty()) out.push_back(std::move(r));
    }
  }
  return out;
}

/// D minus each cyclic rotation of its interval, for every generator.
inline std::vector<DiagramVector> closure_relation_vectors(int n, const EnumerationGuards& g = {}) {
  std::vector<DiagramVector> out;
  for (const auto& d : trivalent_generators(n, g)) {
    for (int r = 1; r < d.interval_count(); ++r) {
      DiagramVector v;
      add_term(v, d, 1);
      add_term(v, canonicalize(rotate_interval(d, r)), -1);
      if (!v.empty()) out.push_back(std::move(v));
    }
  }
  return out;
}

/// dim span(generators) - rank(relations restricted to the generators).
inline int quotient_dimension(const std::vector<Diagram>& generators, const std::vector<DiagramVector>& relations) {
  int degree = -1;
  auto check = [&](const Diagram& d) {
    if (degree < 0) degree = d.degree();
    if (d.degree() != degree) throw PreconditionError("mixed degrees in quotient computation");
  };
  for (const auto& d : generators) check(d);
  for (const auto& v : relations)
    for (const auto& [d, c] : v) check(d);
  ClassIndex idx(generators);
  RowReducer red;
  for (const auto& v : relations) red.add(idx.row(v));
  return idx.size() - static_cast<int>(red.rank());
}

inline int dim_chord_mod_4t(int n, const EnumerationGuards& g = {}) {
  return quotient_dimension(enumerate_chord_diagrams(n, g), four_t_relation_vectors(n, g));
}

inline int dim_trivalent_mod_stu(int n, const EnumerationGuards& g = {}) {
  return quotient_dimension(trivalent_generators(n, g), stu_relation_vectors(n, g));
}

/// True iff every vector of `candidates` lies in the span of `relations`.
inline bool all_in_span(const std::vector<DiagramVector>& relations, const std::vector<DiagramVector>& candidates,
                        const std::vector<Diagram>& generators) {
  ClassIndex idx(generators);
  RowReducer red;
  for (const auto& v : relations) red.add(idx.row(v));
  for (const auto& v : candidates)
    if (!red.in_span(idx.row(v))) return false;
  return true;
}

inline bool ihx_in_stu_span(int n, const EnumerationGuards& g = {}) {
  return all_in_span(stu_relation_vectors(n, g), ihx_relation_vectors(n, g), trivalent_generators(n, g));
}

inline bool closure_in_stu_span(int n, const EnumerationGuards& g = {}) {
  return all_in_span(stu_relation_vectors(n, g), closure_relation_vectors(n, g), trivalent_generators(n, g));
}

}  // namespace confint
