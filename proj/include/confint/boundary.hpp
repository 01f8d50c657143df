#pragma once

// Edge-contraction boundary on diagram vectors.

#include <vector>

#include "confint/diagram.hpp"

namespace confint {

enum class ContractionSign {
  EdgePosition,  // (-1)^(index of the edge in the sorted edge list)
  Orientation,   // induced from the vertex/edge orientation of the diagram
};

/// Contracts edge `index` of d. The surviving vertex K is the interval
/// endpoint when there is one, else the lower label; the removed vertex R is
/// deleted and labels above it shift down. Returns sign 0 when the
/// contraction would create a loop or is not allowed (chords).
inline SignedDiagram contract_edge(const Diagram& d, int index, ContractionSign mode = ContractionSign::Orientation) {
  const Edge e = d.edges[index];
  const bool lo_i = d.is_interval_vertex(e.lo);
  const bool hi_i = d.is_interval_vertex(e.hi);
  SignedDiagram out;
  out.sign = 0;
  if (lo_i && hi_i) return out;
  if (std::count(d.edges.begin(), d.edges.end(), e) > 1) return out;
  const int keep = hi_i ? e.hi : e.lo;
  const int gone = hi_i ? e.lo : e.hi;
  auto shift = [&](int l) { return l > gone ? l - 1 : l; };

  int sign = 1;
  if (mode == ContractionSign::EdgePosition) {
    sign = index % 2 ? -1 : 1;
  } else {
    sign = (gone - 1) % 2 ? -1 : 1;  // labels below R
    sign *= keep < gone ? 1 : -1;
  }
  std::vector<Edge> edges;
  for (int i = 0; i < d.edge_count(); ++i) {
    if (i == index) continue;
    Edge f = d.edges[i];
    if (f.lo == gone || f.hi == gone) {
      const int z = f.lo == gone ? f.hi : f.lo;
      if (mode == ContractionSign::Orientation) sign *= (gone < z ? 1 : -1) * (keep < z ? 1 : -1);
      f = make_edge(keep, z);
    }
    edges.push_back(make_edge(shift(f.lo), shift(f.hi)));
  }
  for (int l : d.interval) out.diagram.interval.push_back(shift(l));
  for (int l : d.free)
    if (l != gone) out.diagram.free.push_back(shift(l));
  std::sort(edges.begin(), edges.end());
  out.diagram.edges = std::move(edges);
  out.sign = sign;
  return out;
}

inline DiagramVector boundary_by_contraction(const DiagramVector& v, ContractionSign mode = ContractionSign::Orientation) {
  DiagramVector out;
  for (const auto& [d, c] : v) {
    for (int i = 0; i < d.edge_count(); ++i) {
      const SignedDiagram s = contract_edge(d, i, mode);
      if (s.sign == 0) continue;
      const SignedDiagram cs = canonicalize(s.diagram);
      add_term(out, cs, c * s.sign);
    }
  }
  return out;
}

inline DiagramVector boundary_by_contraction(const Diagram& d, ContractionSign mode = ContractionSign::Orientation) {
  DiagramVector v;
  add_term(v, canonicalize(d), 1);
  return boundary_by_contraction(v, mode);
}

}  // namespace confint
