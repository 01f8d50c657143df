#pragma once

// Weight systems: rational functionals on canonical classes of one degree
// that vanish on every STU vector.
//
// Internally a class carries the vertex-order orientation. Chord diagrams
// also have the usual unsigned convention, in which a chord diagram is
// oriented chord by chord; the two differ by standard_chord_sign(d).
// Chord values passed in or read out through the chord_* functions use the
// unsigned convention.

#include <map>
#include <optional>
#include <vector>

#include "confint/diagram.hpp"
#include "confint/relations.hpp"

namespace confint {

/// Sign of the permutation (i1 j1 i2 j2 ...) listing chord endpoints by
/// chord, each chord low -> high, relative to interval order. Expects the
/// interval labels to be 1..2n in order, as in canonical chord diagrams.
inline int standard_chord_sign(const Diagram& d) {
  if (!d.is_chord_diagram()) throw PreconditionError("expected a chord diagram");
  for (int p = 0; p < d.interval_count(); ++p)
    if (d.interval[p] != p + 1) throw PreconditionError("expected interval labels in order");
  std::vector<int> pos(d.vertex_count() + 1, 0);
  for (int p = 0; p < d.interval_count(); ++p) pos[d.interval[p]] = p + 1;
  std::vector<int> seq;
  for (const Edge& e : d.edges) {
    const int a = pos[e.lo], b = pos[e.hi];
    seq.push_back(std::min(a, b));
    seq.push_back(std::max(a, b));
  }
  int inversions = 0;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j) inversions += seq[i] > seq[j];
  return inversions % 2 ? -1 : 1;
}

struct WeightSystem {
  int degree = 0;
  std::map<Diagram, Rational> values;  // canonical class -> value; absent = 0

  /// Value on a labeled diagram, with its orientation sign.
  Rational operator()(const Diagram& d) const {
    const SignedDiagram c = canonicalize(d);
    if (c.sign == 0) return 0;
    auto it = values.find(c.diagram);
    return it == values.end() ? Rational(0) : Rational(it->second * c.sign);
  }

  /// Value on a chord diagram in the unsigned chord convention.
  Rational chord_value(const Diagram& d) const {
    const SignedDiagram c = canonicalize(d);
    auto it = values.find(c.diagram);
    if (c.sign == 0 || it == values.end()) return 0;
    return it->second * standard_chord_sign(c.diagram);
  }

  Rational operator()(const DiagramVector& v) const {
    Rational total = 0;
    for (const auto& [d, c] : v) {
      auto it = values.find(d);
      if (it != values.end()) total += c * it->second;
    }
    return total;
  }
};

inline bool annihilates_stu(const WeightSystem& w, const EnumerationGuards& g = {}) {
  for (const auto& r : stu_relation_vectors(w.degree, g))
    if (w(r) != 0) return false;
  return true;
}

namespace detail {

inline WeightSystem from_vector(int n, const ClassIndex& idx, const std::vector<Rational>& x) {
  WeightSystem w;
  w.degree = n;
  for (int i = 0; i < idx.size(); ++i)
    if (x[i] != 0) w.values.emplace(idx.classes()[i], x[i]);
  return w;
}

}  // namespace detail

/// Basis of the space of degree-n weight systems.
inline std::vector<WeightSystem> weight_system_basis(int n, const EnumerationGuards& g = {}) {
  ClassIndex idx(trivalent_generators(n, g));
  std::vector<SparseRow> rows;
  for (const auto& r : stu_relation_vectors(n, g)) rows.push_back(idx.row(r));
  std::vector<WeightSystem> out;
  for (const auto& x : null_space(rows, idx.size())) out.push_back(detail::from_vector(n, idx, x));
  return out;
}

/// Extends prescribed values (unsigned chord convention) on chord diagrams to the unique weight system on
/// all trivalent classes. Throws PreconditionError when the values violate 4T
/// or do not determine the extension.
inline WeightSystem from_chord_values(int n, const std::map<Diagram, Rational>& chord_values,
                                      const EnumerationGuards& g = {}) {
  ClassIndex idx(trivalent_generators(n, g));
  std::vector<SparseRow> rows;
  std::vector<Rational> rhs;
  for (const auto& r : stu_relation_vectors(n, g)) {
    rows.push_back(idx.row(r));
    rhs.push_back(0);
  }
  for (const auto& [d, value] : chord_values) {
    if (!d.is_chord_diagram() || d.degree() != n) throw PreconditionError("expected a degree-n chord diagram");
    const SignedDiagram c = canonicalize(d);
    rows.push_back(SparseRow{{idx.find(c.diagram), Rational(1)}});
    rhs.push_back(value * standard_chord_sign(c.diagram));
  }
  std::optional<std::vector<Rational>> x;
  try {
    x = solve_unique(rows, rhs, idx.size());
  } catch (const PreconditionError&) {
    throw PreconditionError("chord values are inconsistent with the 4T relation");
  }
  if (!x) throw PreconditionError("chord values do not determine a unique weight system");
  return detail::from_vector(n, idx, *x);
}

/// Restriction of the chord diagram d to a subset of its chords, relabeled
/// onto consecutive interval positions.
inline Diagram chord_subdiagram(const Diagram& d, const std::vector<Edge>& chords) {
  std::vector<int> pts;
  for (const Edge& e : chords) {
    pts.push_back(e.lo);
    pts.push_back(e.hi);
  }
  std::sort(pts.begin(), pts.end());
  auto pos = [&](int label) {
    // Interval position of `label` among the kept points.
    const int p = static_cast<int>(std::find(d.interval.begin(), d.interval.end(), label) - d.interval.begin());
    int rank = 1;
    for (int q : pts)
      if (static_cast<int>(std::find(d.interval.begin(), d.interval.end(), q) - d.interval.begin()) < p) ++rank;
    return rank;
  };
  Diagram out;
  for (int i = 1; i <= static_cast<int>(pts.size()); ++i) out.interval.push_back(i);
  for (const Edge& e : chords) out.edges.push_back(make_edge(pos(e.lo), pos(e.hi)));
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

/// Product on chord diagrams, (w1 w2)(D) = sum over chord subsets J of
/// w1(D|J) w2(D|J^c), extended to trivalent classes.
inline WeightSystem product(const WeightSystem& w1, const WeightSystem& w2, const EnumerationGuards& g = {}) {
  const int n = w1.degree + w2.degree;
  std::map<Diagram, Rational> values;
  for (const auto& d : enumerate_chord_diagrams(n, g)) {
    Rational total = 0;
    const int m = d.edge_count();
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
      std::vector<Edge> j, jc;
      for (int i = 0; i < m; ++i) ((mask >> i) & 1u ? j : jc).push_back(d.edges[i]);
      if (static_cast<int>(j.size()) != w1.degree) continue;
      total += w1.chord_value(chord_subdiagram(d, j)) * w2.chord_value(chord_subdiagram(d, jc));
    }
    values.emplace(d, total);
  }
  return from_chord_values(n, values, g);
}

/// True iff w vanishes on every reducible class of its degree.
inline bool is_primitive(const WeightSystem& w, const EnumerationGuards& g = {}) {
  for (const auto& d : trivalent_generators(w.degree, g))
    if (!is_prime(d) && w(d) != 0) return false;
  return true;
}

/// Degree-2 primitive weight system: 1 on crossed chords, 0 on side-by-side.
inline WeightSystem primitive_degree_two() {
  return from_chord_values(2, {{side_by_side_chords(), 0}, {crossed_chords(), 1}});
}

}  // namespace confint
