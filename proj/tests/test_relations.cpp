#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "confint/boundary.hpp"
#include "confint/relations.hpp"
#include "confint/weight_system.hpp"

using namespace confint;

TEST(Relations, StuShapes) {
  EXPECT_TRUE(stu_relation_vectors(1).empty());
  for (int n = 2; n <= 3; ++n)
    for (const auto& v : stu_relation_vectors(n)) {
      EXPECT_GE(v.size(), 1u);
      EXPECT_LE(v.size(), 3u);
    }
  for (int n = 2; n <= 3; ++n)
    for (const auto& v : four_t_relation_vectors(n)) {
      EXPECT_LE(v.size(), 4u);
      for (const auto& [d, c] : v) EXPECT_TRUE(d.is_chord_diagram());
    }
}

TEST(Relations, TripodRelationsAtDegreeTwo) {
  // Both STU relations on the tripod express it through chord diagrams;
  // together they force side-by-side = nested.
  const Diagram p = side_by_side_chords(), nst = nested_chords(), x = crossed_chords(), y = tripod();
  ClassIndex idx(trivalent_generators(2));
  RowReducer red;
  for (const auto& r : stu_relation_vectors(2)) red.add(idx.row(r));
  DiagramVector pn;
  add_term(pn, p, 1);
  add_term(pn, nst, -1);
  EXPECT_TRUE(red.in_span(idx.row(pn)));
  DiagramVector yx;  // Y + X + P
  add_term(yx, y, 1);
  add_term(yx, x, 1);
  add_term(yx, p, 1);
  EXPECT_TRUE(red.in_span(idx.row(yx)));
}

TEST(Relations, QuotientDimensions) {
  EXPECT_EQ(quotient_dimension({single_chord()}, {}), 1);
  const int expected[] = {1, 2, 3};
  for (int n = 1; n <= 3; ++n) {
    EXPECT_EQ(dim_chord_mod_4t(n), expected[n - 1]) << n;
    EXPECT_EQ(dim_trivalent_mod_stu(n), expected[n - 1]) << n;
  }
}

TEST(Relations, QuotientDimensionEdgeCases) {
  auto gens = trivalent_generators(2);
  auto rels = stu_relation_vectors(2);
  const int base = quotient_dimension(gens, rels);
  auto more = rels;
  DiagramVector sum;
  for (const auto& [d, c] : rels[0]) add_term(sum, d, c * 3);
  for (const auto& [d, c] : rels[1]) add_term(sum, d, c);
  more.push_back(sum);
  EXPECT_EQ(quotient_dimension(gens, more), base);
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 5; ++rep) {
    auto shuffled = stu_relation_vectors(3);
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    EXPECT_EQ(quotient_dimension(trivalent_generators(3), shuffled), 3);
  }
  EXPECT_THROW(quotient_dimension({single_chord(), crossed_chords()}, {}), PreconditionError);
}

TEST(Relations, IhxAndClosureInStuSpan) {
  EXPECT_FALSE(ihx_relation_vectors(3).empty());
  EXPECT_TRUE(ihx_in_stu_span(2));
  EXPECT_TRUE(ihx_in_stu_span(3));
  for (int n = 1; n <= 3; ++n) EXPECT_TRUE(closure_in_stu_span(n)) << n;
}

TEST(WeightSystems, BasisAnnihilatesRelations) {
  for (int n = 1; n <= 3; ++n) {
    const auto basis = weight_system_basis(n);
    EXPECT_EQ(static_cast<int>(basis.size()), dim_trivalent_mod_stu(n));
    const auto four_t = four_t_relation_vectors(n);
    for (const auto& w : basis) {
      EXPECT_TRUE(annihilates_stu(w));
      for (const auto& v : four_t) EXPECT_EQ(w(v), 0);
    }
  }
}

TEST(WeightSystems, PrimitiveDegreeTwo) {
  const WeightSystem w = primitive_degree_two();
  EXPECT_EQ(w.chord_value(crossed_chords()), 1);
  EXPECT_EQ(w.chord_value(side_by_side_chords()), 0);
  EXPECT_EQ(w.chord_value(nested_chords()), 0);
  // vertex-order orientation of the labeled classes
  EXPECT_EQ(w(crossed_chords()), -1);
  EXPECT_EQ(w(tripod()), 1);
  EXPECT_TRUE(is_primitive(w));
  EXPECT_TRUE(annihilates_stu(w));
  for (const auto& v : four_t_relation_vectors(2)) EXPECT_EQ(w(v), 0);
}

TEST(WeightSystems, DegreeOneVacuouslyPrimitive) {
  const WeightSystem w = from_chord_values(1, {{single_chord(), 7}});
  EXPECT_TRUE(is_primitive(w));
  EXPECT_EQ(w(single_chord()), 7);
  EXPECT_EQ(w.chord_value(single_chord()), 7);
}

TEST(WeightSystems, ProductIsNotPrimitive) {
  const WeightSystem w1 = from_chord_values(1, {{single_chord(), 1}});
  const WeightSystem sq = product(w1, w1);
  EXPECT_EQ(sq.chord_value(side_by_side_chords()), 2);
  EXPECT_EQ(sq.chord_value(crossed_chords()), 2);
  EXPECT_EQ(sq.chord_value(nested_chords()), 2);
  EXPECT_FALSE(is_primitive(sq));
  EXPECT_TRUE(annihilates_stu(sq));
}

TEST(WeightSystems, StandardChordSign) {
  EXPECT_EQ(standard_chord_sign(single_chord()), 1);
  EXPECT_EQ(standard_chord_sign(side_by_side_chords()), 1);
  EXPECT_EQ(standard_chord_sign(nested_chords()), 1);
  EXPECT_EQ(standard_chord_sign(crossed_chords()), -1);
  EXPECT_THROW(standard_chord_sign(tripod()), PreconditionError);
}

TEST(WeightSystems, InconsistentOrUnderdetermined) {
  // side-by-side and nested agree in the quotient
  EXPECT_THROW(from_chord_values(2, {{side_by_side_chords(), 1}, {nested_chords(), 0}, {crossed_chords(), 0}}),
               PreconditionError);
  EXPECT_THROW(from_chord_values(2, {{crossed_chords(), 1}}), PreconditionError);
}

TEST(Boundary, ChordDiagramsAreCycles) {
  for (int n = 1; n <= 3; ++n)
    for (const auto& d : enumerate_chord_diagrams(n)) EXPECT_TRUE(boundary_by_contraction(d).empty());
}

TEST(Boundary, SquareVanishesOnAllGenerators) {
  for (int n = 1; n <= 3; ++n)
    for (const auto& d : trivalent_generators(n)) {
      const DiagramVector b = boundary_by_contraction(d);
      EXPECT_TRUE(boundary_by_contraction(b).empty()) << to_text(d);
    }
}

TEST(Boundary, WellDefinedOnClasses) {
  std::mt19937_64 rng(3);
  for (int n = 2; n <= 3; ++n)
    for (const auto& d : trivalent_generators(n)) {
      std::vector<int> perm(d.vertex_count() + 1, 0);
      std::vector<int> p(d.vertex_count());
      std::iota(p.begin(), p.end(), 1);
      std::shuffle(p.begin(), p.end(), rng);
      for (int i = 0; i < d.vertex_count(); ++i) perm[i + 1] = p[i];
      const SignedDiagram r = relabel(d, perm);
      DiagramVector direct = boundary_by_contraction(d);
      DiagramVector via;
      for (int i = 0; i < r.diagram.edge_count(); ++i) {
        const SignedDiagram s = contract_edge(r.diagram, i);
        if (s.sign == 0) continue;
        add_term(via, canonicalize(s.diagram), Rational(s.sign * r.sign));
      }
      EXPECT_EQ(via, direct) << to_text(d);
    }
}

TEST(Boundary, Linear) {
  const auto gens = trivalent_generators(3);
  DiagramVector v1, v2, comb;
  add_term(v1, gens[gens.size() - 1], 1);
  add_term(v2, gens[gens.size() - 2], 1);
  add_term(comb, gens[gens.size() - 1], 2);
  add_term(comb, gens[gens.size() - 2], -3);
  DiagramVector expect;
  for (const auto& [d, c] : boundary_by_contraction(v1)) add_term(expect, d, c * 2);
  for (const auto& [d, c] : boundary_by_contraction(v2)) add_term(expect, d, c * -3);
  EXPECT_EQ(boundary_by_contraction(comb), expect);
}

TEST(Boundary, NontrivialAndEdgePositionSignFails) {
  std::size_t nonzero = 0;
  bool position_fails = false;
  for (int n = 2; n <= 3; ++n)
    for (const auto& d : trivalent_generators(n)) {
      nonzero += !boundary_by_contraction(d).empty();
      const auto b = boundary_by_contraction(d, ContractionSign::EdgePosition);
      position_fails = position_fails || !boundary_by_contraction(b, ContractionSign::EdgePosition).empty();
    }
  EXPECT_GT(nonzero, 10u);
  EXPECT_TRUE(position_fails);
}
