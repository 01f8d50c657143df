#include <gtest/gtest.h>

#include <random>
#include <set>

#include "confint/invariants.hpp"

using namespace confint;

namespace {

// Reference values of the degree-2 Vassiliev invariant (Conway a2).
constexpr long kTrefoilV2 = 1;
constexpr long kFigureEightV2 = -1;

// Brute-force crossed-arrow count over every basepoint, on the raw visit list.
long brute_force_crossed_pairs(const GaussCode& g) {
  const int m = static_cast<int>(g.visits.size());
  long first = 0;
  for (int base = 0; base < m; ++base) {
    long total = 0;
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        for (int k = j + 1; k < m; ++k)
          for (int l = k + 1; l < m; ++l) {
            const auto& a = g.visits[(base + i) % m];
            const auto& b = g.visits[(base + j) % m];
            const auto& c = g.visits[(base + k) % m];
            const auto& d = g.visits[(base + l) % m];
            if (a.over && !b.over && !c.over && d.over && a.label == c.label && b.label == d.label && a.label != b.label)
              total += a.sign * b.sign;
          }
    if (base == 0) first = total;
    EXPECT_EQ(total, first);
  }
  return first;
}

double max_distance_outside(const KnotCurve& a, const KnotCurve& b, double centre, double half_width) {
  double worst = 0;
  for (int i = 0; i < 4096; ++i) {
    const double t = (i + 0.5) / 4096;
    double d = std::abs(t - centre);
    d = std::min(d, 1 - d);
    if (d <= half_width) continue;
    worst = std::max(worst, (a.point(t) - b.point(t)).norm());
  }
  return worst;
}

}  // namespace

TEST(Knots, StandardLibraryIsEmbedded) {
  for (const char* name : {"unknot", "trefoil", "figure8", "trefoil-alt", "unknot-wiggly", "torus(2,5)", "torus(3,4)"}) {
    const KnotCurve k = standard_knot(name);
    const auto rep = embedding_report(k);
    EXPECT_GT(rep.min_speed, 0) << name;
    EXPECT_GT(rep.min_separation, 1e-3 * rep.diameter) << name;
  }
  EXPECT_THROW(standard_knot("torus(2,4)"), PreconditionError);
  EXPECT_THROW(standard_knot("nope"), PreconditionError);
}

TEST(Knots, UnknotIsACircle) {
  const KnotCurve k = round_unknot();
  EXPECT_EQ(k.harmonics(), 1);
  const double r = k.point(0).norm();
  for (int i = 0; i < 100; ++i) EXPECT_NEAR(k.point(i / 100.0).norm(), r, 1e-12);
}

TEST(Knots, DerivativeMatchesFiniteDifferences) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 1);
  for (const char* name : {"trefoil", "figure8", "trefoil-alt"}) {
    const KnotCurve k = standard_knot(name);
    for (int i = 0; i < 100; ++i) {
      const double t = u(rng), h = 1e-5;
      const Vec3 fd = (k.point(t + h) - k.point(t - h)) / (2 * h);
      EXPECT_LT((fd - k.derivative(t)).norm(), 1e-8 * k.derivative(t).norm()) << name;
    }
  }
}

TEST(Knots, Periodic) {
  const KnotCurve k = figure_eight();
  for (double t : {0.0, 0.13, 0.5, 0.97}) {
    EXPECT_LT((k.point(t + 1) - k.point(t)).norm(), 1e-12);
    EXPECT_LT((k.point(t - 3) - k.point(t)).norm(), 1e-11);
  }
}

TEST(Knots, BumpDerivativeMatchesFiniteDifferences) {
  const KnotCurve k = trefoil().with_bump({0.2, 0.01, Vec3(0, 0, 0.1)});
  for (double t : {0.195, 0.2, 0.2049, 0.5}) {
    const double h = 1e-7;
    const Vec3 fd = (k.point(t + h) - k.point(t - h)) / (2 * h);
    EXPECT_LT((fd - k.derivative(t)).norm(), 1e-5 * k.derivative(t).norm());
  }
}

TEST(Knots, JsonRoundTrip) {
  const KnotCurve k = trefoil_alt().with_bump({0.3, 0.02, Vec3(0.1, 0, 0)});
  const KnotCurve r = parse_knot_json(to_json(k).dump());
  for (double t : {0.0, 0.29, 0.31, 0.8}) EXPECT_LT((k.point(t) - r.point(t)).norm(), 1e-14);
  EXPECT_EQ(r.name(), k.name());
}

TEST(Knots, JsonErrorsCarryLines) {
  try {
    parse_knot_json("{\n \"dim\": 3,\n \"coeffs\": [ oops ]\n}");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
  EXPECT_THROW(parse_knot_json(R"({"dim": 3, "coeffs": [[[0,0]],[[0,0]]]})"), ParseError);
  EXPECT_THROW(parse_knot_json(R"({"dim": 4, "coeffs": []})"), ParseError);
  EXPECT_THROW(parse_knot_json(R"({"harmonics": 2, "coeffs": [[[0,0]],[[0,0]],[[0,0]]]})"), ParseError);
}

TEST(GaussCodes, CurveCodes) {
  EXPECT_TRUE(gauss_code(round_unknot(), default_projection()).visits.empty());
  const GaussCode t = gauss_code(trefoil(), Vec3::UnitZ());
  EXPECT_EQ(t.crossing_count(), 3);
  std::set<int> signs;
  for (const auto& v : t.visits) signs.insert(v.sign);
  EXPECT_EQ(signs.size(), 1u);
  EXPECT_NO_THROW(t.validate());
  // alternating
  for (std::size_t i = 0; i < t.visits.size(); ++i) EXPECT_NE(t.visits[i].over, t.visits[(i + 1) % t.visits.size()].over);
}

TEST(GaussCodes, TextRoundTripAndErrors) {
  const GaussCode g = parse_gauss_code("O1+ U2+ O3+ U1+ O2+ U3+");
  EXPECT_EQ(to_text(g), "O1+ U2+ O3+ U1+ O2+ U3+");
  EXPECT_THROW(parse_gauss_code("O1+ U2+"), ParseError);
  EXPECT_THROW(parse_gauss_code("O1+ O1+"), ParseError);
  EXPECT_THROW(parse_gauss_code("O1+ U1-"), ParseError);
  try {
    parse_gauss_code("X1+", 12);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 12);
  }
}

TEST(PolyakViro, MatchesReferenceValues) {
  EXPECT_EQ(pv_v2(GaussCode{}), 0);
  EXPECT_EQ(pv_v2(round_unknot()), 0);
  EXPECT_EQ(pv_v2(wiggly_unknot()), 0);
  EXPECT_EQ(pv_v2(trefoil()), kTrefoilV2);
  EXPECT_EQ(pv_v2(trefoil_alt()), kTrefoilV2);
  EXPECT_EQ(pv_v2(figure_eight()), kFigureEightV2);
  EXPECT_EQ(pv_v2(torus_knot(2, 5)), 3);  // a2 of T(2,5)
}

TEST(PolyakViro, AgreesWithBruteForce) {
  for (const KnotCurve& k : {trefoil(), figure_eight(), torus_knot(2, 5), torus_knot(3, 4), trefoil_alt()}) {
    const GaussCode g = gauss_code(k, default_projection());
    EXPECT_EQ(pv_v2(g), brute_force_crossed_pairs(g)) << k.name();
  }
}

TEST(PolyakViro, IndependentOfProjectionAndBasepoint) {
  const KnotCurve k = figure_eight();
  for (const Vec3& dir : {Vec3(0.3, 0.1, 1.0), Vec3(1.0, 0.2, 0.1), Vec3(-0.2, 1.0, 0.4)})
    EXPECT_EQ(pv_v2(k, dir.normalized()), kFigureEightV2);
  for (double s : {0.1, 0.37, 0.81}) EXPECT_EQ(pv_v2(shifted_parameter(k, s)), kFigureEightV2);
  EXPECT_EQ(pv_v2(reversed(k)), kFigureEightV2);
}

TEST(PolyakViro, CrossingChangeSkein) {
  const GaussCode t = parse_gauss_code("O1+ U2+ O3+ U1+ O2+ U3+");
  EXPECT_EQ(pv_v2(t), kTrefoilV2);
  const GaussCode u = t.switched(2);
  EXPECT_EQ(pv_v2(u), 0);  // one switch unknots the trefoil
  EXPECT_EQ(pv_v2(t) - pv_v2(u), 1);
  // mirror image
  GaussCode m = t;
  for (auto& v : m.visits) {
    v.over = !v.over;
    v.sign = -v.sign;
  }
  EXPECT_EQ(pv_v2(m), kTrefoilV2);
}

TEST(Linking, CrossingCount) {
  const auto [a, b] = hopf_link();
  EXPECT_EQ(linking_number_by_crossings(a, b, default_projection()), 1);
  EXPECT_EQ(linking_number_by_crossings(b, a, default_projection()), 1);
  const auto [c, d] = split_link();
  EXPECT_EQ(linking_number_by_crossings(c, d, default_projection()), 0);
}

TEST(Singular, ResolveWithNoDoublePoints) {
  SingularKnot s;
  s.base = trefoil();
  const KnotCurve k = resolve(s, {});
  for (double t : {0.0, 0.4, 0.9}) EXPECT_EQ(k.point(t), s.base.point(t));
}

TEST(Singular, TemplateDoublePoints) {
  const SingularKnot s = singular_from_template(trefoil(), {0});
  ASSERT_EQ(s.order(), 1);
  EXPECT_NO_THROW(s.validate());
  const auto [a, b] = s.double_points[0];
  EXPECT_LT((s.base.point(a) - s.base.point(b)).norm(), 1e-8);
  // the two resolutions differ only inside the bump window
  const KnotCurve plus = resolve(s, {0}), minus = resolve(s, {});
  const double w = s.rho / (2 * s.base.derivative(a).norm());
  EXPECT_EQ(max_distance_outside(plus, minus, a - std::floor(a), w), 0.0);
  EXPECT_GT((plus.point(a) - minus.point(a)).norm(), 0.5 * s.rho);
  // only the resolved crossing changes, from negative to positive
  auto writhe = [](const KnotCurve& k) {
    int w = 0;
    for (const auto& v : gauss_code(k, default_projection()).visits) w += v.over ? v.sign : 0;
    return w;
  };
  EXPECT_EQ(writhe(plus) - writhe(minus), 2);
  EXPECT_EQ(std::abs(pv_v2(plus) - pv_v2(minus)), 1);  // unknot <-> trefoil
}

TEST(Singular, RealizesDegreeTwoChordDiagrams) {
  for (const Diagram& d : enumerate_chord_diagrams(2)) {
    const SingularKnot s = realize_chord_diagram(d);
    EXPECT_EQ(s.chord_diagram(), d);
    std::vector<KnotCurve> rs;
    for (const std::set<int>& p : {std::set<int>{}, {0}, {1}, {0, 1}}) rs.push_back(resolve(s, p));
    for (std::size_t i = 0; i < rs.size(); ++i)
      for (std::size_t j = 0; j < i; ++j) {
        double diff = 0;
        for (int q = 0; q < 2048; ++q) diff = std::max(diff, (rs[i].point(q / 2048.0) - rs[j].point(q / 2048.0)).norm());
        EXPECT_GT(diff, 0.1 * s.rho);
      }
  }
}

TEST(Singular, OverlappingBallsRejected) {
  SingularKnot s = realize_chord_diagram(crossed_chords());
  s.rho = 1e3;
  EXPECT_THROW(s.validate(), PreconditionError);
}

TEST(Universality, CombinatorialDegreeTwo) {
  const WeightSystem w = primitive_degree_two();
  EXPECT_EQ(alternating_pv_v2(realize_chord_diagram(crossed_chords())), 1);
  EXPECT_EQ(alternating_pv_v2(realize_chord_diagram(side_by_side_chords())), 0);
  EXPECT_EQ(alternating_pv_v2(realize_chord_diagram(nested_chords())), 0);
  IntegratorOptions o;
  for (const Diagram& d : enumerate_chord_diagrams(2)) {
    const auto rep = universality_check(d, w, o);
    EXPECT_TRUE(rep.combinatorial_ok) << to_text(d);
    EXPECT_EQ(rep.rows.size(), 4u);
  }
  EXPECT_TRUE(universality_check(single_chord(), from_chord_values(1, {{single_chord(), 1}}), o).trivial);
}

TEST(FiniteType, ThreeSingularSumsVanish) {
  int realized = 0;
  for (const Diagram& d : enumerate_chord_diagrams(3)) {
    SingularKnot s;
    try {
      s = realize_chord_diagram(d);
    } catch (const DegenerateError&) {
      continue;
    }
    ++realized;
    EXPECT_EQ(s.chord_diagram(), d);
    EXPECT_EQ(alternating_pv_v2(s), 0) << to_text(d);
  }
  EXPECT_GE(realized, 3);
}
