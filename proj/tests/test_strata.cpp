#include <gtest/gtest.h>

#include <map>
#include <numeric>
#include <set>

#include "confint/strata.hpp"
#include "oracles.hpp"

using namespace confint;
using oracle::brute_count;

namespace {

std::map<int, std::size_t> by_codim(const std::vector<NestedFamily>& fs) {
  std::map<int, std::size_t> m;
  for (const auto& f : fs) ++m[f.codim()];
  return m;
}

}  // namespace

TEST(Strata, SmallCases) {
  const auto two = enumerate_strata(2, 1, StrataMode::Abstract);
  ASSERT_EQ(two.size(), 1u);
  EXPECT_EQ(two[0].subsets, (std::vector<std::vector<int>>{{1, 2}}));
  const auto three = enumerate_strata(3, 1, StrataMode::Interval);
  ASSERT_EQ(three.size(), 3u);
  std::set<std::vector<int>> got;
  for (const auto& f : three) got.insert(f.subsets.at(0));
  EXPECT_EQ(got, (std::set<std::vector<int>>{{1, 2}, {2, 3}, {1, 2, 3}}));
}

TEST(Strata, CountsMatchBruteForce) {
  for (int k = 2; k <= 6; ++k) {
    const auto ab = by_codim(enumerate_strata(k, 2, StrataMode::Abstract));
    EXPECT_EQ(ab.at(1), (1u << k) - k - 1u);
    EXPECT_EQ(ab.at(1), brute_count(k, 1, false));
    EXPECT_EQ(ab.count(2) ? ab.at(2) : 0u, brute_count(k, 2, false));
    const auto in = by_codim(enumerate_strata(k, 2, StrataMode::Interval));
    EXPECT_EQ(in.at(1), static_cast<std::size_t>(k * (k - 1) / 2));
    EXPECT_EQ(in.at(1), brute_count(k, 1, true));
    EXPECT_EQ(in.count(2) ? in.at(2) : 0u, brute_count(k, 2, true));
  }
}

TEST(Strata, IntervalTopDimensionIsAssociahedronVertices) {
  // Maximal families of consecutive runs on k points: Catalan(k-1).
  const std::vector<std::size_t> catalan = {1, 1, 2, 5, 14, 42};
  for (int k = 2; k <= 6; ++k) {
    const auto m = by_codim(enumerate_strata(k, k - 1, StrataMode::Interval));
    EXPECT_EQ(m.rbegin()->first, k - 1);
    EXPECT_EQ(m.rbegin()->second, catalan[k - 1]);
  }
}

TEST(Strata, FamiliesAreValid) {
  for (const auto& f : enumerate_strata(5, 4, StrataMode::Abstract)) {
    EXPECT_NO_THROW(f.validate());
    EXPECT_EQ(f.codim(), static_cast<int>(f.subsets.size()));
  }
}

TEST(Strata, Guards) {
  EXPECT_THROW(enumerate_strata(9, 1, StrataMode::Abstract), GuardExceeded);
  EXPECT_THROW(enumerate_strata(0, 1, StrataMode::Abstract), PreconditionError);
  EXPECT_THROW(parse_strata_mode("cyclic"), PreconditionError);
}

TEST(Strata, FaceContainment) {
  const NestedFamily a{3, {{1, 2}}}, b{3, {{1, 2}, {1, 2, 3}}}, c{3, {{2, 3}}};
  EXPECT_TRUE(face_contains(a, b));
  EXPECT_FALSE(face_contains(b, a));
  EXPECT_TRUE(face_contains(a, a));
  EXPECT_FALSE(face_contains(a, c));
  EXPECT_FALSE(face_contains(c, a));
  EXPECT_THROW(face_contains(a, NestedFamily{4, {{1, 2}}}), PreconditionError);
}

TEST(Strata, FaceOrderIsPartialOrder) {
  const auto fs = enumerate_strata(4, 3, StrataMode::Interval);
  for (const auto& x : fs) {
    EXPECT_TRUE(face_contains(x, x));
    for (const auto& y : fs) {
      if (face_contains(x, y) && face_contains(y, x)) EXPECT_EQ(x, y);
      if (!face_contains(x, y)) continue;
      for (const auto& z : fs)
        if (face_contains(y, z)) EXPECT_TRUE(face_contains(x, z));
    }
  }
}

TEST(Strata, Exports) {
  const auto fs = enumerate_strata(3, 2, StrataMode::Interval);
  const auto j = to_json(fs);
  ASSERT_EQ(j.size(), fs.size());
  EXPECT_EQ(j[0]["codim"], 1);
  EXPECT_TRUE(j[0]["subsets"].is_array());
  const std::string dot = to_dot(fs);
  EXPECT_NE(dot.find("digraph"), std::string::npos);
  EXPECT_NE(dot.find("->"), std::string::npos);
}

TEST(Faces, Classification) {
  const Diagram y = tripod();  // interval 1,2,3; free 4
  EXPECT_EQ(classify_face(y, {1, 2}, {}).kind, FaceKind::Principal);
  EXPECT_EQ(classify_face(y, {1, 2}, {}).dimension, 5);
  EXPECT_EQ(classify_face(y, {1}, {4}).kind, FaceKind::Principal);
  EXPECT_EQ(classify_face(y, {1, 2}, {4}).kind, FaceKind::Hidden);
  EXPECT_EQ(classify_face(y, {1, 2, 3}, {}).kind, FaceKind::Hidden);
  EXPECT_EQ(classify_face(y, {1, 2, 3}, {4}).kind, FaceKind::Anomalous);
  EXPECT_EQ(classify_face(y, {}, {4}, true).kind, FaceKind::Infinity);
  // 3 and 1 are neighbours on the closed knot
  EXPECT_EQ(classify_face(y, {1, 3}, {}).kind, FaceKind::Principal);
  const Diagram x = crossed_chords();
  EXPECT_THROW(classify_face(x, {1, 3}, {}), PreconditionError);  // 2 or 4 lies between on both sides
  EXPECT_THROW(classify_face(y, {1}, {}), PreconditionError);
  EXPECT_THROW(classify_face(y, {4}, {}), PreconditionError);
  EXPECT_THROW(classify_face(y, {1}, {4}, true), PreconditionError);
}

TEST(Faces, KindsPartitionAllFaces) {
  for (int n = 1; n <= 3; ++n)
    for (const auto& c : enumerate_trivalent_diagrams(n)) {
      const Diagram& d = c.diagram;
      const int k = d.interval_count(), s = d.free_count();
      // cyclic runs of interval points times free subsets
      std::size_t expected = 0;
      for (int b = 0; b <= s; ++b) {
        std::size_t choose = 1;
        for (int i = 0; i < b; ++i) choose = choose * (s - i) / (i + 1);
        // runs of length a: k choices for 1 <= a < k, one full run, plus the empty run
        for (int a = 0; a <= k; ++a) {
          const std::size_t ways = a == 0 ? 1 : (a == k ? 1 : static_cast<std::size_t>(k));
          if (a + b >= 2) expected += ways * choose;
        }
      }
      expected += (1u << s) - 1;  // infinity faces
      const auto faces = enumerate_faces(d);
      EXPECT_EQ(faces.size(), expected) << to_text(d);
      std::map<FaceKind, std::size_t> m;
      for (const auto& f : faces) ++m[f.kind];
      std::size_t total = 0;
      for (const auto& [kind, count] : m) total += count;
      EXPECT_EQ(total, faces.size());
      const std::size_t interval_pairs = k >= 3 ? k : (k == 2 ? 1 : 0);
      const std::size_t principal =
          interval_pairs + static_cast<std::size_t>(k) * s + static_cast<std::size_t>(s) * (s - 1) / 2;
      EXPECT_EQ(m[FaceKind::Principal], principal) << to_text(d);
      EXPECT_EQ(m[FaceKind::Anomalous], k + s > 2 ? 1u : 0u) << to_text(d);
    }
}

TEST(Faces, AnomalyCorrection) {
  for (int n = 1; n <= 3; ++n)
    for (const auto& c : enumerate_trivalent_diagrams(n))
      EXPECT_EQ(needs_anomaly_correction(c.diagram), !c.diagram.has_chord()) << to_text(c.diagram);
  for (int n = 1; n <= 3; ++n)
    for (const auto& d : enumerate_chord_diagrams(n)) EXPECT_FALSE(needs_anomaly_correction(d));
  EXPECT_TRUE(needs_anomaly_correction(tripod()));
  EXPECT_FALSE(needs_anomaly_correction(single_chord()));
}

TEST(Faces, DisconnectedVertexSets) {
  const Diagram x = crossed_chords();  // chords 1-3, 2-4
  EXPECT_FALSE(is_disconnected_vertex_set(x, {1, 3}).disconnected);
  const auto r = is_disconnected_vertex_set(x, {1, 2});
  EXPECT_TRUE(r.disconnected);
  EXPECT_TRUE(r.exception);
  const auto full = is_disconnected_vertex_set(x, {1, 2, 3, 4});
  EXPECT_TRUE(full.disconnected);
  EXPECT_FALSE(full.exception);
  EXPECT_FALSE(is_disconnected_vertex_set(tripod(), {1, 2, 3, 4}).disconnected);
  const auto yr = is_disconnected_vertex_set(tripod(), {1, 2});
  EXPECT_TRUE(yr.disconnected);
  EXPECT_TRUE(yr.exception);
  EXPECT_FALSE(is_disconnected_vertex_set(tripod(), {1, 2, 4}).disconnected);
  // every diagram with a chord and more than two vertices
  for (int n = 2; n <= 3; ++n)
    for (const auto& c : enumerate_trivalent_diagrams(n)) {
      if (!c.diagram.has_chord()) continue;
      std::vector<int> all(c.diagram.vertex_count());
      std::iota(all.begin(), all.end(), 1);
      EXPECT_TRUE(is_disconnected_vertex_set(c.diagram, all).disconnected) << to_text(c.diagram);
    }
  EXPECT_THROW(is_disconnected_vertex_set(x, {9}), PreconditionError);
}
