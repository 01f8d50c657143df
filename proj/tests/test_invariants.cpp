#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "confint/invariants.hpp"

using namespace confint;

namespace {

// Chordless caterpillar: a path of s free vertices, one leg to the interval
// from each inner vertex and two from each end. Degree s + 1.
Diagram caterpillar(int s) {
  const int k = s + 2;
  Diagram d;
  for (int i = 1; i <= k; ++i) d.interval.push_back(i);
  for (int j = 0; j < s; ++j) d.free.push_back(k + 1 + j);
  for (int j = 0; j + 1 < s; ++j) d.edges.push_back({k + 1 + j, k + 2 + j});
  d.edges.push_back({1, k + 1});
  for (int j = 0; j < s; ++j) d.edges.push_back({j + 2, k + 1 + j});
  d.edges.push_back({k, k + s});
  std::sort(d.edges.begin(), d.edges.end());
  return d;
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << content;
  return p.string();
}

}  // namespace

TEST(V2, UnknotIsZeroByConstruction) {
  IntegratorOptions o;
  o.budget = 50'000;
  const InvariantResult r = v2(round_unknot(), o);
  EXPECT_EQ(r.value, 0);
  EXPECT_EQ(r.terms.size(), 2u);
}

TEST(V2, TrefoilAndFigureEightAtSmallBudget) {
  IntegratorOptions o;
  o.budget = 400'000;
  o.seed = 7;
  const InvariantResult t = v2(trefoil(), o);
  EXPECT_LE(std::abs(t.value - pv_v2(trefoil())), std::max(0.1, 3 * t.standard_error));
  const InvariantResult f = v2(figure_eight(), o);
  EXPECT_LE(std::abs(f.value - pv_v2(figure_eight())), std::max(0.1, 3 * f.standard_error));
}

TEST(V2, BreakdownRecomputesExactly) {
  IntegratorOptions o;
  o.budget = 30'000;
  const InvariantResult r = v2(figure_eight(), o);
  EXPECT_EQ(recompute_value(r), r.value);
  EXPECT_EQ(recompute_standard_error(r), r.standard_error);
  // the crossed chords carry -1 in the vertex-order orientation, the tripod +1
  EXPECT_EQ(r.terms[0].diagram, crossed_chords());
  EXPECT_EQ(r.terms[0].weight, -1);
  EXPECT_EQ(r.terms[1].diagram, tripod());
  EXPECT_EQ(r.terms[1].weight, 1);
  const auto j = to_json(r);
  EXPECT_EQ(j["terms"].size(), 2u);
  EXPECT_EQ(j["seed"], o.seed);
}

TEST(V2, Deterministic) {
  IntegratorOptions o;
  o.budget = 30'000;
  o.seed = 5;
  const auto a = to_json(v2(trefoil(), o)).dump();
  o.workers = 3;
  EXPECT_EQ(to_json(v2(trefoil(), o)).dump(), a);
}

TEST(TW, AgreesWithV2) {
  IntegratorOptions o;
  o.budget = 100'000;
  o.seed = 9;
  const InvariantResult a = v2(trefoil(), o);
  const InvariantResult b = t_of_w(primitive_degree_two(), trefoil(), o);
  EXPECT_LE(std::abs(a.value - b.value), 3 * std::hypot(a.standard_error, b.standard_error));
  EXPECT_EQ(recompute_value(b), b.value);
  for (const auto& t : b.terms) {
    EXPECT_EQ(t.anomaly, 0);
    EXPECT_FALSE(t.anomaly_assumed);
  }
  EXPECT_TRUE(b.warnings.empty());
  EXPECT_EQ(b.anomaly_policy, "cited-zero");
}

TEST(TW, Preconditions) {
  IntegratorOptions o;
  o.budget = 1000;
  const WeightSystem w1 = from_chord_values(1, {{single_chord(), 1}});
  EXPECT_THROW(t_of_w(product(w1, w1), trefoil(), o), PreconditionError);
  WeightSystem big;
  big.degree = 5;
  EXPECT_THROW(t_of_w(big, trefoil(), o), GuardExceeded);
}

TEST(TW, DegreeOneIsZeroOnKnots) {
  // single-chord density vanishes identically on a planar curve
  IntegratorOptions o;
  o.budget = 20'000;
  const InvariantResult r = t_of_w(from_chord_values(1, {{single_chord(), 1}}), round_unknot(), o);
  EXPECT_EQ(r.value, 0);
}

TEST(Anomaly, Policies) {
  bool warned = true;
  EXPECT_EQ(anomaly_coefficient(tripod(), AnomalyPolicy{}, warned), 0);
  EXPECT_FALSE(warned);
  const Diagram c7 = canonicalize(caterpillar(6)).diagram;
  ASSERT_EQ(c7.degree(), 7);
  ASSERT_FALSE(c7.has_chord());
  EXPECT_EQ(anomaly_coefficient(c7, AnomalyPolicy{}, warned), 0);
  EXPECT_TRUE(warned);
  EXPECT_EQ(anomaly_coefficient(c7, AnomalyPolicy::parse("all-zero"), warned), 0);
  EXPECT_FALSE(warned);
  const std::string path = temp_file("confint_anomaly.json", "{\"" + to_text(caterpillar(6)) + "\": 0.25}");
  const AnomalyPolicy file = AnomalyPolicy::parse("file:" + path);
  EXPECT_EQ(file.name(), "file:" + path);
  EXPECT_EQ(anomaly_coefficient(c7, file, warned), 0.25);
  EXPECT_FALSE(warned);
  // cited degrees and chord diagrams ignore the file
  EXPECT_EQ(anomaly_coefficient(canonicalize(caterpillar(2)).diagram, file, warned), 0);
  EXPECT_FALSE(warned);
  EXPECT_EQ(anomaly_coefficient(crossed_chords(), file, warned), 0);
  for (int n : {2, 3, 4, 5, 6}) EXPECT_TRUE(anomaly_cited_zero(n));
  for (int n : {1, 7, 9}) EXPECT_FALSE(anomaly_cited_zero(n));
  EXPECT_THROW(AnomalyPolicy::parse("bogus"), PreconditionError);
  EXPECT_THROW(AnomalyPolicy::parse("file:/nonexistent/confint.json"), PreconditionError);
  EXPECT_THROW(AnomalyPolicy::parse("file:" + temp_file("confint_bad.json", "[1,2")), ParseError);
}

TEST(Universality, ReportShape) {
  IntegratorOptions o;
  const auto rep = universality_check(crossed_chords(), primitive_degree_two(), o);
  EXPECT_EQ(rep.expected, 1);
  EXPECT_EQ(rep.combinatorial, 1);
  EXPECT_TRUE(rep.combinatorial_ok);
  EXPECT_FALSE(rep.integral_value.has_value());
  const auto j = to_json(rep);
  EXPECT_EQ(j["resolutions"].size(), 4u);
  EXPECT_THROW(universality_check(tripod(), primitive_degree_two(), o), PreconditionError);
}

TEST(Universality, IntegralPathSmallBudget) {
  IntegratorOptions o;
  o.budget = 100'000;
  o.seed = 7;
  const auto rep = universality_check(crossed_chords(), primitive_degree_two(), o, true);
  ASSERT_TRUE(rep.integral_value.has_value());
  EXPECT_LE(std::abs(*rep.integral_value - 1), std::max(0.3, 3 * *rep.integral_stderr));
}
