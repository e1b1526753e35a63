#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "gmatch/error.hpp"
#include "gmatch/geometric.hpp"
#include "oracles.hpp"

using namespace gmatch;

namespace {

constexpr double kPi = std::numbers::pi;

GeometricGraph make(std::vector<Point> pts, std::vector<std::pair<VertexId, VertexId>> es) {
  Graph g(pts.size());
  for (auto [u, v] : es) g.add_edge(u, v);
  return {std::move(g), std::move(pts)};
}

GeometricGraph random_geometric(std::mt19937_64 &rng, std::size_t n, double p,
                                double span = 10.0) {
  std::uniform_real_distribution<double> c(0.0, span);
  Graph g = random_graph(n, p, rng());
  std::vector<Point> pts;
  for (std::size_t i = 0; i < n; ++i) pts.push_back({c(rng), c(rng)});
  return {std::move(g), std::move(pts)};
}

// Random graph with exactly m edges and no isolated vertex when possible.
GeometricGraph random_with_edges(std::mt19937_64 &rng, std::size_t n, std::size_t m) {
  std::uniform_real_distribution<double> c(0.0, 10.0);
  std::vector<Point> pts;
  for (std::size_t i = 0; i < n; ++i) pts.push_back({c(rng), c(rng)});
  std::vector<std::pair<VertexId, VertexId>> all;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v) all.emplace_back(u, v);
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(std::min(m, all.size()));
  return make(std::move(pts), all);
}

GeometricGraph moved(const GeometricGraph &g, double angle, double scale, Point shift) {
  Similarity s;
  s.scale = std::polar(scale, angle);
  s.shift = {shift.x, shift.y};
  return transform(g, s);
}

// Same geometric graph with vertex and edge ids shuffled.
GeometricGraph relabelled(const GeometricGraph &g, std::mt19937_64 &rng) {
  std::vector<VertexId> perm(g.order());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Point> pts(g.order());
  for (VertexId v = 0; v < g.order(); ++v) pts[perm[v]] = g.coord(v);
  std::vector<std::pair<VertexId, VertexId>> es;
  for (const auto &e : g.graph().edges()) es.emplace_back(perm[e.v], perm[e.u]);
  std::shuffle(es.begin(), es.end(), rng);
  return make(std::move(pts), es);
}

}  // namespace

TEST(EdgeFeature, CanonicalOrientation) {
  auto f = edge_feature({2, 0}, {0, 0});
  EXPECT_EQ(f.left, (Point{0, 0}));
  EXPECT_DOUBLE_EQ(f.theta, 0.0);
  EXPECT_DOUBLE_EQ(f.length, 2.0);
  EXPECT_DOUBLE_EQ(edge_feature({0, 3}, {0, 1}).theta, 90.0);
  auto g = edge_feature({0, 0}, {-1, 1});
  EXPECT_EQ(g.left, (Point{-1, 1}));
  EXPECT_DOUBLE_EQ(g.theta, 135.0);
  EXPECT_DOUBLE_EQ(edge_feature({0, 0}, {1, 1}).theta, 45.0);
}

TEST(EdgeFeature, ThetaStaysInHalfOpenRange) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> c(-5, 5);
  for (int i = 0; i < 10000; ++i) {
    auto f = edge_feature({c(rng), c(rng)}, {c(rng), c(rng)});
    ASSERT_GE(f.theta, 0.0);
    ASSERT_LT(f.theta, 180.0);
  }
}

TEST(VertexDistance, SingleVertices) {
  EXPECT_DOUBLE_EQ(vertex_distance(make({{0, 0}}, {}), make({{3, 4}}, {})), 5.0);
}

TEST(VertexDistance, UnequalSizesThrow) {
  EXPECT_THROW(vertex_distance(make({{0, 0}}, {}), make({{0, 0}, {1, 1}}, {})), InvalidArgument);
}

TEST(VertexDistance, MatchesPermutationOracle) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 200; ++t) {
    auto a = random_geometric(rng, 6, 0.3), b = random_geometric(rng, 6, 0.3);
    ASSERT_NEAR(vertex_distance(a, b), oracle::vertex_distance(a, b), 1e-9);
  }
}

TEST(VertexDistance, MetricOnEdgelessTriples) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 500; ++t) {
    auto a = random_geometric(rng, 5, 0), b = random_geometric(rng, 5, 0),
         c = random_geometric(rng, 5, 0);
    double ab = vertex_distance(a, b);
    ASSERT_GE(ab, 0);
    ASSERT_EQ(vertex_distance(a, a), 0.0);
    ASSERT_NEAR(ab, vertex_distance(b, a), 1e-12);
    ASSERT_LE(ab, vertex_distance(a, c) + vertex_distance(c, b) + 1e-9);
  }
}

TEST(EdgeDistance, HorizontalVersusVertical) {
  auto h = make({{0, 0}, {1, 0}}, {{0, 1}});
  auto v = make({{0, 0}, {0, 1}}, {{0, 1}});
  EXPECT_DOUBLE_EQ(edge_distance(h, v), kPi / 2);
}

TEST(EdgeDistance, UnequalEdgeCountsThrow) {
  auto a = make({{0, 0}, {1, 0}, {2, 0}}, {{0, 1}});
  auto b = make({{0, 0}, {1, 0}, {2, 0}}, {{0, 1}, {1, 2}});
  EXPECT_THROW(edge_distance(a, b), InvalidArgument);
  EXPECT_THROW(edge_distance_metric(a, b), InvalidArgument);
}

TEST(EdgeDistance, TranslateIsZero) {
  // A small house shape and a copy shifted by (4, -3).
  std::vector<Point> pts{{0, 0}, {2, 0}, {2, 2}, {0, 2}, {1, 3}};
  std::vector<std::pair<VertexId, VertexId>> es{{0, 1}, {1, 2}, {2, 3}, {3, 0}, {2, 4}, {3, 4}};
  auto g = make(pts, es);
  for (auto &p : pts) p = {p.x + 4, p.y - 3};
  auto h = make(pts, es);
  EXPECT_EQ(edge_distance(g, h), 0.0);
  EXPECT_GT(vertex_distance(g, h), 0.0);
}

TEST(EdgeDistance, TranslationInvarianceOnGrid) {
  // Coordinates on a dyadic grid so the shift is exact in floating point.
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> c(0, 80), d(-80, 80);
  for (int t = 0; t < 200; ++t) {
    std::vector<Point> pts;
    for (int i = 0; i < 6; ++i) pts.push_back({c(rng) / 8.0, c(rng) / 8.0});
    Graph g = random_graph(6, 0.5, rng());
    std::vector<std::pair<VertexId, VertexId>> es;
    for (const auto &e : g.edges()) es.emplace_back(e.u, e.v);
    auto a = make(pts, es);
    double dx = d(rng) / 8.0, dy = d(rng) / 8.0;
    for (auto &p : pts) p = {p.x + dx, p.y + dy};
    ASSERT_EQ(edge_distance(a, make(pts, es)), 0.0);
  }
}

TEST(EdgeDistance, LengthTermVanishesUnderRigidMotion) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ang(0, 2 * kPi), sh(-20, 20);
  for (int t = 0; t < 100; ++t) {
    auto g = random_geometric(rng, 7, 0.4);
    auto h = moved(g, ang(rng), 1.0, {sh(rng), sh(rng)});
    auto fa = edge_features(g), fb = edge_features(h);
    for (std::size_t i = 0; i < fa.size(); ++i) ASSERT_NEAR(length_term(fa[i], fb[i]), 0, 1e-9);
  }
}

TEST(EdgeDistance, MatchesPermutationOracle) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 200; ++t) {
    auto [a, b] = pad_to_equal(random_with_edges(rng, 5, 2 + t % 5),
                               random_with_edges(rng, 5, 2 + (t / 5) % 5));
    ASSERT_NEAR(edge_distance(a, b), oracle::edge_distance(a, b, false), 1e-9);
    ASSERT_NEAR(edge_distance_metric(a, b), oracle::edge_distance(a, b, true), 1e-9);
    ASSERT_NEAR(graph_distance(a, b),
                oracle::vertex_distance(a, b) + oracle::edge_distance(a, b, false), 1e-9);
  }
}

TEST(EdgeDistance, PropertiesOnRandomTriples) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 500; ++t) {
    auto a = random_with_edges(rng, 6, 5), b = random_with_edges(rng, 6, 5),
         c = random_with_edges(rng, 6, 5);
    for (auto f : {edge_distance, edge_distance_metric}) {
      double ab = f(a, b);
      ASSERT_GE(ab, 0);
      ASSERT_NEAR(ab, f(b, a), 1e-9);
      ASSERT_LE(ab, f(a, c) + f(c, b) + 1e-9);
      ASSERT_EQ(f(a, a), 0.0);
    }
  }
}

TEST(EdgeDistanceMetric, TranslatedSingleEdge) {
  auto a = make({{0, 0}, {1, 2}}, {{0, 1}});
  auto b = make({{3, 4}, {4, 6}}, {{0, 1}});
  auto fa = edge_features(a)[0], fb = edge_features(b)[0];
  EXPECT_DOUBLE_EQ(angle_term(fa, fb), 0.0);
  EXPECT_DOUBLE_EQ(length_term(fa, fb), 0.0);
  EXPECT_DOUBLE_EQ(position_term(fa, fb), 5.0);
  EXPECT_DOUBLE_EQ(edge_distance_metric(a, b), 5.0);
}

TEST(EdgeDistanceMetric, SeparatesPairWithZeroVertexAndEdgeDistance) {
  // Same six points; two horizontal and two vertical unit edges in each,
  // placed differently.
  std::vector<Point> pts{{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 1}, {2, 1}};
  auto a = make(pts, {{0, 1}, {4, 5}, {0, 3}, {2, 5}});
  auto b = make(pts, {{1, 2}, {3, 4}, {0, 3}, {1, 4}});
  EXPECT_EQ(vertex_distance(a, b), 0.0);
  EXPECT_EQ(edge_distance(a, b), 0.0);
  EXPECT_GT(edge_distance_metric(a, b), 0.0);
  EXPECT_GT(graph_distance_metric(a, b), 0.0);
  EXPECT_EQ(graph_distance(a, b), 0.0);
}

TEST(GraphDistanceMetric, ZeroExactlyForEqualGraphs) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 100; ++t) {
    auto g = random_with_edges(rng, 6, 6);
    EXPECT_EQ(graph_distance_metric(g, g), 0.0);
    EXPECT_EQ(graph_distance_metric(g, relabelled(g, rng)), 0.0);
    // Move one edge to a different vertex pair.
    auto es = g.graph().edges();
    std::vector<std::pair<VertexId, VertexId>> changed;
    for (const auto &e : es) changed.emplace_back(e.u, e.v);
    for (VertexId u = 0; u < 6; ++u) {
      for (VertexId v = u + 1; v < 6; ++v) {
        if (!g.graph().has_edge(u, v)) {
          changed[0] = {u, v};
          u = v = 6;
        }
      }
    }
    EXPECT_GT(graph_distance_metric(g, make(g.coords(), changed)), 0.0);
  }
}

TEST(Padding, EqualSizesUnchanged) {
  auto a = make({{0, 0}, {1, 0}}, {{0, 1}});
  auto [x, y] = pad_to_equal(a, a);
  EXPECT_EQ(x, a);
  EXPECT_EQ(y, a);
}

TEST(Padding, NewVertexAtMean) {
  auto a = make({{5, 5}, {6, 6}, {7, 7}}, {});
  auto b = make({{0, 0}, {2, 0}}, {});
  auto [x, y] = pad_to_equal(a, b);
  EXPECT_EQ(x, a);
  ASSERT_EQ(y.order(), 3u);
  EXPECT_EQ(y.coord(2), (Point{1, 0}));
}

TEST(Padding, EmptyGraphUsesOrigin) {
  auto [x, y] = pad_to_equal(make({{3, 3}, {5, 5}}, {{0, 1}}), GeometricGraph{});
  ASSERT_EQ(y.order(), 2u);
  EXPECT_EQ(y.coord(0), (Point{0, 0}));
  EXPECT_EQ(y.coord(1), (Point{0, 0}));
  EXPECT_EQ(y.edge_slots(), 1u);
  auto f = edge_features(y)[0];
  EXPECT_EQ(f.length, 0.0);
  EXPECT_EQ(f.theta, 0.0);
  EXPECT_EQ(f.left, (Point{0, 0}));
}

TEST(Padding, MoleculeSizedPair) {
  std::mt19937_64 rng(9);
  auto a = random_with_edges(rng, 12, 13), b = random_with_edges(rng, 9, 9);
  auto [x, y] = pad_to_equal(a, b);
  ASSERT_EQ(x.order(), 12u);
  ASSERT_EQ(y.order(), 12u);
  EXPECT_EQ(x.edge_slots(), y.edge_slots());
  EXPECT_EQ(y.padding_edges(), 4u);
  Point m = b.mean_coord();
  for (VertexId v = 9; v < 12; ++v) EXPECT_EQ(y.coord(v), m);
  auto fy = edge_features(y);
  for (std::size_t i = 9; i < fy.size(); ++i) {
    EXPECT_NEAR(distance(fy[i].left, m), 0.0, 1e-12);
    EXPECT_NEAR(distance(fy[i].right, m), 0.0, 1e-12);
  }
  EXPECT_NO_THROW(vertex_distance(x, y));
  EXPECT_NO_THROW(edge_distance_metric(x, y));
}

TEST(Transform, SquareMovedBackOntoReference) {
  auto square = make({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  auto shifted = moved(square, 0, 1, {5, 5});
  auto ref = edge_feature(square.coord(0), square.coord(1));
  auto back = geometric_transform(shifted, 0, ref);
  for (VertexId v = 0; v < 4; ++v) {
    EXPECT_NEAR(back.coord(v).x, square.coord(v).x, 1e-9);
    EXPECT_NEAR(back.coord(v).y, square.coord(v).y, 1e-9);
  }
}

TEST(Transform, CoincidentEdgeGivesIdentity) {
  auto g = make({{1, 2}, {4, 6}, {0, 5}}, {{0, 1}, {1, 2}});
  auto out = geometric_transform(g, 0, edge_feature(g.coord(0), g.coord(1)));
  for (VertexId v = 0; v < 3; ++v) {
    EXPECT_NEAR(out.coord(v).x, g.coord(v).x, 1e-12);
    EXPECT_NEAR(out.coord(v).y, g.coord(v).y, 1e-12);
  }
}

TEST(Transform, UnitReferenceGivesUnitEdgeAndKeepsRatios) {
  std::mt19937_64 rng(10);
  EdgeFeature unit{0, 1, {0, 0}, {1, 0}};
  for (int t = 0; t < 100; ++t) {
    auto g = random_with_edges(rng, 6, 5);
    auto h = geometric_transform(g, 0, unit, t % 2 == 1);
    const Edge &e = h.graph().edge(0);
    ASSERT_NEAR(distance(h.coord(e.u), h.coord(e.v)), 1.0, 1e-9);
    double r0 = distance(g.coord(0), g.coord(1)) / distance(g.coord(2), g.coord(3));
    double r1 = distance(h.coord(0), h.coord(1)) / distance(h.coord(2), h.coord(3));
    ASSERT_NEAR(r0, r1, 1e-9 * std::max(1.0, r0));
  }
}

TEST(Transform, ZeroLengthEdgeThrows) {
  auto g = make({{1, 1}, {1, 1}}, {{0, 1}});
  EXPECT_THROW(geometric_transform(g, 0, EdgeFeature{0, 1, {0, 0}, {1, 0}}), InvalidArgument);
}

TEST(Alignment, RecoversSimilarityTransform) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ang(0, 2 * kPi), sc(0.5, 3), sh(-20, 20);
  for (int t = 0; t < 100; ++t) {
    auto g = random_with_edges(rng, 7, 8);
    auto h = moved(g, ang(rng), sc(rng), {sh(rng), sh(rng)});
    for (auto crit : {AlignmentCriterion::kEdgeDistance, AlignmentCriterion::kEdgeDistanceMetric}) {
      auto a = graph_alignment(g, h, crit);
      ASSERT_NEAR(edge_distance(g, a), 0.0, 1e-9);
      ASSERT_NEAR(vertex_distance(g, a), 0.0, 1e-9);
    }
  }
}

TEST(Alignment, IdenticalGraphUnchanged) {
  std::mt19937_64 rng(12);
  auto g = random_with_edges(rng, 6, 7);
  auto a = graph_alignment(g, g);
  for (VertexId v = 0; v < g.order(); ++v) {
    EXPECT_NEAR(a.coord(v).x, g.coord(v).x, 1e-9);
    EXPECT_NEAR(a.coord(v).y, g.coord(v).y, 1e-9);
  }
}

TEST(Alignment, NeverWorseThanIdentity) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> j(-0.5, 0.5);
  for (int t = 0; t < 100; ++t) {
    auto g = random_with_edges(rng, 6, 7);
    std::vector<Point> pts = g.coords();
    for (auto &p : pts) p = {p.x + j(rng), p.y + j(rng)};
    GeometricGraph h(g.graph(), pts);
    auto al = align(g, h, AlignmentCriterion::kEdgeDistance);
    // Identity scored in the same normalized frame.
    double longest = 0;
    for (const auto &e : g.graph().edges()) longest = std::max(longest, distance(g.coord(e.u), g.coord(e.v)));
    Similarity unit;
    unit.scale = 1.0 / longest;
    ASSERT_LE(al.score, edge_distance(transform(g, unit), transform(h, unit)) + 1e-9);
  }
}

TEST(Alignment, EdgelessThrows) {
  auto a = make({{0, 0}, {1, 0}}, {{0, 1}});
  auto b = make({{0, 0}, {1, 0}}, {});
  EXPECT_THROW(graph_alignment(a, b), InvalidArgument);
  EXPECT_THROW(graph_alignment(b, a), InvalidArgument);
}

TEST(Isomorphism, SimilarityCopiesAreIsomorphic) {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> ang(0, 2 * kPi), sc(0.5, 3), sh(-20, 20);
  for (int t = 0; t < 100; ++t) {
    auto g = random_with_edges(rng, 3 + t % 6, 2 + t % 6);
    auto h = relabelled(moved(g, ang(rng), sc(rng), {sh(rng), sh(rng)}), rng);
    auto r = geometric_graph_isomorphism(g, h, 0);
    ASSERT_EQ(r.verdict, IsoVerdict::kIsomorphic) << t << " gd=" << r.gd;
    ASSERT_TRUE(r.edges_consistent);
  }
}

TEST(Isomorphism, JitterDetectedAtTwiceTolerance) {
  std::mt19937_64 rng(15);
  const double t = 0.01;
  std::uniform_real_distribution<double> j(0, t);
  for (int k = 0; k < 100; ++k) {
    auto g = random_with_edges(rng, 6, 6);
    std::vector<Point> pts = g.coords();
    for (auto &p : pts) p = {p.x + j(rng), p.y + j(rng)};
    auto r = geometric_graph_isomorphism(g, GeometricGraph(g.graph(), pts), 2 * t);
    ASSERT_EQ(r.verdict, IsoVerdict::kTolerant) << k << " gd=" << r.gd;
  }
}

TEST(Isomorphism, DifferentStructureGivesDistance) {
  auto a = make({{0, 0}, {1, 0}, {1, 1}}, {{0, 1}, {1, 2}});
  auto b = make({{0, 0}, {1, 0}, {1, 1}}, {{0, 1}, {0, 2}});
  auto r = geometric_graph_isomorphism(a, b, 0.1);
  EXPECT_EQ(r.verdict, IsoVerdict::kDistance);
  EXPECT_GT(r.gd, 0.0);
}

TEST(Isomorphism, DifferentSizesGiveDistance) {
  auto a = make({{0, 0}, {1, 0}, {1, 1}}, {{0, 1}, {1, 2}});
  auto b = make({{0, 0}, {1, 0}}, {{0, 1}});
  EXPECT_EQ(geometric_graph_isomorphism(a, b, 100).verdict, IsoVerdict::kDistance);
}

TEST(Isomorphism, EdgelessThrows) {
  auto a = make({{0, 0}, {1, 0}}, {});
  EXPECT_THROW(geometric_graph_isomorphism(a, a, 0), InvalidArgument);
}

TEST(WeightedDistance, UnitWeightsEqualGraphDistanceMetric) {
  std::mt19937_64 rng(16);
  for (int t = 0; t < 100; ++t) {
    auto a = random_with_edges(rng, 4 + t % 4, 3 + t % 5);
    auto b = random_with_edges(rng, 5, 4);
    auto [x, y] = pad_to_equal(a, b);
    ASSERT_NEAR(geometric_graph_distance(a, b), graph_distance_metric(x, y), 1e-9);
  }
}

TEST(WeightedDistance, IdenticalGraphsAreZero) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> w(0, 1);
  for (int t = 0; t < 50; ++t) {
    auto g = random_with_edges(rng, 6, 6);
    DistanceWeights ws{w(rng), w(rng), w(rng), w(rng)};
    EXPECT_EQ(geometric_graph_distance(g, g, ws), 0.0);
    EXPECT_NEAR(geometric_graph_distance(g, g, ws, true), 0.0, 1e-9);
  }
}

TEST(WeightedDistance, EdgelessPairUsesVertexTermOnly) {
  auto a = make({{0, 0}}, {}), b = make({{3, 4}}, {});
  EXPECT_DOUBLE_EQ(geometric_graph_distance(a, b, {2, 7, 7, 7}, true), 10.0);
}

TEST(WeightedDistance, WeightsAreChecked) {
  EXPECT_THROW((DistanceWeights{-1, 1, 1, 1}.validate()), InvalidArgument);
  EXPECT_THROW((DistanceWeights{0, 0, 0, 0}.normalized()), InvalidArgument);
  auto n = DistanceWeights{1, 1, 2, 4}.normalized();
  EXPECT_DOUBLE_EQ(n.w1 + n.w2 + n.w3 + n.w4, 1.0);
  EXPECT_DOUBLE_EQ(n.w4, 0.5);
}
