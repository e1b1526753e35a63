#include "gmatch/geometric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "gmatch/error.hpp"

namespace gmatch {

EdgeFeature edge_feature(Point a, Point b) {
  if (b.x < a.x || (b.x == a.x && b.y < a.y)) std::swap(a, b);
  EdgeFeature f;
  f.left = a;
  f.right = b;
  f.length = distance(a, b);
  if (f.length > 0) {
    double deg = std::atan2(b.y - a.y, b.x - a.x) * 180.0 / std::numbers::pi;
    if (deg < 0) deg += 180.0;
    if (deg >= 180.0) deg -= 180.0;
    f.theta = deg;
  }
  return f;
}

std::vector<EdgeFeature> edge_features(const GeometricGraph &g) {
  std::vector<EdgeFeature> out;
  out.reserve(g.edge_slots());
  for (const Edge &e : g.graph().edges()) out.push_back(edge_feature(g.coord(e.u), g.coord(e.v)));
  if (g.padding_edges() > 0) {
    Point m = g.mean_coord();
    out.insert(out.end(), g.padding_edges(), EdgeFeature{0.0, 0.0, m, m});
  }
  return out;
}

double angle_term(const EdgeFeature &a, const EdgeFeature &b) {
  return std::abs(a.theta - b.theta) * std::numbers::pi / 180.0;
}

double length_term(const EdgeFeature &a, const EdgeFeature &b) {
  return std::abs(a.length - b.length);
}

double position_term(const EdgeFeature &a, const EdgeFeature &b) {
  return 0.5 * (distance(a.left, b.left) + distance(a.right, b.right));
}

namespace {

void require_same_order(const GeometricGraph &g1, const GeometricGraph &g2) {
  if (g1.order() != g2.order()) {
    throw InvalidArgument("vertex counts differ (" + std::to_string(g1.order()) + " vs " +
                          std::to_string(g2.order()) + "); pad the graphs first");
  }
}

void require_same_slots(const GeometricGraph &g1, const GeometricGraph &g2) {
  if (g1.edge_slots() != g2.edge_slots()) {
    throw InvalidArgument("edge counts differ (" + std::to_string(g1.edge_slots()) + " vs " +
                          std::to_string(g2.edge_slots()) + "); pad the graphs first");
  }
}

template <typename Cost>
CostMatrix edge_matrix(const std::vector<EdgeFeature> &a, const std::vector<EdgeFeature> &b,
                       Cost cost) {
  CostMatrix m(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = cost(a[i], b[j]);
  return m;
}

double ed_cost(const EdgeFeature &a, const EdgeFeature &b) {
  return angle_term(a, b) + length_term(a, b);
}

double edm_cost(const EdgeFeature &a, const EdgeFeature &b) {
  return angle_term(a, b) + length_term(a, b) + position_term(a, b);
}

double edge_lsap(const GeometricGraph &g1, const GeometricGraph &g2,
                 double (*cost)(const EdgeFeature &, const EdgeFeature &)) {
  require_same_slots(g1, g2);
  return solve_lsap(edge_matrix(edge_features(g1), edge_features(g2), cost)).total_cost;
}

}  // namespace

Assignment vertex_assignment(const GeometricGraph &g1, const GeometricGraph &g2) {
  require_same_order(g1, g2);
  CostMatrix m(g1.order(), g2.order());
  for (VertexId i = 0; i < g1.order(); ++i)
    for (VertexId j = 0; j < g2.order(); ++j) m(i, j) = distance(g1.coord(i), g2.coord(j));
  return solve_lsap(m);
}

double vertex_distance(const GeometricGraph &g1, const GeometricGraph &g2) {
  return vertex_assignment(g1, g2).total_cost;
}

double edge_distance(const GeometricGraph &g1, const GeometricGraph &g2) {
  return edge_lsap(g1, g2, ed_cost);
}

double edge_distance_metric(const GeometricGraph &g1, const GeometricGraph &g2) {
  return edge_lsap(g1, g2, edm_cost);
}

double graph_distance(const GeometricGraph &g1, const GeometricGraph &g2) {
  return vertex_distance(g1, g2) + edge_distance(g1, g2);
}

double graph_distance_metric(const GeometricGraph &g1, const GeometricGraph &g2) {
  return vertex_distance(g1, g2) + edge_distance_metric(g1, g2);
}

namespace {

GeometricGraph padded(const GeometricGraph &g, std::size_t order, std::size_t slots) {
  Graph graph = g.graph();
  std::vector<Point> coords = g.coords();
  Point m = g.mean_coord();
  while (graph.order() < order) {
    graph.add_vertex();
    coords.push_back(m);
  }
  std::size_t pad = g.padding_edges() + (slots - g.edge_slots());
  return {std::move(graph), std::move(coords), pad};
}

}  // namespace

std::pair<GeometricGraph, GeometricGraph> pad_to_equal(const GeometricGraph &g1,
                                                       const GeometricGraph &g2) {
  std::size_t n = std::max(g1.order(), g2.order());
  std::size_t m = std::max(g1.edge_slots(), g2.edge_slots());
  return {padded(g1, n, m), padded(g2, n, m)};
}

Point Similarity::apply(Point p) const {
  std::complex<double> z = scale * std::complex<double>(p.x, p.y) + shift;
  return {z.real(), z.imag()};
}

Similarity Similarity::onto(Point p0, Point p1, Point q0, Point q1) {
  std::complex<double> a(p0.x, p0.y), b(p1.x, p1.y), c(q0.x, q0.y), d(q1.x, q1.y);
  if (a == b) throw InvalidArgument("cannot align a zero-length edge");
  Similarity s;
  s.scale = (d - c) / (b - a);
  s.shift = c - s.scale * a;
  return s;
}

GeometricGraph transform(const GeometricGraph &g, const Similarity &s) {
  std::vector<Point> coords;
  coords.reserve(g.order());
  for (Point p : g.coords()) coords.push_back(s.apply(p));
  return {g.graph(), std::move(coords), g.padding_edges()};
}

namespace {

Similarity edge_onto(const GeometricGraph &g, EdgeId f, const EdgeFeature &ref, bool reversed) {
  if (f >= g.size()) throw InvalidArgument("unknown edge " + std::to_string(f));
  EdgeFeature ff = edge_feature(g.coord(g.graph().edge(f).u), g.coord(g.graph().edge(f).v));
  if (ff.length == 0) throw InvalidArgument("cannot align a zero-length edge");
  if (ref.length == 0) throw InvalidArgument("reference edge has zero length");
  Point from = reversed ? ff.right : ff.left;
  Point to = reversed ? ff.left : ff.right;
  return Similarity::onto(from, to, ref.left, ref.right);
}

}  // namespace

GeometricGraph geometric_transform(const GeometricGraph &g, EdgeId f, const EdgeFeature &ref,
                                   bool reversed) {
  return transform(g, edge_onto(g, f, ref, reversed));
}

Alignment align(const GeometricGraph &g1, const GeometricGraph &g2, AlignmentCriterion criterion) {
  if (g1.size() == 0 || g2.size() == 0) {
    throw InvalidArgument("alignment needs at least one edge in each graph");
  }
  // Reference: the longest edge of g1, ties to the lexicographically first left endpoint.
  std::optional<EdgeFeature> ref;
  for (const Edge &e : g1.graph().edges()) {
    EdgeFeature f = edge_feature(g1.coord(e.u), g1.coord(e.v));
    if (!ref || f.length > ref->length ||
        (f.length == ref->length && std::pair(f.left.x, f.left.y) < std::pair(ref->left.x, ref->left.y))) {
      ref = f;
    }
  }
  if (ref->length == 0) throw InvalidArgument("reference edge has zero length");

  // Scoring frame: g1 scaled about the reference's left endpoint to a unit reference.
  Similarity unit;
  unit.scale = 1.0 / ref->length;
  unit.shift = -unit.scale * std::complex<double>(ref->left.x, ref->left.y);
  const GeometricGraph g1u = transform(g1, unit);

  auto score = [&](const GeometricGraph &cand) {
    auto [a, b] = pad_to_equal(g1u, transform(cand, unit));
    double d = criterion == AlignmentCriterion::kEdgeDistance ? edge_distance(a, b)
                                                              : edge_distance_metric(a, b);
    return std::pair(d, vertex_distance(a, b));
  };

  constexpr double kTie = 1e-9;
  Alignment best{g2, Similarity{}, std::nullopt, false, 0.0};
  auto [best_d, best_vd] = score(g2);
  best.score = best_d;
  for (EdgeId f = 0; f < g2.size(); ++f) {
    const Edge &e = g2.graph().edge(f);
    if (g2.coord(e.u) == g2.coord(e.v)) continue;
    for (bool reversed : {false, true}) {
      Similarity s = edge_onto(g2, f, *ref, reversed);
      GeometricGraph cand = transform(g2, s);
      auto [d, vd] = score(cand);
      bool better = d < best_d - kTie || (d <= best_d + kTie && vd < best_vd - kTie);
      if (better) {
        best = Alignment{std::move(cand), s, f, reversed, d};
        best_d = d;
        best_vd = vd;
      }
    }
  }
  return best;
}

GeometricGraph graph_alignment(const GeometricGraph &g1, const GeometricGraph &g2,
                               AlignmentCriterion criterion) {
  return align(g1, g2, criterion).graph;
}

const char *to_string(IsoVerdict v) {
  switch (v) {
    case IsoVerdict::kIsomorphic: return "isomorphic";
    case IsoVerdict::kTolerant: return "t-tolerant";
    case IsoVerdict::kDistance: return "distance";
  }
  return "?";
}

IsomorphismResult geometric_graph_isomorphism(const GeometricGraph &g1, const GeometricGraph &g2,
                                              double t) {
  if (!(t >= 0) || !std::isfinite(t)) throw InvalidArgument("tolerance must be finite and >= 0");
  const bool same_size = g1.order() == g2.order() && g1.edge_slots() == g2.edge_slots();
  auto [a, b] = pad_to_equal(g1, g2);
  b = align(a, b, AlignmentCriterion::kEdgeDistance).graph;

  IsomorphismResult r;
  r.vertices = vertex_assignment(a, b);
  // Among edge assignments of equal ED, prefer the one whose endpoints also
  // coincide; the tiny position weight only breaks ties.
  auto fa = edge_features(a), fb = edge_features(b);
  r.edges = solve_lsap(edge_matrix(fa, fb, [](const EdgeFeature &x, const EdgeFeature &y) {
    return ed_cost(x, y) + 1e-9 * position_term(x, y);
  }));
  double ed = 0;
  for (std::size_t i = 0; i < fa.size(); ++i) ed += ed_cost(fa[i], fb[r.edges.mapping[i]]);
  r.gd = r.vertices.total_cost + ed;

  r.edges_consistent = same_size;
  for (EdgeId i = 0; i < a.size() && r.edges_consistent; ++i) {
    std::size_t j = r.edges.mapping[i];
    if (j >= b.size()) {
      r.edges_consistent = false;
      break;
    }
    const Edge &e1 = a.graph().edge(i);
    const Edge &e2 = b.graph().edge(j);
    std::pair<std::size_t, std::size_t> image = std::minmax(r.vertices.mapping[e1.u], r.vertices.mapping[e1.v]);
    r.edges_consistent = image == std::pair(e2.u, e2.v);
  }

  constexpr double kZero = 1e-9;
  if (!same_size || !r.edges_consistent) {
    r.verdict = IsoVerdict::kDistance;
  } else if (r.gd <= kZero) {
    r.verdict = IsoVerdict::kIsomorphic;
  } else {
    bool within = true;
    for (VertexId i = 0; i < a.order() && within; ++i) {
      Point p = a.coord(i), q = b.coord(r.vertices.mapping[i]);
      within = std::abs(p.x - q.x) < t && std::abs(p.y - q.y) < t;
    }
    r.verdict = within ? IsoVerdict::kTolerant : IsoVerdict::kDistance;
  }
  return r;
}

void DistanceWeights::validate() const {
  for (double w : {w1, w2, w3, w4}) {
    if (!(w >= 0) || !std::isfinite(w)) throw InvalidArgument("weights must be finite and >= 0");
  }
}

DistanceWeights DistanceWeights::normalized() const {
  validate();
  double s = w1 + w2 + w3 + w4;
  if (s == 0) throw InvalidArgument("weights sum to zero");
  return {w1 / s, w2 / s, w3 / s, w4 / s};
}

double geometric_graph_distance(const GeometricGraph &g1, const GeometricGraph &g2,
                                const DistanceWeights &w, bool align_first) {
  w.validate();
  auto [a, b] = pad_to_equal(g1, g2);
  if (align_first && g1.size() > 0 && g2.size() > 0) {
    b = align(a, b, AlignmentCriterion::kEdgeDistanceMetric).graph;
  }
  double total = w.w1 * vertex_distance(a, b);
  if (a.edge_slots() > 0) {
    CostMatrix m = edge_matrix(edge_features(a), edge_features(b),
                               [&](const EdgeFeature &x, const EdgeFeature &y) {
                                 return w.w2 * angle_term(x, y) + w.w3 * length_term(x, y) +
                                        w.w4 * position_term(x, y);
                               });
    total += solve_lsap(m).total_cost;
  }
  return total;
}

}  // namespace gmatch
