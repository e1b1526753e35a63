#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "gmatch/graph.hpp"
#include "gmatch/lsap.hpp"

namespace gmatch {

/// Orientation, length and canonical endpoints of an edge. The left
/// endpoint has the smaller x (ties: smaller y); theta is the angle of
/// left->right with the positive x-axis, in degrees within [0, 180).
struct EdgeFeature {
  double theta = 0.0;
  double length = 0.0;
  Point left;
  Point right;
};

EdgeFeature edge_feature(Point a, Point b);

/// Features of all edge slots: real edges in id order, then one empty edge
/// (theta 0, length 0, both endpoints at the mean coordinate) per padding
/// edge.
std::vector<EdgeFeature> edge_features(const GeometricGraph &g);

/// Per-edge cost terms: angle difference in radians, length difference, and
/// the mean distance of corresponding endpoints.
double angle_term(const EdgeFeature &a, const EdgeFeature &b);
double length_term(const EdgeFeature &a, const EdgeFeature &b);
double position_term(const EdgeFeature &a, const EdgeFeature &b);

/// Each distance solves one assignment problem and needs equal sizes
/// (vertex counts for VD, edge slots for the edge distances); use
/// pad_to_equal first. Unequal sizes throw InvalidArgument.
double vertex_distance(const GeometricGraph &g1, const GeometricGraph &g2);
double edge_distance(const GeometricGraph &g1, const GeometricGraph &g2);
double edge_distance_metric(const GeometricGraph &g1, const GeometricGraph &g2);
double graph_distance(const GeometricGraph &g1, const GeometricGraph &g2);
double graph_distance_metric(const GeometricGraph &g1, const GeometricGraph &g2);

/// Optimal vertex assignment under Euclidean distance.
Assignment vertex_assignment(const GeometricGraph &g1, const GeometricGraph &g2);

/// Brings both graphs to the same vertex count and edge-slot count. Added
/// vertices sit at the mean coordinate of the graph they are added to (the
/// origin for an empty graph); added edges are empty.
std::pair<GeometricGraph, GeometricGraph> pad_to_equal(const GeometricGraph &g1,
                                                       const GeometricGraph &g2);

/// z -> scale * z + shift on the complex plane: rotation, uniform scaling
/// and translation.
struct Similarity {
  std::complex<double> scale{1.0, 0.0};
  std::complex<double> shift{0.0, 0.0};

  Point apply(Point p) const;
  /// The transform taking p0 to q0 and p1 to q1. Throws if p0 == p1.
  static Similarity onto(Point p0, Point p1, Point q0, Point q1);
};

GeometricGraph transform(const GeometricGraph &g, const Similarity &s);

/// Moves g so that edge f lies on `ref`: f's left endpoint (its right one
/// when `reversed`) goes to ref.left and f takes ref's direction and length.
/// With a unit-length ref, f ends up with unit length.
GeometricGraph geometric_transform(const GeometricGraph &g, EdgeId f,
                                   const EdgeFeature &ref, bool reversed = false);

enum class AlignmentCriterion { kEdgeDistance, kEdgeDistanceMetric };

struct Alignment {
  GeometricGraph graph;  // g2 moved into g1's frame
  Similarity transform;
  std::optional<EdgeId> edge;  // candidate edge of g2; empty for identity
  bool reversed = false;
  double score = 0.0;
};

/// Tries g2 unchanged and every edge f of g2, in both orientations, laid on
/// the longest edge of g1. Candidates are compared in g1's frame scaled so
/// the reference edge has unit length; the one with the smallest edge
/// distance wins, then the smallest vertex distance, then the first. Sizes
/// may differ; comparison pads. Throws InvalidArgument if either graph has
/// no edges.
Alignment align(const GeometricGraph &g1, const GeometricGraph &g2,
                AlignmentCriterion criterion);

GeometricGraph graph_alignment(const GeometricGraph &g1, const GeometricGraph &g2,
                               AlignmentCriterion criterion = AlignmentCriterion::kEdgeDistance);

enum class IsoVerdict { kIsomorphic, kTolerant, kDistance };

const char *to_string(IsoVerdict v);

struct IsomorphismResult {
  IsoVerdict verdict = IsoVerdict::kDistance;
  double gd = 0.0;  // VD + ED after alignment
  Assignment vertices;
  Assignment edges;
  bool edges_consistent = false;
};

/// Aligns g2 to g1, assigns vertices and edges, and classifies the pair.
/// Graphs of different sizes are padded and reported as a distance.
IsomorphismResult geometric_graph_isomorphism(const GeometricGraph &g1,
                                              const GeometricGraph &g2, double t);

struct DistanceWeights {
  double w1 = 1.0;  // vertex distance
  double w2 = 1.0;  // edge angle
  double w3 = 1.0;  // edge length
  double w4 = 1.0;  // edge position

  void validate() const;
  /// Scaled to sum to 1. Throws if all are zero.
  DistanceWeights normalized() const;

  friend bool operator==(const DistanceWeights &, const DistanceWeights &) = default;
};

/// Weighted distance: w1 * VD plus the cheapest edge assignment under
/// w2 * angle + w3 * length + w4 * position. Pads first; with `align`,
/// g2 is aligned to g1 by edge distance metric when both have edges.
double geometric_graph_distance(const GeometricGraph &g1, const GeometricGraph &g2,
                                const DistanceWeights &w = {}, bool align = false);

}  // namespace gmatch
