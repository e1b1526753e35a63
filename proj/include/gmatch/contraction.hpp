#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "gmatch/edit_distance.hpp"
#include "gmatch/graph.hpp"

namespace gmatch {

struct ContractionReport {
  /// Removed vertices, as ids of the input graph, in removal order.
  std::vector<VertexId> removed;
  /// kept[i] is the input id of vertex i of the result.
  std::vector<VertexId> kept;
  std::size_t before_n = 0;
  std::size_t after_n = 0;
  std::size_t components_before = 0;
  std::size_t components_after = 0;
};

struct ContractionResult {
  Graph graph;
  ContractionReport report;
  /// Smoothed chains u1..un (input ids); u1 and un survive, the interior
  /// does not. Only filled by path_contract.
  std::vector<std::vector<VertexId>> contracted_paths;
};

/// Smooths every chain of degree-2 vertices into a single edge.
///
/// A chain between two distinct endpoints becomes one edge, unless that
/// edge already exists; then one interior vertex is kept. A chain that
/// returns to its own endpoint keeps two interior vertices, and a component
/// that is a bare cycle becomes a triangle. The number of vertices of every
/// degree other than 2 is unchanged. The new edge takes the label of the
/// first edge of the chain.
ContractionResult path_contract(const Graph &g);

/// Removes the vertices of degree k, in ascending order, skipping any that
/// is a cut vertex or isolated when its turn comes. Degrees are read once,
/// before the sweep.
ContractionResult k_node_contraction(const Graph &g, std::size_t k);

/// Removes the vertices of degree k (degrees read before the sweep) with no
/// cut-vertex check.
ContractionResult k_node_deletion(const Graph &g, std::size_t k);

/// k_node_contraction for degree 1, then 2, ..., then k.
ContractionResult k_star_node_contraction(const Graph &g, std::size_t k);

/// As k_star_node_contraction, without the cut-vertex and isolation checks.
ContractionResult k_star_node_deletion(const Graph &g, std::size_t k);

/// Coordinates of the surviving vertices of a contraction of g.
GeometricGraph restrict_coordinates(const GeometricGraph &g,
                                    const ContractionResult &r);

/// GED of the path-contracted graphs. The contractions are listed in the
/// preprocessing part of the result, priced with z_path, and are not part
/// of total_cost. Vertex ids in ops and node_map refer to the contracted
/// graphs.
EditPath hged(const Graph &g1, const Graph &g2,
              const EditCostParams &params = {}, const GedOptions &opts = {});

/// k = 0: ged(g1, g2). Otherwise the GED of the k*-contracted graphs; the
/// removals are listed as free deletions in the preprocessing part.
EditPath k_star_ged(const Graph &g1, const Graph &g2, std::size_t k,
                    const EditCostParams &params = {},
                    const GedOptions &opts = {});

/// Expected vertex count after k*-contraction of G(n, p), bracketed by
/// n - n * P(1 <= deg <= k) and n - n * P(deg = 1).
struct SizeBounds {
  double lower;
  double upper;
};
SizeBounds kstar_size_bounds(std::size_t n, double p, std::size_t k);

}  // namespace gmatch
