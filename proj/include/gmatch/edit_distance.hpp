#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "gmatch/graph.hpp"

namespace gmatch {

/// Constants of the Euclidean edit cost model. All must be >= 0.
struct EditCostParams {
  double x_node = 1.0;  // node insertion / deletion
  double y_node = 1.0;  // node substitution, per unit label distance
  double x_edge = 1.0;  // edge insertion / deletion
  double y_edge = 1.0;  // edge substitution, per unit label distance
  double z_path = 1.0;  // path contraction, per unit endpoint label distance

  void validate() const;
};

enum class EditKind {
  kNodeInsert,
  kNodeDelete,
  kNodeSubstitute,
  kEdgeInsert,
  kEdgeDelete,
  kEdgeSubstitute,
  kPathContract,
};

const char *to_string(EditKind kind);

/// One edit operation between a source graph g1 and a target graph g2.
///
/// Node operations reference `source` (a vertex of g1) and/or `target` (a
/// vertex of g2); edge operations reference edge ids the same way. A path
/// contraction lists the vertices u1..un of the contracted path in the graph
/// it was applied to.
struct EditOperation {
  EditKind kind = EditKind::kNodeSubstitute;
  std::optional<VertexId> source;
  std::optional<VertexId> target;
  std::optional<EdgeId> source_edge;
  std::optional<EdgeId> target_edge;
  std::vector<VertexId> path;
  double cost = 0.0;
};

struct EditPath {
  std::vector<EditOperation> ops;
  double total_cost = 0.0;
  bool complete = false;
  /// node_map[u] = image of vertex u of g1 in g2, or nullopt when deleted.
  std::vector<std::optional<VertexId>> node_map;
  /// Operations applied to the inputs before matching (path contractions).
  /// They are reported separately and are not part of total_cost.
  /// The first `preprocessing_source_ops` entries act on g1, the rest on g2.
  std::vector<EditOperation> preprocessing;
  std::size_t preprocessing_source_ops = 0;
  double preprocessing_cost = 0.0;
};

namespace cost_mode {
struct Standard {};
/// Deleting a degree-k vertex that is not a cut vertex of g1 is free.
struct Extended {
  std::size_t k = 0;
};
/// Standard costs plus path contraction.
struct Homeomorphic {};
/// Deleting any listed vertex of g1 is free.
struct CentralityExempt {
  std::vector<VertexId> exempt;
};
}  // namespace cost_mode

using CostMode = std::variant<cost_mode::Standard, cost_mode::Extended,
                              cost_mode::Homeomorphic,
                              cost_mode::CentralityExempt>;

/// Distance between two labels: Euclidean for real vectors, 0/1 for
/// symbols, 0 when either label is empty. Throws InvalidArgument on vectors
/// of different dimension or a vector compared with a symbol.
double label_distance(const Label &a, const Label &b);

/// Cost of a single operation under `mode`. Path contractions are read from
/// g1 (their operands live in the graph that is being contracted).
double edit_cost(const EditOperation &op, const Graph &g1, const Graph &g2,
                 const EditCostParams &params,
                 const CostMode &mode = cost_mode::Standard{});

struct GedOptions {
  /// Absent: exhaustive A*. Present: beam search keeping this many partial
  /// paths per level.
  std::optional<std::size_t> beam_width;
  /// Use an admissible lower bound on the remaining cost instead of h = 0.
  bool lower_bound = false;
};

/// Graph edit distance by tree search over the vertices of g1 in index
/// order. Edge operations are induced by the vertex mapping.
EditPath ged(const Graph &g1, const Graph &g2,
             const EditCostParams &params = {}, const GedOptions &opts = {});

/// The complete edit path induced by a vertex mapping. node_map must have
/// g1.order() entries and be injective on its engaged values.
EditPath edit_path_from_mapping(
    const Graph &g1, const Graph &g2,
    const std::vector<std::optional<VertexId>> &node_map,
    const EditCostParams &params);

/// Assignment-based approximation: solves one LSAP over node costs
/// augmented with local edge costs and returns the induced edit path. Its
/// cost is an upper bound on the exact distance.
EditPath ged_bipartite_path(const Graph &g1, const Graph &g2,
                            const EditCostParams &params = {});
double ged_bipartite(const Graph &g1, const Graph &g2,
                     const EditCostParams &params = {});

}  // namespace gmatch
