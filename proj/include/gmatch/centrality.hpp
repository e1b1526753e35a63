#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "gmatch/contraction.hpp"
#include "gmatch/edit_distance.hpp"
#include "gmatch/graph.hpp"

namespace gmatch {

enum class CentralityMeasure { kDegree, kBetweenness, kEigenvector, kPageRank };

const char *to_string(CentralityMeasure m);
/// "degree", "betweenness", "eigenvector" or "pagerank".
std::optional<CentralityMeasure> parse_measure(std::string_view name);

struct CentralityVector {
  CentralityMeasure measure;
  std::vector<double> scores;
};

struct PageRankOptions {
  double alpha = 0.85;
  double tolerance = 1e-10;  // L1 change between iterations
  std::size_t max_iterations = 200;
};

std::vector<double> degree_centrality(const Graph &g);
/// Sum over unordered pairs {s, t} not containing v of the fraction of
/// shortest s-t paths through v.
std::vector<double> betweenness_centrality(const Graph &g);
/// Dominant adjacency eigenvector, computed per component and scaled so
/// each component's largest entry is 1. Isolated vertices score 0.
std::vector<double> eigenvector_centrality(const Graph &g);
/// Each edge is followed in both directions; isolated vertices spread their
/// mass uniformly.
std::vector<double> pagerank(const Graph &g, const PageRankOptions &opts = {});

/// Throws InvalidArgument on an empty graph.
CentralityVector centrality(const Graph &g, CentralityMeasure m);

/// Visits vertices by ascending (score, index) for `rounds` rounds and
/// removes each one that is neither a cut vertex nor isolated at that
/// moment. A skipped vertex still uses up its round.
ContractionResult centrality_contraction(const Graph &g,
                                         const std::vector<double> &scores,
                                         std::size_t rounds);

/// ceil(r * |V|) rounds, scores computed once on g.
ContractionResult r_centrality_node_contraction(const Graph &g, double r,
                                                CentralityMeasure m);
/// t rounds (capped at |V|), scores computed once on g.
ContractionResult t_centrality_node_contraction(const Graph &g, std::size_t t,
                                                CentralityMeasure m);

/// GED of the two contracted graphs; removals are listed as free deletions
/// in the preprocessing part of the result.
EditPath r_centrality_ged(const Graph &g1, const Graph &g2, double r,
                          CentralityMeasure m, const EditCostParams &params = {},
                          const GedOptions &opts = {});
EditPath t_centrality_ged(const Graph &g1, const Graph &g2, std::size_t t,
                          CentralityMeasure m, const EditCostParams &params = {},
                          const GedOptions &opts = {});

}  // namespace gmatch
