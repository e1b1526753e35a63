#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace gmatch {

/// Dense, graph-local vertex index.
using VertexId = std::size_t;
using EdgeId = std::size_t;

/// Vertex or edge label: none, a real vector, or a symbol.
using Label = std::variant<std::monostate, std::vector<double>, std::string>;

struct Edge {
  VertexId u;  // u < v
  VertexId v;
  Label label;
};

struct Neighbor {
  VertexId vertex;
  EdgeId edge;
};

/// Simple undirected labeled graph.
///
/// Vertices are numbered 0..order()-1 in insertion order. Edges are stored
/// with their endpoints sorted. Self-loops and parallel edges are rejected,
/// and all real-vector vertex labels must share one dimension.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n);

  VertexId add_vertex(Label label = {}, std::string name = {});
  EdgeId add_edge(VertexId u, VertexId v, Label label = {});

  std::size_t order() const noexcept { return labels_.size(); }
  std::size_t size() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return labels_.empty(); }

  bool contains(VertexId v) const noexcept { return v < order(); }
  std::size_t degree(VertexId v) const;
  std::span<const Neighbor> neighbors(VertexId v) const;
  std::optional<EdgeId> find_edge(VertexId u, VertexId v) const;
  bool has_edge(VertexId u, VertexId v) const {
    return find_edge(u, v).has_value();
  }

  const Label &vertex_label(VertexId v) const;
  void set_vertex_label(VertexId v, Label label);
  /// Original identifier from the source document (metadata only).
  const std::string &vertex_name(VertexId v) const;

  const Edge &edge(EdgeId e) const { return edges_.at(e); }
  const std::vector<Edge> &edges() const noexcept { return edges_; }

  /// Dimension shared by real-vector vertex labels, 0 when there are none.
  std::size_t label_dimension() const noexcept { return label_dim_; }

  friend bool operator==(const Graph &a, const Graph &b);

 private:
  void check_vertex(VertexId v) const;
  void check_label(const Label &label);

  std::vector<Label> labels_;
  std::vector<std::string> names_;
  std::vector<std::vector<Neighbor>> adj_;
  std::vector<Edge> edges_;
  std::size_t label_dim_ = 0;
};

struct Point {
  double x = 0;
  double y = 0;

  friend bool operator==(const Point &, const Point &) = default;
};

double distance(Point a, Point b);

/// Graph whose vertices all carry finite 2-D coordinates.
///
/// `padding_edges` counts empty edges appended by pad_to_equal(); they have
/// no endpoints in the vertex set and only matter to the edge distances.
class GeometricGraph {
 public:
  GeometricGraph() = default;
  GeometricGraph(Graph graph, std::vector<Point> coords,
                 std::size_t padding_edges = 0);

  const Graph &graph() const noexcept { return graph_; }
  const std::vector<Point> &coords() const noexcept { return coords_; }
  Point coord(VertexId v) const { return coords_.at(v); }
  std::size_t order() const noexcept { return graph_.order(); }
  std::size_t size() const noexcept { return graph_.size(); }
  std::size_t padding_edges() const noexcept { return padding_edges_; }
  /// Real plus padding edges.
  std::size_t edge_slots() const noexcept { return size() + padding_edges_; }

  /// Mean vertex coordinate; the origin for an empty graph.
  Point mean_coord() const;

  friend bool operator==(const GeometricGraph &, const GeometricGraph &) =
      default;

 private:
  Graph graph_;
  std::vector<Point> coords_;
  std::size_t padding_edges_ = 0;
};

/// Graph with only the vertices in `keep` (in that order) and the edges
/// between them. Vertex i of the result is keep[i] of the input.
Graph induced_subgraph(const Graph &g, std::span<const VertexId> keep);
GeometricGraph induced_subgraph(const GeometricGraph &g,
                                std::span<const VertexId> keep);

std::size_t degree(const Graph &g, VertexId v);

std::vector<bool> cut_vertices(const Graph &g);
bool is_cut_vertex(const Graph &g, VertexId v);

/// Connected components, each sorted, ordered by smallest member.
std::vector<std::vector<VertexId>> connected_components(const Graph &g);
std::size_t component_count(const Graph &g);

/// Replaces edge e by a path through a fresh vertex placed at the midpoint.
/// Vector labels of the new vertex are the endpoint mean; the two new
/// edges copy the label of e.
GeometricGraph subdivide_edge(const GeometricGraph &g, EdgeId e);
GeometricGraph subdivide_edge(const GeometricGraph &g, VertexId u, VertexId v);

/// G(n, p): each of the n(n-1)/2 pairs is an edge independently with
/// probability p.
Graph random_graph(std::size_t n, double p, std::uint64_t seed);

}  // namespace gmatch
