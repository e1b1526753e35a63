#include "gmatch/graph.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <utility>

#include "gmatch/error.hpp"

namespace gmatch {

Graph::Graph(std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) add_vertex();
}

void Graph::check_vertex(VertexId v) const {
  if (!contains(v)) {
    throw InvalidArgument("unknown vertex " + std::to_string(v) +
                          " (graph has " + std::to_string(order()) +
                          " vertices)");
  }
}

void Graph::check_label(const Label &label) {
  const auto *vec = std::get_if<std::vector<double>>(&label);
  if (vec == nullptr) return;
  bool have_dim = std::any_of(labels_.begin(), labels_.end(), [](auto &l) {
    return std::holds_alternative<std::vector<double>>(l);
  });
  if (have_dim && vec->size() != label_dim_) {
    throw InvalidArgument("vertex label dimension " +
                          std::to_string(vec->size()) + " differs from " +
                          std::to_string(label_dim_));
  }
  label_dim_ = vec->size();
}

VertexId Graph::add_vertex(Label label, std::string name) {
  check_label(label);
  labels_.push_back(std::move(label));
  names_.push_back(std::move(name));
  adj_.emplace_back();
  return labels_.size() - 1;
}

EdgeId Graph::add_edge(VertexId u, VertexId v, Label label) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw InvalidArgument("self-loop on vertex " + std::to_string(u));
  if (has_edge(u, v)) {
    throw InvalidArgument("parallel edge " + std::to_string(u) + "-" +
                          std::to_string(v));
  }
  if (u > v) std::swap(u, v);
  EdgeId id = edges_.size();
  edges_.push_back({u, v, std::move(label)});
  adj_[u].push_back({v, id});
  adj_[v].push_back({u, id});
  return id;
}

std::size_t Graph::degree(VertexId v) const {
  check_vertex(v);
  return adj_[v].size();
}

std::span<const Neighbor> Graph::neighbors(VertexId v) const {
  check_vertex(v);
  return adj_[v];
}

std::optional<EdgeId> Graph::find_edge(VertexId u, VertexId v) const {
  check_vertex(u);
  check_vertex(v);
  const auto &a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
  VertexId other = adj_[u].size() <= adj_[v].size() ? v : u;
  for (const auto &nb : a) {
    if (nb.vertex == other) return nb.edge;
  }
  return std::nullopt;
}

const Label &Graph::vertex_label(VertexId v) const {
  check_vertex(v);
  return labels_[v];
}

void Graph::set_vertex_label(VertexId v, Label label) {
  check_vertex(v);
  Label old = std::exchange(labels_[v], Label{});
  try {
    check_label(label);
  } catch (...) {
    labels_[v] = std::move(old);
    throw;
  }
  labels_[v] = std::move(label);
}

const std::string &Graph::vertex_name(VertexId v) const {
  check_vertex(v);
  return names_[v];
}

bool operator==(const Graph &a, const Graph &b) {
  if (a.labels_ != b.labels_ || a.edges_.size() != b.edges_.size()) {
    return false;
  }
  // Edge insertion order is not part of the graph's identity.
  auto key = [](const Edge &e) { return std::pair(e.u, e.v); };
  auto sorted = [&](const std::vector<Edge> &es) {
    std::vector<const Edge *> out;
    for (const auto &e : es) out.push_back(&e);
    std::sort(out.begin(), out.end(),
              [&](auto *x, auto *y) { return key(*x) < key(*y); });
    return out;
  };
  auto ea = sorted(a.edges_);
  auto eb = sorted(b.edges_);
  for (std::size_t i = 0; i < ea.size(); ++i) {
    if (key(*ea[i]) != key(*eb[i]) || ea[i]->label != eb[i]->label) {
      return false;
    }
  }
  return true;
}

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

GeometricGraph::GeometricGraph(Graph graph, std::vector<Point> coords,
                               std::size_t padding_edges)
    : graph_(std::move(graph)),
      coords_(std::move(coords)),
      padding_edges_(padding_edges) {
  if (coords_.size() != graph_.order()) {
    throw InvalidArgument("geometric graph needs one coordinate per vertex (" +
                          std::to_string(graph_.order()) + " vertices, " +
                          std::to_string(coords_.size()) + " coordinates)");
  }
  for (const auto &p : coords_) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw InvalidArgument("non-finite vertex coordinate");
    }
  }
}

Point GeometricGraph::mean_coord() const {
  if (coords_.empty()) return {};
  Point m;
  for (const auto &p : coords_) {
    m.x += p.x;
    m.y += p.y;
  }
  m.x /= static_cast<double>(coords_.size());
  m.y /= static_cast<double>(coords_.size());
  return m;
}

Graph induced_subgraph(const Graph &g, std::span<const VertexId> keep) {
  std::vector<std::size_t> index(g.order(), SIZE_MAX);
  Graph out;
  for (VertexId v : keep) {
    if (!g.contains(v)) throw InvalidArgument("unknown vertex in keep list");
    if (index[v] != SIZE_MAX) throw InvalidArgument("duplicate vertex in keep list");
    index[v] = out.add_vertex(g.vertex_label(v), g.vertex_name(v));
  }
  for (const auto &e : g.edges()) {
    if (index[e.u] != SIZE_MAX && index[e.v] != SIZE_MAX) {
      out.add_edge(index[e.u], index[e.v], e.label);
    }
  }
  return out;
}

GeometricGraph induced_subgraph(const GeometricGraph &g,
                                std::span<const VertexId> keep) {
  Graph sub = induced_subgraph(g.graph(), keep);
  std::vector<Point> coords;
  coords.reserve(keep.size());
  for (VertexId v : keep) coords.push_back(g.coord(v));
  return {std::move(sub), std::move(coords)};
}

std::size_t degree(const Graph &g, VertexId v) { return g.degree(v); }

std::vector<bool> cut_vertices(const Graph &g) {
  // Iterative Tarjan low-link.
  const std::size_t n = g.order();
  std::vector<bool> cut(n, false);
  std::vector<std::size_t> disc(n, 0), low(n, 0), next(n, 0);
  std::vector<VertexId> parent(n, SIZE_MAX);
  std::size_t timer = 0;
  std::vector<VertexId> stack;
  for (VertexId root = 0; root < n; ++root) {
    if (disc[root] != 0) continue;
    std::size_t root_children = 0;
    disc[root] = low[root] = ++timer;
    stack.push_back(root);
    while (!stack.empty()) {
      VertexId u = stack.back();
      auto nbrs = g.neighbors(u);
      if (next[u] < nbrs.size()) {
        VertexId w = nbrs[next[u]++].vertex;
        if (disc[w] == 0) {
          parent[w] = u;
          if (u == root) ++root_children;
          disc[w] = low[w] = ++timer;
          stack.push_back(w);
        } else if (w != parent[u]) {
          low[u] = std::min(low[u], disc[w]);
        }
        continue;
      }
      stack.pop_back();
      VertexId p = parent[u];
      if (p != SIZE_MAX) {
        low[p] = std::min(low[p], low[u]);
        if (p != root && low[u] >= disc[p]) cut[p] = true;
      }
    }
    if (root_children > 1) cut[root] = true;
  }
  return cut;
}

bool is_cut_vertex(const Graph &g, VertexId v) {
  if (!g.contains(v)) throw InvalidArgument("unknown vertex " + std::to_string(v));
  return cut_vertices(g)[v];
}

std::vector<std::vector<VertexId>> connected_components(const Graph &g) {
  std::vector<std::vector<VertexId>> comps;
  std::vector<bool> seen(g.order(), false);
  std::vector<VertexId> stack;
  for (VertexId s = 0; s < g.order(); ++s) {
    if (seen[s]) continue;
    comps.emplace_back();
    seen[s] = true;
    stack.push_back(s);
    while (!stack.empty()) {
      VertexId u = stack.back();
      stack.pop_back();
      comps.back().push_back(u);
      for (const auto &nb : g.neighbors(u)) {
        if (!seen[nb.vertex]) {
          seen[nb.vertex] = true;
          stack.push_back(nb.vertex);
        }
      }
    }
    std::sort(comps.back().begin(), comps.back().end());
  }
  return comps;
}

std::size_t component_count(const Graph &g) {
  return connected_components(g).size();
}

GeometricGraph subdivide_edge(const GeometricGraph &g, EdgeId e) {
  if (e >= g.size()) throw InvalidArgument("unknown edge " + std::to_string(e));
  const Graph &src = g.graph();
  const Edge &target = src.edge(e);

  Graph out;
  for (VertexId v = 0; v < src.order(); ++v) {
    out.add_vertex(src.vertex_label(v), src.vertex_name(v));
  }
  Label mid_label;
  const auto *lu = std::get_if<std::vector<double>>(&src.vertex_label(target.u));
  const auto *lv = std::get_if<std::vector<double>>(&src.vertex_label(target.v));
  if (lu != nullptr && lv != nullptr) {
    std::vector<double> m(lu->size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = 0.5 * ((*lu)[i] + (*lv)[i]);
    mid_label = std::move(m);
  }
  VertexId w = out.add_vertex(std::move(mid_label));
  for (EdgeId i = 0; i < src.size(); ++i) {
    const Edge &ed = src.edge(i);
    if (i == e) {
      out.add_edge(ed.u, w, ed.label);
      out.add_edge(w, ed.v, ed.label);
    } else {
      out.add_edge(ed.u, ed.v, ed.label);
    }
  }
  std::vector<Point> coords = g.coords();
  Point a = g.coord(target.u), b = g.coord(target.v);
  coords.push_back({0.5 * (a.x + b.x), 0.5 * (a.y + b.y)});
  return {std::move(out), std::move(coords)};
}

GeometricGraph subdivide_edge(const GeometricGraph &g, VertexId u, VertexId v) {
  auto e = g.graph().find_edge(u, v);
  if (!e) {
    throw InvalidArgument("no edge " + std::to_string(u) + "-" + std::to_string(v));
  }
  return subdivide_edge(g, *e);
}

Graph random_graph(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidArgument("edge probability must lie in [0, 1]");
  }
  // Draws are mapped to [0, 1) by hand so a seed gives the same graph on
  // every standard library.
  std::mt19937_64 rng(seed);
  Graph g(n);
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = u + 1; v < n; ++v) {
      double r = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      if (r < p) g.add_edge(u, v);
    }
  }
  return g;
}

}  // namespace gmatch
