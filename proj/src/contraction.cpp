#include "gmatch/contraction.hpp"

#include <algorithm>
#include <boost/math/distributions/binomial.hpp>
#include <set>
#include <utility>

#include "gmatch/detail/working_graph.hpp"
#include "gmatch/error.hpp"

namespace gmatch {

namespace {

struct NewEdge {
  VertexId u, v;
  Label label;
};

ContractionResult assemble(const Graph &g, const std::vector<char> &keep,
                           const std::vector<NewEdge> &edges) {
  ContractionResult r;
  std::vector<VertexId> index(g.order(), SIZE_MAX);
  for (VertexId v = 0; v < g.order(); ++v) {
    if (keep[v]) {
      index[v] = r.graph.add_vertex(g.vertex_label(v), g.vertex_name(v));
      r.report.kept.push_back(v);
    } else {
      r.report.removed.push_back(v);
    }
  }
  for (const auto &e : edges) r.graph.add_edge(index[e.u], index[e.v], e.label);
  r.report.before_n = g.order();
  r.report.after_n = r.graph.order();
  r.report.components_before = component_count(g);
  r.report.components_after = component_count(r.graph);
  return r;
}

}  // namespace

ContractionResult path_contract(const Graph &g) {
  const std::size_t n = g.order();
  std::vector<char> keep(n, 1), visited(n, 0), edge_done(g.size(), 0);
  std::vector<NewEdge> edges;
  std::set<std::pair<VertexId, VertexId>> present;
  std::vector<std::vector<VertexId>> contracted;

  auto link = [&](VertexId a, VertexId b, const Label &l) {
    edges.push_back({a, b, l});
    present.insert(std::minmax(a, b));
  };
  auto smooth = [&](std::vector<VertexId> chain) {
    if (chain.size() < 3) return;
    for (std::size_t i = 1; i + 1 < chain.size(); ++i) keep[chain[i]] = 0;
    contracted.push_back(std::move(chain));
  };
  // The edge of degree-2 vertex v that is not `via`.
  auto other_edge = [&](VertexId v, EdgeId via) {
    for (const auto &nb : g.neighbors(v)) {
      if (nb.edge != via) return nb;
    }
    throw Error("degree-2 walk hit a dead end");
  };

  for (VertexId a = 0; a < n; ++a) {
    if (g.degree(a) == 2) continue;
    visited[a] = 1;
    for (const auto &start : g.neighbors(a)) {
      if (edge_done[start.edge]) continue;
      std::vector<VertexId> chain{a};
      std::vector<EdgeId> chain_edges{start.edge};
      edge_done[start.edge] = 1;
      VertexId cur = start.vertex;
      while (g.degree(cur) == 2) {
        visited[cur] = 1;
        chain.push_back(cur);
        Neighbor next = other_edge(cur, chain_edges.back());
        edge_done[next.edge] = 1;
        chain_edges.push_back(next.edge);
        cur = next.vertex;
      }
      chain.push_back(cur);
      const VertexId b = cur;
      const Label &first = g.edge(chain_edges.front()).label;

      if (chain.size() == 2) {
        link(a, b, first);
      } else if (a != b) {
        if (present.count(std::minmax(a, b)) || g.has_edge(a, b)) {
          // Direct edge taken: keep one interior vertex to stay simple.
          link(a, chain[1], first);
          link(chain[1], b, g.edge(chain_edges[1]).label);
          smooth({chain.begin() + 1, chain.end()});
        } else {
          link(a, b, first);
          smooth(chain);
        }
      } else {
        // Loop back to a: a triangle through the first and last interior vertex.
        VertexId c1 = chain[1], c2 = chain[chain.size() - 2];
        link(a, c1, first);
        link(c1, c2, g.edge(chain_edges[1]).label);
        link(c2, a, g.edge(chain_edges.back()).label);
        smooth({chain.begin() + 1, chain.end() - 1});
      }
    }
  }

  // Whatever is left consists of components that are bare cycles.
  for (VertexId s = 0; s < n; ++s) {
    if (visited[s]) continue;
    std::vector<VertexId> order{s};
    std::vector<EdgeId> order_edges;
    visited[s] = 1;
    auto nbs = g.neighbors(s);
    Neighbor step = nbs[0].vertex < nbs[1].vertex ? nbs[0] : nbs[1];
    while (step.vertex != s) {
      order.push_back(step.vertex);
      order_edges.push_back(step.edge);
      visited[step.vertex] = 1;
      step = other_edge(step.vertex, step.edge);
    }
    order_edges.push_back(step.edge);
    const std::size_t len = order.size();
    link(order[0], order[1], g.edge(order_edges[0]).label);
    link(order[1], order[len - 1], g.edge(order_edges[1]).label);
    link(order[len - 1], order[0], g.edge(order_edges.back()).label);
    smooth({order.begin() + 1, order.end()});
  }

  ContractionResult r = assemble(g, keep, edges);
  r.contracted_paths = std::move(contracted);
  return r;
}

namespace {

ContractionResult sweep(const Graph &g, std::size_t from, std::size_t to, bool guarded) {
  detail::WorkingGraph w(g);
  std::vector<VertexId> removed;
  for (std::size_t d = from; d <= to; ++d) {
    std::vector<VertexId> flagged;
    for (VertexId v = 0; v < g.order(); ++v) {
      if (w.alive(v) && w.degree(v) == d) flagged.push_back(v);
    }
    for (VertexId v : flagged) {
      if (guarded && !w.contractible(v)) continue;
      w.remove(v);
      removed.push_back(v);
    }
  }
  ContractionResult r;
  r.report.kept = w.survivors();
  r.graph = induced_subgraph(g, r.report.kept);
  r.report.removed = std::move(removed);
  r.report.before_n = g.order();
  r.report.after_n = r.graph.order();
  r.report.components_before = component_count(g);
  r.report.components_after = component_count(r.graph);
  return r;
}

}  // namespace

ContractionResult k_node_contraction(const Graph &g, std::size_t k) {
  return sweep(g, k, k, true);
}

ContractionResult k_node_deletion(const Graph &g, std::size_t k) {
  return sweep(g, k, k, false);
}

ContractionResult k_star_node_contraction(const Graph &g, std::size_t k) {
  return sweep(g, 1, k, true);
}

ContractionResult k_star_node_deletion(const Graph &g, std::size_t k) {
  return sweep(g, 1, k, false);
}

GeometricGraph restrict_coordinates(const GeometricGraph &g, const ContractionResult &r) {
  if (r.report.before_n != g.order()) {
    throw InvalidArgument("contraction result does not belong to this graph");
  }
  std::vector<Point> coords;
  coords.reserve(r.report.kept.size());
  for (VertexId v : r.report.kept) coords.push_back(g.coord(v));
  return {r.graph, std::move(coords)};
}

EditPath hged(const Graph &g1, const Graph &g2, const EditCostParams &params,
              const GedOptions &opts) {
  params.validate();
  ContractionResult c1 = path_contract(g1);
  ContractionResult c2 = path_contract(g2);
  EditPath out = ged(c1.graph, c2.graph, params, opts);
  auto log = [&](const Graph &src, const ContractionResult &c) {
    for (const auto &chain : c.contracted_paths) {
      EditOperation op;
      op.kind = EditKind::kPathContract;
      op.path = chain;
      op.cost = edit_cost(op, src, src, params, cost_mode::Homeomorphic{});
      out.preprocessing_cost += op.cost;
      out.preprocessing.push_back(std::move(op));
    }
  };
  log(g1, c1);
  out.preprocessing_source_ops = out.preprocessing.size();
  log(g2, c2);
  return out;
}

EditPath k_star_ged(const Graph &g1, const Graph &g2, std::size_t k,
                    const EditCostParams &params, const GedOptions &opts) {
  if (k == 0) return ged(g1, g2, params, opts);
  params.validate();
  ContractionResult c1 = k_star_node_contraction(g1, k);
  ContractionResult c2 = k_star_node_contraction(g2, k);
  EditPath out = ged(c1.graph, c2.graph, params, opts);
  auto log = [&](const ContractionResult &c) {
    for (VertexId v : c.report.removed) {
      EditOperation op;
      op.kind = EditKind::kNodeDelete;
      op.source = v;
      op.cost = 0.0;
      out.preprocessing.push_back(std::move(op));
    }
  };
  log(c1);
  out.preprocessing_source_ops = out.preprocessing.size();
  log(c2);
  return out;
}

SizeBounds kstar_size_bounds(std::size_t n, double p, std::size_t k) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("edge probability must lie in [0, 1]");
  if (k == 0) throw InvalidArgument("size bounds need k >= 1");
  const double nn = static_cast<double>(n);
  if (n < 2) return {nn, nn};
  boost::math::binomial_distribution<double> deg(nn - 1, p);
  double low_degree = 0.0;
  for (std::size_t i = 1; i <= std::min(k, n - 1); ++i) {
    low_degree += boost::math::pdf(deg, static_cast<double>(i));
  }
  return {nn - nn * low_degree, nn - nn * boost::math::pdf(deg, 1.0)};
}

}  // namespace gmatch
