#include "gmatch/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

#include "gmatch/detail/working_graph.hpp"
#include "gmatch/error.hpp"

namespace gmatch {

const char *to_string(CentralityMeasure m) {
  switch (m) {
    case CentralityMeasure::kDegree: return "degree";
    case CentralityMeasure::kBetweenness: return "betweenness";
    case CentralityMeasure::kEigenvector: return "eigenvector";
    case CentralityMeasure::kPageRank: return "pagerank";
  }
  return "?";
}

std::optional<CentralityMeasure> parse_measure(std::string_view name) {
  for (auto m : {CentralityMeasure::kDegree, CentralityMeasure::kBetweenness,
                 CentralityMeasure::kEigenvector, CentralityMeasure::kPageRank}) {
    if (name == to_string(m)) return m;
  }
  return std::nullopt;
}

std::vector<double> degree_centrality(const Graph &g) {
  std::vector<double> out(g.order());
  for (VertexId v = 0; v < g.order(); ++v) out[v] = static_cast<double>(g.degree(v));
  return out;
}

std::vector<double> betweenness_centrality(const Graph &g) {
  // Brandes: one BFS per source, dependencies accumulated in reverse order.
  const std::size_t n = g.order();
  std::vector<double> cb(n, 0.0), sigma(n), delta(n);
  std::vector<long> dist(n);
  std::vector<std::vector<VertexId>> pred(n);
  std::vector<VertexId> order;
  for (VertexId s = 0; s < n; ++s) {
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    std::fill(dist.begin(), dist.end(), -1);
    for (auto &p : pred) p.clear();
    order.clear();
    sigma[s] = 1;
    dist[s] = 0;
    std::queue<VertexId> q;
    q.push(s);
    while (!q.empty()) {
      VertexId v = q.front();
      q.pop();
      order.push_back(v);
      for (const auto &nb : g.neighbors(v)) {
        VertexId w = nb.vertex;
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          q.push(w);
        }
        if (dist[w] == dist[v] + 1) {
          sigma[w] += sigma[v];
          pred[w].push_back(v);
        }
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      VertexId w = *it;
      for (VertexId v : pred[w]) delta[v] += sigma[v] / sigma[w] * (1 + delta[w]);
      if (w != s) cb[w] += delta[w];
    }
  }
  for (double &x : cb) x /= 2;  // each unordered pair was counted from both ends
  return cb;
}

std::vector<double> eigenvector_centrality(const Graph &g) {
  constexpr double kTolerance = 1e-8;
  constexpr std::size_t kMaxIterations = 100000;
  std::vector<double> out(g.order(), 0.0);
  for (const auto &comp : connected_components(g)) {
    if (comp.size() == 1) continue;
    std::vector<std::size_t> local(g.order());
    for (std::size_t i = 0; i < comp.size(); ++i) local[comp[i]] = i;
    std::vector<double> x(comp.size(), 1.0), y(comp.size());
    // Iterating with A + I avoids the oscillation of bipartite components.
    for (std::size_t it = 0; it < kMaxIterations; ++it) {
      for (std::size_t i = 0; i < comp.size(); ++i) {
        double s = x[i];
        for (const auto &nb : g.neighbors(comp[i])) s += x[local[nb.vertex]];
        y[i] = s;
      }
      double mx = *std::max_element(y.begin(), y.end());
      double change = 0;
      for (std::size_t i = 0; i < comp.size(); ++i) {
        y[i] /= mx;
        change = std::max(change, std::abs(y[i] - x[i]));
      }
      std::swap(x, y);
      if (change < kTolerance) break;
    }
    for (std::size_t i = 0; i < comp.size(); ++i) out[comp[i]] = x[i];
  }
  return out;
}

std::vector<double> pagerank(const Graph &g, const PageRankOptions &opts) {
  if (!(opts.alpha >= 0 && opts.alpha <= 1)) throw InvalidArgument("damping must lie in [0, 1]");
  const std::size_t n = g.order();
  if (n == 0) return {};
  const double nn = static_cast<double>(n);
  std::vector<double> x(n, 1.0 / nn), y(n);
  for (std::size_t it = 0; it < opts.max_iterations; ++it) {
    double dangling = 0;
    for (VertexId v = 0; v < n; ++v)
      if (g.degree(v) == 0) dangling += x[v];
    for (VertexId i = 0; i < n; ++i) {
      double s = 0;
      for (const auto &nb : g.neighbors(i)) s += x[nb.vertex] / static_cast<double>(g.degree(nb.vertex));
      y[i] = opts.alpha * (s + dangling / nn) + (1 - opts.alpha) / nn;
    }
    double change = 0;
    for (VertexId i = 0; i < n; ++i) change += std::abs(y[i] - x[i]);
    std::swap(x, y);
    if (change < opts.tolerance) break;
  }
  return x;
}

CentralityVector centrality(const Graph &g, CentralityMeasure m) {
  if (g.empty()) throw InvalidArgument("centrality of an empty graph");
  switch (m) {
    case CentralityMeasure::kDegree: return {m, degree_centrality(g)};
    case CentralityMeasure::kBetweenness: return {m, betweenness_centrality(g)};
    case CentralityMeasure::kEigenvector: return {m, eigenvector_centrality(g)};
    case CentralityMeasure::kPageRank: return {m, pagerank(g)};
  }
  throw InvalidArgument("unknown centrality measure");
}

ContractionResult centrality_contraction(const Graph &g, const std::vector<double> &scores,
                                         std::size_t rounds) {
  if (scores.size() != g.order()) throw InvalidArgument("one score per vertex required");
  std::vector<VertexId> order(g.order());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](VertexId a, VertexId b) { return scores[a] < scores[b]; });
  rounds = std::min(rounds, order.size());
  detail::WorkingGraph w(g);
  ContractionResult r;
  for (std::size_t i = 0; i < rounds; ++i) {
    VertexId v = order[i];
    if (!w.contractible(v)) continue;
    w.remove(v);
    r.report.removed.push_back(v);
  }
  r.report.kept = w.survivors();
  r.graph = induced_subgraph(g, r.report.kept);
  r.report.before_n = g.order();
  r.report.after_n = r.graph.order();
  r.report.components_before = component_count(g);
  r.report.components_after = component_count(r.graph);
  if (r.report.components_after != r.report.components_before) {
    throw Error("centrality contraction changed the number of components");
  }
  return r;
}

namespace {

std::size_t rounds_for_fraction(double r, std::size_t n) {
  if (!(r >= 0.0 && r <= 1.0)) throw InvalidArgument("contraction fraction must lie in [0, 1]");
  // The epsilon keeps r = k/n from rounding up to k + 1.
  return static_cast<std::size_t>(std::ceil(r * static_cast<double>(n) - 1e-9));
}

ContractionResult contract_rounds(const Graph &g, std::size_t rounds, CentralityMeasure m) {
  if (g.empty() || rounds == 0) return centrality_contraction(g, std::vector<double>(g.order()), 0);
  return centrality_contraction(g, centrality(g, m).scores, rounds);
}

EditPath ged_after(const ContractionResult &c1, const ContractionResult &c2,
                   const EditCostParams &params, const GedOptions &opts) {
  EditPath out = ged(c1.graph, c2.graph, params, opts);
  auto log = [&](const ContractionResult &c) {
    for (VertexId v : c.report.removed) {
      EditOperation op;
      op.kind = EditKind::kNodeDelete;
      op.source = v;
      out.preprocessing.push_back(op);
    }
  };
  log(c1);
  out.preprocessing_source_ops = out.preprocessing.size();
  log(c2);
  return out;
}

}  // namespace

ContractionResult r_centrality_node_contraction(const Graph &g, double r, CentralityMeasure m) {
  return contract_rounds(g, rounds_for_fraction(r, g.order()), m);
}

ContractionResult t_centrality_node_contraction(const Graph &g, std::size_t t, CentralityMeasure m) {
  return contract_rounds(g, t, m);
}

EditPath r_centrality_ged(const Graph &g1, const Graph &g2, double r, CentralityMeasure m,
                          const EditCostParams &params, const GedOptions &opts) {
  params.validate();
  return ged_after(r_centrality_node_contraction(g1, r, m),
                   r_centrality_node_contraction(g2, r, m), params, opts);
}

EditPath t_centrality_ged(const Graph &g1, const Graph &g2, std::size_t t, CentralityMeasure m,
                          const EditCostParams &params, const GedOptions &opts) {
  params.validate();
  return ged_after(t_centrality_node_contraction(g1, t, m),
                   t_centrality_node_contraction(g2, t, m), params, opts);
}

}  // namespace gmatch
