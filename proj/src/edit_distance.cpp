#include "gmatch/edit_distance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <string>

#include "gmatch/error.hpp"
#include "gmatch/lsap.hpp"

namespace gmatch {

void EditCostParams::validate() const {
  for (double v : {x_node, y_node, x_edge, y_edge, z_path}) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw InvalidArgument("edit cost parameters must be finite and >= 0");
    }
  }
}

const char *to_string(EditKind kind) {
  switch (kind) {
    case EditKind::kNodeInsert: return "node-insert";
    case EditKind::kNodeDelete: return "node-delete";
    case EditKind::kNodeSubstitute: return "node-subst";
    case EditKind::kEdgeInsert: return "edge-insert";
    case EditKind::kEdgeDelete: return "edge-delete";
    case EditKind::kEdgeSubstitute: return "edge-subst";
    case EditKind::kPathContract: return "path-contract";
  }
  return "?";
}

double label_distance(const Label &a, const Label &b) {
  if (std::holds_alternative<std::monostate>(a) ||
      std::holds_alternative<std::monostate>(b)) {
    return 0.0;
  }
  const auto *va = std::get_if<std::vector<double>>(&a);
  const auto *vb = std::get_if<std::vector<double>>(&b);
  if (va != nullptr && vb != nullptr) {
    if (va->size() != vb->size()) {
      throw InvalidArgument("label dimensions differ: " +
                            std::to_string(va->size()) + " vs " +
                            std::to_string(vb->size()));
    }
    double s = 0.0;
    for (std::size_t i = 0; i < va->size(); ++i) {
      double d = (*va)[i] - (*vb)[i];
      s += d * d;
    }
    return std::sqrt(s);
  }
  const auto *sa = std::get_if<std::string>(&a);
  const auto *sb = std::get_if<std::string>(&b);
  if (sa != nullptr && sb != nullptr) return *sa == *sb ? 0.0 : 1.0;
  throw InvalidArgument("cannot compare a vector label with a symbol label");
}

namespace {

template <typename T>
const T &require(const std::optional<T> &v, const char *what) {
  if (!v) throw InvalidArgument(std::string("edit operation is missing its ") + what);
  return *v;
}

}  // namespace

double edit_cost(const EditOperation &op, const Graph &g1, const Graph &g2,
                 const EditCostParams &params, const CostMode &mode) {
  switch (op.kind) {
    case EditKind::kNodeInsert:
      require(op.target, "target vertex");
      return params.x_node;
    case EditKind::kNodeDelete: {
      VertexId u = require(op.source, "source vertex");
      if (const auto *ext = std::get_if<cost_mode::Extended>(&mode)) {
        if (g1.degree(u) == ext->k && !is_cut_vertex(g1, u)) return 0.0;
      } else if (const auto *ex = std::get_if<cost_mode::CentralityExempt>(&mode)) {
        if (std::find(ex->exempt.begin(), ex->exempt.end(), u) != ex->exempt.end()) {
          return 0.0;
        }
      }
      if (!g1.contains(u)) throw InvalidArgument("unknown source vertex");
      return params.x_node;
    }
    case EditKind::kNodeSubstitute: {
      VertexId u = require(op.source, "source vertex");
      VertexId v = require(op.target, "target vertex");
      return params.y_node * label_distance(g1.vertex_label(u), g2.vertex_label(v));
    }
    case EditKind::kEdgeInsert:
      require(op.target_edge, "target edge");
      return params.x_edge;
    case EditKind::kEdgeDelete:
      require(op.source_edge, "source edge");
      return params.x_edge;
    case EditKind::kEdgeSubstitute: {
      EdgeId e = require(op.source_edge, "source edge");
      EdgeId f = require(op.target_edge, "target edge");
      return params.y_edge * label_distance(g1.edge(e).label, g2.edge(f).label);
    }
    case EditKind::kPathContract: {
      if (op.path.size() < 2) throw InvalidArgument("contracted path needs two endpoints");
      for (std::size_t i = 1; i + 1 < op.path.size(); ++i) {
        if (g1.degree(op.path[i]) != 2) {
          throw InvalidArgument("interior vertex of a contracted path must have degree 2");
        }
      }
      return params.z_path * label_distance(g1.vertex_label(op.path.front()),
                                            g1.vertex_label(op.path.back()));
    }
  }
  return 0.0;
}

EditPath edit_path_from_mapping(
    const Graph &g1, const Graph &g2,
    const std::vector<std::optional<VertexId>> &node_map,
    const EditCostParams &params) {
  if (node_map.size() != g1.order()) {
    throw InvalidArgument("vertex mapping must cover every vertex of g1");
  }
  std::vector<std::optional<VertexId>> inverse(g2.order());
  for (VertexId u = 0; u < g1.order(); ++u) {
    if (!node_map[u]) continue;
    VertexId v = *node_map[u];
    if (!g2.contains(v)) throw InvalidArgument("mapping targets an unknown vertex");
    if (inverse[v]) throw InvalidArgument("vertex mapping is not injective");
    inverse[v] = u;
  }

  EditPath path;
  path.node_map = node_map;
  auto push = [&](EditOperation op) {
    op.cost = edit_cost(op, g1, g2, params);
    path.total_cost += op.cost;
    path.ops.push_back(std::move(op));
  };
  for (VertexId u = 0; u < g1.order(); ++u) {
    EditOperation op;
    op.source = u;
    if (node_map[u]) {
      op.kind = EditKind::kNodeSubstitute;
      op.target = node_map[u];
    } else {
      op.kind = EditKind::kNodeDelete;
    }
    push(std::move(op));
  }
  for (VertexId v = 0; v < g2.order(); ++v) {
    if (inverse[v]) continue;
    EditOperation op;
    op.kind = EditKind::kNodeInsert;
    op.target = v;
    push(std::move(op));
  }
  for (EdgeId e = 0; e < g1.size(); ++e) {
    const Edge &ed = g1.edge(e);
    EditOperation op;
    op.source_edge = e;
    std::optional<EdgeId> image;
    if (node_map[ed.u] && node_map[ed.v]) {
      image = g2.find_edge(*node_map[ed.u], *node_map[ed.v]);
    }
    if (image) {
      op.kind = EditKind::kEdgeSubstitute;
      op.target_edge = image;
    } else {
      op.kind = EditKind::kEdgeDelete;
    }
    push(std::move(op));
  }
  for (EdgeId f = 0; f < g2.size(); ++f) {
    const Edge &ed = g2.edge(f);
    if (inverse[ed.u] && inverse[ed.v] && g1.has_edge(*inverse[ed.u], *inverse[ed.v])) {
      continue;
    }
    EditOperation op;
    op.kind = EditKind::kEdgeInsert;
    op.target_edge = f;
    push(std::move(op));
  }
  path.complete = true;
  return path;
}

namespace {

constexpr std::int32_t kDeleted = -1;
constexpr std::int32_t kCompletion = -2;
constexpr std::uint32_t kNoParent = UINT32_MAX;

/// Precomputed costs shared by every search node.
class SearchProblem {
 public:
  SearchProblem(const Graph &g1, const Graph &g2, const EditCostParams &p,
                bool lower_bound)
      : g1_(g1), g2_(g2), p_(p), lower_bound_(lower_bound),
        n1_(g1.order()), n2_(g2.order()) {
    node_sub_.resize(n1_ * n2_);
    for (VertexId u = 0; u < n1_; ++u) {
      for (VertexId v = 0; v < n2_; ++v) {
        node_sub_[u * n2_ + v] =
            p.y_node * label_distance(g1.vertex_label(u), g2.vertex_label(v));
      }
    }
    adj1_.assign(n1_ * n1_, -1);
    for (EdgeId e = 0; e < g1.size(); ++e) {
      const Edge &ed = g1.edge(e);
      adj1_[ed.u * n1_ + ed.v] = adj1_[ed.v * n1_ + ed.u] = static_cast<int>(e);
    }
    adj2_.assign(n2_ * n2_, -1);
    for (EdgeId e = 0; e < g2.size(); ++e) {
      const Edge &ed = g2.edge(e);
      adj2_[ed.u * n2_ + ed.v] = adj2_[ed.v * n2_ + ed.u] = static_cast<int>(e);
    }
    edge_sub_.resize(g1.size() * g2.size());
    for (EdgeId e = 0; e < g1.size(); ++e) {
      for (EdgeId f = 0; f < g2.size(); ++f) {
        edge_sub_[e * g2.size() + f] =
            p.y_edge * label_distance(g1.edge(e).label, g2.edge(f).label);
      }
    }
    // open_edges1_[d] = edges of g1 with an endpoint >= d.
    open_edges1_.assign(n1_ + 1, 0);
    for (const Edge &ed : g1.edges()) {
      for (std::size_t d = 0; d <= std::max(ed.u, ed.v); ++d) ++open_edges1_[d];
    }
  }

  std::size_t n1() const { return n1_; }
  std::size_t n2() const { return n2_; }

  /// Cost of mapping vertex `depth` of g1 to `target` (or deleting it),
  /// given the images of vertices 0..depth-1.
  double step_cost(std::size_t depth, std::int32_t target,
                   const std::vector<std::int32_t> &images) const {
    double c = target == kDeleted ? p_.x_node
                                  : node_sub_[depth * n2_ + static_cast<std::size_t>(target)];
    for (std::size_t j = 0; j < depth; ++j) {
      int e1 = adj1_[depth * n1_ + j];
      std::int32_t mj = images[j];
      if (target == kDeleted || mj == kDeleted) {
        if (e1 >= 0) c += p_.x_edge;
        continue;
      }
      int e2 = adj2_[static_cast<std::size_t>(target) * n2_ + static_cast<std::size_t>(mj)];
      if (e1 >= 0 && e2 >= 0) {
        c += edge_sub_[static_cast<std::size_t>(e1) * g2_.size() + static_cast<std::size_t>(e2)];
      } else if (e1 >= 0 || e2 >= 0) {
        c += p_.x_edge;
      }
    }
    return c;
  }

  /// Number of g2 edges joining `target` to an already used vertex.
  std::uint32_t closed_edges(std::int32_t target, const std::vector<char> &used) const {
    if (target < 0) return 0;
    std::uint32_t k = 0;
    for (const auto &nb : g2_.neighbors(static_cast<VertexId>(target))) {
      if (used[nb.vertex]) ++k;
    }
    return k;
  }

  /// Insert every unused vertex of g2 and every edge touching one.
  double completion_cost(const std::vector<char> &used) const {
    double c = 0.0;
    for (std::size_t v = 0; v < n2_; ++v) {
      if (!used[v]) c += p_.x_node;
    }
    for (const Edge &ed : g2_.edges()) {
      if (!used[ed.u] || !used[ed.v]) c += p_.x_edge;
    }
    return c;
  }

  double heuristic(std::size_t depth, std::size_t used_count,
                   std::uint32_t closed_edges2) const {
    if (!lower_bound_) return 0.0;
    double r1 = static_cast<double>(n1_ - depth);
    double r2 = static_cast<double>(n2_ - used_count);
    double e1 = static_cast<double>(open_edges1_[depth]);
    double e2 = static_cast<double>(g2_.size() - closed_edges2);
    return p_.x_node * std::abs(r1 - r2) + p_.x_edge * std::abs(e1 - e2);
  }

 private:
  const Graph &g1_;
  const Graph &g2_;
  EditCostParams p_;
  bool lower_bound_;
  std::size_t n1_, n2_;
  std::vector<double> node_sub_;
  std::vector<int> adj1_, adj2_;
  std::vector<double> edge_sub_;
  std::vector<std::size_t> open_edges1_;
};

struct SearchNode {
  double g;
  double f;
  std::uint32_t depth;  // vertices of g1 decided; n1 + 1 once complete
  std::uint32_t parent;
  std::int32_t target;
  std::uint32_t used;          // vertices of g2 used
  std::uint32_t closed_edges;  // g2 edges with both endpoints used
  std::uint64_t seq;
};

class Search {
 public:
  Search(const SearchProblem &prob) : prob_(prob) {
    images_.reserve(prob.n1());
    used_.assign(prob.n2(), 0);
  }

  std::uint32_t root() {
    return add({0.0, prob_.heuristic(0, 0, 0), 0, kNoParent, kDeleted, 0, 0, 0});
  }

  bool complete(std::uint32_t id) const {
    return nodes_[id].depth == prob_.n1() + 1;
  }

  const SearchNode &node(std::uint32_t id) const { return nodes_[id]; }

  /// Appends the children of `id` to `out`.
  void expand(std::uint32_t id, std::vector<std::uint32_t> &out) {
    load(id);
    const SearchNode parent = nodes_[id];
    const std::size_t depth = parent.depth;
    if (depth == prob_.n1()) {
      double g = parent.g + prob_.completion_cost(used_);
      out.push_back(add({g, g, static_cast<std::uint32_t>(depth + 1), id,
                         kCompletion, parent.used, parent.closed_edges, 0}));
      return;
    }
    for (std::size_t v = 0; v <= prob_.n2(); ++v) {
      std::int32_t target = v == prob_.n2() ? kDeleted : static_cast<std::int32_t>(v);
      if (target != kDeleted && used_[v]) continue;
      double g = parent.g + prob_.step_cost(depth, target, images_);
      std::uint32_t used = parent.used + (target == kDeleted ? 0 : 1);
      std::uint32_t closed = parent.closed_edges + prob_.closed_edges(target, used_);
      double f = g + prob_.heuristic(depth + 1, used, closed);
      out.push_back(add({g, f, static_cast<std::uint32_t>(depth + 1), id, target,
                         used, closed, 0}));
    }
  }

  std::vector<std::optional<VertexId>> mapping(std::uint32_t id) {
    load(id);
    std::vector<std::optional<VertexId>> map(prob_.n1());
    for (std::size_t i = 0; i < images_.size() && i < map.size(); ++i) {
      if (images_[i] >= 0) map[i] = static_cast<VertexId>(images_[i]);
    }
    return map;
  }

 private:
  std::uint32_t add(SearchNode n) {
    if (nodes_.size() >= UINT32_MAX - 1) {
      throw Error("edit distance search exceeded its node budget");
    }
    n.seq = next_seq_++;
    nodes_.push_back(n);
    return static_cast<std::uint32_t>(nodes_.size() - 1);
  }

  // Rebuilds the partial mapping of `id` into images_/used_.
  void load(std::uint32_t id) {
    std::fill(used_.begin(), used_.end(), 0);
    std::size_t depth = std::min<std::size_t>(nodes_[id].depth, prob_.n1());
    images_.assign(depth, kDeleted);
    for (std::uint32_t cur = id; cur != kNoParent; cur = nodes_[cur].parent) {
      const SearchNode &n = nodes_[cur];
      if (n.depth == 0 || n.target == kCompletion) continue;
      images_[n.depth - 1] = n.target;
      if (n.target >= 0) used_[static_cast<std::size_t>(n.target)] = 1;
    }
  }

  const SearchProblem &prob_;
  std::vector<SearchNode> nodes_;
  std::uint64_t next_seq_ = 0;
  std::vector<std::int32_t> images_;
  std::vector<char> used_;
};

// Lower f first; among equal f the deeper node, then the older one.
struct Before {
  const Search *search;
  bool operator()(std::uint32_t a, std::uint32_t b) const {
    const SearchNode &x = search->node(a);
    const SearchNode &y = search->node(b);
    if (x.f != y.f) return x.f < y.f;
    if (x.depth != y.depth) return x.depth > y.depth;
    return x.seq < y.seq;
  }
};

std::uint32_t astar(Search &search) {
  auto after = [&](std::uint32_t a, std::uint32_t b) { return Before{&search}(b, a); };
  std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, decltype(after)> open(after);
  open.push(search.root());
  std::vector<std::uint32_t> children;
  while (true) {
    std::uint32_t best = open.top();
    open.pop();
    if (search.complete(best)) return best;
    children.clear();
    search.expand(best, children);
    for (auto c : children) open.push(c);
  }
}

std::uint32_t beam(Search &search, std::size_t width) {
  std::vector<std::uint32_t> level{search.root()}, next;
  Before before{&search};
  while (!search.complete(level.front())) {
    next.clear();
    for (auto id : level) search.expand(id, next);
    if (next.size() > width) {
      std::partial_sort(next.begin(), next.begin() + static_cast<std::ptrdiff_t>(width),
                        next.end(), before);
      next.resize(width);
    } else {
      std::sort(next.begin(), next.end(), before);
    }
    std::swap(level, next);
  }
  return level.front();
}

}  // namespace

EditPath ged(const Graph &g1, const Graph &g2, const EditCostParams &params,
             const GedOptions &opts) {
  params.validate();
  if (opts.beam_width && *opts.beam_width == 0) {
    throw InvalidArgument("beam width must be at least 1");
  }
  SearchProblem prob(g1, g2, params, opts.lower_bound);
  Search search(prob);
  std::uint32_t best = opts.beam_width ? beam(search, *opts.beam_width) : astar(search);
  return edit_path_from_mapping(g1, g2, search.mapping(best), params);
}

namespace {

// Optimal assignment of the edges around u in g1 to those around v in g2.
double local_edge_cost(const Graph &g1, VertexId u, const Graph &g2, VertexId v,
                       const EditCostParams &p) {
  auto a = g1.neighbors(u);
  auto b = g2.neighbors(v);
  const std::size_t n = a.size() + b.size();
  if (n == 0) return 0.0;
  const double forbidden = p.x_edge * static_cast<double>(n) * 2.0 + 1.0 +
                           p.y_edge * 1e6;
  CostMatrix m(n, n, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      m(i, j) = p.y_edge * label_distance(g1.edge(a[i].edge).label, g2.edge(b[j].edge).label);
    }
    for (std::size_t j = 0; j < a.size(); ++j) m(i, b.size() + j) = i == j ? p.x_edge : forbidden;
  }
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) m(a.size() + i, j) = i == j ? p.x_edge : forbidden;
  }
  return solve_lsap(m).total_cost;
}

}  // namespace

EditPath ged_bipartite_path(const Graph &g1, const Graph &g2,
                            const EditCostParams &params) {
  params.validate();
  const std::size_t n1 = g1.order(), n2 = g2.order(), n = n1 + n2;
  if (n == 0) return edit_path_from_mapping(g1, g2, {}, params);

  // Each edge is seen from both of its endpoints, so local edge costs are
  // halved.
  CostMatrix m(n, n, 0.0);
  double largest = 0.0;
  for (VertexId u = 0; u < n1; ++u) {
    for (VertexId v = 0; v < n2; ++v) {
      double c = params.y_node * label_distance(g1.vertex_label(u), g2.vertex_label(v)) +
                 0.5 * local_edge_cost(g1, u, g2, v, params);
      m(u, v) = c;
      largest = std::max(largest, c);
    }
  }
  for (VertexId u = 0; u < n1; ++u) {
    largest = std::max(largest, params.x_node + 0.5 * params.x_edge * static_cast<double>(g1.degree(u)));
  }
  for (VertexId v = 0; v < n2; ++v) {
    largest = std::max(largest, params.x_node + 0.5 * params.x_edge * static_cast<double>(g2.degree(v)));
  }
  const double forbidden = (largest + 1.0) * static_cast<double>(n) + 1.0;
  for (VertexId u = 0; u < n1; ++u) {
    for (VertexId j = 0; j < n1; ++j) {
      m(u, n2 + j) = u == j ? params.x_node +
                                  0.5 * params.x_edge * static_cast<double>(g1.degree(u))
                            : forbidden;
    }
  }
  for (VertexId i = 0; i < n2; ++i) {
    for (VertexId v = 0; v < n2; ++v) {
      m(n1 + i, v) = i == v ? params.x_node +
                                  0.5 * params.x_edge * static_cast<double>(g2.degree(v))
                            : forbidden;
    }
  }
  Assignment a = solve_lsap(m);
  std::vector<std::optional<VertexId>> map(n1);
  for (VertexId u = 0; u < n1; ++u) {
    if (a.mapping[u] < n2) map[u] = a.mapping[u];
  }
  return edit_path_from_mapping(g1, g2, map, params);
}

double ged_bipartite(const Graph &g1, const Graph &g2, const EditCostParams &params) {
  return ged_bipartite_path(g1, g2, params).total_cost;
}

}  // namespace gmatch
