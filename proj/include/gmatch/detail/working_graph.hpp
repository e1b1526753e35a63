#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gmatch/graph.hpp"

namespace gmatch::detail {

/// A graph with vertices switched off one at a time. Degrees and cut-vertex
/// queries refer to the surviving vertices.
class WorkingGraph {
 public:
  explicit WorkingGraph(const Graph &g)
      : g_(g), alive_(g.order(), 1), deg_(g.order()), mark_(g.order(), 0) {
    for (VertexId v = 0; v < g.order(); ++v) deg_[v] = g.degree(v);
  }

  bool alive(VertexId v) const { return alive_[v] != 0; }
  std::size_t degree(VertexId v) const { return deg_[v]; }

  /// Removing v would split its component (every neighbour is checked to
  /// be reachable from the first one without passing through v).
  bool is_cut_vertex(VertexId v) {
    if (deg_[v] < 2) return false;
    VertexId start = SIZE_MAX;
    for (const auto &nb : g_.neighbors(v)) {
      if (alive_[nb.vertex]) {
        start = nb.vertex;
        break;
      }
    }
    ++stamp_;
    mark_[v] = stamp_;
    mark_[start] = stamp_;
    stack_.assign(1, start);
    while (!stack_.empty()) {
      VertexId u = stack_.back();
      stack_.pop_back();
      for (const auto &nb : g_.neighbors(u)) {
        if (alive_[nb.vertex] && mark_[nb.vertex] != stamp_) {
          mark_[nb.vertex] = stamp_;
          stack_.push_back(nb.vertex);
        }
      }
    }
    for (const auto &nb : g_.neighbors(v)) {
      if (alive_[nb.vertex] && mark_[nb.vertex] != stamp_) return true;
    }
    return false;
  }

  /// Removable without changing the number of components: not a cut vertex
  /// and not isolated (an isolated vertex is a component of its own).
  bool contractible(VertexId v) { return deg_[v] > 0 && !is_cut_vertex(v); }

  void remove(VertexId v) {
    alive_[v] = 0;
    for (const auto &nb : g_.neighbors(v)) {
      if (alive_[nb.vertex]) --deg_[nb.vertex];
    }
  }

  std::vector<VertexId> survivors() const {
    std::vector<VertexId> out;
    for (VertexId v = 0; v < g_.order(); ++v) {
      if (alive_[v]) out.push_back(v);
    }
    return out;
  }

 private:
  const Graph &g_;
  std::vector<char> alive_;
  std::vector<std::size_t> deg_;
  std::vector<std::size_t> mark_;
  std::size_t stamp_ = 0;
  std::vector<VertexId> stack_;
};

}  // namespace gmatch::detail
