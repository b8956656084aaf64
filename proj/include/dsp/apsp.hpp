#pragma once

#include <map>
#include <memory>
#include <vector>

#include "dsp/cover.hpp"
#include "dsp/es_tree.hpp"
#include "dsp/graph.hpp"

namespace dsp {

/// Decremental (1+eps)-approximate all-pairs distances: a layered 2-cover
/// plus one tree of depth b*2^j per layer-j center, b = ceil(1 + 4/eps).
/// Queries binary-search the smallest layer whose pivot ball holds the
/// target; estimates are dist(u, pivot) + dist(pivot, v) over G*.
class ApspOracle {
 public:
  ApspOracle(int n, const std::vector<Edge>& edges, double epsilon);

  DeletionReport delete_edge(Edge e);

  /// kInfDist exactly when u and v are disconnected in G.
  Dist query(VertexId u, VertexId v) const;

  /// Simple path in G (never using skipped edges) of length <= query(u,v).
  std::vector<VertexId> query_path(VertexId u, VertexId v) const;

  Dist b() const { return b_; }
  const DecrementalGraph& graph() const { return g_; }
  const LayeredCover& cover() const { return cover_; }

  /// True when v lies within b*2^j of u's layer-j pivot (query feasibility).
  bool layer_feasible(int j, VertexId u, VertexId v) const;

 private:
  int smallest_feasible_layer(VertexId u, VertexId v) const;
  void add_tree(int layer, VertexId c);

  DecrementalGraph g_;
  Dist b_;
  LayeredCover cover_;
  std::vector<std::map<VertexId, std::unique_ptr<EsTree>>> trees_;
};

}  // namespace dsp
