#pragma once

#include <map>
#include <memory>
#include <vector>

#include "dsp/es_tree.hpp"
#include "dsp/graph.hpp"

namespace dsp {

struct PivotChange {
  int layer = 0;
  VertexId v = kNoVertex;
  VertexId old_pivot = kNoVertex;
  VertexId new_pivot = kNoVertex;
};

struct Promotion {
  int layer = 0;  // layer joined
  VertexId center = kNoVertex;
};

struct CoverStageReport {
  std::vector<Promotion> promotions;
  std::vector<PivotChange> pivot_changes;
};

struct CoverStats {
  std::vector<int64_t> centers_per_layer;
  int64_t total_promotions = 0;
};

/// Layered cover on G*: base radius 2 internally, layers j in [0, floor(lg n)]
/// with center sets C_j that only grow. Layer j covers every vertex that is
/// (mu, 2*2^j)-light within distance 2^j; with mu unbounded every vertex is
/// covered. Arbitrary radii tau >= 2 are served by mapping onto base layers.
///
/// Per center and layer the cover runs a ball tree of depth 2^j (pivot
/// distances, eligibility marks) and, for finite mu, a lightness monitor of
/// depth 2^{j+2} whose heavy flag gates promotion into layer j+1.
class LayeredCover {
 public:
  LayeredCover(const DecrementalGraph& g, EdgeCount mu = kUnbounded);

  /// Advance one stage; e must have been removed from G* already.
  CoverStageReport notify_delete(Edge e);

  int layers() const { return levels_; }  // highest layer index J
  const std::vector<VertexId>& centers(int layer) const {
    return centers_[layer];
  }

  /// Stored pivot p_{C_j}(v): nearest layer-j center within 2^j, smallest
  /// index on ties; kNoVertex when no center covers v.
  VertexId pivot(int layer, VertexId v) const { return pivot_[layer][v]; }
  Dist pivot_dist(int layer, VertexId v) const;

  /// Layer whose radius serves a (mu, tau)-cover request: floor(lg tau).
  int layer_for_radius(Dist tau) const;

  /// Exact dist_{G*}(c, v) read from c's layer-j ball tree; kInfDist if
  /// beyond 2^j.
  Dist center_dist(int layer, VertexId c, VertexId v) const;

  const EsTree& ball_tree(int layer, VertexId c) const {
    return *trees_[layer].at(c);
  }
  bool is_center(int layer, VertexId c) const;

  CoverStats stats() const;
  int64_t stage() const { return stage_; }

 private:
  bool eligible(int layer, VertexId c) const;
  void promote(int layer_from, VertexId c, CoverStageReport& report);
  void make_center(int layer, VertexId c);
  void recompute_pivot(int layer, VertexId v, CoverStageReport& report);
  void offer_pivot(int layer, VertexId c, CoverStageReport& report);

  const DecrementalGraph& g_;
  EdgeCount mu_;
  int levels_ = 0;
  int64_t stage_ = 0;
  int64_t total_promotions_ = 0;

  std::vector<std::vector<VertexId>> centers_;                 // per layer
  std::vector<std::vector<char>> is_center_;                   // per layer
  std::vector<std::map<VertexId, std::unique_ptr<EsTree>>> trees_;
  std::vector<std::map<VertexId, std::unique_ptr<EsTree>>> light_trees_;
  std::vector<std::vector<VertexId>> pivot_;                   // per layer
};

}  // namespace dsp
