#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "dsp/cover.hpp"
#include "dsp/es_tree.hpp"
#include "dsp/graph.hpp"

namespace dsp {

constexpr int kInfLevel = 1 << 30;

struct ActiveChange {
  VertexId center = kNoVertex;
  int level = 0;
  bool joined = false;  // false: left
};

struct ClusterStageReport {
  std::vector<ActiveChange> changes;
  // Centers whose cluster level changed this stage (new value; kInfLevel
  // never reappears once finite).
  std::vector<std::pair<VertexId, int>> level_changes;
};

/// Cluster levels and active-center sets over the centers of one cover layer.
///
/// Each center runs a partitioned tree to depth 2*tau*(1/eps)^{k+1} with
/// lightness threshold mu; while the tree is heavy the level is infinite.
/// Once light, level(c) is the largest i <= k with |B(c, tau*(1/eps)^j)| >=
/// n^{j/k} for all j <= i, which is nonincreasing because balls only shrink.
/// A_i is kept maximal among level-i centers under pairwise separation
/// > 2*tau*(1/eps)^i via per-center separation trees with marks.
class ClusterHierarchy {
 public:
  ClusterHierarchy(const DecrementalGraph& g, const LayeredCover& cover,
                   EdgeCount mu, Dist tau, int inv_eps, int k);

  ClusterStageReport notify_stage(std::optional<Edge> star_edge,
                                  const std::vector<Promotion>& promotions);

  int level(VertexId c) const;
  bool is_active(VertexId c) const;
  const std::vector<VertexId>& active(int level) const { return active_[level]; }
  std::vector<VertexId> centers() const;

  /// Ball radius of level i: tau * inv_eps^i.
  Dist radius(int i) const;
  std::vector<VertexId> core(VertexId c) const;
  std::vector<VertexId> cluster(VertexId c) const;
  /// Exact dist_{G*}(c, v) up to depth 2*tau*inv^{k+1} (kInfDist beyond).
  Dist center_dist(VertexId c, VertexId v) const;

  int k() const { return k_; }
  int inv_eps() const { return inv_; }
  Dist tau() const { return tau_; }
  int cover_layer() const { return layer_; }
  int64_t stage() const { return stage_; }

 private:
  struct CenterState {
    std::unique_ptr<EsTree> level_tree;
    std::unique_ptr<EsTree> sep_tree;  // depth 2*tau*inv^level, finite levels
    int level = kInfLevel;
    bool active = false;
  };

  void add_center(VertexId c);
  int compute_level(const CenterState& st) const;
  void make_sep_tree(VertexId c, CenterState& st);
  void set_level(VertexId c, CenterState& st, int new_level,
                 ClusterStageReport& report);
  void leave_active(VertexId c, CenterState& st, ClusterStageReport& report);

  const DecrementalGraph& g_;
  const LayeredCover& cover_;
  EdgeCount mu_;
  Dist tau_;
  int inv_;
  int k_;
  int layer_;
  int64_t stage_ = 0;

  std::map<VertexId, CenterState> states_;
  std::vector<std::vector<VertexId>> active_;  // per level, sorted
};

}  // namespace dsp
