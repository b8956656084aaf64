#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "dsp/connectivity.hpp"
#include "dsp/cover.hpp"
#include "dsp/es_tree.hpp"
#include "dsp/graph.hpp"

namespace dsp {

using ComponentId = int32_t;
constexpr ComponentId kNoComponent = -1;

struct HlEvent {
  enum Kind { kSplit, kTransition } kind;
  // kTransition: v left the near-heavy set; from_comp is the singleton
  // component it occupied after its incident edges were carved away.
  VertexId v = kNoVertex;
  // kSplit: component from_comp lost `smaller` (|smaller| <= other side),
  // which is relabeled new_comp.
  ComponentId from_comp = kNoComponent;
  ComponentId new_comp = kNoComponent;
  std::vector<VertexId> smaller;
};

struct HlStats {
  int64_t transitions = 0;
  int64_t splits = 0;
};

/// Additive error cap for contracting near-heavy components: 8(r+tau)m/mu.
double contraction_error_bound(EdgeCount mu, Dist r, Dist tau, int64_t m);

/// Near-heavy / near-light status per vertex (one-way latch: a vertex is
/// near-light once its cover pivot exists and is (mu, r+2tau)-light at some
/// stage), plus connected components of the near-heavy induced subgraph of
/// G* with smaller-side split reporting.
class HeavyLightDecomposition {
 public:
  HeavyLightDecomposition(const DecrementalGraph& g, const LayeredCover& cover,
                          EdgeCount mu, Dist r, Dist tau);

  /// Advance one stage. star_edge is the edge removed from G* this stage (or
  /// nullopt for a skipped deletion); promotions are the cover's new centers.
  std::vector<HlEvent> notify_stage(std::optional<Edge> star_edge,
                                    const std::vector<Promotion>& promotions);

  bool near_light(VertexId v) const { return near_light_[v] != 0; }
  ComponentId component_of(VertexId v) const { return comp_of_[v]; }
  const std::vector<VertexId>& component_members(ComponentId id) const {
    return members_.at(id);
  }
  std::vector<ComponentId> component_ids() const;

  Dist r() const { return r_; }
  Dist tau() const { return tau_; }
  int cover_layer() const { return layer_; }
  const HlStats& stats() const { return stats_; }
  int64_t stage() const { return stage_; }

 private:
  class InducedSource;
  bool pivot_light(VertexId v) const;
  void add_monitor(VertexId center);
  void remove_induced_edge(VertexId a, VertexId b, std::vector<HlEvent>& out);
  void carve_out_vertex(VertexId v, std::vector<HlEvent>& out);

  const DecrementalGraph& g_;
  const LayeredCover& cover_;
  EdgeCount mu_;
  Dist r_, tau_;
  int layer_;
  int64_t stage_ = 0;

  std::map<VertexId, std::unique_ptr<EsTree>> monitors_;  // per cover center
  std::vector<char> near_light_;
  std::vector<std::vector<VertexId>> induced_;  // near-heavy adjacency, sorted
  std::vector<ComponentId> comp_of_;
  std::map<ComponentId, std::vector<VertexId>> members_;
  ComponentId next_comp_ = 0;
  std::unique_ptr<ConnectivityBackend> backend_;
  HlStats stats_;
};

}  // namespace dsp
