#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "dsp/clustering.hpp"
#include "dsp/es_tree.hpp"
#include "dsp/graph.hpp"
#include "dsp/heavy_light.hpp"

namespace dsp {

using EmuVertex = int32_t;  // [0,n) real vertices, >= n component vertices

enum class EmuEdgeKind { kCluster, kComponent, kSource };

struct EmuEdge {
  int64_t id = -1;
  EmuVertex a = -1;
  EmuVertex b = -1;
  Dist w = 0;
  EmuEdgeKind kind = EmuEdgeKind::kCluster;
  EmuVertex assigned = -1;  // fixed at insertion
  bool alive = false;
};

enum class EmuChangeKind { kRemove, kInsert, kWeightIncrease };

struct EmuChange {
  EmuChangeKind kind = EmuChangeKind::kInsert;
  int64_t edge_id = -1;
  EmuVertex a = -1;
  EmuVertex b = -1;
  Dist weight = 0;      // new weight for insert / weight-increase
  Dist old_weight = 0;  // weight-increase only
};

/// Per-stage batch: removals, then insertions, then weight increases, each
/// sorted by (a, b, id).
struct ChangeBatch {
  std::vector<EmuChange> changes;
  bool empty() const { return changes.empty(); }
};

/// The weighted threshold emulator for one source: cluster edges from active
/// centers (weight = dist rounded up to a multiple of eps*tau), component
/// vertices starring their near-heavy components at weight eps*tau, and
/// direct source-ball edges. Emits one coalesced ChangeBatch per stage.
class ThresholdEmulator {
 public:
  ThresholdEmulator(const DecrementalGraph& g, const ClusterHierarchy& ch,
                    const HeavyLightDecomposition& hl, VertexId source,
                    Dist tau, int inv_eps);

  ChangeBatch notify_stage(std::optional<Edge> star_edge,
                           const std::vector<HlEvent>& hl_events,
                           const ClusterStageReport& cluster_report);

  int base_n() const { return n_; }
  EmuVertex num_vertices() const { return next_vertex_; }
  bool is_component_vertex(EmuVertex x) const { return x >= n_; }
  Dist eps_tau() const { return eps_tau_; }
  Dist tau() const { return tau_; }
  int inv_eps() const { return inv_; }
  int k() const { return ch_.k(); }
  VertexId source() const { return source_; }
  Dist source_ball_radius() const { return src_radius_; }

  const EmuEdge& edge(int64_t id) const { return edges_[id]; }
  const std::vector<int64_t>& incident(EmuVertex x) const {
    return incident_[x];
  }
  int64_t total_edges_ever() const { return static_cast<int64_t>(edges_.size()); }
  int64_t live_edge_count() const { return live_edges_; }
  int64_t live_cluster_edge_count() const;

  /// Exact shortest-path weight in the current emulator (testing utility).
  Dist distance_in_emulator(EmuVertex u, EmuVertex v) const;

  int64_t stage() const { return stage_; }

 private:
  Dist round_up(Dist d) const {
    return (d + eps_tau_ - 1) / eps_tau_ * eps_tau_;
  }
  EmuVertex assign_endpoint(EmuVertex a, EmuVertex b) const;
  int64_t insert_edge(EmuVertex a, EmuVertex b, Dist w, EmuEdgeKind kind,
                      std::vector<EmuChange>& log);
  void remove_edge(int64_t id, std::vector<EmuChange>& log);
  void bump_weight(int64_t id, Dist w, std::vector<EmuChange>& log);
  void insert_cluster_edges(VertexId c, std::vector<EmuChange>& log);
  ChangeBatch finalize(std::vector<EmuChange> log);

  const DecrementalGraph& g_;
  const ClusterHierarchy& ch_;
  const HeavyLightDecomposition& hl_;
  VertexId source_;
  Dist tau_;
  int inv_;
  Dist eps_tau_;
  Dist src_radius_;
  int n_;
  EmuVertex next_vertex_;
  int64_t live_edges_ = 0;
  int64_t stage_ = 0;

  std::unique_ptr<EsTree> src_tree_;
  std::vector<EmuEdge> edges_;  // append-only edge instances
  std::vector<std::vector<int64_t>> incident_;
  std::map<ComponentId, EmuVertex> comp_vertex_;
  std::map<ComponentId, std::map<VertexId, int64_t>> comp_edges_;
  std::map<VertexId, std::map<VertexId, int64_t>> cluster_edges_;  // by center
  std::map<VertexId, int64_t> source_edges_;
};

}  // namespace dsp
