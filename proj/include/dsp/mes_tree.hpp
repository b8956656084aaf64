#pragma once

#include <map>
#include <set>
#include <vector>

#include "dsp/emulator.hpp"
#include "dsp/types.hpp"

namespace dsp {

struct MesJoinEvent {
  VertexId center = kNoVertex;
  int level = 0;
  std::vector<VertexId> core;  // core members at the joining stage
};

struct MesActiveCore {
  VertexId center = kNoVertex;
  std::vector<VertexId> core;  // current core, used by the dragging step
};

/// Per-stage inputs beyond the emulator's change batch.
struct MesStageEvents {
  std::vector<VertexId> lightened;  // fresh near-light transitions
  std::vector<MesJoinEvent> joins;
  std::vector<MesActiveCore> actives;  // all active centers after the stage
};

struct EstimateChange {
  EmuVertex v = -1;
  Dist old_est = 0;
  Dist new_est = 0;
  bool expelled = false;
};

struct MesStats {
  int64_t refile_scans = 0;    // edge refilings by their assigned endpoint
  int64_t refile_budget = 0;   // assigned degree x events allowing a refile
  int64_t cursor_advances = 0;
  int64_t cursor_budget = 0;
  int64_t rises = 0;
  int64_t drags = 0;
  int64_t expulsions = 0;
};

/// Distance estimates over one threshold emulator, maintained monotonically
/// except for the two sanctioned decrease events (near-light transition,
/// active-join reset). Consolidation enforces
///   l(v) = max(l(v), min over live edges (u,v) of l(u) + w)
/// to its least fixpoint using per-vertex offer buckets: an edge's offer is
/// refiled only by its assigned endpoint, so scan work is charged to the
/// assigned side's quantized estimate changes. Estimates beyond the depth
/// expel real vertices permanently; component vertices saturate at one
/// quantum above the depth instead (their exact surplus is unobservable).
class AlmostMesTree {
 public:
  AlmostMesTree(const ThresholdEmulator& em, Dist depth);

  std::vector<EstimateChange> apply_stage(const ChangeBatch& batch,
                                          const MesStageEvents& events);

  Dist estimate(EmuVertex v) const {
    return expelled_[v] ? kInfDist : est_[v];
  }
  bool expelled(EmuVertex v) const { return expelled_[v] != 0; }
  bool tracked(EmuVertex v) const {
    return v < static_cast<EmuVertex>(est_.size());
  }

  Dist depth() const { return depth_; }
  Dist eps_tau() const { return eps_tau_; }
  Dist cap() const { return cap_; }
  Dist drag_delta() const { return drag_delta_; }
  const MesStats& stats() const { return stats_; }
  int64_t stage() const { return stage_; }

 private:
  struct VertexState {
    std::vector<int64_t> assigned;            // live edges assigned to v
    std::map<Dist, std::set<int64_t>> offers; // filed offers, unassigned side
    size_t cursor = 0;
    int64_t witness = -1;
    bool witness_assigned = false;  // witness edge is in `assigned`
  };

  EmuVertex other(const EmuEdge& e, EmuVertex x) const {
    return e.a == x ? e.b : e.a;
  }
  Dist live_offer(const EmuEdge& e, EmuVertex to) const;
  void grow_to(EmuVertex v);
  void file_offer(int64_t id);
  void unfile_offer(int64_t id);
  void refile_after_change(EmuVertex v, std::set<EmuVertex>* wake_now,
                           std::set<EmuVertex>* wake_next);
  void clear_witness(EmuVertex v);
  void set_witness(EmuVertex v, int64_t id);
  void break_witness_if_stale(EmuVertex holder, std::set<EmuVertex>* wake_now,
                              std::set<EmuVertex>* wake_next);
  void reset_far_cursors(EmuVertex changed);
  void expel(EmuVertex v, std::set<EmuVertex>* wake_now,
             std::set<EmuVertex>* wake_next);
  void force_set(EmuVertex v, Dist value, std::set<EmuVertex>* wake_now,
                 std::set<EmuVertex>* wake_next);
  void consolidate(std::set<EmuVertex>& seeds,
                   std::vector<EstimateChange>& out);

  const ThresholdEmulator& em_;
  Dist depth_;
  Dist eps_tau_;
  Dist cap_;         // first multiple of eps_tau beyond depth
  Dist drag_delta_;  // tau * inv^{k+1}
  VertexId source_;
  int64_t stage_ = 0;

  std::vector<Dist> est_;
  std::vector<char> expelled_;
  std::vector<VertexState> vs_;
  std::vector<Dist> filed_;              // by edge id
  std::map<EmuVertex, std::set<int64_t>> rev_deps_;  // far vertex -> witness edges
  std::set<EmuVertex> pending_next_;     // witnesses broken by dragging

  MesStats stats_;
};

}  // namespace dsp
