#pragma once

#include <optional>
#include <set>
#include <vector>

#include "dsp/graph.hpp"
#include "dsp/types.hpp"

namespace dsp {

enum class EsEventKind { kHeavyToLight, kLevelIncrease, kPartitionMove, kExpelled };

struct EsEvent {
  EsEventKind kind;
  VertexId v = kNoVertex;
  Dist old_level = 0;
  Dist new_level = 0;
  int old_interval = -1;
  int new_interval = -1;
};

struct EsTreeStats {
  int64_t cursor_advances = 0;
  int64_t level_increases = 0;
  int64_t events_emitted = 0;
  int64_t ball_recounts = 0;
};

/// Closed integer interval of levels.
struct LevelInterval {
  Dist lo = 0;
  Dist hi = 0;
};

/// Bounded-depth shortest-path tree over G* with heavy-phase monitoring.
///
/// While the ball B(root, depth) holds more than `mu` internal edges the tree
/// is "heavy": only ball membership and the internal edge count are kept, by
/// recounting after each deletion incident to a ball vertex. Once the count
/// drops to mu the tree reports the transition and from then on maintains
/// exact levels, per-vertex scan cursors, optional partition buckets and
/// vertex marks.
class EsTree {
 public:
  EsTree(const DecrementalGraph& g, VertexId root, Dist depth,
         EdgeCount mu = kUnbounded,
         std::optional<std::vector<LevelInterval>> partition = std::nullopt);

  /// Advance one stage; `e` must have been removed from G* already.
  std::vector<EsEvent> notify_delete(Edge e);

  bool is_heavy() const { return heavy_; }
  VertexId root() const { return root_; }
  Dist depth() const { return depth_; }

  /// Current level; kInfDist while heavy or once expelled past the depth.
  Dist level(VertexId v) const { return level_[v]; }
  bool in_ball(VertexId v) const {
    return heavy_ ? in_ball_[v] != 0 : level_[v] <= depth_;
  }
  int64_t ball_size() const { return ball_size_; }
  /// Internal edge count of the ball; maintained only while heavy.
  EdgeCount ball_edges() const { return ball_edges_; }

  void mark(VertexId v);
  void unmark(VertexId v);
  bool is_marked(VertexId v) const { return marked_[v] != 0; }
  bool has_marked() const { return marked_in_ball_ > 0; }

  /// Path of exactly level(v) edges from root to v along tree parents.
  std::vector<VertexId> extract_path(VertexId v) const;

  int num_intervals() const { return static_cast<int>(partition_.size()); }
  int64_t partition_count(int interval) const { return interval_counts_[interval]; }
  std::vector<VertexId> partition_members(int interval) const;
  /// Ball size at radius r: vertices with level <= r (light phase only).
  int64_t count_within(Dist r) const;

  const EsTreeStats& stats() const { return stats_; }
  int64_t stage() const { return stage_; }

 private:
  void recount_ball();
  void build_tree();
  void enqueue(VertexId v);
  void dequeue(VertexId v);
  void detach_from_parent(VertexId v);
  void detach_children(VertexId v);
  void repair(std::vector<EsEvent>& events);
  void expel(VertexId v);
  int interval_of(Dist level) const;
  void move_interval(VertexId v, Dist old_level, Dist new_level);

  const DecrementalGraph& g_;
  VertexId root_;
  Dist depth_;          // effective (clamped to n; distances never exceed n-1)
  Dist requested_depth_;
  EdgeCount mu_;
  bool heavy_ = false;
  int64_t stage_ = 0;

  std::vector<Dist> level_;
  std::vector<VertexId> parent_;
  std::vector<std::vector<VertexId>> children_;
  std::vector<int32_t> pos_in_parent_;
  std::vector<std::vector<VertexId>> adj_;  // frozen at tree build
  std::vector<size_t> cursor_;
  int64_t ball_size_ = 0;

  // Heavy-phase bookkeeping.
  std::vector<char> in_ball_;
  EdgeCount ball_edges_ = 0;

  std::vector<LevelInterval> partition_;
  std::vector<int64_t> interval_counts_;

  std::vector<char> marked_;
  int64_t marked_in_ball_ = 0;

  std::vector<std::set<VertexId>> buckets_;
  std::vector<char> queued_;
  Dist queue_min_ = 0;

  // Entry levels for aggregating per-stage level-increase events.
  std::vector<Dist> entry_level_;
  std::vector<VertexId> touched_;
  std::vector<char> touched_flag_;

  EsTreeStats stats_;
};

}  // namespace dsp
