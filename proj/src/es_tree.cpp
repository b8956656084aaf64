#include "dsp/es_tree.hpp"

#include <algorithm>
#include <cassert>
#include <deque>

namespace dsp {

EsTree::EsTree(const DecrementalGraph& g, VertexId root, Dist depth,
               EdgeCount mu, std::optional<std::vector<LevelInterval>> partition)
    : g_(g), root_(root), requested_depth_(depth), mu_(mu) {
  if (root < 0 || root >= g.n()) throw InputError("root out of range");
  if (depth < 0) throw InputError("negative depth");
  // Distances in G* never exceed n-1, so deeper trees behave identically.
  depth_ = std::min<Dist>(depth, g.n());

  if (partition) {
    partition_ = std::move(*partition);
    if (partition_.empty() || partition_.front().lo != 0 ||
        partition_.back().hi != requested_depth_)
      throw InputError("partition must cover [0, depth]");
    for (size_t i = 0; i < partition_.size(); ++i) {
      if (partition_[i].lo > partition_[i].hi)
        throw InputError("empty partition interval");
      if (i > 0 && partition_[i].lo != partition_[i - 1].hi + 1)
        throw InputError("partition intervals must be contiguous");
    }
    interval_counts_.assign(partition_.size(), 0);
  }

  const int n = g_.n();
  level_.assign(n, kInfDist);
  parent_.assign(n, kNoVertex);
  children_.assign(n, {});
  pos_in_parent_.assign(n, -1);
  adj_.assign(n, {});
  cursor_.assign(n, 0);
  in_ball_.assign(n, 0);
  marked_.assign(n, 0);
  queued_.assign(n, 0);
  entry_level_.assign(n, 0);
  touched_flag_.assign(n, 0);
  buckets_.assign(static_cast<size_t>(depth_) + 2, {});

  recount_ball();
  heavy_ = ball_edges_ > mu_;
  if (!heavy_) build_tree();
}

void EsTree::recount_ball() {
  ++stats_.ball_recounts;
  std::fill(in_ball_.begin(), in_ball_.end(), 0);
  std::vector<Dist> dist(g_.n(), kInfDist);
  std::deque<VertexId> q{root_};
  dist[root_] = 0;
  in_ball_[root_] = 1;
  ball_size_ = 1;
  while (!q.empty()) {
    VertexId x = q.front();
    q.pop_front();
    if (dist[x] == depth_) continue;
    for (VertexId w : g_.star_neighbors(x))
      if (dist[w] == kInfDist) {
        dist[w] = dist[x] + 1;
        in_ball_[w] = 1;
        ++ball_size_;
        q.push_back(w);
      }
  }
  ball_edges_ = 0;
  marked_in_ball_ = 0;
  for (VertexId v = 0; v < g_.n(); ++v) {
    if (!in_ball_[v]) {
      marked_[v] = 0;  // auto-unmark vertices that left the ball
      continue;
    }
    if (marked_[v]) ++marked_in_ball_;
    for (VertexId w : g_.star_neighbors(v))
      if (in_ball_[w]) ++ball_edges_;
  }
  ball_edges_ /= 2;
}

void EsTree::build_tree() {
  std::fill(level_.begin(), level_.end(), kInfDist);
  std::fill(parent_.begin(), parent_.end(), kNoVertex);
  std::fill(pos_in_parent_.begin(), pos_in_parent_.end(), -1);
  for (auto& c : children_) c.clear();
  if (!interval_counts_.empty())
    std::fill(interval_counts_.begin(), interval_counts_.end(), 0);

  std::deque<VertexId> q{root_};
  level_[root_] = 0;
  ball_size_ = 1;
  while (!q.empty()) {
    VertexId x = q.front();
    q.pop_front();
    if (level_[x] == depth_) continue;
    for (VertexId w : g_.star_neighbors(x))
      if (level_[w] == kInfDist) {
        level_[w] = level_[x] + 1;
        parent_[w] = x;
        ++ball_size_;
        q.push_back(w);
      }
  }
  marked_in_ball_ = 0;
  for (VertexId v = 0; v < g_.n(); ++v) {
    if (level_[v] == kInfDist) {
      marked_[v] = 0;
      continue;
    }
    in_ball_[v] = 1;
    if (marked_[v]) ++marked_in_ball_;
    adj_[v] = g_.star_neighbors(v);
    cursor_[v] = 0;
    if (parent_[v] != kNoVertex) {
      VertexId p = parent_[v];
      pos_in_parent_[v] = static_cast<int32_t>(children_[p].size());
      children_[p].push_back(v);
    }
    if (!partition_.empty()) ++interval_counts_[interval_of(level_[v])];
  }
}

int EsTree::interval_of(Dist level) const {
  int lo = 0, hi = static_cast<int>(partition_.size()) - 1;
  while (lo < hi) {
    int mid = (lo + hi) / 2;
    if (partition_[mid].hi < level)
      lo = mid + 1;
    else
      hi = mid;
  }
  return lo;
}

void EsTree::enqueue(VertexId v) {
  if (queued_[v]) return;
  queued_[v] = 1;
  buckets_[level_[v]].insert(v);
}

void EsTree::dequeue(VertexId v) {
  if (!queued_[v]) return;
  queued_[v] = 0;
  buckets_[level_[v]].erase(v);
}

void EsTree::detach_from_parent(VertexId v) {
  VertexId p = parent_[v];
  if (p == kNoVertex) return;
  auto& sib = children_[p];
  int32_t pos = pos_in_parent_[v];
  VertexId last = sib.back();
  sib[pos] = last;
  pos_in_parent_[last] = pos;
  sib.pop_back();
  parent_[v] = kNoVertex;
  pos_in_parent_[v] = -1;
}

void EsTree::detach_children(VertexId v) {
  while (!children_[v].empty()) {
    VertexId c = children_[v].back();
    children_[v].pop_back();
    parent_[c] = kNoVertex;
    pos_in_parent_[c] = -1;
    enqueue(c);
  }
}

void EsTree::expel(VertexId v) {
  dequeue(v);
  detach_from_parent(v);  // already detached in practice
  detach_children(v);
  --ball_size_;
  in_ball_[v] = 0;
  if (marked_[v]) {
    marked_[v] = 0;
    --marked_in_ball_;
  }
  level_[v] = kInfDist;
  adj_[v].clear();
  adj_[v].shrink_to_fit();
}

std::vector<EsEvent> EsTree::notify_delete(Edge e) {
  ++stage_;
  std::vector<EsEvent> events;

  if (heavy_) {
    if (in_ball_[e.u] || in_ball_[e.v]) {
      recount_ball();
      if (ball_edges_ <= mu_) {
        heavy_ = false;
        build_tree();
        events.push_back({EsEventKind::kHeavyToLight});
        ++stats_.events_emitted;
      }
    }
    return events;
  }

  if (parent_[e.v] == e.u) {
    detach_from_parent(e.v);
    enqueue(e.v);
  }
  if (parent_[e.u] == e.v) {
    detach_from_parent(e.u);
    enqueue(e.u);
  }
  repair(events);
  return events;
}

void EsTree::repair(std::vector<EsEvent>& events) {
  touched_.clear();
  queue_min_ = 0;

  while (true) {
    while (queue_min_ <= depth_ && buckets_[queue_min_].empty()) ++queue_min_;
    if (queue_min_ > depth_) break;
    VertexId v = *buckets_[queue_min_].begin();

    // Look for a support edge at the current level.
    bool attached = false;
    auto& adj = adj_[v];
    while (cursor_[v] < adj.size()) {
      VertexId w = adj[cursor_[v]];
      ++stats_.cursor_advances;
      if (level_[w] != kInfDist && level_[w] + 1 == level_[v] &&
          g_.has_star_edge(v, w)) {
        parent_[v] = w;
        pos_in_parent_[v] = static_cast<int32_t>(children_[w].size());
        children_[w].push_back(v);
        dequeue(v);
        attached = true;
        break;
      }
      ++cursor_[v];
    }
    if (attached) continue;

    // No support: the level rises by one.
    ++stats_.level_increases;
    if (!touched_flag_[v]) {
      touched_flag_[v] = 1;
      entry_level_[v] = level_[v];
      touched_.push_back(v);
    }
    detach_children(v);
    dequeue(v);
    Dist nl = level_[v] + 1;
    if (nl > depth_) {
      level_[v] = nl;  // expel() sets the final sentinel
      expel(v);
    } else {
      level_[v] = nl;
      cursor_[v] = 0;
      enqueue(v);
    }
  }

  // Aggregate per-vertex events, ascending vertex order.
  std::sort(touched_.begin(), touched_.end());
  for (VertexId v : touched_) {
    touched_flag_[v] = 0;
    const Dist from = entry_level_[v];
    if (level_[v] == kInfDist) {
      if (!partition_.empty()) --interval_counts_[interval_of(from)];
      events.push_back({EsEventKind::kExpelled, v, from, kInfDist});
      ++stats_.events_emitted;
    } else {
      events.push_back({EsEventKind::kLevelIncrease, v, from, level_[v]});
      ++stats_.events_emitted;
      if (!partition_.empty()) {
        int oi = interval_of(from);
        int ni = interval_of(level_[v]);
        if (oi != ni) {
          --interval_counts_[oi];
          ++interval_counts_[ni];
          events.push_back(
              {EsEventKind::kPartitionMove, v, from, level_[v], oi, ni});
          ++stats_.events_emitted;
        }
      }
    }
  }
}

void EsTree::mark(VertexId v) {
  if (v < 0 || v >= g_.n() || !in_ball(v))
    throw InputError("mark: vertex outside the ball");
  if (!marked_[v]) {
    marked_[v] = 1;
    ++marked_in_ball_;
  }
}

void EsTree::unmark(VertexId v) {
  if (v < 0 || v >= g_.n()) throw InputError("unmark: vertex out of range");
  if (marked_[v]) {
    marked_[v] = 0;
    if (in_ball(v)) --marked_in_ball_;
  }
}

std::vector<VertexId> EsTree::extract_path(VertexId v) const {
  if (heavy_) throw InputError("extract_path: tree is heavy");
  if (v < 0 || v >= g_.n() || level_[v] > depth_)
    throw InputError("extract_path: vertex not in tree");
  std::vector<VertexId> path;
  for (VertexId x = v; x != kNoVertex; x = parent_[x]) path.push_back(x);
  std::reverse(path.begin(), path.end());
  assert(path.front() == root_);
  return path;
}

std::vector<VertexId> EsTree::partition_members(int interval) const {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < g_.n(); ++v)
    if (level_[v] <= depth_ && interval_of(level_[v]) == interval)
      out.push_back(v);
  return out;
}

int64_t EsTree::count_within(Dist r) const {
  if (heavy_) throw InputError("count_within: tree is heavy");
  if (r >= depth_) return ball_size_;
  if (!partition_.empty()) {
    // Prefix sums when r aligns with an interval boundary.
    int iv = interval_of(r);
    if (partition_[iv].hi == r) {
      int64_t sum = 0;
      for (int i = 0; i <= iv; ++i) sum += interval_counts_[i];
      return sum;
    }
  }
  int64_t count = 0;
  for (VertexId v = 0; v < g_.n(); ++v)
    if (level_[v] <= r) ++count;
  return count;
}

}  // namespace dsp
