#include "dsp/emulator.hpp"

#include <algorithm>
#include <queue>

namespace dsp {

ThresholdEmulator::ThresholdEmulator(const DecrementalGraph& g,
                                     const ClusterHierarchy& ch,
                                     const HeavyLightDecomposition& hl,
                                     VertexId source, Dist tau, int inv_eps)
    : g_(g),
      ch_(ch),
      hl_(hl),
      source_(source),
      tau_(tau),
      inv_(inv_eps),
      n_(g.n()),
      next_vertex_(g.n()) {
  if (tau_ % inv_ != 0)
    throw InputError("eps*tau must be a positive integer");
  eps_tau_ = tau_ / inv_;
  if (ch_.tau() != tau_ || ch_.inv_eps() != inv_)
    throw InputError("cluster hierarchy parameters do not match");
  Dist want_r = 4 * ch_.radius(ch_.k() + 1);
  if (hl_.r() != want_r || hl_.tau() != tau_)
    throw InputError("heavy/light parameters do not match");
  src_radius_ = 2 * ch_.radius(ch_.k() + 1);

  incident_.resize(n_);
  src_tree_ = std::make_unique<EsTree>(g_, source_, src_radius_);

  std::vector<EmuChange> log;  // discarded at build
  for (ComponentId id : hl_.component_ids()) {
    EmuVertex cv = next_vertex_++;
    incident_.emplace_back();
    comp_vertex_[id] = cv;
    for (VertexId v : hl_.component_members(id))
      comp_edges_[id][v] =
          insert_edge(cv, v, eps_tau_, EmuEdgeKind::kComponent, log);
  }
  for (int i = 0; i <= ch_.k(); ++i)
    for (VertexId c : ch_.active(i)) insert_cluster_edges(c, log);
  for (VertexId v = 0; v < n_; ++v) {
    if (v == source_) continue;
    Dist d = src_tree_->level(v);
    if (d <= src_radius_)
      source_edges_[v] =
          insert_edge(source_, v, round_up(d), EmuEdgeKind::kSource, log);
  }
}

EmuVertex ThresholdEmulator::assign_endpoint(EmuVertex a, EmuVertex b) const {
  bool aa = a < n_ && ch_.is_active(a);
  bool ba = b < n_ && ch_.is_active(b);
  if (aa && ba) return std::min(a, b);
  if (aa) return a;
  if (ba) return b;
  if (is_component_vertex(a)) return b;
  if (is_component_vertex(b)) return a;
  if (a == source_) return a;
  if (b == source_) return b;
  throw std::logic_error("edge matches no assignment rule");
}

int64_t ThresholdEmulator::insert_edge(EmuVertex a, EmuVertex b, Dist w,
                                       EmuEdgeKind kind,
                                       std::vector<EmuChange>& log) {
  EmuEdge e;
  e.id = static_cast<int64_t>(edges_.size());
  e.a = a;
  e.b = b;
  e.w = w;
  e.kind = kind;
  e.assigned = assign_endpoint(a, b);
  e.alive = true;
  edges_.push_back(e);
  incident_[a].push_back(e.id);
  incident_[b].push_back(e.id);
  ++live_edges_;
  log.push_back({EmuChangeKind::kInsert, e.id, a, b, w, 0});
  return e.id;
}

void ThresholdEmulator::remove_edge(int64_t id, std::vector<EmuChange>& log) {
  EmuEdge& e = edges_[id];
  e.alive = false;
  auto drop = [&](EmuVertex x) {
    auto& inc = incident_[x];
    inc.erase(std::find(inc.begin(), inc.end(), id));
  };
  drop(e.a);
  drop(e.b);
  --live_edges_;
  log.push_back({EmuChangeKind::kRemove, id, e.a, e.b, e.w, e.w});
}

void ThresholdEmulator::bump_weight(int64_t id, Dist w,
                                    std::vector<EmuChange>& log) {
  EmuEdge& e = edges_[id];
  if (w == e.w) return;
  if (w < e.w) throw std::logic_error("emulator edge weight decreased");
  log.push_back({EmuChangeKind::kWeightIncrease, id, e.a, e.b, w, e.w});
  e.w = w;
}

void ThresholdEmulator::insert_cluster_edges(VertexId c,
                                             std::vector<EmuChange>& log) {
  const Dist r = ch_.radius(ch_.level(c) + 1);
  auto& mine = cluster_edges_[c];
  for (VertexId v : ch_.cluster(c)) {
    if (v == c) continue;
    Dist d = ch_.center_dist(c, v);
    (void)r;
    mine[v] = insert_edge(c, v, round_up(d), EmuEdgeKind::kCluster, log);
  }
}

ChangeBatch ThresholdEmulator::notify_stage(
    std::optional<Edge> star_edge, const std::vector<HlEvent>& hl_events,
    const ClusterStageReport& cluster_report) {
  ++stage_;
  std::vector<EmuChange> log;

  if (star_edge) src_tree_->notify_delete(*star_edge);

  // Component churn first, in the order the events fired.
  for (const auto& ev : hl_events) {
    if (ev.kind == HlEvent::kSplit) {
      EmuVertex cv = next_vertex_++;
      incident_.emplace_back();
      comp_vertex_[ev.new_comp] = cv;
      auto& from_edges = comp_edges_[ev.from_comp];
      auto& to_edges = comp_edges_[ev.new_comp];
      for (VertexId v : ev.smaller) {
        remove_edge(from_edges.at(v), log);
        from_edges.erase(v);
        to_edges[v] = insert_edge(cv, v, eps_tau_, EmuEdgeKind::kComponent, log);
      }
    } else {  // transition: v left the near-heavy set
      auto& mem = comp_edges_[ev.from_comp];
      remove_edge(mem.at(ev.v), log);
      mem.erase(ev.v);
      if (mem.empty()) comp_edges_.erase(ev.from_comp);
    }
  }

  // Active-set churn: full edge sets swapped on membership changes.
  for (const auto& ac : cluster_report.changes) {
    if (ac.joined) {
      insert_cluster_edges(ac.center, log);
    } else {
      auto it = cluster_edges_.find(ac.center);
      if (it != cluster_edges_.end()) {
        for (auto& [v, id] : it->second) remove_edge(id, log);
        cluster_edges_.erase(it);
      }
    }
  }

  // Reconcile surviving cluster edges against the centers' current balls.
  for (auto& [c, mine] : cluster_edges_) {
    const Dist r = ch_.radius(ch_.level(c) + 1);
    for (auto it = mine.begin(); it != mine.end();) {
      Dist d = ch_.center_dist(c, it->first);
      if (d > r) {
        remove_edge(it->second, log);
        it = mine.erase(it);
      } else {
        bump_weight(it->second, round_up(d), log);
        ++it;
      }
    }
  }

  // Source-ball edges: weight bumps and expulsions.
  for (auto it = source_edges_.begin(); it != source_edges_.end();) {
    Dist d = src_tree_->level(it->first);
    if (d > src_radius_) {
      remove_edge(it->second, log);
      it = source_edges_.erase(it);
    } else {
      bump_weight(it->second, round_up(d), log);
      ++it;
    }
  }

  return finalize(std::move(log));
}

ChangeBatch ThresholdEmulator::finalize(std::vector<EmuChange> log) {
  // Coalesce per edge id: an edge inserted and removed within one stage never
  // existed for consumers; weight bumps fold into a same-stage insert.
  std::map<int64_t, EmuChange> per_edge;
  std::vector<int64_t> order;
  for (const auto& ch : log) {
    auto it = per_edge.find(ch.edge_id);
    if (it == per_edge.end()) {
      per_edge[ch.edge_id] = ch;
      order.push_back(ch.edge_id);
      continue;
    }
    EmuChange& cur = it->second;
    if (ch.kind == EmuChangeKind::kWeightIncrease) {
      if (cur.kind == EmuChangeKind::kInsert)
        cur.weight = ch.weight;
      else
        cur.weight = ch.weight;  // chained bumps keep the original old_weight
    } else if (ch.kind == EmuChangeKind::kRemove) {
      if (cur.kind == EmuChangeKind::kInsert) {
        per_edge.erase(it);  // never visible
      } else {
        cur = ch;
      }
    } else {
      throw std::logic_error("edge id reused within a stage");
    }
  }
  ChangeBatch batch;
  for (int64_t id : order) {
    auto it = per_edge.find(id);
    if (it != per_edge.end()) batch.changes.push_back(it->second);
  }
  auto rank = [](const EmuChange& c) {
    switch (c.kind) {
      case EmuChangeKind::kRemove: return 0;
      case EmuChangeKind::kInsert: return 1;
      default: return 2;
    }
  };
  std::stable_sort(batch.changes.begin(), batch.changes.end(),
                   [&](const EmuChange& x, const EmuChange& y) {
                     if (rank(x) != rank(y)) return rank(x) < rank(y);
                     if (x.a != y.a) return x.a < y.a;
                     if (x.b != y.b) return x.b < y.b;
                     return x.edge_id < y.edge_id;
                   });
  return batch;
}

int64_t ThresholdEmulator::live_cluster_edge_count() const {
  int64_t count = 0;
  for (const auto& [c, mine] : cluster_edges_)
    count += static_cast<int64_t>(mine.size());
  return count;
}

Dist ThresholdEmulator::distance_in_emulator(EmuVertex u, EmuVertex v) const {
  std::vector<Dist> dist(next_vertex_, kInfDist);
  using Item = std::pair<Dist, EmuVertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  dist[u] = 0;
  pq.push({0, u});
  while (!pq.empty()) {
    auto [d, x] = pq.top();
    pq.pop();
    if (d != dist[x]) continue;
    if (x == v) return d;
    for (int64_t id : incident_[x]) {
      const EmuEdge& e = edges_[id];
      EmuVertex y = e.a == x ? e.b : e.a;
      if (d + e.w < dist[y]) {
        dist[y] = d + e.w;
        pq.push({dist[y], y});
      }
    }
  }
  return dist[v];
}

}  // namespace dsp
