#include "dsp/mes_tree.hpp"

#include <algorithm>
#include <cassert>
#include <queue>

namespace dsp {

namespace {

// Offers can be legitimately negative after join resets, so the "not filed"
// sentinel must sit outside the value range entirely.
constexpr Dist kNotFiled = kInfDist;

Dist pow_dist(Dist base, int e) {
  Dist r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

AlmostMesTree::AlmostMesTree(const ThresholdEmulator& em, Dist depth)
    : em_(em), depth_(depth), eps_tau_(em.eps_tau()), source_(em.source()) {
  if (depth_ <= 0) throw InputError("depth must be positive");
  cap_ = (depth_ / eps_tau_ + 1) * eps_tau_;
  drag_delta_ = eps_tau_ * pow_dist(em_.inv_eps(), em_.k() + 2);

  const EmuVertex nv = em_.num_vertices();
  est_.assign(nv, 0);
  expelled_.assign(nv, 0);
  vs_.resize(nv);
  filed_.assign(em_.total_edges_ever(), kNotFiled);

  // Plain Dijkstra over the initial emulator.
  std::vector<Dist> dist(nv, kInfDist);
  using Item = std::pair<Dist, EmuVertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  dist[source_] = 0;
  pq.push({0, source_});
  while (!pq.empty()) {
    auto [d, x] = pq.top();
    pq.pop();
    if (d != dist[x]) continue;
    for (int64_t id : em_.incident(x)) {
      const EmuEdge& e = em_.edge(id);
      EmuVertex y = other(e, x);
      if (d + e.w < dist[y]) {
        dist[y] = d + e.w;
        pq.push({dist[y], y});
      }
    }
  }

  for (EmuVertex v = 0; v < nv; ++v) {
    if (v == source_) {
      est_[v] = 0;
      continue;
    }
    if (em_.is_component_vertex(v)) {
      est_[v] = std::min(dist[v], cap_);
    } else if (dist[v] > depth_) {
      expelled_[v] = 1;
      ++stats_.expulsions;
    } else {
      est_[v] = dist[v];
    }
  }

  for (int64_t id = 0; id < em_.total_edges_ever(); ++id) {
    const EmuEdge& e = em_.edge(id);
    if (!e.alive) continue;
    vs_[e.assigned].assigned.push_back(id);
    file_offer(id);
  }
  for (EmuVertex v = 0; v < nv; ++v) {
    if (v == source_ || expelled_[v]) continue;
    if (em_.is_component_vertex(v) && est_[v] == cap_) continue;
    int64_t best = -1;
    Dist best_offer = kInfDist;
    for (int64_t id : em_.incident(v)) {
      const EmuEdge& e = em_.edge(id);
      Dist off = live_offer(e, v);
      if (off < best_offer) {
        best_offer = off;
        best = id;
      }
    }
    if (best >= 0 && best_offer <= est_[v]) set_witness(v, best);
  }
}

Dist AlmostMesTree::live_offer(const EmuEdge& e, EmuVertex to) const {
  EmuVertex x = other(e, to);
  if (expelled_[x]) return kInfDist;
  return est_[x] + e.w;
}

void AlmostMesTree::grow_to(EmuVertex v) {
  while (static_cast<EmuVertex>(est_.size()) <= v) {
    est_.push_back(0);
    expelled_.push_back(0);
    vs_.emplace_back();
  }
}

void AlmostMesTree::file_offer(int64_t id) {
  const EmuEdge& e = em_.edge(id);
  EmuVertex to = other(e, e.assigned);
  if (expelled_[e.assigned] || expelled_[to]) {
    filed_[id] = kNotFiled;
    return;
  }
  Dist off = est_[e.assigned] + e.w;
  filed_[id] = off;
  vs_[to].offers[off].insert(id);
}

void AlmostMesTree::unfile_offer(int64_t id) {
  if (filed_[id] == kNotFiled) return;
  const EmuEdge& e = em_.edge(id);
  EmuVertex to = other(e, e.assigned);
  auto it = vs_[to].offers.find(filed_[id]);
  if (it != vs_[to].offers.end()) {
    it->second.erase(id);
    if (it->second.empty()) vs_[to].offers.erase(it);
  }
  filed_[id] = kNotFiled;
}

void AlmostMesTree::clear_witness(EmuVertex v) {
  auto& st = vs_[v];
  if (st.witness < 0) return;
  if (st.witness_assigned) {
    const EmuEdge& e = em_.edge(st.witness);
    auto it = rev_deps_.find(other(e, v));
    if (it != rev_deps_.end()) {
      it->second.erase(st.witness);
      if (it->second.empty()) rev_deps_.erase(it);
    }
  }
  st.witness = -1;
  st.witness_assigned = false;
}

void AlmostMesTree::set_witness(EmuVertex v, int64_t id) {
  clear_witness(v);
  auto& st = vs_[v];
  st.witness = id;
  const EmuEdge& e = em_.edge(id);
  st.witness_assigned = (e.assigned == v);
  if (st.witness_assigned) rev_deps_[other(e, v)].insert(id);
}

// Re-files every assigned edge of v after est_[v] changed; stale witnesses on
// the far side wake into `wake_now` (or `wake_next` when consolidation must
// not rerun this stage). This is the charged scan of the bucket scheme.
void AlmostMesTree::refile_after_change(EmuVertex v,
                                        std::set<EmuVertex>* wake_now,
                                        std::set<EmuVertex>* wake_next) {
  auto& st = vs_[v];
  stats_.refile_budget += static_cast<int64_t>(st.assigned.size());
  for (int64_t id : st.assigned) {
    ++stats_.refile_scans;
    unfile_offer(id);
    file_offer(id);
    const EmuEdge& e = em_.edge(id);
    EmuVertex to = other(e, v);
    if (!expelled_[to] && vs_[to].witness == id &&
        live_offer(e, to) > est_[to]) {
      clear_witness(to);
      if (to != source_) (wake_now ? wake_now : wake_next)->insert(to);
    }
  }
  // Witness holders that read v's estimate live.
  auto it = rev_deps_.find(v);
  if (it != rev_deps_.end()) {
    auto ids = it->second;  // clear_witness mutates the set
    for (int64_t id : ids) {
      const EmuEdge& e = em_.edge(id);
      EmuVertex holder = e.assigned;
      if (expelled_[holder] || vs_[holder].witness != id) continue;
      if (live_offer(e, holder) > est_[holder]) {
        clear_witness(holder);
        if (holder != source_) (wake_now ? wake_now : wake_next)->insert(holder);
      }
    }
  }
}

void AlmostMesTree::reset_far_cursors(EmuVertex changed) {
  for (int64_t id : em_.incident(changed)) {
    const EmuEdge& e = em_.edge(id);
    if (e.assigned != changed) vs_[e.assigned].cursor = 0;
  }
}

void AlmostMesTree::force_set(EmuVertex v, Dist value,
                              std::set<EmuVertex>* wake_now,
                              std::set<EmuVertex>* wake_next) {
  assert(value % eps_tau_ == 0);
  Dist old = est_[v];
  if (value == old) return;
  est_[v] = value;
  if (value < old) {
    // Offers through v drop: skipped scans on the far side are stale.
    clear_witness(v);
    reset_far_cursors(v);
    refile_after_change(v, wake_now, wake_next);
  } else {
    vs_[v].cursor = 0;
    refile_after_change(v, wake_now, wake_next);
  }
}

void AlmostMesTree::expel(EmuVertex v, std::set<EmuVertex>* wake_now,
                          std::set<EmuVertex>* wake_next) {
  expelled_[v] = 1;
  ++stats_.expulsions;
  clear_witness(v);
  for (int64_t id : em_.incident(v)) {
    const EmuEdge& e = em_.edge(id);
    if (e.assigned == v) {
      unfile_offer(id);
      EmuVertex to = other(e, v);
      if (!expelled_[to] && vs_[to].witness == id) {
        clear_witness(to);
        if (to != source_) (wake_now ? wake_now : wake_next)->insert(to);
      }
    }
  }
  auto it = rev_deps_.find(v);
  if (it != rev_deps_.end()) {
    auto ids = it->second;
    for (int64_t id : ids) {
      const EmuEdge& e = em_.edge(id);
      EmuVertex holder = e.assigned;
      if (expelled_[holder] || vs_[holder].witness != id) continue;
      clear_witness(holder);
      if (holder != source_) (wake_now ? wake_now : wake_next)->insert(holder);
    }
    rev_deps_.erase(v);
  }
  vs_[v].offers.clear();
}

void AlmostMesTree::consolidate(std::set<EmuVertex>& seeds,
                                std::vector<EstimateChange>& out) {
  (void)out;
  std::set<std::pair<Dist, EmuVertex>> queue;
  std::vector<char> queued(est_.size(), 0);
  auto push = [&](EmuVertex v) {
    if (v == source_ || expelled_[v] || queued[v]) return;
    queued[v] = 1;
    queue.insert({est_[v], v});
  };
  std::set<EmuVertex> wake;
  for (EmuVertex v : seeds) push(v);

  while (!queue.empty()) {
    auto [key, v] = *queue.begin();
    queue.erase(queue.begin());
    queued[v] = 0;
    if (expelled_[v]) continue;
    if (em_.is_component_vertex(v) && est_[v] >= cap_) continue;
    if (vs_[v].witness >= 0) continue;  // re-validated by a later wake

    auto& st = vs_[v];
    // Cheap witness: best filed offer.
    if (!st.offers.empty() && st.offers.begin()->first <= est_[v]) {
      set_witness(v, *st.offers.begin()->second.begin());
      continue;
    }
    // Cursor scan over the edges assigned to v.
    bool found = false;
    while (st.cursor < st.assigned.size()) {
      int64_t id = st.assigned[st.cursor];
      ++stats_.cursor_advances;
      if (live_offer(em_.edge(id), v) <= est_[v]) {
        set_witness(v, id);
        found = true;
        break;
      }
      ++st.cursor;
    }
    if (found) continue;

    // No edge supports the current estimate: rise to the exact minimum.
    Dist m = kInfDist;
    int64_t arg = -1;
    if (!st.offers.empty()) {
      m = st.offers.begin()->first;
      arg = *st.offers.begin()->second.begin();
    }
    stats_.cursor_budget += static_cast<int64_t>(st.assigned.size());
    for (int64_t id : st.assigned) {
      ++stats_.cursor_advances;
      Dist off = live_offer(em_.edge(id), v);
      if (off < m) {
        m = off;
        arg = id;
      }
    }
    const bool comp = em_.is_component_vertex(v);
    Dist target = comp ? std::min(m, cap_) : m;
    if (!comp && target > depth_) {
      wake.clear();
      expel(v, &wake, nullptr);
      for (EmuVertex w : wake) push(w);
      continue;
    }
    if (target <= est_[v]) throw std::logic_error("stale consolidation wake");
    ++stats_.rises;
    est_[v] = target;
    st.cursor = 0;
    wake.clear();
    refile_after_change(v, &wake, nullptr);
    for (EmuVertex w : wake) push(w);
    if (arg >= 0 && !comp) {
      set_witness(v, arg);
    } else if (arg >= 0 && comp && m <= est_[v]) {
      set_witness(v, arg);
    }
  }
}

std::vector<EstimateChange> AlmostMesTree::apply_stage(
    const ChangeBatch& batch, const MesStageEvents& events) {
  ++stage_;
  const EmuVertex known_before = static_cast<EmuVertex>(est_.size());
  grow_to(em_.num_vertices() - 1);
  filed_.resize(em_.total_edges_ever(), kNotFiled);

  const std::vector<Dist> start_est = est_;
  const std::vector<char> start_exp = expelled_;

  std::set<EmuVertex> seeds = std::move(pending_next_);
  pending_next_.clear();

  // (a) near-light decreases.
  for (VertexId v : events.lightened) {
    if (expelled_[v]) continue;
    force_set(v, est_[v] - 2 * eps_tau_, &seeds, nullptr);
    seeds.insert(v);
  }

  // (b) active-join resets from last stage's estimates.
  for (const auto& j : events.joins) {
    if (expelled_[j.center]) continue;
    bool dead = false;
    Dist best = -kInfDist;
    for (VertexId v : j.core) {
      if (v < static_cast<VertexId>(start_exp.size()) && start_exp[v]) {
        dead = true;
        break;
      }
      Dist p = v < static_cast<VertexId>(start_est.size()) ? start_est[v] : 0;
      best = std::max(best, p);
    }
    if (dead) {
      expel(j.center, &seeds, nullptr);
      continue;
    }
    Dist sub = 8 * eps_tau_ * pow_dist(em_.inv_eps(), j.level + 1);
    force_set(j.center, best - sub, &seeds, nullptr);
    seeds.insert(j.center);
  }

  // (c) the emulator's edge batch.
  for (const auto& ch : batch.changes) {
    const EmuEdge& e = em_.edge(ch.edge_id);
    switch (ch.kind) {
      case EmuChangeKind::kRemove: {
        unfile_offer(ch.edge_id);
        for (EmuVertex x : {e.a, e.b}) {
          if (x >= static_cast<EmuVertex>(est_.size())) continue;
          if (vs_[x].witness == ch.edge_id) {
            clear_witness(x);
            if (!expelled_[x] && x != source_) seeds.insert(x);
          }
        }
        auto& lst = vs_[e.assigned].assigned;
        auto it = std::find(lst.begin(), lst.end(), ch.edge_id);
        if (it != lst.end()) lst.erase(it);
        vs_[e.assigned].cursor = 0;
        break;
      }
      case EmuChangeKind::kInsert: {
        grow_to(std::max(e.a, e.b));
        if (static_cast<int64_t>(filed_.size()) <= ch.edge_id)
          filed_.resize(ch.edge_id + 1, kNotFiled);
        vs_[e.assigned].assigned.push_back(ch.edge_id);
        file_offer(ch.edge_id);
        break;
      }
      case EmuChangeKind::kWeightIncrease: {
        if (filed_[ch.edge_id] != kNotFiled) {
          unfile_offer(ch.edge_id);
          file_offer(ch.edge_id);
        }
        for (EmuVertex x : {e.a, e.b}) {
          if (expelled_[x]) continue;
          if (vs_[x].witness == ch.edge_id &&
              live_offer(e, x) > est_[x]) {
            clear_witness(x);
            if (x != source_) seeds.insert(x);
          }
        }
        break;
      }
    }
  }
  // Vertices created this stage start from scratch and get consolidated.
  for (EmuVertex v = known_before; v < static_cast<EmuVertex>(est_.size()); ++v)
    seeds.insert(v);

  // (d) consolidation to the least fixpoint.
  std::vector<Dist> pre_consolidation = est_;
  std::vector<EstimateChange> out;
  consolidate(seeds, out);

  // (e) dragging: risen active centers floor their cores; estimate increases
  // caused here queue consolidation work for the next stage.
  std::deque<VertexId> work;
  std::set<VertexId> in_work;
  std::map<VertexId, const MesActiveCore*> active_by_center;
  for (const auto& a : events.actives) active_by_center[a.center] = &a;
  auto rose = [&](VertexId c) {
    return !expelled_[c] &&
           est_[c] > (c < static_cast<VertexId>(pre_consolidation.size())
                          ? pre_consolidation[c]
                          : 0);
  };
  for (const auto& [c, a] : active_by_center)
    if (rose(c)) {
      work.push_back(c);
      in_work.insert(c);
    }
  std::set<EmuVertex> pending_next;
  while (!work.empty()) {
    VertexId c = work.front();
    work.pop_front();
    in_work.erase(c);
    if (expelled_[c]) continue;
    const Dist floor_val = est_[c] - drag_delta_;
    if (floor_val > depth_) throw std::logic_error("drag beyond depth");
    for (VertexId v : active_by_center.at(c)->core) {
      if (expelled_[v] || est_[v] >= floor_val) continue;
      ++stats_.drags;
      force_set(v, floor_val, nullptr, &pending_next);
      if (active_by_center.count(v) && rose(v) && !in_work.count(v)) {
        work.push_back(v);
        in_work.insert(v);
      }
    }
  }
  pending_next_.insert(pending_next.begin(), pending_next.end());

  // (f) depth sweep: consolidation and dragging never leave a live real
  // vertex beyond the depth.
  for (EmuVertex v = 0; v < static_cast<EmuVertex>(est_.size()); ++v)
    if (!expelled_[v] && !em_.is_component_vertex(v) && est_[v] > depth_)
      throw std::logic_error("live vertex beyond depth after stage");

  for (EmuVertex v = 0; v < static_cast<EmuVertex>(est_.size()); ++v) {
    bool was = v < static_cast<EmuVertex>(start_exp.size()) && start_exp[v];
    Dist old = v < static_cast<EmuVertex>(start_est.size()) ? start_est[v] : 0;
    if (expelled_[v] != (was ? 1 : 0))
      out.push_back({v, old, est_[v], true});
    else if (!expelled_[v] && est_[v] != old)
      out.push_back({v, old, est_[v], false});
  }
  return out;
}

}  // namespace dsp
