#include "dsp/clustering.hpp"

#include <algorithm>

namespace dsp {

namespace {

void sorted_insert(std::vector<VertexId>& xs, VertexId x) {
  xs.insert(std::lower_bound(xs.begin(), xs.end(), x), x);
}

void sorted_erase(std::vector<VertexId>& xs, VertexId x) {
  auto it = std::lower_bound(xs.begin(), xs.end(), x);
  if (it != xs.end() && *it == x) xs.erase(it);
}

// |ball| >= n^{j/k}  <=>  |ball|^k >= n^j, kept in integers.
bool ball_large_enough(int64_t ball, int64_t n, int j, int k) {
  __int128 lhs = 1, rhs = 1;
  for (int i = 0; i < k; ++i) lhs *= ball;
  for (int i = 0; i < j; ++i) rhs *= n;
  return lhs >= rhs;
}

}  // namespace

ClusterHierarchy::ClusterHierarchy(const DecrementalGraph& g,
                                   const LayeredCover& cover, EdgeCount mu,
                                   Dist tau, int inv_eps, int k)
    : g_(g),
      cover_(cover),
      mu_(mu),
      tau_(tau),
      inv_(inv_eps),
      k_(k),
      layer_(cover.layer_for_radius(tau)) {
  if (inv_ < 10) throw InputError("1/eps must be an integer >= 10");
  if (k_ < 1) throw InputError("k must be positive");
  active_.resize(k_ + 1);
  ClusterStageReport ignored;
  for (VertexId c : cover_.centers(layer_)) add_center(c);
  for (auto& [c, st] : states_) {
    if (st.level_tree->is_heavy()) continue;
    set_level(c, st, compute_level(st), ignored);
  }
  // Initial maximality scan.
  for (auto& [c, st] : states_) {
    if (st.level == kInfLevel || st.active) continue;
    if (!st.sep_tree->has_marked()) {
      st.active = true;
      sorted_insert(active_[st.level], c);
      for (auto& [c2, st2] : states_)
        if (st2.level == st.level && st2.sep_tree->in_ball(c))
          st2.sep_tree->mark(c);
    }
  }
}

Dist ClusterHierarchy::radius(int i) const {
  Dist r = tau_;
  for (int j = 0; j < i; ++j) r *= inv_;
  return r;
}

void ClusterHierarchy::add_center(VertexId c) {
  if (states_.count(c)) return;
  CenterState st;
  const Dist top = radius(k_ + 1);
  std::vector<LevelInterval> part;
  Dist lo = 0;
  for (int j = 0; j <= k_ + 1; ++j) {
    part.push_back({lo, radius(j)});
    lo = radius(j) + 1;
  }
  part.push_back({lo, 2 * top});
  st.level_tree = std::make_unique<EsTree>(g_, c, 2 * top, mu_, part);
  states_[c] = std::move(st);
}

int ClusterHierarchy::compute_level(const CenterState& st) const {
  int lvl = 0;
  for (int j = 1; j <= k_; ++j) {
    int64_t ball = st.level_tree->count_within(radius(j));
    if (!ball_large_enough(ball, g_.n(), j, k_)) break;
    lvl = j;
  }
  return lvl;
}

void ClusterHierarchy::make_sep_tree(VertexId c, CenterState& st) {
  st.sep_tree = std::make_unique<EsTree>(g_, c, 2 * radius(st.level));
  for (VertexId a : active_[st.level])
    if (st.sep_tree->in_ball(a)) st.sep_tree->mark(a);
}

void ClusterHierarchy::leave_active(VertexId c, CenterState& st,
                                    ClusterStageReport& report) {
  if (!st.active) return;
  st.active = false;
  sorted_erase(active_[st.level], c);
  for (auto& [c2, st2] : states_)
    if (c2 != c && st2.level == st.level && st2.sep_tree &&
        st2.sep_tree->is_marked(c))
      st2.sep_tree->unmark(c);
  report.changes.push_back({c, st.level, false});
}

void ClusterHierarchy::set_level(VertexId c, CenterState& st, int new_level,
                                 ClusterStageReport& report) {
  if (new_level == st.level) return;
  leave_active(c, st, report);
  st.level = new_level;
  report.level_changes.push_back({c, new_level});
  make_sep_tree(c, st);
}

ClusterStageReport ClusterHierarchy::notify_stage(
    std::optional<Edge> star_edge, const std::vector<Promotion>& promotions) {
  ++stage_;
  ClusterStageReport report;

  if (star_edge) {
    for (auto& [c, st] : states_) {
      st.level_tree->notify_delete(*star_edge);
      if (st.sep_tree) st.sep_tree->notify_delete(*star_edge);
    }
  }
  for (const auto& p : promotions)
    if (p.layer == layer_) add_center(p.center);

  // Levels are recomputed from current ball sizes; they can only drop.
  for (auto& [c, st] : states_) {
    if (st.level_tree->is_heavy()) continue;
    int lvl = compute_level(st);
    if (st.level != kInfLevel && lvl > st.level)
      throw std::logic_error("cluster level increased");
    if (lvl != st.level) set_level(c, st, lvl, report);
  }

  // Restore maximality of every A_i, ascending center index.
  for (auto& [c, st] : states_) {
    if (st.level == kInfLevel || st.active) continue;
    if (st.sep_tree->has_marked()) continue;
    st.active = true;
    sorted_insert(active_[st.level], c);
    report.changes.push_back({c, st.level, true});
    for (auto& [c2, st2] : states_)
      if (st2.level == st.level && st2.sep_tree->in_ball(c))
        st2.sep_tree->mark(c);
  }
  return report;
}

int ClusterHierarchy::level(VertexId c) const {
  auto it = states_.find(c);
  if (it == states_.end()) throw InputError("not a cluster center");
  return it->second.level;
}

bool ClusterHierarchy::is_active(VertexId c) const {
  auto it = states_.find(c);
  return it != states_.end() && it->second.active;
}

std::vector<VertexId> ClusterHierarchy::centers() const {
  std::vector<VertexId> out;
  for (const auto& [c, st] : states_) out.push_back(c);
  return out;
}

std::vector<VertexId> ClusterHierarchy::core(VertexId c) const {
  auto it = states_.find(c);
  if (it == states_.end() || it->second.level == kInfLevel)
    throw InputError("core: center has no finite level");
  const Dist r = radius(it->second.level);
  std::vector<VertexId> out;
  for (VertexId v = 0; v < g_.n(); ++v)
    if (it->second.level_tree->level(v) <= r) out.push_back(v);
  return out;
}

std::vector<VertexId> ClusterHierarchy::cluster(VertexId c) const {
  auto it = states_.find(c);
  if (it == states_.end() || it->second.level == kInfLevel)
    throw InputError("cluster: center has no finite level");
  const Dist r = radius(it->second.level + 1);
  std::vector<VertexId> out;
  for (VertexId v = 0; v < g_.n(); ++v)
    if (it->second.level_tree->level(v) <= r) out.push_back(v);
  return out;
}

Dist ClusterHierarchy::center_dist(VertexId c, VertexId v) const {
  return states_.at(c).level_tree->level(v);
}

}  // namespace dsp
