#include "dsp/heavy_light.hpp"

#include <algorithm>
#include <deque>

namespace dsp {

namespace {

void sorted_insert(std::vector<VertexId>& xs, VertexId x) {
  xs.insert(std::lower_bound(xs.begin(), xs.end(), x), x);
}

void sorted_erase(std::vector<VertexId>& xs, VertexId x) {
  auto it = std::lower_bound(xs.begin(), xs.end(), x);
  if (it != xs.end() && *it == x) xs.erase(it);
}

}  // namespace

double contraction_error_bound(EdgeCount mu, Dist r, Dist tau, int64_t m) {
  if (mu <= 0) throw InputError("mu must be positive");
  return 8.0 * static_cast<double>(r + tau) * static_cast<double>(m) /
         static_cast<double>(mu);
}

class HeavyLightDecomposition::InducedSource final : public NeighborSource {
 public:
  explicit InducedSource(const std::vector<std::vector<VertexId>>& adj)
      : adj_(adj) {}
  const std::vector<VertexId>& neighbors(VertexId v) const override {
    return adj_[v];
  }

 private:
  const std::vector<std::vector<VertexId>>& adj_;
};

HeavyLightDecomposition::HeavyLightDecomposition(const DecrementalGraph& g,
                                                 const LayeredCover& cover,
                                                 EdgeCount mu, Dist r, Dist tau)
    : g_(g),
      cover_(cover),
      mu_(mu),
      r_(r),
      tau_(tau),
      layer_(cover.layer_for_radius(tau)),
      backend_(make_default_connectivity()) {
  if (r_ <= 0) throw InputError("r must be positive");
  for (VertexId c : cover_.centers(layer_)) add_monitor(c);

  const int n = g_.n();
  near_light_.assign(n, 0);
  for (VertexId v = 0; v < n; ++v)
    if (pivot_light(v)) near_light_[v] = 1;

  induced_.assign(n, {});
  for (VertexId v = 0; v < n; ++v) {
    if (near_light_[v]) continue;
    for (VertexId w : g_.star_neighbors(v))
      if (!near_light_[w]) induced_[v].push_back(w);
  }
  comp_of_.assign(n, kNoComponent);
  for (VertexId v = 0; v < n; ++v) {
    if (near_light_[v] || comp_of_[v] != kNoComponent) continue;
    ComponentId id = next_comp_++;
    std::deque<VertexId> q{v};
    comp_of_[v] = id;
    std::vector<VertexId> mem{v};
    while (!q.empty()) {
      VertexId x = q.front();
      q.pop_front();
      for (VertexId w : induced_[x])
        if (comp_of_[w] == kNoComponent) {
          comp_of_[w] = id;
          mem.push_back(w);
          q.push_back(w);
        }
    }
    std::sort(mem.begin(), mem.end());
    members_[id] = std::move(mem);
  }
}

void HeavyLightDecomposition::add_monitor(VertexId center) {
  if (monitors_.count(center)) return;
  monitors_[center] =
      std::make_unique<EsTree>(g_, center, r_ + 2 * tau_, mu_);
}

bool HeavyLightDecomposition::pivot_light(VertexId v) const {
  VertexId p = cover_.pivot(layer_, v);
  if (p == kNoVertex) return false;
  return !monitors_.at(p)->is_heavy();
}

void HeavyLightDecomposition::remove_induced_edge(VertexId a, VertexId b,
                                                  std::vector<HlEvent>& out) {
  sorted_erase(induced_[a], b);
  sorted_erase(induced_[b], a);
  InducedSource src(induced_);
  SplitOutcome sp = backend_->probe(src, a, b);
  if (!sp.split) return;

  const ComponentId from = comp_of_[a];
  const ComponentId fresh = next_comp_++;
  auto& old_members = members_[from];
  for (VertexId x : sp.smaller) {
    comp_of_[x] = fresh;
    sorted_erase(old_members, x);
  }
  members_[fresh] = sp.smaller;
  ++stats_.splits;
  HlEvent ev;
  ev.kind = HlEvent::kSplit;
  ev.from_comp = from;
  ev.new_comp = fresh;
  ev.smaller = std::move(sp.smaller);
  out.push_back(std::move(ev));
}

void HeavyLightDecomposition::carve_out_vertex(VertexId v,
                                               std::vector<HlEvent>& out) {
  // Claim-4.5 style: delete incident edges one by one, then the vertex.
  while (!induced_[v].empty()) {
    VertexId w = induced_[v].front();
    remove_induced_edge(v, w, out);
  }
  const ComponentId mine = comp_of_[v];
  auto& mem = members_[mine];
  sorted_erase(mem, v);
  if (mem.empty()) members_.erase(mine);
  comp_of_[v] = kNoComponent;
  ++stats_.transitions;
  HlEvent ev;
  ev.kind = HlEvent::kTransition;
  ev.v = v;
  ev.from_comp = mine;
  out.push_back(std::move(ev));
}

std::vector<HlEvent> HeavyLightDecomposition::notify_stage(
    std::optional<Edge> star_edge, const std::vector<Promotion>& promotions) {
  ++stage_;
  std::vector<HlEvent> out;

  if (star_edge) {
    for (auto& [c, t] : monitors_) t->notify_delete(*star_edge);
    // The induced subgraph loses the edge when both ends are near-heavy.
    VertexId a = star_edge->u, b = star_edge->v;
    if (!near_light_[a] && !near_light_[b]) remove_induced_edge(a, b, out);
  }
  for (const auto& p : promotions)
    if (p.layer == layer_) add_monitor(p.center);

  // Sticky transition latch, re-checked against the repaired cover.
  for (VertexId v = 0; v < g_.n(); ++v) {
    if (near_light_[v] || !pivot_light(v)) continue;
    near_light_[v] = 1;
    carve_out_vertex(v, out);
  }
  return out;
}

std::vector<ComponentId> HeavyLightDecomposition::component_ids() const {
  std::vector<ComponentId> ids;
  for (const auto& [id, mem] : members_) ids.push_back(id);
  return ids;
}

}  // namespace dsp
