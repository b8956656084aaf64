#include "dsp/apsp.hpp"

#include <algorithm>
#include <cmath>

namespace dsp {

namespace {

Dist pow2(int j) { return static_cast<Dist>(1) << j; }

}  // namespace

ApspOracle::ApspOracle(int n, const std::vector<Edge>& edges, double epsilon)
    : g_(n, edges),
      b_(static_cast<Dist>(std::ceil(1.0 + 4.0 / epsilon))),
      cover_(g_) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw InputError("epsilon must lie in (0,1)");
  trees_.resize(cover_.layers() + 1);
  for (int j = 0; j <= cover_.layers(); ++j)
    for (VertexId c : cover_.centers(j)) add_tree(j, c);
}

void ApspOracle::add_tree(int layer, VertexId c) {
  trees_[layer][c] = std::make_unique<EsTree>(g_, c, b_ * pow2(layer));
}

DeletionReport ApspOracle::delete_edge(Edge e) {
  DeletionReport rep = g_.delete_edge(e);
  if (!rep.applied_to_star) return rep;
  for (int j = 0; j <= cover_.layers(); ++j)
    for (auto& [c, tree] : trees_[j]) tree->notify_delete(e);
  auto report = cover_.notify_delete(e);
  for (const auto& p : report.promotions) add_tree(p.layer, p.center);
  return rep;
}

bool ApspOracle::layer_feasible(int j, VertexId u, VertexId v) const {
  VertexId p = cover_.pivot(j, u);
  return trees_[j].at(p)->level(v) <= b_ * pow2(j);
}

int ApspOracle::smallest_feasible_layer(VertexId u, VertexId v) const {
  int lo = 0, hi = cover_.layers();
  while (lo < hi) {
    int mid = (lo + hi) / 2;
    if (layer_feasible(mid, u, v))
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

Dist ApspOracle::query(VertexId u, VertexId v) const {
  if (!g_.conn(u, v)) return kInfDist;
  if (u == v) return 0;
  if (g_.has_edge(u, v)) return 1;
  int j = smallest_feasible_layer(u, v);
  VertexId p = cover_.pivot(j, u);
  const auto& t = *trees_[j].at(p);
  return t.level(u) + t.level(v);
}

std::vector<VertexId> ApspOracle::query_path(VertexId u, VertexId v) const {
  if (!g_.conn(u, v)) throw InputError("query_path: disconnected pair");
  if (u == v) return {u};
  if (g_.has_edge(u, v)) return {u, v};
  int j = smallest_feasible_layer(u, v);
  VertexId p = cover_.pivot(j, u);
  const auto& t = *trees_[j].at(p);
  std::vector<VertexId> pu = t.extract_path(u);  // p .. u
  std::vector<VertexId> pv = t.extract_path(v);  // p .. v
  // Root paths in a tree share exactly a prefix; cutting at its end removes
  // the cycle through the pivot, and with it any skipped edge.
  size_t i = 0;
  while (i + 1 < pu.size() && i + 1 < pv.size() && pu[i + 1] == pv[i + 1]) ++i;
  std::vector<VertexId> path(pu.begin() + i, pu.end());
  std::reverse(path.begin(), path.end());
  path.insert(path.end(), pv.begin() + i + 1, pv.end());
  return path;
}

}  // namespace dsp
