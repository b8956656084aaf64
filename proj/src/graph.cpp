#include "dsp/graph.hpp"

#include <algorithm>
#include <deque>

namespace dsp {

namespace {

bool sorted_contains(const std::vector<VertexId>& xs, VertexId x) {
  return std::binary_search(xs.begin(), xs.end(), x);
}

void sorted_erase(std::vector<VertexId>& xs, VertexId x) {
  auto it = std::lower_bound(xs.begin(), xs.end(), x);
  if (it != xs.end() && *it == x) xs.erase(it);
}

}  // namespace

class DecrementalGraph::AdjSource final : public NeighborSource {
 public:
  explicit AdjSource(const std::vector<std::vector<VertexId>>& adj)
      : adj_(adj) {}
  const std::vector<VertexId>& neighbors(VertexId v) const override {
    return adj_[v];
  }

 private:
  const std::vector<std::vector<VertexId>>& adj_;
};

DecrementalGraph::DecrementalGraph(int n, const std::vector<Edge>& edges,
                                   std::unique_ptr<ConnectivityBackend> backend)
    : n_(n), backend_(std::move(backend)) {
  if (n_ <= 0) throw InputError("vertex count must be positive");
  if (!backend_) backend_ = make_default_connectivity();

  initial_edges_ = edges;
  for (Edge& e : initial_edges_) {
    if (e.u < 0 || e.v >= n_ || e.u == e.v)
      throw InputError("bad edge endpoints");
  }
  std::sort(initial_edges_.begin(), initial_edges_.end());
  if (std::adjacent_find(initial_edges_.begin(), initial_edges_.end()) !=
      initial_edges_.end())
    throw InputError("parallel edge in input");

  adj_.assign(n_, {});
  for (const Edge& e : initial_edges_) {
    adj_[e.u].push_back(e.v);
    adj_[e.v].push_back(e.u);
  }
  for (auto& a : adj_) std::sort(a.begin(), a.end());
  star_adj_ = adj_;
  m_ = m_star_ = static_cast<int64_t>(initial_edges_.size());
  skipped_.assign(initial_edges_.size(), 0);

  // Initial connectedness is a standing assumption.
  std::vector<char> seen(n_, 0);
  std::deque<VertexId> q{0};
  seen[0] = 1;
  int reached = 1;
  while (!q.empty()) {
    VertexId x = q.front();
    q.pop_front();
    for (VertexId w : adj_[x])
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        q.push_back(w);
      }
  }
  if (reached != n_) throw InputError("input graph is not connected");

  comp_.assign(n_, 0);
}

DeletionReport DecrementalGraph::delete_edge(Edge e) {
  check_vertex(e.u);
  check_vertex(e.v);
  if (!has_edge(e.u, e.v)) throw InputError("edge not present in G");

  sorted_erase(adj_[e.u], e.v);
  sorted_erase(adj_[e.v], e.u);
  --m_;
  ++stage_;

  DeletionReport rep;
  rep.stage = stage_;

  AdjSource src(adj_);
  SplitOutcome out = backend_->probe(src, e.u, e.v);
  if (!out.split) {
    sorted_erase(star_adj_[e.u], e.v);
    sorted_erase(star_adj_[e.v], e.u);
    --m_star_;
    rep.applied_to_star = true;
    return rep;
  }

  // Disconnecting deletion: retain the edge in G*, relabel the smaller side.
  auto it = std::lower_bound(initial_edges_.begin(), initial_edges_.end(), e);
  skipped_[it - initial_edges_.begin()] = 1;
  const int32_t fresh = next_label_++;
  for (VertexId x : out.smaller) {
    comp_[x] = fresh;
    ++total_relabels_;
  }
  rep.applied_to_star = false;
  rep.smaller_component = std::move(out.smaller);
  return rep;
}

Dist DecrementalGraph::dist_star(VertexId u, VertexId v) const {
  check_vertex(u);
  check_vertex(v);
  if (u == v) return 0;
  std::vector<Dist> dist(n_, kInfDist);
  std::deque<VertexId> q{u};
  dist[u] = 0;
  while (!q.empty()) {
    VertexId x = q.front();
    q.pop_front();
    for (VertexId w : star_adj_[x])
      if (dist[w] == kInfDist) {
        dist[w] = dist[x] + 1;
        if (w == v) return dist[w];
        q.push_back(w);
      }
  }
  return dist[v];
}

bool DecrementalGraph::has_edge(VertexId u, VertexId v) const {
  check_vertex(u);
  check_vertex(v);
  return sorted_contains(adj_[u], v);
}

bool DecrementalGraph::has_star_edge(VertexId u, VertexId v) const {
  check_vertex(u);
  check_vertex(v);
  return sorted_contains(star_adj_[u], v);
}

bool DecrementalGraph::is_skipped(Edge e) const {
  auto it = std::lower_bound(initial_edges_.begin(), initial_edges_.end(), e);
  if (it == initial_edges_.end() || *it != e) return false;
  return skipped_[it - initial_edges_.begin()] != 0;
}

}  // namespace dsp
