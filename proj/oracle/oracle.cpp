#include "oracle.hpp"

#include <algorithm>
#include <deque>
#include <queue>
#include <stdexcept>

namespace dsp_oracle {

std::vector<int64_t> bfs_all(const std::vector<std::vector<int>>& adj,
                             int src) {
  std::vector<int64_t> dist(adj.size(), kInf);
  std::deque<int> q{src};
  dist[src] = 0;
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    for (int w : adj[x])
      if (dist[w] == kInf) {
        dist[w] = dist[x] + 1;
        q.push_back(w);
      }
  }
  return dist;
}

int64_t ball_edge_count(const Snapshot& s, int v, int64_t r) {
  std::vector<int64_t> dist = bfs_all(s.star_adj, v);
  int64_t twice = 0;
  for (int x = 0; x < s.n; ++x) {
    if (dist[x] > r) continue;
    for (int w : s.star_adj[x])
      if (dist[w] <= r) ++twice;
  }
  return twice / 2;
}

int64_t contracted_distance(const Snapshot& s, int u, int v) {
  // Node ids: one per near-heavy component, one per near-light vertex.
  std::vector<int> node(s.n, -1);
  int next = 0;
  for (int x = 0; x < s.n; ++x) {
    if (node[x] != -1 || !s.near_heavy[x]) continue;
    int id = next++;
    std::deque<int> q{x};
    node[x] = id;
    while (!q.empty()) {
      int y = q.front();
      q.pop_front();
      for (int w : s.star_adj[y])
        if (s.near_heavy[w] && node[w] == -1) {
          node[w] = id;
          q.push_back(w);
        }
    }
  }
  for (int x = 0; x < s.n; ++x)
    if (node[x] == -1) node[x] = next++;

  std::vector<std::vector<int>> nadj(next);
  for (int x = 0; x < s.n; ++x)
    for (int w : s.star_adj[x])
      if (node[x] != node[w]) nadj[node[x]].push_back(node[w]);

  std::vector<int64_t> dist = bfs_all(nadj, node[u]);
  return dist[node[v]];
}

std::vector<int64_t> emu_dist(const Snapshot& s, int src) {
  std::vector<std::vector<std::pair<int, int64_t>>> adj(s.emu_vertices);
  for (const auto& e : s.emu_edges) {
    adj[e.a].push_back({e.b, e.w});
    adj[e.b].push_back({e.a, e.w});
  }
  std::vector<int64_t> dist(s.emu_vertices, kInf);
  using Item = std::pair<int64_t, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  dist[src] = 0;
  pq.push({0, src});
  while (!pq.empty()) {
    auto [d, x] = pq.top();
    pq.pop();
    if (d != dist[x]) continue;
    for (auto [w, wt] : adj[x])
      if (d + wt < dist[w]) {
        dist[w] = d + wt;
        pq.push({dist[w], w});
      }
  }
  return dist;
}

MesStageResult naive_mes_stage(const MesStageInputs& in) {
  const int nv = in.emu_vertices;
  std::vector<int64_t> est(nv, 0);
  std::vector<char> expelled(nv, 0);
  for (int v = 0; v < nv; ++v) {
    if (v < static_cast<int>(in.prev.size())) {
      est[v] = in.prev[v];
      expelled[v] = in.prev_expelled[v];
    } else {
      est[v] = 0;  // vertices created this stage start from scratch
    }
  }

  // (a) sanctioned decreases for fresh near-light transitions.
  for (int v : in.lightened)
    if (!expelled[v]) est[v] -= 2 * in.eps_tau;

  // (b) active-join resets from the previous stage's core estimates.
  for (const auto& j : in.joins) {
    if (expelled[j.center]) continue;
    int64_t best = INT64_MIN / 4;
    bool dead = false;
    for (int v : j.core) {
      if (v < static_cast<int>(in.prev.size()) && in.prev_expelled[v]) {
        dead = true;
        break;
      }
      int64_t p = v < static_cast<int>(in.prev.size()) ? in.prev[v] : 0;
      best = std::max(best, p);
    }
    if (dead) {
      expelled[j.center] = 1;
    } else {
      est[j.center] = best - j.reset_subtract;
    }
  }

  std::vector<std::vector<std::pair<int, int64_t>>> adj(nv);
  for (const auto& e : in.edges) {
    adj[e.a].push_back({e.b, e.w});
    adj[e.b].push_back({e.a, e.w});
  }

  // (d) consolidation: repeated passes of the monotone update rule.
  auto consolidate = [&]() {
    const int64_t guard =
        1000000 + static_cast<int64_t>(nv) * (in.depth / in.eps_tau + 64);
    for (int64_t round = 0;; ++round) {
      if (round > guard) throw std::runtime_error("consolidation diverged");
      bool changed = false;
      for (int v = 0; v < nv; ++v) {
        if (v == in.source || expelled[v]) continue;
        int64_t m = kInf;
        for (auto [u, w] : adj[v])
          if (!expelled[u]) m = std::min(m, est[u] + w);
        int64_t target = std::max(est[v], m);
        if (in.is_component[v]) target = std::min(target, in.component_cap);
        if (target == est[v]) continue;
        if (!in.is_component[v] && target > in.depth) {
          expelled[v] = 1;
          changed = true;
        } else {
          est[v] = target;
          changed = true;
        }
      }
      if (!changed) break;
    }
  };
  std::vector<int64_t> pre_consolidation = est;
  consolidate();

  // (e) dragging to a fixpoint: every active center whose estimate exceeds
  // its pre-consolidation value floors its core members.
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& a : in.actives) {
      if (expelled[a.center]) continue;
      int64_t pre = a.center < static_cast<int>(pre_consolidation.size())
                        ? pre_consolidation[a.center]
                        : 0;
      if (est[a.center] <= pre) continue;
      const int64_t floor_val = est[a.center] - in.drag_delta;
      for (int v : a.core) {
        if (expelled[v]) continue;
        if (est[v] < floor_val) {
          est[v] = floor_val;
          changed = true;
        }
      }
    }
  }

  // (f) final depth sweep.
  for (int v = 0; v < nv; ++v)
    if (!expelled[v] && !in.is_component[v] && est[v] > in.depth)
      expelled[v] = 1;

  return {est, expelled};
}

}  // namespace dsp_oracle
