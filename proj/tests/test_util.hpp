#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "dsp/graph.hpp"
#include "dsp/types.hpp"
#include "oracle.hpp"

namespace testutil {

// splitmix64: fixed, documented generator so test instances are identical on
// every platform.
struct Rng {
  uint64_t state;
  explicit Rng(uint64_t seed) : state(seed) {}
  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  int64_t below(int64_t bound) {
    return static_cast<int64_t>(next() % static_cast<uint64_t>(bound));
  }
};

inline std::vector<dsp::Edge> path_edges(int n) {
  std::vector<dsp::Edge> es;
  for (int i = 0; i + 1 < n; ++i) es.emplace_back(i, i + 1);
  return es;
}

inline std::vector<dsp::Edge> cycle_edges(int n) {
  auto es = path_edges(n);
  es.emplace_back(0, n - 1);
  return es;
}

inline std::vector<dsp::Edge> clique_edges(int n, int offset = 0) {
  std::vector<dsp::Edge> es;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) es.emplace_back(offset + i, offset + j);
  return es;
}

inline std::vector<dsp::Edge> star_edges(int n) {
  std::vector<dsp::Edge> es;
  for (int i = 1; i < n; ++i) es.emplace_back(0, i);
  return es;
}

// Path backbone plus extra chords between vertices at index distance <= win.
// Long diameter when win << n, which keeps ball structure non-trivial.
inline std::vector<dsp::Edge> window_edges(uint64_t seed, int n, int m,
                                           int win) {
  Rng rng(seed);
  auto es = path_edges(n);
  std::vector<char> present(static_cast<size_t>(n) * n, 0);
  for (const auto& e : es) present[static_cast<size_t>(e.u) * n + e.v] = 1;
  int guard = 50 * m + 1000;
  while (static_cast<int>(es.size()) < m && guard-- > 0) {
    int u = static_cast<int>(rng.below(n));
    int d = 2 + static_cast<int>(rng.below(std::max(1, win - 1)));
    int v = u + d;
    if (v >= n) continue;
    if (present[static_cast<size_t>(u) * n + v]) continue;
    present[static_cast<size_t>(u) * n + v] = 1;
    es.emplace_back(u, v);
  }
  return es;
}

// Uniform random extra edges over the path backbone.
inline std::vector<dsp::Edge> random_connected_edges(uint64_t seed, int n,
                                                     int m) {
  return window_edges(seed, n, m, n);
}

inline std::vector<dsp::Edge> shuffled(std::vector<dsp::Edge> es,
                                       uint64_t seed) {
  Rng rng(seed);
  for (size_t i = es.size(); i > 1; --i)
    std::swap(es[i - 1], es[rng.below(static_cast<int64_t>(i))]);
  return es;
}

inline dsp_oracle::Snapshot snapshot(const dsp::DecrementalGraph& g) {
  dsp_oracle::Snapshot s;
  s.n = g.n();
  s.g_adj.resize(s.n);
  s.star_adj.resize(s.n);
  for (int v = 0; v < s.n; ++v) {
    for (auto w : g.neighbors(v)) s.g_adj[v].push_back(w);
    for (auto w : g.star_neighbors(v)) s.star_adj[v].push_back(w);
  }
  return s;
}

inline bool star_connected(const dsp::DecrementalGraph& g) {
  auto d = dsp_oracle::bfs_all(testutil::snapshot(g).star_adj, 0);
  for (int v = 0; v < g.n(); ++v)
    if (d[v] >= dsp_oracle::kInf) return false;
  return true;
}

}  // namespace testutil
