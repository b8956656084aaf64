#include "dsp/gen.hpp"

#include <algorithm>
#include <set>

namespace dsp {

namespace {

struct SplitMix {
  uint64_t state;
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

}  // namespace

std::vector<Edge> gen_graph(uint64_t seed, int n, int m) {
  if (n < 2) throw InputError("gen: need at least two vertices");
  if (m < n - 1) throw InputError("gen: m must be at least n-1");
  const int64_t max_edges = static_cast<int64_t>(n) * (n - 1) / 2;
  if (m > max_edges) throw InputError("gen: m exceeds the simple-graph bound");

  SplitMix rng{seed};
  std::vector<Edge> edges;
  std::set<Edge> present;
  for (int i = 0; i + 1 < n; ++i) {
    edges.emplace_back(i, i + 1);
    present.insert(edges.back());
  }
  const int win = std::max<int>(2, n / 8);
  int64_t guard = 200LL * m + 10000;
  while (static_cast<int>(edges.size()) < m && guard-- > 0) {
    int u = static_cast<int>(rng.below(n));
    int d = 2 + static_cast<int>(rng.below(std::max(1, win - 1)));
    if (u + d >= n) continue;
    Edge e(u, u + d);
    if (present.count(e)) continue;
    present.insert(e);
    edges.push_back(e);
  }
  // Window saturated (dense request on a short path): fall back to any pair.
  while (static_cast<int>(edges.size()) < m) {
    int u = static_cast<int>(rng.below(n));
    int v = static_cast<int>(rng.below(n));
    if (u == v) continue;
    Edge e(u, v);
    if (present.count(e)) continue;
    present.insert(e);
    edges.push_back(e);
  }
  return edges;
}

std::vector<Edge> gen_trace(uint64_t seed, const std::vector<Edge>& edges,
                            int64_t length) {
  SplitMix rng{seed ^ 0x5851f42d4c957f2dULL};
  std::vector<Edge> trace = edges;
  for (size_t i = trace.size(); i > 1; --i)
    std::swap(trace[i - 1], trace[rng.below(static_cast<int64_t>(i))]);
  if (length > 0 && length < static_cast<int64_t>(trace.size()))
    trace.resize(length);
  return trace;
}

}  // namespace dsp
