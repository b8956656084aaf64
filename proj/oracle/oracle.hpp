#pragma once

#include <cstdint>
#include <vector>

// Brute-force reference implementations used by the test suites. Everything
// here is deliberately independent of the production data structures: plain
// adjacency lists in, plain vectors out, recomputed from scratch per call.
namespace dsp_oracle {

constexpr int64_t kInf = INT64_MAX / 4;

struct WeightedEdge {
  int a = 0;
  int b = 0;
  int64_t w = 0;
};

/// Frozen copy of one stage: the graph G, the skip graph G*, optionally the
/// emulator and the near-heavy vertex set.
struct Snapshot {
  int n = 0;
  std::vector<std::vector<int>> g_adj;
  std::vector<std::vector<int>> star_adj;
  int emu_vertices = 0;
  std::vector<WeightedEdge> emu_edges;
  std::vector<char> near_heavy;
};

std::vector<int64_t> bfs_all(const std::vector<std::vector<int>>& adj, int src);

/// Number of edges with both endpoints in the ball B_{G*}(v, r).
int64_t ball_edge_count(const Snapshot& s, int v, int64_t r);

/// Distance in the graph obtained from G* by contracting every connected
/// component of the subgraph induced by near-heavy vertices.
int64_t contracted_distance(const Snapshot& s, int u, int v);

/// Shortest-path weights in the emulator from src (Dijkstra).
std::vector<int64_t> emu_dist(const Snapshot& s, int src);

struct MesJoin {
  int center = 0;
  int64_t reset_subtract = 0;  // 8 * tau * (1/eps)^i for the joined level
  std::vector<int> core;
};

struct MesActiveCore {
  int center = 0;
  std::vector<int> core;
};

/// Everything one stage of the estimate maintenance depends on.
struct MesStageInputs {
  int emu_vertices = 0;
  int source = 0;
  int64_t eps_tau = 1;
  int64_t depth = 0;
  int64_t component_cap = 0;  // value cap for component-vertex estimates
  int64_t drag_delta = 0;     // tau * (1/eps)^{k+1}
  std::vector<int64_t> prev;  // previous-stage estimates (size may be smaller
                              // than emu_vertices; new vertices start at 0)
  std::vector<char> prev_expelled;
  std::vector<char> is_component;
  std::vector<int> lightened;        // vertices decreased by 2*eps_tau
  std::vector<MesJoin> joins;        // centers joining an active set
  std::vector<MesActiveCore> actives;  // all active centers after the stage
  std::vector<WeightedEdge> edges;   // emulator edges after the stage
};

struct MesStageResult {
  std::vector<int64_t> est;
  std::vector<char> expelled;
};

/// Re-evaluates one stage of the almost-monotone estimate rules by repeated
/// full passes until a fixpoint is reached.
MesStageResult naive_mes_stage(const MesStageInputs& in);

}  // namespace dsp_oracle
