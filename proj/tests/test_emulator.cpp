#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <optional>
#include <set>

#include "dsp/sssp.hpp"
#include "test_util.hpp"

using namespace dsp;
using testutil::snapshot;

namespace {

// Shared driver: graph + cover + one scale advanced per deletion.
struct Driver {
  DecrementalGraph g;
  LayeredCover cover;
  ScaleInstance scale;

  Driver(int n, const std::vector<Edge>& edges, ScaleParams p, EdgeCount mu)
      : g(n, edges), cover(g, mu), scale(g, cover, p) {}

  void remove(Edge e) {
    auto rep = g.delete_edge(e);
    if (!rep.applied_to_star) {
      scale.advance(std::nullopt, {});
      return;
    }
    auto cr = cover.notify_delete(e);
    scale.advance(e, cr);
  }
};

ScaleParams make_params(EdgeCount mu, Dist tau, int inv, int k, Dist depth,
                        VertexId s) {
  ScaleParams p;
  p.mu = mu;
  p.tau = tau;
  p.inv_eps = inv;
  p.k = k;
  p.depth = depth;
  p.source = s;
  return p;
}

dsp_oracle::Snapshot emu_snapshot(const DecrementalGraph& g,
                                  const ThresholdEmulator& em) {
  auto s = snapshot(g);
  s.emu_vertices = em.num_vertices();
  for (int64_t id = 0; id < em.total_edges_ever(); ++id) {
    const auto& e = em.edge(id);
    if (e.alive) s.emu_edges.push_back({e.a, e.b, e.w});
  }
  return s;
}

// Every live edge is one of the three kinds with the exact rounded weight.
void check_edges(const DecrementalGraph& g, const ScaleInstance& sc) {
  const auto& em = sc.emulator();
  const auto& ch = sc.clustering();
  const auto& hl = sc.hl();
  const Dist et = em.eps_tau();
  auto s = snapshot(g);
  for (int64_t id = 0; id < em.total_edges_ever(); ++id) {
    const auto& e = em.edge(id);
    if (!e.alive) continue;
    switch (e.kind) {
      case EmuEdgeKind::kComponent: {
        CHECK(e.w == et);
        REQUIRE(em.is_component_vertex(e.a) != em.is_component_vertex(e.b));
        VertexId v = em.is_component_vertex(e.a) ? e.b : e.a;
        CHECK(!hl.near_light(v));
        break;
      }
      case EmuEdgeKind::kCluster: {
        VertexId c = std::min(e.a, e.b);
        VertexId v = std::max(e.a, e.b);
        // One endpoint is the active center owning the edge.
        if (!ch.is_active(c)) std::swap(c, v);
        REQUIRE(ch.is_active(c));
        auto d = dsp_oracle::bfs_all(s.star_adj, c);
        CHECK(d[v] <= ch.radius(ch.level(c) + 1));
        CHECK(e.w == (d[v] + et - 1) / et * et);
        break;
      }
      case EmuEdgeKind::kSource: {
        VertexId v = e.a == em.source() ? e.b : e.a;
        auto d = dsp_oracle::bfs_all(s.star_adj, em.source());
        CHECK(d[v] <= em.source_ball_radius());
        CHECK(e.w == (d[v] + et - 1) / et * et);
        break;
      }
    }
  }
  // Active cluster edges are complete: every active center covers exactly
  // its cluster (minus itself).
  for (int i = 0; i <= ch.k(); ++i)
    for (VertexId c : ch.active(i)) {
      int64_t want = static_cast<int64_t>(ch.cluster(c).size()) - 1;
      int64_t have = 0;
      for (int64_t id : em.incident(c)) {
        const auto& e = em.edge(id);
        if (e.kind == EmuEdgeKind::kCluster &&
            (e.a == c || e.b == c))
          ++have;
      }
      CHECK(have >= want);  // plus possibly edges owned by other centers
    }
}

}  // namespace

TEST_CASE("parameter validation") {
  DecrementalGraph g(16, testutil::window_edges(1, 16, 40, 4));
  LayeredCover cover(g);
  ClusterHierarchy ch(g, cover, kUnbounded, 20, 10, 1);
  HeavyLightDecomposition hl(g, cover, kUnbounded, 4 * 20 * 100, 20);
  CHECK_THROWS_AS(ThresholdEmulator(g, ch, hl, 0, 25, 10), InputError);
}

TEST_CASE("single light neighborhood: only source-ball edges") {
  const int n = 14;
  Driver d(n, testutil::window_edges(5, n, 30, 4),
           make_params(kUnbounded, 20, 10, 1, 4000, 0), kUnbounded);
  const auto& em = d.scale.emulator();
  // mu unbounded: nothing near-heavy, no component vertices.
  CHECK(em.num_vertices() == n);
  for (int64_t id = 0; id < em.total_edges_ever(); ++id) {
    const auto& e = em.edge(id);
    if (!e.alive) continue;
    if (e.kind == EmuEdgeKind::kSource) CHECK((e.a == 0 || e.b == 0));
  }
  check_edges(d.g, d.scale);
}

TEST_CASE("all near-heavy: one component vertex stars the graph") {
  const int n = 12;
  Driver d(n, testutil::clique_edges(n),
           make_params(5, 20, 10, 1, 4000, 0), 5);
  const auto& em = d.scale.emulator();
  CHECK(em.num_vertices() == n + 1);
  int64_t comp_edges = 0;
  for (int64_t id = 0; id < em.total_edges_ever(); ++id) {
    const auto& e = em.edge(id);
    if (e.alive && e.kind == EmuEdgeKind::kComponent) {
      CHECK(e.w == em.eps_tau());
      ++comp_edges;
    }
  }
  CHECK(comp_edges == n);  // star over all members
  check_edges(d.g, d.scale);
}

TEST_CASE("weights stay exact across a full trace") {
  const int n = 90;
  auto edges = testutil::cycle_edges(n);
  Driver d(n, edges, make_params(kUnbounded, 20, 10, 1, 100000, 0),
           kUnbounded);
  check_edges(d.g, d.scale);
  int step = 0;
  for (const auto& e : testutil::shuffled(edges, 21)) {
    d.remove(e);
    if (++step % 7 == 0) check_edges(d.g, d.scale);
  }
  check_edges(d.g, d.scale);
}

TEST_CASE("mass transition dissolves component vertices with splits") {
  // Two cliques on a path; clique deletions shrink m* until every pivot
  // turns light in one stage, carving the single near-heavy component apart
  // vertex by vertex.
  const int n = 60;
  std::set<Edge> es;
  for (auto e : testutil::clique_edges(6, 0)) es.insert(e);
  for (auto e : testutil::clique_edges(6, 10)) es.insert(e);
  for (int i = 5; i < 10; ++i) es.insert(Edge(i, i + 1));
  for (int i = 15; i + 1 < n; ++i) es.insert(Edge(i, i + 1));
  std::vector<Edge> edges(es.begin(), es.end());
  const EdgeCount mu = static_cast<EdgeCount>(edges.size()) - 4;

  Driver d(n, edges, make_params(mu, 10, 10, 1, 1000000, 30), mu);
  const auto& em = d.scale.emulator();
  REQUIRE(em.num_vertices() == n + 1);  // one component over everything

  // Delete clique chords (never bridges) until the transition fires.
  std::vector<Edge> chords;
  for (auto e : testutil::clique_edges(6, 0))
    if (e.v - e.u > 1) chords.push_back(e);
  int64_t comp_removes = 0;
  for (auto e : chords) {
    d.remove(e);
    for (const auto& ch : d.scale.last_batch().changes)
      if (ch.kind == EmuChangeKind::kRemove &&
          em.edge(ch.edge_id).kind == EmuEdgeKind::kComponent)
        ++comp_removes;
    if (!d.scale.last_events().lightened.empty()) break;
  }
  CHECK(comp_removes == n);  // the original star is fully dismantled
  CHECK(d.scale.hl().stats().splits > 0);
  CHECK(d.scale.hl().stats().transitions == n);
  CHECK(em.live_edge_count() > 0);
  for (int64_t id = 0; id < em.total_edges_ever(); ++id)
    if (em.edge(id).alive)
      CHECK(em.edge(id).kind != EmuEdgeKind::kComponent);
  check_edges(d.g, d.scale);
}

TEST_CASE("vertex leaving a cluster deletes its edge") {
  // Long window graph: chords keep dying, so distances from level-0 centers
  // grow past the cluster radius while the centers stay active.
  const int n = 400;
  auto edges = testutil::window_edges(29, n, 560, 4);
  Driver d(n, edges, make_params(kUnbounded, 10, 10, 1, 10000000, 0),
           kUnbounded);
  bool saw_cluster_removal = false;
  for (const auto& e : testutil::shuffled(edges, 3)) {
    d.remove(e);
    for (const auto& ch : d.scale.last_batch().changes)
      if (ch.kind == EmuChangeKind::kRemove &&
          d.scale.emulator().edge(ch.edge_id).kind == EmuEdgeKind::kCluster)
        saw_cluster_removal = true;
    if (saw_cluster_removal) break;
  }
  CHECK(saw_cluster_removal);
  check_edges(d.g, d.scale);
}

TEST_CASE("emulator distance utility agrees with the oracle") {
  const int n = 70;
  auto edges = testutil::window_edges(9, n, 170, 6);
  Driver d(n, edges, make_params(40, 10, 10, 1, 100000, 0), 40);
  auto check = [&]() {
    auto s = emu_snapshot(d.g, d.scale.emulator());
    auto dist = dsp_oracle::emu_dist(s, 0);
    for (int v = 0; v < s.emu_vertices; ++v) {
      Dist mine = d.scale.emulator().distance_in_emulator(0, v);
      if (dist[v] >= dsp_oracle::kInf)
        CHECK(mine == kInfDist);
      else
        CHECK(mine == dist[v]);
    }
  };
  check();
  int step = 0;
  for (const auto& e : testutil::shuffled(edges, 31)) {
    d.remove(e);
    if (++step % 16 == 0) check();
  }
  check();
}

TEST_CASE("static stretch: emulator distances sandwich true distances") {
  // Long cycle so that cluster structure is non-trivial at tau=10.
  const int n = 420;
  auto edges = testutil::cycle_edges(n);
  Driver d(n, edges, make_params(kUnbounded, 10, 10, 1, 10000000, 0),
           kUnbounded);
  const int inv = 10;
  const Dist tau = 10;
  auto check_stretch = [&]() {
    auto s = emu_snapshot(d.g, d.scale.emulator());
    auto hd = dsp_oracle::emu_dist(s, 0);
    auto gd = dsp_oracle::bfs_all(s.star_adj, 0);
    for (int v = 0; v < n; ++v) {
      if (v == 0) continue;
      // Upper stretch: (1+eps) dist + 3 eps tau, everything near-light here.
      CHECK(hd[v] * inv <= (inv + 1) * gd[v] + 3 * tau);
      // No underestimate without component vertices.
      CHECK(hd[v] >= gd[v]);
    }
  };
  check_stretch();
  auto order = testutil::shuffled(edges, 77);
  for (int i = 0; i < 60; ++i) d.remove(order[i]);
  check_stretch();
}
