#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dsp/cover.hpp"
#include "dsp/graph.hpp"
#include "test_util.hpp"

using namespace dsp;
using testutil::snapshot;

namespace {

Dist pow2(int j) { return static_cast<Dist>(1) << j; }

// Full cover verification against fresh BFS distances.
void check_cover_invariants(const DecrementalGraph& g, const LayeredCover& c,
                            EdgeCount mu) {
  auto s = snapshot(g);
  const int n = g.n();
  for (int j = 0; j <= c.layers(); ++j) {
    CHECK(static_cast<int64_t>(c.centers(j).size()) * pow2(j) <= 8 * n);
  }
  for (VertexId v = 0; v < n; ++v) {
    auto d = dsp_oracle::bfs_all(s.star_adj, v);
    for (int j = 0; j <= c.layers(); ++j) {
      bool light = mu == kUnbounded ||
                   dsp_oracle::ball_edge_count(s, v, 2 * pow2(j)) <= mu;
      VertexId p = c.pivot(j, v);
      if (light) {
        REQUIRE(p != kNoVertex);
        CHECK(d[p] <= pow2(j));
        if (mu != kUnbounded) {
          // Pivot of a light vertex is itself light at the layer radius.
          CHECK(dsp_oracle::ball_edge_count(s, p, pow2(j)) <= mu);
        }
      }
      if (p != kNoVertex) CHECK(c.pivot_dist(j, v) == d[p]);
    }
  }
}

}  // namespace

TEST_CASE("P8 layered cover basics") {
  DecrementalGraph g(8, testutil::path_edges(8));
  LayeredCover c(g);
  CHECK(c.layers() == 3);
  CHECK(c.centers(0).size() == 8);
  check_cover_invariants(g, c, kUnbounded);
  // Layer-0 pivots are the vertices themselves.
  for (VertexId v = 0; v < 8; ++v) CHECK(c.pivot(0, v) == v);
}

TEST_CASE("two-vertex graph has one extra layer") {
  DecrementalGraph g(2, testutil::path_edges(2));
  LayeredCover c(g);
  CHECK(c.layers() == 1);
  CHECK(c.centers(0).size() == 2);
}

TEST_CASE("deletion changing no ball yields an empty report") {
  DecrementalGraph g(10, testutil::clique_edges(10));
  LayeredCover c(g);
  auto rep1 = g.delete_edge(Edge(5, 6));
  REQUIRE(rep1.applied_to_star);
  auto rep = c.notify_delete(Edge(5, 6));
  CHECK(rep.promotions.empty());
  CHECK(rep.pivot_changes.empty());
}

TEST_CASE("centers never demote and separation holds at promotion") {
  const int n = 48;
  auto edges = testutil::window_edges(41, n, 120, 6);
  DecrementalGraph g(n, edges);
  LayeredCover c(g);
  std::vector<std::vector<VertexId>> before;
  for (int j = 0; j <= c.layers(); ++j) before.push_back(c.centers(j));

  for (const auto& e : testutil::shuffled(edges, 77)) {
    auto rep = g.delete_edge(e);
    if (!rep.applied_to_star) continue;
    auto report = c.notify_delete(e);
    auto s = snapshot(g);
    for (const auto& p : report.promotions) {
      // Pairwise separation from every other same-layer center right now.
      auto d = dsp_oracle::bfs_all(s.star_adj, p.center);
      for (VertexId c2 : c.centers(p.layer))
        if (c2 != p.center) CHECK(d[c2] > pow2(p.layer - 1));
    }
    for (int j = 0; j <= c.layers(); ++j) {
      for (VertexId old : before[j]) CHECK(c.is_center(j, old));
      before[j] = c.centers(j);
    }
  }
}

TEST_CASE("plain cover invariants over a full trace") {
  const int n = 40;
  auto edges = testutil::window_edges(15, n, 100, 7);
  DecrementalGraph g(n, edges);
  LayeredCover c(g);
  check_cover_invariants(g, c, kUnbounded);
  int step = 0;
  for (const auto& e : testutil::shuffled(edges, 3)) {
    auto rep = g.delete_edge(e);
    if (!rep.applied_to_star) continue;
    c.notify_delete(e);
    if (++step % 4 == 0) check_cover_invariants(g, c, kUnbounded);
  }
  check_cover_invariants(g, c, kUnbounded);
}

TEST_CASE("light cover invariants over a full trace") {
  const int n = 60;
  auto edges = testutil::window_edges(23, n, 180, 8);
  DecrementalGraph g(n, edges);
  const EdgeCount mu = 20;
  LayeredCover c(g, mu);
  check_cover_invariants(g, c, mu);
  int step = 0;
  for (const auto& e : testutil::shuffled(edges, 91)) {
    auto rep = g.delete_edge(e);
    if (!rep.applied_to_star) continue;
    c.notify_delete(e);
    if (++step % 10 == 0) check_cover_invariants(g, c, mu);
  }
  check_cover_invariants(g, c, mu);
}

TEST_CASE("scratch rebuild on the evolved graph passes the same checks") {
  const int n = 32;
  auto edges = testutil::window_edges(10, n, 80, 5);
  DecrementalGraph g(n, edges);
  LayeredCover c(g);
  int deleted = 0;
  for (const auto& e : testutil::shuffled(edges, 44)) {
    auto rep = g.delete_edge(e);
    if (!rep.applied_to_star) continue;
    c.notify_delete(e);
    if (++deleted == 20) break;
  }
  check_cover_invariants(g, c, kUnbounded);
  // The dynamic center sets need not match a static greedy; both only have
  // to satisfy the covering radius and size bound on the current graph.
  LayeredCover fresh(g);
  check_cover_invariants(g, fresh, kUnbounded);
}
