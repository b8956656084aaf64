#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <optional>
#include <set>

#include "dsp/heavy_light.hpp"
#include "test_util.hpp"

using namespace dsp;
using testutil::snapshot;

namespace {

// Components of G*[near-heavy], recomputed from scratch.
std::set<std::vector<VertexId>> oracle_components(
    const DecrementalGraph& g, const HeavyLightDecomposition& hl) {
  std::set<std::vector<VertexId>> comps;
  std::vector<char> seen(g.n(), 0);
  for (VertexId v = 0; v < g.n(); ++v) {
    if (hl.near_light(v) || seen[v]) continue;
    std::vector<VertexId> mem;
    std::vector<VertexId> stack{v};
    seen[v] = 1;
    while (!stack.empty()) {
      VertexId x = stack.back();
      stack.pop_back();
      mem.push_back(x);
      for (VertexId w : g.star_neighbors(x))
        if (!hl.near_light(w) && !seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    std::sort(mem.begin(), mem.end());
    comps.insert(mem);
  }
  return comps;
}

std::set<std::vector<VertexId>> tracked_components(
    const HeavyLightDecomposition& hl) {
  std::set<std::vector<VertexId>> comps;
  for (ComponentId id : hl.component_ids())
    comps.insert(hl.component_members(id));
  return comps;
}

void check_state(const DecrementalGraph& g, const HeavyLightDecomposition& hl,
                 EdgeCount mu) {
  CHECK(tracked_components(hl) == oracle_components(g, hl));
  auto s = snapshot(g);
  for (VertexId v = 0; v < g.n(); ++v) {
    if (hl.near_light(v)) {
      // A near-light vertex is genuinely light at radius r (its pivot was
      // light at r+2tau within distance tau, and balls only shrink).
      CHECK(dsp_oracle::ball_edge_count(s, v, hl.r()) <= mu);
    } else {
      // A near-heavy vertex is heavy once the pivot slack is added: were
      // B(v, r+3tau) light, the pivot ball B(p, r+2tau) inside it would be
      // light too and v would have latched.
      CHECK(dsp_oracle::ball_edge_count(s, v, hl.r() + 3 * hl.tau()) > mu);
    }
  }
}

struct Driver {
  DecrementalGraph g;
  LayeredCover cover;
  HeavyLightDecomposition hl;

  Driver(int n, const std::vector<Edge>& edges, EdgeCount mu, Dist r, Dist tau)
      : g(n, edges), cover(g, mu), hl(g, cover, mu, r, tau) {}

  std::vector<HlEvent> remove(Edge e) {
    auto rep = g.delete_edge(e);
    if (!rep.applied_to_star) return hl.notify_stage(std::nullopt, {});
    auto cr = cover.notify_delete(e);
    return hl.notify_stage(e, cr.promotions);
  }
};

}  // namespace

TEST_CASE("huge mu makes everything near-light") {
  Driver d(12, testutil::path_edges(12), 1000, 4, 2);
  for (VertexId v = 0; v < 12; ++v) CHECK(d.hl.near_light(v));
  CHECK(d.hl.component_ids().empty());
}

TEST_CASE("mu = 0 keeps everything near-heavy") {
  Driver d(8, testutil::cycle_edges(8), 0, 4, 2);
  for (VertexId v = 0; v < 8; ++v) CHECK(!d.hl.near_light(v));
  CHECK(d.hl.component_ids().size() == 1);
  CHECK(d.hl.component_members(d.hl.component_of(0)).size() == 8);
}

TEST_CASE("clique plus pendant path: clique is one near-heavy component") {
  // K8 on 0..7 plus a path 7-8-9-...-29.
  std::vector<Edge> edges = testutil::clique_edges(8);
  for (int i = 7; i + 1 < 30; ++i) edges.emplace_back(i, i + 1);
  Driver d(30, edges, 20, 4, 2);
  check_state(d.g, d.hl, 20);
  for (VertexId v = 0; v < 7; ++v) CHECK(!d.hl.near_light(v));
  for (VertexId v = 20; v < 30; ++v) CHECK(d.hl.near_light(v));
  ComponentId c = d.hl.component_of(0);
  REQUIRE(c != kNoComponent);
  CHECK(d.hl.component_members(c).size() >= 7);
}

TEST_CASE("stage without pivot changes emits no transitions") {
  Driver d(10, testutil::clique_edges(10), 3, 2, 2);
  auto evs = d.remove(Edge(4, 7));
  for (const auto& ev : evs) CHECK(ev.kind != HlEvent::kTransition);
}

TEST_CASE("deleting the inter-clique edge splits the near-heavy component") {
  // Two K6 cliques joined directly and by a long light detour.
  std::vector<Edge> edges = testutil::clique_edges(6, 0);
  auto k2 = testutil::clique_edges(6, 6);
  edges.insert(edges.end(), k2.begin(), k2.end());
  edges.emplace_back(0, 6);  // direct bridge between the cliques
  const int n = 40;
  edges.emplace_back(5, 12);
  for (int i = 12; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  edges.emplace_back(n - 1, 11);

  Driver d(n, edges, 18, 4, 2);
  check_state(d.g, d.hl, 18);
  for (VertexId v = 0; v < 12; ++v) REQUIRE(!d.hl.near_light(v));
  REQUIRE(d.hl.component_of(0) == d.hl.component_of(6));

  auto evs = d.remove(Edge(0, 6));
  bool saw_split = false;
  for (const auto& ev : evs)
    if (ev.kind == HlEvent::kSplit) {
      // Each side is one clique plus its near-heavy detour stub.
      CHECK(ev.smaller.size() == 13);
      CHECK(std::binary_search(ev.smaller.begin(), ev.smaller.end(), 0));
      saw_split = true;
    }
  CHECK(saw_split);
  CHECK(d.hl.component_of(0) != d.hl.component_of(6));
  check_state(d.g, d.hl, 18);
}

TEST_CASE("one-way transitions and exact component tracking over a trace") {
  const int n = 46;
  auto edges = testutil::window_edges(57, n, 140, 9);
  const EdgeCount mu = 26;
  Driver d(n, edges, mu, 6, 2);
  check_state(d.g, d.hl, mu);
  std::vector<char> was_light(n, 0);
  for (VertexId v = 0; v < n; ++v) was_light[v] = d.hl.near_light(v);
  int step = 0;
  for (const auto& e : testutil::shuffled(edges, 19)) {
    d.remove(e);
    for (VertexId v = 0; v < n; ++v) {
      if (was_light[v]) CHECK(d.hl.near_light(v));  // never back to heavy
      was_light[v] = d.hl.near_light(v);
    }
    if (++step % 5 == 0) check_state(d.g, d.hl, mu);
  }
  check_state(d.g, d.hl, mu);
}

TEST_CASE("contraction bound arithmetic") {
  CHECK(contraction_error_bound(50, 4, 1, 100) == doctest::Approx(80.0));
  CHECK_THROWS_AS(contraction_error_bound(0, 4, 1, 100), InputError);
}

TEST_CASE("contracted distances respect the additive cap") {
  for (uint64_t seed : {4ULL, 29ULL, 63ULL}) {
    const int n = 36;
    auto edges = testutil::window_edges(seed, n, 110, 7);
    const EdgeCount mu = 22;
    const Dist r = 4, tau = 2;
    Driver d(n, edges, mu, r, tau);
    int step = 0;
    auto check_pairs = [&]() {
      auto s = snapshot(d.g);
      s.near_heavy.assign(n, 0);
      for (VertexId v = 0; v < n; ++v)
        s.near_heavy[v] = !d.hl.near_light(v);
      double bound = contraction_error_bound(mu, r, tau, d.g.m_star());
      for (int u = 0; u < n; u += 3) {
        auto dd = dsp_oracle::bfs_all(s.star_adj, u);
        for (int v = 0; v < n; ++v) {
          int64_t contracted = dsp_oracle::contracted_distance(s, u, v);
          CHECK(static_cast<double>(dd[v]) <=
                static_cast<double>(contracted) + bound);
        }
      }
    };
    check_pairs();
    for (const auto& e : testutil::shuffled(edges, seed * 5 + 3)) {
      d.remove(e);
      if (++step % 12 == 0) check_pairs();
    }
    check_pairs();
  }
}
