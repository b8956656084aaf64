#include "dsp/cover.hpp"

#include <algorithm>

namespace dsp {

namespace {

Dist pow2(int j) { return static_cast<Dist>(1) << j; }

}  // namespace

LayeredCover::LayeredCover(const DecrementalGraph& g, EdgeCount mu)
    : g_(g), mu_(mu) {
  levels_ = 0;
  while (pow2(levels_ + 1) <= g_.n()) ++levels_;

  centers_.resize(levels_ + 1);
  is_center_.assign(levels_ + 1, std::vector<char>(g_.n(), 0));
  trees_.resize(levels_ + 1);
  light_trees_.resize(levels_ + 1);
  pivot_.assign(levels_ + 1, std::vector<VertexId>(g_.n(), kNoVertex));

  CoverStageReport ignored;
  for (VertexId v = 0; v < g_.n(); ++v) {
    make_center(0, v);
    offer_pivot(0, v, ignored);
  }
  // Greedy promotion to a fixpoint builds the higher layers.
  bool changed = true;
  while (changed) {
    changed = false;
    for (int j = 0; j < levels_; ++j)
      for (size_t i = 0; i < centers_[j].size(); ++i) {
        VertexId c = centers_[j][i];
        if (eligible(j, c)) {
          promote(j, c, ignored);
          changed = true;
        }
      }
  }
  total_promotions_ = 0;  // build-time promotions are not stage events
}

bool LayeredCover::eligible(int layer, VertexId c) const {
  if (layer >= levels_) return false;
  if (trees_[layer].at(c)->has_marked()) return false;
  if (mu_ != kUnbounded && light_trees_[layer].at(c)->is_heavy()) return false;
  return true;
}

void LayeredCover::make_center(int layer, VertexId c) {
  auto pos =
      std::lower_bound(centers_[layer].begin(), centers_[layer].end(), c);
  centers_[layer].insert(pos, c);
  is_center_[layer][c] = 1;

  auto tree = std::make_unique<EsTree>(g_, c, pow2(layer));
  // Eligibility marks: next-layer centers already inside the ball.
  if (layer < levels_)
    for (VertexId x : centers_[layer + 1])
      if (tree->level(x) <= pow2(layer)) tree->mark(x);
  trees_[layer][c] = std::move(tree);

  if (mu_ != kUnbounded && layer < levels_)
    light_trees_[layer][c] =
        std::make_unique<EsTree>(g_, c, 2 * pow2(layer + 1), mu_);
}

void LayeredCover::promote(int layer_from, VertexId c,
                           CoverStageReport& report) {
  const int to = layer_from + 1;
  make_center(to, c);
  ++total_promotions_;
  report.promotions.push_back({to, c});
  // Block neighbors at the source layer.
  for (VertexId c2 : centers_[layer_from]) {
    auto& t = *trees_[layer_from][c2];
    if (t.level(c) <= pow2(layer_from)) t.mark(c);
  }
  offer_pivot(to, c, report);
}

void LayeredCover::offer_pivot(int layer, VertexId c,
                               CoverStageReport& report) {
  const auto& t = *trees_[layer].at(c);
  const Dist r = pow2(layer);
  for (VertexId v = 0; v < g_.n(); ++v) {
    Dist d = t.level(v);
    if (d > r) continue;
    VertexId cur = pivot_[layer][v];
    if (cur == kNoVertex) {
      pivot_[layer][v] = c;
      report.pivot_changes.push_back({layer, v, cur, c});
      continue;
    }
    Dist cd = trees_[layer].at(cur)->level(v);
    if (d < cd || (d == cd && c < cur)) {
      pivot_[layer][v] = c;
      report.pivot_changes.push_back({layer, v, cur, c});
    }
  }
}

void LayeredCover::recompute_pivot(int layer, VertexId v,
                                   CoverStageReport& report) {
  VertexId best = kNoVertex;
  Dist best_d = kInfDist;
  const Dist r = pow2(layer);
  for (VertexId c : centers_[layer]) {
    Dist d = trees_[layer][c]->level(v);
    if (d <= r && d < best_d) {
      best = c;
      best_d = d;
    }
  }
  if (best != pivot_[layer][v]) {
    report.pivot_changes.push_back({layer, v, pivot_[layer][v], best});
    pivot_[layer][v] = best;
  }
}

CoverStageReport LayeredCover::notify_delete(Edge e) {
  ++stage_;
  CoverStageReport report;

  // Advance every tree, then repair pivots whose supporting distance grew.
  for (int j = 0; j <= levels_; ++j) {
    for (VertexId c : centers_[j]) {
      auto events = trees_[j][c]->notify_delete(e);
      for (const auto& ev : events) {
        if (ev.kind != EsEventKind::kLevelIncrease &&
            ev.kind != EsEventKind::kExpelled)
          continue;
        if (pivot_[j][ev.v] == c) recompute_pivot(j, ev.v, report);
      }
    }
    if (mu_ != kUnbounded && j < levels_)
      for (VertexId c : centers_[j]) light_trees_[j][c]->notify_delete(e);
  }

  // Restore greedy maximality: promote newly eligible centers, ascending
  // vertex index within a layer, cascading across layers.
  bool changed = true;
  while (changed) {
    changed = false;
    for (int j = 0; j < levels_; ++j)
      for (size_t i = 0; i < centers_[j].size(); ++i) {
        VertexId c = centers_[j][i];
        if (eligible(j, c)) {
          promote(j, c, report);
          changed = true;
        }
      }
  }
  return report;
}

Dist LayeredCover::pivot_dist(int layer, VertexId v) const {
  VertexId p = pivot_[layer][v];
  if (p == kNoVertex) return kInfDist;
  return trees_[layer].at(p)->level(v);
}

int LayeredCover::layer_for_radius(Dist tau) const {
  if (tau < 2) throw InputError("cover radius must be at least 2");
  int j = 0;
  while (pow2(j + 1) <= tau) ++j;
  return std::min(j, levels_);
}

Dist LayeredCover::center_dist(int layer, VertexId c, VertexId v) const {
  return trees_[layer].at(c)->level(v);
}

bool LayeredCover::is_center(int layer, VertexId c) const {
  return is_center_[layer][c] != 0;
}

CoverStats LayeredCover::stats() const {
  CoverStats s;
  for (int j = 0; j <= levels_; ++j)
    s.centers_per_layer.push_back(static_cast<int64_t>(centers_[j].size()));
  s.total_promotions = total_promotions_;
  return s;
}

}  // namespace dsp
