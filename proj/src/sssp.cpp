#include "dsp/sssp.hpp"

#include <algorithm>
#include <cmath>

namespace dsp {

namespace {

Dist pow_dist(Dist base, int e) {
  Dist r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

ScaleInstance::ScaleInstance(const DecrementalGraph& g,
                             const LayeredCover& cover,
                             const ScaleParams& params)
    : params_(params) {
  const Dist top = params_.tau * pow_dist(params_.inv_eps, params_.k + 1);
  ch_ = std::make_unique<ClusterHierarchy>(g, cover, params_.mu, params_.tau,
                                           params_.inv_eps, params_.k);
  hl_ = std::make_unique<HeavyLightDecomposition>(g, cover, params_.mu,
                                                  4 * top, params_.tau);
  em_ = std::make_unique<ThresholdEmulator>(g, *ch_, *hl_, params_.source,
                                            params_.tau, params_.inv_eps);
  mes_ = std::make_unique<AlmostMesTree>(*em_, params_.depth);
}

void ScaleInstance::advance(std::optional<Edge> star_edge,
                            const CoverStageReport& cover_report) {
  auto hl_events = hl_->notify_stage(star_edge, cover_report.promotions);
  auto cluster_report = ch_->notify_stage(star_edge, cover_report.promotions);
  last_batch_ = em_->notify_stage(star_edge, hl_events, cluster_report);

  last_events_ = MesStageEvents{};
  for (const auto& ev : hl_events)
    if (ev.kind == HlEvent::kTransition)
      last_events_.lightened.push_back(ev.v);
  for (const auto& ac : cluster_report.changes)
    if (ac.joined)
      last_events_.joins.push_back(
          {ac.center, ac.level, ch_->core(ac.center)});
  for (int i = 0; i <= ch_->k(); ++i)
    for (VertexId c : ch_->active(i))
      last_events_.actives.push_back({c, ch_->core(c)});

  last_changes_ = mes_->apply_stage(last_batch_, last_events_);
}

double SsspAnswer::value() const {
  switch (kind) {
    case kInfinite:
      return std::numeric_limits<double>::infinity();
    case kExact:
      return static_cast<double>(raw);
    default:
      return static_cast<double>(raw) * inv / (inv - 1);
  }
}

SsspPipeline::SsspPipeline(int n, const std::vector<Edge>& edges,
                           VertexId source, const PipelineConfig& config)
    : g_(n, edges), source_(source) {
  if (source < 0 || source >= n) throw InputError("source out of range");
  if (!(config.epsilon > 0.0 && config.epsilon <= 1.0))
    throw InputError("epsilon must lie in (0,1]");
  inv_ = std::max<int>(10, static_cast<int>(std::ceil(5.0 / config.epsilon)));
  if (config.k > 0) {
    k_ = config.k;
  } else {
    int lg = 0;
    while ((1 << (lg + 1)) <= n) ++lg;
    k_ = std::max(1, static_cast<int>(std::floor(std::sqrt(double(lg)))));
  }
  const int64_t m = g_.m();
  mu_ = config.mu > 0
            ? config.mu
            : static_cast<EdgeCount>(
                  std::ceil(static_cast<double>(m) / std::sqrt(double(n))));

  // d_min = 2 m (1/eps)^{k+5} / mu, rounded up.
  const Dist inv_pow5 = pow_dist(inv_, k_ + 5);
  d_min_ = (2 * m * inv_pow5 + mu_ - 1) / mu_;
  base_depth_ = d_min_;

  int j_hi = 0;
  while ((static_cast<Dist>(1) << (j_hi + 1)) <= n) ++j_hi;
  int j_lo = 0;
  while ((static_cast<Dist>(1) << (j_lo + 1)) <= d_min_) ++j_lo;

  cover_ = std::make_unique<LayeredCover>(g_, mu_);

  struct Planned {
    int j;
    Dist tau;
  };
  std::vector<Planned> planned;
  for (int j = j_lo; j <= j_hi; ++j) {
    const Dist two_j = static_cast<Dist>(1) << j;
    // tau_j = mu 2^j eps^{k+4} / m must make eps*tau_j a positive integer.
    const Dist num = mu_ * two_j;
    const Dist den = m * pow_dist(inv_, k_ + 4);
    if (num % den != 0 || (num / den) % inv_ != 0) {
      // Scale dropped: the exact tree absorbs its distance range.
      ++dropped_scales_;
      base_depth_ = std::max(base_depth_, two_j * 2);
      continue;
    }
    planned.push_back({j, num / den});
  }

  base_ = std::make_unique<EsTree>(g_, source_, base_depth_);

  for (const auto& p : planned) {
    const Dist two_j1 = static_cast<Dist>(1) << (p.j + 1);
    Dist depth = two_j1 + (two_j1 + inv_ - 1) / inv_;  // ceil((1+eps) 2^{j+1})
    depth += config.depth_literal ? pow_dist(inv_, k_ + 2)
                                  : p.tau * pow_dist(inv_, k_ + 2);
    ScaleParams sp;
    sp.mu = mu_;
    sp.tau = p.tau;
    sp.inv_eps = inv_;
    sp.k = k_;
    sp.depth = depth;
    sp.source = source_;
    scales_.push_back(std::make_unique<ScaleInstance>(g_, *cover_, sp));
  }
}

void SsspPipeline::delete_edge(Edge e) {
  DeletionReport rep = g_.delete_edge(e);
  ++stage_;
  std::optional<Edge> star_edge;
  CoverStageReport cover_report;
  if (rep.applied_to_star) {
    star_edge = e;
    base_->notify_delete(e);
    cover_report = cover_->notify_delete(e);
  }
  for (auto& sc : scales_) sc->advance(star_edge, cover_report);
}

SsspAnswer SsspPipeline::query(VertexId v) const {
  SsspAnswer ans;
  ans.inv = inv_;
  if (!g_.conn(source_, v)) {
    ans.kind = SsspAnswer::kInfinite;
    return ans;
  }
  if (base_->level(v) <= base_->depth()) {
    ans.kind = SsspAnswer::kExact;
    ans.raw = base_->level(v);
    return ans;
  }
  for (size_t i = 0; i < scales_.size(); ++i) {
    if (!scales_[i]->holds(v)) continue;
    ans.kind = SsspAnswer::kScaled;
    ans.raw = scales_[i]->estimate(v);
    ans.scale_index = static_cast<int>(i);
    return ans;
  }
  ans.kind = SsspAnswer::kInfinite;  // no structure holds v (should not occur)
  return ans;
}

}  // namespace dsp
