#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "dsp/apsp.hpp"
#include "dsp/clustering.hpp"
#include "dsp/cover.hpp"
#include "dsp/emulator.hpp"
#include "dsp/es_tree.hpp"
#include "dsp/graph.hpp"
#include "dsp/heavy_light.hpp"
#include "dsp/mes_tree.hpp"

namespace dsp {

struct ScaleParams {
  EdgeCount mu = kUnbounded;
  Dist tau = 0;
  int inv_eps = 10;
  int k = 1;
  Dist depth = 0;
  VertexId source = 0;
};

/// One distance scale: heavy/light decomposition, clustering, emulator and
/// estimate tree over a shared graph and cover, advanced once per deletion.
class ScaleInstance {
 public:
  ScaleInstance(const DecrementalGraph& g, const LayeredCover& cover,
                const ScaleParams& params);

  void advance(std::optional<Edge> star_edge,
               const CoverStageReport& cover_report);

  const ScaleParams& params() const { return params_; }
  const HeavyLightDecomposition& hl() const { return *hl_; }
  const ClusterHierarchy& clustering() const { return *ch_; }
  const ThresholdEmulator& emulator() const { return *em_; }
  const AlmostMesTree& tree() const { return *mes_; }

  /// Artifacts of the most recent stage (for verification harnesses).
  const ChangeBatch& last_batch() const { return last_batch_; }
  const MesStageEvents& last_events() const { return last_events_; }
  const std::vector<EstimateChange>& last_changes() const {
    return last_changes_;
  }

  bool holds(VertexId v) const { return !mes_->expelled(v); }
  Dist estimate(VertexId v) const { return mes_->estimate(v); }

 private:
  ScaleParams params_;
  std::unique_ptr<HeavyLightDecomposition> hl_;
  std::unique_ptr<ClusterHierarchy> ch_;
  std::unique_ptr<ThresholdEmulator> em_;
  std::unique_ptr<AlmostMesTree> mes_;
  ChangeBatch last_batch_;
  MesStageEvents last_events_;
  std::vector<EstimateChange> last_changes_;
};

struct PipelineConfig {
  double epsilon = 0.5;    // user-facing accuracy
  EdgeCount mu = 0;        // 0: default ceil(m / sqrt(n))
  int k = 0;               // 0: default floor(sqrt(log2 n)), at least 1
  bool depth_literal = false;  // literal depth reading (no tau_j factor)
};

struct SsspAnswer {
  enum Kind { kInfinite, kExact, kScaled } kind = kInfinite;
  Dist raw = 0;   // exact distance, or the scale estimate before rescaling
  int inv = 1;    // internal 1/eps; scaled value = raw * inv / (inv - 1)
  int scale_index = -1;
  double value() const;
};

/// Full composition: exact tree for small distances, one emulator scale per
/// dyadic range, connectivity-gated queries rescaled by 1/(1-eps_int).
class SsspPipeline {
 public:
  SsspPipeline(int n, const std::vector<Edge>& edges, VertexId source,
               const PipelineConfig& config);

  void delete_edge(Edge e);
  SsspAnswer query(VertexId v) const;

  const DecrementalGraph& graph() const { return g_; }
  const LayeredCover& cover() const { return *cover_; }
  const EsTree& base_tree() const { return *base_; }
  int inv_eps() const { return inv_; }
  int k() const { return k_; }
  EdgeCount mu() const { return mu_; }
  Dist d_min() const { return d_min_; }
  Dist base_depth() const { return base_depth_; }
  int num_scales() const { return static_cast<int>(scales_.size()); }
  const ScaleInstance& scale(int i) const { return *scales_[i]; }
  int64_t dropped_scales() const { return dropped_scales_; }
  int64_t stage() const { return stage_; }

 private:
  DecrementalGraph g_;
  VertexId source_;
  int inv_;  // internal 1/eps
  int k_;
  EdgeCount mu_;
  Dist d_min_ = 0;
  Dist base_depth_ = 0;
  int64_t dropped_scales_ = 0;
  int64_t stage_ = 0;
  std::unique_ptr<LayeredCover> cover_;
  std::unique_ptr<EsTree> base_;
  std::vector<std::unique_ptr<ScaleInstance>> scales_;
};

}  // namespace dsp
