#include <memory>
#include <ostream>

#include "dsp/apsp.hpp"
#include "dsp/io.hpp"
#include "dsp/sssp.hpp"
#include "oracle.hpp"

namespace dsp {

namespace {

dsp_oracle::Snapshot snap(const DecrementalGraph& g) {
  dsp_oracle::Snapshot s;
  s.n = g.n();
  s.g_adj.resize(s.n);
  s.star_adj.resize(s.n);
  for (VertexId v = 0; v < g.n(); ++v) {
    for (VertexId w : g.neighbors(v)) s.g_adj[v].push_back(w);
    for (VertexId w : g.star_neighbors(v)) s.star_adj[v].push_back(w);
  }
  return s;
}

struct Runner {
  const WorkloadOptions& opt;
  std::ostream& out;
  WorkloadResult result;
  std::unique_ptr<ApspOracle> apsp;
  std::unique_ptr<SsspPipeline> sssp;

  Runner(const GraphFile& graph, const WorkloadOptions& options,
         std::ostream& os)
      : opt(options), out(os) {
    if (opt.eps_inv < 2) throw InputError("epsilon must be given as 1/eps >= 2");
    const double eps = 1.0 / opt.eps_inv;
    if (opt.mode != RunMode::kSssp)
      apsp = std::make_unique<ApspOracle>(graph.n, graph.edges, eps);
    if (opt.mode != RunMode::kApsp) {
      PipelineConfig cfg;
      cfg.epsilon = eps;
      cfg.mu = opt.mu;
      cfg.k = opt.k;
      cfg.depth_literal = opt.depth_literal;
      sssp = std::make_unique<SsspPipeline>(graph.n, graph.edges, opt.source,
                                            cfg);
    }
    out << "cmd=header n=" << graph.n << " m=" << graph.edges.size()
        << " mode=" << (opt.mode == RunMode::kApsp   ? "apsp"
                        : opt.mode == RunMode::kSssp ? "sssp"
                                                     : "both")
        << " epsilon_inv=" << opt.eps_inv << " source=" << opt.source;
    if (sssp)
      out << " mu=" << sssp->mu() << " k=" << sssp->k()
          << " d_min=" << sssp->d_min() << " scales=" << sssp->num_scales();
    out << "\n";
  }

  const DecrementalGraph& graph() const {
    return apsp ? apsp->graph() : sssp->graph();
  }

  void del(VertexId u, VertexId v) {
    Edge e(u, v);
    bool star = true;
    if (apsp) star = apsp->delete_edge(e).applied_to_star;
    if (sssp) {
      sssp->delete_edge(e);
      if (!apsp) star = !sssp->graph().is_skipped(e);
    }
    ++result.stages;
    out << "cmd=D u=" << e.u << " v=" << e.v << " stage=" << result.stages
        << " star=" << (star ? 1 : 0) << "\n";
  }

  void query_apsp(VertexId u, VertexId v) {
    Dist est = apsp->query(u, v);
    out << "cmd=QA u=" << u << " v=" << v << " est=";
    if (est >= kInfDist)
      out << "inf";
    else
      out << est;
    out << "\n";
  }

  void query_path(VertexId u, VertexId v) {
    out << "cmd=QP u=" << u << " v=" << v;
    if (!apsp->graph().conn(u, v)) {
      out << " path=none\n";
      return;
    }
    auto path = apsp->query_path(u, v);
    out << " len=" << path.size() - 1 << " est=" << apsp->query(u, v)
        << " path=";
    for (size_t i = 0; i < path.size(); ++i)
      out << (i ? "," : "") << path[i];
    out << "\n";
  }

  void query_sssp(VertexId v) {
    auto a = sssp->query(v);
    out << "cmd=QS v=" << v << " kind="
        << (a.kind == SsspAnswer::kInfinite  ? "inf"
            : a.kind == SsspAnswer::kExact ? "exact"
                                           : "scaled")
        << " raw=" << a.raw << " inv=" << a.inv;
    out << " value=";
    if (a.kind == SsspAnswer::kInfinite)
      out << "inf";
    else
      out << a.value();
    out << "\n";
  }

  // Oracle verification of the live answers at the current stage.
  void check() {
    ++result.checks;
    int64_t apsp_bad = 0, sssp_bad = 0;
    auto s = snap(graph());
    const int n = s.n;
    const int64_t e_inv = opt.eps_inv;
    if (apsp) {
      for (int u = 0; u < n; ++u) {
        auto d = dsp_oracle::bfs_all(s.g_adj, u);
        for (int v = 0; v < n; ++v) {
          Dist est = apsp->query(u, v);
          if (d[v] >= dsp_oracle::kInf) {
            if (est < kInfDist) ++apsp_bad;
            continue;
          }
          if (est >= kInfDist || est < d[v] ||
              est * e_inv > (e_inv + 1) * d[v]) {
            ++apsp_bad;
            continue;
          }
          if (d[v] > 0)
            result.max_stretch_apsp =
                std::max(result.max_stretch_apsp,
                         static_cast<double>(est) / static_cast<double>(d[v]));
        }
      }
      // Cover size bound at every layer.
      const auto& cov = apsp->cover();
      for (int j = 0; j <= cov.layers(); ++j)
        if (static_cast<int64_t>(cov.centers(j).size()) * (1LL << j) > 8LL * n)
          ++apsp_bad;
    }
    if (sssp) {
      auto d = dsp_oracle::bfs_all(s.g_adj, opt.source);
      for (int v = 0; v < n; ++v) {
        auto a = sssp->query(v);
        if (d[v] >= dsp_oracle::kInf) {
          if (a.kind != SsspAnswer::kInfinite) ++sssp_bad;
          continue;
        }
        if (a.kind == SsspAnswer::kInfinite) {
          ++sssp_bad;
          continue;
        }
        bool ok;
        double value;
        if (a.kind == SsspAnswer::kExact) {
          ok = a.raw == d[v];
          value = static_cast<double>(a.raw);
        } else {
          ok = d[v] * (a.inv - 1) <= a.raw * a.inv &&
               a.raw * a.inv * e_inv <= (e_inv + 1) * d[v] * (a.inv - 1);
          value = a.value();
        }
        if (!ok)
          ++sssp_bad;
        else if (d[v] > 0)
          result.max_stretch_sssp =
              std::max(result.max_stretch_sssp,
                       value / static_cast<double>(d[v]));
      }
    }
    result.violations += apsp_bad + sssp_bad;
    out << "cmd=CHECK stage=" << result.stages
        << " apsp_violations=" << apsp_bad << " sssp_violations=" << sssp_bad
        << "\n";
  }

  void finish() {
    out << "cmd=aggregate stages=" << result.stages
        << " checks=" << result.checks << " violations=" << result.violations
        << " max_stretch_apsp=" << result.max_stretch_apsp
        << " max_stretch_sssp=" << result.max_stretch_sssp << "\n";
  }
};

}  // namespace

WorkloadResult run_workload(
    const GraphFile& graph, const std::vector<Edge>& trace,
    const std::optional<std::vector<ScriptCommand>>& script,
    const WorkloadOptions& options, std::ostream& out) {
  Runner r(graph, options, out);
  if (script) {
    for (const auto& c : *script) {
      switch (c.kind) {
        case ScriptCommand::kDelete:
          r.del(c.u, c.v);
          break;
        case ScriptCommand::kQueryApsp:
          if (!r.apsp) throw InputError("QA requires apsp mode");
          r.query_apsp(c.u, c.v);
          break;
        case ScriptCommand::kQueryPath:
          if (!r.apsp) throw InputError("QP requires apsp mode");
          r.query_path(c.u, c.v);
          break;
        case ScriptCommand::kQuerySssp:
          if (!r.sssp) throw InputError("QS requires sssp mode");
          r.query_sssp(c.v);
          break;
        case ScriptCommand::kCheck:
          r.check();
          break;
      }
    }
  } else {
    int since = 0;
    for (const auto& e : trace) {
      r.del(e.u, e.v);
      if (options.check_every > 0 && ++since >= options.check_every) {
        since = 0;
        r.check();
      }
    }
    r.check();
  }
  r.finish();
  return r.result;
}

}  // namespace dsp
