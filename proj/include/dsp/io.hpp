#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dsp/types.hpp"

namespace dsp {

struct GraphFile {
  int n = 0;
  std::vector<Edge> edges;
};

// "n m" header, then one "u v" per line (0-based).
GraphFile read_graph(std::istream& in);
void write_graph(std::ostream& out, const GraphFile& g);

// One "u v" per line.
std::vector<Edge> read_trace(std::istream& in);
void write_trace(std::ostream& out, const std::vector<Edge>& trace);

struct ScriptCommand {
  enum Kind { kDelete, kQueryApsp, kQueryPath, kQuerySssp, kCheck } kind;
  VertexId u = kNoVertex;
  VertexId v = kNoVertex;
};

// Lines: "D u v" | "QA u v" | "QP u v" | "QS v" | "CHECK"; '#' comments.
std::vector<ScriptCommand> read_script(std::istream& in);

enum class RunMode { kApsp, kSssp, kBoth };

struct WorkloadOptions {
  int eps_inv = 2;  // user accuracy as 1/eps
  EdgeCount mu = 0;
  int k = 0;
  RunMode mode = RunMode::kBoth;
  VertexId source = 0;
  bool depth_literal = false;
  int check_every = 0;  // with no script: CHECK every N deletions
};

struct WorkloadResult {
  int64_t stages = 0;
  int64_t checks = 0;
  int64_t violations = 0;
  double max_stretch_apsp = 1.0;
  double max_stretch_sssp = 1.0;
};

/// Executes a workload and writes one key=value record per command. With a
/// script the commands drive everything; otherwise the whole trace is applied
/// with a CHECK every `check_every` deletions (and one at the end).
WorkloadResult run_workload(const GraphFile& graph,
                            const std::vector<Edge>& trace,
                            const std::optional<std::vector<ScriptCommand>>& script,
                            const WorkloadOptions& options, std::ostream& out);

}  // namespace dsp
