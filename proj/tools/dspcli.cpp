#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "dsp/gen.hpp"
#include "dsp/io.hpp"

namespace {

dsp::GraphFile load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw dsp::InputError("cannot open graph file " + path);
  return dsp::read_graph(in);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decremental shortest-path harness"};
  app.require_subcommand(1);

  // run
  std::string graph_path, trace_path, script_path;
  dsp::WorkloadOptions opt;
  std::string mode = "both";
  auto* run = app.add_subcommand("run", "replay a workload and verify");
  run->add_option("--graph", graph_path, "graph file")->required();
  run->add_option("--trace", trace_path, "deletion trace file");
  run->add_option("--script", script_path, "command script file");
  run->add_option("--epsilon", opt.eps_inv, "accuracy as 1/eps (integer)");
  run->add_option("--mu", opt.mu, "density threshold (0: default)");
  run->add_option("--k", opt.k, "hierarchy levels (0: default)");
  run->add_option("--mode", mode, "apsp | sssp | both");
  run->add_option("--source", opt.source, "sssp source vertex");
  run->add_flag("--depth-literal", opt.depth_literal,
                "use the literal scale-depth reading");
  run->add_option("--check-every", opt.check_every,
                  "oracle CHECK cadence without a script");

  // gen
  uint64_t seed = 1;
  int gen_n = 32;
  int gen_m = 64;
  int64_t trace_len = 0;
  std::string out_graph = "graph.txt", out_trace = "trace.txt";
  auto* gen = app.add_subcommand("gen", "generate a graph and trace");
  gen->add_option("--seed", seed, "generator seed");
  gen->add_option("--n", gen_n, "vertex count");
  gen->add_option("--m", gen_m, "edge count");
  gen->add_option("--trace-length", trace_len, "deletions (0: all edges)");
  gen->add_option("--graph-out", out_graph, "graph output path");
  gen->add_option("--trace-out", out_trace, "trace output path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      if (mode == "apsp")
        opt.mode = dsp::RunMode::kApsp;
      else if (mode == "sssp")
        opt.mode = dsp::RunMode::kSssp;
      else if (mode == "both")
        opt.mode = dsp::RunMode::kBoth;
      else
        throw dsp::InputError("unknown mode " + mode);

      dsp::GraphFile graph = load_graph(graph_path);
      std::vector<dsp::Edge> trace;
      if (!trace_path.empty()) {
        std::ifstream in(trace_path);
        if (!in) throw dsp::InputError("cannot open trace file " + trace_path);
        trace = dsp::read_trace(in);
      }
      std::optional<std::vector<dsp::ScriptCommand>> script;
      if (!script_path.empty()) {
        std::ifstream in(script_path);
        if (!in)
          throw dsp::InputError("cannot open script file " + script_path);
        script = dsp::read_script(in);
      }
      auto result = dsp::run_workload(graph, trace, script, opt, std::cout);
      return result.violations == 0 ? 0 : 2;
    }
    if (gen->parsed()) {
      auto edges = dsp::gen_graph(seed, gen_n, gen_m);
      auto trace = dsp::gen_trace(seed, edges, trace_len);
      std::ofstream og(out_graph);
      dsp::write_graph(og, {gen_n, edges});
      std::ofstream ot(out_trace);
      dsp::write_trace(ot, trace);
      std::cout << "cmd=gen seed=" << seed << " n=" << gen_n
                << " m=" << edges.size() << " trace=" << trace.size() << "\n";
      return 0;
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
