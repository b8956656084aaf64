#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "dsp/gen.hpp"
#include "dsp/io.hpp"
#include "test_util.hpp"

using namespace dsp;

TEST_CASE("generator is deterministic and feasible") {
  auto a = gen_graph(42, 24, 60);
  auto b = gen_graph(42, 24, 60);
  CHECK(a == b);
  auto c = gen_graph(43, 24, 60);
  CHECK(a != c);
  CHECK(a.size() == 60);
  CHECK_NOTHROW(DecrementalGraph(24, a));

  auto ta = gen_trace(42, a, 0);
  auto tb = gen_trace(42, a, 0);
  CHECK(ta == tb);
  CHECK(ta.size() == a.size());
  CHECK(gen_trace(42, a, 10).size() == 10);
}

TEST_CASE("spanning tree request: every deletion is skipped in the graph") {
  auto edges = gen_graph(9, 10, 9);
  CHECK(edges.size() == 9);
  DecrementalGraph g(10, edges);
  for (const auto& e : gen_trace(9, edges, 0)) {
    auto rep = g.delete_edge(e);
    CHECK(!rep.applied_to_star);
  }
}

TEST_CASE("infeasible generator parameters are rejected") {
  CHECK_THROWS_AS(gen_graph(1, 10, 8), InputError);    // below n-1
  CHECK_THROWS_AS(gen_graph(1, 4, 100), InputError);   // above complete graph
}

TEST_CASE("graph and trace files round-trip") {
  auto edges = gen_graph(5, 16, 30);
  std::stringstream s;
  write_graph(s, {16, edges});
  auto g = read_graph(s);
  CHECK(g.n == 16);
  CHECK(g.edges == edges);

  std::stringstream t;
  auto trace = gen_trace(5, edges, 12);
  write_trace(t, trace);
  CHECK(read_trace(t) == trace);
}

TEST_CASE("script parsing and line-numbered errors") {
  std::stringstream ok(
      "# comment\n"
      "D 0 1\n"
      "QA 2 3\n"
      "QP 1 4\n"
      "QS 5\n"
      "CHECK\n");
  auto cmds = read_script(ok);
  REQUIRE(cmds.size() == 5);
  CHECK(cmds[0].kind == ScriptCommand::kDelete);
  CHECK(cmds[4].kind == ScriptCommand::kCheck);

  std::stringstream bad("D 0 1\nXX 1\n");
  try {
    read_script(bad);
    FAIL("expected a parse error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("empty script yields header and aggregate only") {
  auto edges = gen_graph(3, 12, 24);
  std::ostringstream out;
  WorkloadOptions opt;
  opt.eps_inv = 2;
  auto res = run_workload({12, edges}, {}, std::vector<ScriptCommand>{}, opt,
                          out);
  CHECK(res.stages == 0);
  CHECK(res.violations == 0);
  std::string report = out.str();
  CHECK(report.find("cmd=header") == 0);
  CHECK(report.find("cmd=aggregate") != std::string::npos);
}

TEST_CASE("scripted run answers within contract") {
  // P5 with source 0: "QS 4" must land in [4, (1+eps)*4].
  GraphFile g{5, testutil::path_edges(5)};
  std::vector<ScriptCommand> script = {
      {ScriptCommand::kQuerySssp, kNoVertex, 4},
      {ScriptCommand::kQueryApsp, 0, 4},
      {ScriptCommand::kCheck, kNoVertex, kNoVertex},
  };
  std::ostringstream out;
  WorkloadOptions opt;
  opt.eps_inv = 2;
  auto res = run_workload(g, {}, script, opt, out);
  CHECK(res.violations == 0);
  CHECK(out.str().find("cmd=QS v=4") != std::string::npos);
}

TEST_CASE("trace replay with periodic checks is deterministic and clean") {
  auto edges = gen_graph(77, 40, 100);
  auto trace = gen_trace(77, edges, 0);
  WorkloadOptions opt;
  opt.eps_inv = 4;
  opt.check_every = 10;
  std::ostringstream a, b;
  auto ra = run_workload({40, edges}, trace, std::nullopt, opt, a);
  auto rb = run_workload({40, edges}, trace, std::nullopt, opt, b);
  CHECK(ra.violations == 0);
  CHECK(a.str() == b.str());  // byte-identical reports
  CHECK(ra.stages == static_cast<int64_t>(trace.size()));
  CHECK(ra.max_stretch_apsp <= 1.25);
}
