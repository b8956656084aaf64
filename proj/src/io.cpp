#include "dsp/io.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace dsp {

namespace {

[[noreturn]] void parse_fail(int line, const std::string& what) {
  throw InputError("line " + std::to_string(line) + ": " + what);
}

}  // namespace

GraphFile read_graph(std::istream& in) {
  GraphFile g;
  std::string line;
  int lineno = 0;
  if (!std::getline(in, line)) parse_fail(1, "missing header");
  ++lineno;
  std::istringstream head(line);
  int64_t m = 0;
  if (!(head >> g.n >> m)) parse_fail(lineno, "expected 'n m'");
  for (int64_t i = 0; i < m; ++i) {
    if (!std::getline(in, line)) parse_fail(lineno + 1, "missing edge line");
    ++lineno;
    std::istringstream ls(line);
    int64_t u, v;
    if (!(ls >> u >> v)) parse_fail(lineno, "expected 'u v'");
    g.edges.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v));
  }
  return g;
}

void write_graph(std::ostream& out, const GraphFile& g) {
  out << g.n << ' ' << g.edges.size() << '\n';
  for (const auto& e : g.edges) out << e.u << ' ' << e.v << '\n';
}

std::vector<Edge> read_trace(std::istream& in) {
  std::vector<Edge> trace;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    int64_t u, v;
    if (!(ls >> u >> v)) parse_fail(lineno, "expected 'u v'");
    trace.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v));
  }
  return trace;
}

void write_trace(std::ostream& out, const std::vector<Edge>& trace) {
  for (const auto& e : trace) out << e.u << ' ' << e.v << '\n';
}

std::vector<ScriptCommand> read_script(std::istream& in) {
  std::vector<ScriptCommand> cmds;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string op;
    ls >> op;
    ScriptCommand c{};
    int64_t u = 0, v = 0;
    if (op == "D" || op == "QA" || op == "QP") {
      if (!(ls >> u >> v)) parse_fail(lineno, op + " needs two vertices");
      c.kind = op == "D" ? ScriptCommand::kDelete
               : op == "QA" ? ScriptCommand::kQueryApsp
                            : ScriptCommand::kQueryPath;
      c.u = static_cast<VertexId>(u);
      c.v = static_cast<VertexId>(v);
    } else if (op == "QS") {
      if (!(ls >> v)) parse_fail(lineno, "QS needs one vertex");
      c.kind = ScriptCommand::kQuerySssp;
      c.v = static_cast<VertexId>(v);
    } else if (op == "CHECK") {
      c.kind = ScriptCommand::kCheck;
    } else {
      parse_fail(lineno, "unknown command '" + op + "'");
    }
    cmds.push_back(c);
  }
  return cmds;
}

}  // namespace dsp
