#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace dsp {

using VertexId = int32_t;
using Dist = int64_t;
using EdgeCount = int64_t;

constexpr VertexId kNoVertex = -1;
constexpr Dist kInfDist = std::numeric_limits<Dist>::max() / 4;
constexpr EdgeCount kUnbounded = std::numeric_limits<EdgeCount>::max() / 4;

/// Undirected edge stored canonically as (min,max).
struct Edge {
  VertexId u = kNoVertex;
  VertexId v = kNoVertex;

  Edge() = default;
  Edge(VertexId a, VertexId b) : u(a < b ? a : b), v(a < b ? b : a) {}

  bool operator==(const Edge& o) const { return u == o.u && v == o.v; }
  bool operator!=(const Edge& o) const { return !(*this == o); }
  bool operator<(const Edge& o) const {
    return u != o.u ? u < o.u : v < o.v;
  }
};

inline EdgeCount edge_key(VertexId u, VertexId v, int n) {
  Edge e(u, v);
  return static_cast<EdgeCount>(e.u) * n + e.v;
}

class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dsp
