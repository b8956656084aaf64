#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "dsp/types.hpp"

namespace dsp {

/// Read-only neighbor access for a connectivity probe. Neighbor lists must be
/// in ascending vertex order.
class NeighborSource {
 public:
  virtual ~NeighborSource() = default;
  virtual const std::vector<VertexId>& neighbors(VertexId v) const = 0;
};

struct SplitOutcome {
  bool split = false;
  // Vertices of the smaller component, ascending. On a size tie this is the
  // side containing min(u,v).
  std::vector<VertexId> smaller;
  // Deleted-edge endpoint lying inside `smaller`.
  VertexId smaller_endpoint = kNoVertex;
};

/// Pluggable decremental-connectivity probe: after the edge (u,v) has been
/// removed from the adjacency behind `src`, decide whether u and v fell into
/// different components, and if so enumerate the smaller side.
class ConnectivityBackend {
 public:
  virtual ~ConnectivityBackend() = default;
  virtual SplitOutcome probe(const NeighborSource& src, VertexId u,
                             VertexId v) = 0;
};

/// Default backend: lockstep bidirectional search from both endpoints. Cost is
/// O(min(|C_u|, |C_v|)) edges per disconnecting deletion, which preserves the
/// smaller-side rescan accounting.
class SearchConnectivity final : public ConnectivityBackend {
 public:
  SplitOutcome probe(const NeighborSource& src, VertexId u,
                     VertexId v) override;

 private:
  // Scratch reused across probes; keyed by vertex, values are epoch tags.
  std::vector<uint32_t> seen_u_, seen_v_;
  uint32_t epoch_ = 0;
};

std::unique_ptr<ConnectivityBackend> make_default_connectivity();

}  // namespace dsp
