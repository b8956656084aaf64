#pragma once

#include <memory>
#include <vector>

#include "dsp/connectivity.hpp"
#include "dsp/types.hpp"

namespace dsp {

struct DeletionReport {
  int64_t stage = 0;
  // True when the deletion was also applied to the skip graph; false when the
  // deletion disconnected G and was retained there.
  bool applied_to_star = true;
  // Populated when skipped: vertices of the smaller new component, ascending.
  std::vector<VertexId> smaller_component;
};

/// Decremental input graph G plus the derived graph G* in which deletions
/// that would disconnect G are skipped, so G* stays connected at every stage.
/// Component labels give O(1) conn() queries; the smaller side of every split
/// is rescanned and relabeled.
class DecrementalGraph {
 public:
  DecrementalGraph(int n, const std::vector<Edge>& edges,
                   std::unique_ptr<ConnectivityBackend> backend = nullptr);

  DeletionReport delete_edge(Edge e);

  bool conn(VertexId u, VertexId v) const {
    check_vertex(u);
    check_vertex(v);
    return comp_[u] == comp_[v];
  }

  /// Exact dist over the current G* by breadth-first search (testing utility).
  Dist dist_star(VertexId u, VertexId v) const;

  int n() const { return n_; }
  int64_t m() const { return m_; }
  int64_t m_star() const { return m_star_; }
  int64_t stage() const { return stage_; }

  const std::vector<VertexId>& neighbors(VertexId v) const {
    check_vertex(v);
    return adj_[v];
  }
  const std::vector<VertexId>& star_neighbors(VertexId v) const {
    check_vertex(v);
    return star_adj_[v];
  }
  bool has_edge(VertexId u, VertexId v) const;
  bool has_star_edge(VertexId u, VertexId v) const;
  bool is_skipped(Edge e) const;

  /// Component label of v's component in G; equal labels iff connected.
  int32_t component_label(VertexId v) const {
    check_vertex(v);
    return comp_[v];
  }

  int64_t total_relabels() const { return total_relabels_; }

 private:
  void check_vertex(VertexId v) const {
    if (v < 0 || v >= n_) throw InputError("vertex out of range");
  }

  class AdjSource;

  int n_ = 0;
  int64_t m_ = 0;
  int64_t m_star_ = 0;
  int64_t stage_ = 0;
  std::vector<std::vector<VertexId>> adj_;       // G, sorted
  std::vector<std::vector<VertexId>> star_adj_;  // G*, sorted
  std::vector<char> skipped_;                    // by initial edge slot
  std::vector<Edge> initial_edges_;              // sorted; index = slot
  std::vector<int32_t> comp_;
  int32_t next_label_ = 1;
  int64_t total_relabels_ = 0;
  std::unique_ptr<ConnectivityBackend> backend_;
};

}  // namespace dsp
