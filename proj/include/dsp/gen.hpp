#pragma once

#include <cstdint>
#include <vector>

#include "dsp/types.hpp"

namespace dsp {

/// Deterministic instance generator (splitmix64 driven, identical output on
/// every platform): a path backbone 0-1-..-(n-1) plus random chords between
/// vertices at index distance in [2, max(2, n/8)], deduplicated.
std::vector<Edge> gen_graph(uint64_t seed, int n, int m);

/// Deterministic deletion trace: a shuffle of the edge list truncated to
/// `length` entries (all edges when length <= 0 or beyond the edge count).
std::vector<Edge> gen_trace(uint64_t seed, const std::vector<Edge>& edges,
                            int64_t length);

}  // namespace dsp
