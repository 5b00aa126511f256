#pragma once

#include "cutbound/graph.hpp"

#include <cstdint>

namespace cutbound {

struct CutResult {
    int value = 0;
    std::uint32_t witness = 0; // bit v = side of vertex v
};

/// Number of edges crossing the bipartition encoded by b (bit v = side of v).
/// Throws LengthMismatchError when b has bits at or above position n.
int cut_value(const Graph& g, std::uint32_t b);

/// Exact maximum over all 2^{n-1} assignments with vertex 0 fixed to side 0
/// (complement symmetry), enumerated in Gray-code order with incremental
/// updates. Ties break toward the numerically smallest witness.
CutResult maxcut_bruteforce(const Graph& g);

} // namespace cutbound
