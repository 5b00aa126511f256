#include "cutbound/maxcut.hpp"

#include "cutbound/errors.hpp"

#include <bit>
#include <string>

namespace cutbound {

int cut_value(const Graph& g, std::uint32_t b) {
    if (g.n < 32 && (b >> g.n) != 0)
        throw LengthMismatchError("assignment has bits beyond vertex " +
                                  std::to_string(g.n - 1));
    int cut = 0;
    for (int v = 0; v < g.n; ++v) {
        std::uint32_t side_v = b >> v & 1u;
        std::uint32_t other = side_v ? ~b : b;
        cut += std::popcount(g.adj[v] & other & ~((1u << v) - 1u) & ~(1u << v));
    }
    return cut;
}

CutResult maxcut_bruteforce(const Graph& g) {
    if (g.n > kMaxVertices)
        throw TooLargeError("maxcut enumeration capped at n = " +
                            std::to_string(kMaxVertices));
    const int n = g.n;
    CutResult best{0, 0};
    if (n <= 1 || g.m() == 0) return best;

    // Walk assignments of vertices 1..n-1 in Gray-code order; step k flips
    // vertex 1 + ctz(k), changing the cut by deg(v) - 2 * (cut edges at v).
    std::uint32_t assign = 0;
    int cut = 0;
    const std::uint64_t steps = 1ull << (n - 1);
    for (std::uint64_t k = 1; k < steps; ++k) {
        int v = 1 + std::countr_zero(k);
        std::uint32_t side_v = assign >> v & 1u;
        std::uint32_t opposite = side_v ? ~assign : assign;
        int cut_at_v = std::popcount(g.adj[v] & opposite);
        cut += g.degree(v) - 2 * cut_at_v;
        assign ^= 1u << v;
        if (cut > best.value || (cut == best.value && assign < best.witness)) {
            best.value = cut;
            best.witness = assign;
        }
    }
    return best;
}

} // namespace cutbound
