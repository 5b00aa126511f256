#include "cutbound/invariants.hpp"

#include "cutbound/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <vector>

namespace cutbound {

double mean_clustering(const Graph& g) {
    double total = 0.0;
    for (int v = 0; v < g.n; ++v) {
        int d = g.degree(v);
        if (d < 2) continue;
        int wedges_closed = 0; // ordered neighbor pairs of v that are adjacent
        std::uint32_t nb = g.adj[v];
        std::uint32_t rest = nb;
        while (rest != 0) {
            int u = std::countr_zero(rest);
            rest &= rest - 1;
            wedges_closed += std::popcount(g.adj[u] & nb);
        }
        // each triangle at v closes two ordered pairs
        total += static_cast<double>(wedges_closed) / (static_cast<double>(d) * (d - 1));
    }
    return total / g.n;
}

namespace {

// order vertices by saturation for the k-colorability search
struct ColorSearch {
    const Graph& g;
    int k;
    std::vector<int> color;          // -1 while uncolored
    std::vector<std::uint32_t> used; // used[v] bit c set iff a neighbor has color c

    explicit ColorSearch(const Graph& graph, int colors)
        : g(graph), k(colors), color(graph.n, -1), used(graph.n, 0) {}

    bool run(int colored, int max_color_used) {
        if (colored == g.n) return true;
        int pick = -1, pick_sat = -1, pick_deg = -1;
        for (int v = 0; v < g.n; ++v) {
            if (color[v] != -1) continue;
            int sat = std::popcount(used[v]);
            int deg = g.degree(v);
            if (sat > pick_sat || (sat == pick_sat && deg > pick_deg)) {
                pick = v;
                pick_sat = sat;
                pick_deg = deg;
            }
        }
        // trying more than one fresh color only permutes color classes
        int limit = std::min(k, max_color_used + 2);
        for (int c = 0; c < limit; ++c) {
            if (used[pick] >> c & 1u) continue;
            color[pick] = c;
            std::vector<int> touched;
            std::uint32_t nb = g.adj[pick];
            while (nb != 0) {
                int u = std::countr_zero(nb);
                nb &= nb - 1;
                if ((used[u] >> c & 1u) == 0) {
                    used[u] |= 1u << c;
                    touched.push_back(u);
                }
            }
            if (run(colored + 1, std::max(max_color_used, c))) return true;
            for (int u : touched) used[u] &= ~(1u << c);
            color[pick] = -1;
        }
        return false;
    }
};

int greedy_clique(const Graph& g) {
    std::vector<int> order(g.n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        int da = g.degree(a), db = g.degree(b);
        return da != db ? da > db : a < b;
    });
    int best = 0;
    for (int start : order) {
        std::uint32_t clique = 1u << start;
        std::uint32_t cand = g.adj[start];
        int size = 1;
        while (cand != 0) {
            int pick = -1, pick_deg = -1;
            std::uint32_t it = cand;
            while (it != 0) {
                int v = std::countr_zero(it);
                it &= it - 1;
                int d = std::popcount(g.adj[v] & cand);
                if (d > pick_deg) {
                    pick_deg = d;
                    pick = v;
                }
            }
            clique |= 1u << pick;
            ++size;
            cand &= g.adj[pick];
        }
        best = std::max(best, size);
    }
    return best;
}

int greedy_coloring(const Graph& g) {
    std::vector<int> color(g.n, -1);
    std::vector<std::uint32_t> used(g.n, 0);
    int max_color = -1;
    for (int step = 0; step < g.n; ++step) {
        int pick = -1, pick_sat = -1, pick_deg = -1;
        for (int v = 0; v < g.n; ++v) {
            if (color[v] != -1) continue;
            int sat = std::popcount(used[v]);
            int deg = g.degree(v);
            if (sat > pick_sat || (sat == pick_sat && deg > pick_deg)) {
                pick = v;
                pick_sat = sat;
                pick_deg = deg;
            }
        }
        int c = std::countr_zero(~used[pick]);
        color[pick] = c;
        max_color = std::max(max_color, c);
        std::uint32_t nb = g.adj[pick];
        while (nb != 0) {
            int u = std::countr_zero(nb);
            nb &= nb - 1;
            used[u] |= 1u << c;
        }
    }
    return max_color + 1;
}

} // namespace

int chromatic_number(const Graph& g) {
    if (g.m() == 0) return 1;
    int lo = std::max(2, greedy_clique(g));
    int hi = greedy_coloring(g);
    for (int k = lo; k < hi; ++k) {
        ColorSearch search(g, k);
        if (search.run(0, -1)) return k;
    }
    return hi;
}

namespace {

void mis_branch(const Graph& g, std::uint32_t cand, int size, int& best) {
    if (size + std::popcount(cand) <= best) return;
    if (cand == 0) {
        best = std::max(best, size);
        return;
    }
    // branch on the candidate with the most candidate neighbors
    int pick = -1, pick_deg = -1;
    std::uint32_t it = cand;
    while (it != 0) {
        int v = std::countr_zero(it);
        it &= it - 1;
        int d = std::popcount(g.adj[v] & cand);
        if (d > pick_deg) {
            pick_deg = d;
            pick = v;
        }
    }
    if (pick_deg == 0) { // remaining candidates are pairwise non-adjacent
        best = std::max(best, size + std::popcount(cand));
        return;
    }
    mis_branch(g, cand & ~(g.adj[pick] | (1u << pick)), size + 1, best);
    mis_branch(g, cand & ~(1u << pick), size, best);
}

} // namespace

int independence_number(const Graph& g) {
    int best = 0;
    std::uint32_t all = g.n == 32 ? ~0u : (1u << g.n) - 1u;
    mis_branch(g, all, 0, best);
    return best;
}

std::optional<double> degree_assortativity(const Graph& g) {
    if (g.m() == 0) throw NoEdgesError("assortativity needs at least one edge");
    // Pearson over both orientations of every edge. The symmetrized marginal
    // has zero variance exactly when every edge endpoint carries the same
    // degree (regular components); only then is the correlation 0/0.
    double sx = 0, sxx = 0, sxy = 0;
    const double cnt = 2.0 * g.m();
    for (auto& [u, v] : g.edges) {
        double a = g.degree(u), b = g.degree(v);
        sx += a + b;
        sxx += a * a + b * b;
        sxy += 2.0 * a * b;
    }
    double mean = sx / cnt;
    double var = sxx / cnt - mean * mean;
    double cov = sxy / cnt - mean * mean;
    if (var <= 1e-12) return std::nullopt;
    return cov / var;
}

double degree_std(const Graph& g) {
    double sum = 0, sumsq = 0;
    for (int v = 0; v < g.n; ++v) {
        double d = g.degree(v);
        sum += d;
        sumsq += d * d;
    }
    double mean = sum / g.n;
    double var = sumsq / g.n - mean * mean;
    return std::sqrt(std::max(0.0, var));
}

InvariantVector invariant_vector(const Graph& g) {
    InvariantVector iv;
    iv.n = g.n;
    iv.m = g.m();
    iv.mean_degree = 2.0 * g.m() / g.n;
    iv.clustering = mean_clustering(g);
    iv.chromatic = chromatic_number(g);
    iv.mis_ratio = static_cast<double>(independence_number(g)) / g.n;
    iv.assortativity = degree_assortativity(g);
    iv.degree_std = degree_std(g);
    return iv;
}

} // namespace cutbound
