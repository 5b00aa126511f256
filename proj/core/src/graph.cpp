#include "cutbound/graph.hpp"

#include "cutbound/errors.hpp"
#include "cutbound/rng.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <fstream>
#include <limits>
#include <optional>
#include <string>

namespace cutbound {

int Graph::degree(int v) const { return std::popcount(adj[v]); }

bool Graph::has_edge(int u, int v) const {
    return u != v && (adj[u] >> v & 1u) != 0;
}

void Graph::rebuild_adjacency() {
    adj.assign(n, 0u);
    for (auto& [u, v] : edges) {
        adj[u] |= 1u << v;
        adj[v] |= 1u << u;
    }
}

Graph make_graph(int n, std::vector<std::pair<int, int>> edges) {
    if (n < 1) throw InvalidParamsError("graph needs at least one vertex");
    if (n > kMaxVertices)
        throw TooLargeError("vertex count " + std::to_string(n) + " exceeds limit " +
                            std::to_string(kMaxVertices));
    for (auto& [u, v] : edges) {
        if (u == v) throw SelfLoopError("self-loop at vertex " + std::to_string(u));
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw InvalidParamsError("edge endpoint out of range");
        if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    Graph g;
    g.n = n;
    g.edges = std::move(edges);
    g.rebuild_adjacency();
    return g;
}

bool is_connected(const Graph& g) {
    if (g.n <= 1) return true;
    std::uint32_t seen = 1u;
    std::uint32_t frontier = 1u;
    while (frontier != 0) {
        std::uint32_t next = 0;
        while (frontier != 0) {
            int v = std::countr_zero(frontier);
            frontier &= frontier - 1;
            next |= g.adj[v] & ~seen;
        }
        seen |= next;
        frontier = next;
    }
    return seen == (g.n == 32 ? ~0u : (1u << g.n) - 1u);
}

std::string model_name(const GraphModel& model) {
    struct Visitor {
        std::string operator()(const BarabasiAlbert&) const { return "ba"; }
        std::string operator()(const WattsStrogatz&) const { return "ws"; }
        std::string operator()(const Gnm&) const { return "gnm"; }
        std::string operator()(const RandomRegular&) const { return "regular"; }
    };
    return std::visit(Visitor{}, model);
}

GraphModel model_from_name(const std::string& name, int attach, int k, double beta,
                           int m, int d) {
    if (name == "ba" || name == "barabasi_albert") return BarabasiAlbert{attach};
    if (name == "ws" || name == "watts_strogatz") return WattsStrogatz{k, beta};
    if (name == "gnm") return Gnm{m};
    if (name == "regular" || name == "random_regular") return RandomRegular{d};
    throw InvalidParamsError("unknown graph model '" + name + "'");
}

namespace {

// Draws `count` distinct values from the weighted pool (values repeated in
// proportion to their attachment weight).
std::vector<int> distinct_from_pool(const std::vector<int>& pool, int count, Rng& rng) {
    std::vector<int> picked;
    while (static_cast<int>(picked.size()) < count) {
        int v = pool[rng.below(pool.size())];
        if (std::find(picked.begin(), picked.end(), v) == picked.end())
            picked.push_back(v);
    }
    return picked;
}

Graph sample_ba(int n, int attach, Rng& rng) {
    std::vector<std::pair<int, int>> edges;
    std::vector<int> pool;
    // Seed core: star centered at 0 on attach+1 vertices.
    for (int v = 1; v <= attach; ++v) {
        edges.emplace_back(0, v);
        pool.push_back(0);
        pool.push_back(v);
    }
    for (int source = attach + 1; source < n; ++source) {
        auto targets = distinct_from_pool(pool, attach, rng);
        for (int t : targets) {
            edges.emplace_back(std::min(source, t), std::max(source, t));
            pool.push_back(t);
        }
        pool.insert(pool.end(), attach, source);
    }
    return make_graph(n, std::move(edges));
}

Graph sample_ws(int n, int k, double beta, Rng& rng) {
    // Ring lattice: each vertex linked to its k/2 nearest neighbors on each
    // side, then each ring edge is rewired with probability beta, scanning
    // offsets outward and vertices in order. Edge count stays n*k/2.
    std::vector<std::pair<int, int>> edges;
    auto canon = [](int u, int v) { return std::make_pair(std::min(u, v), std::max(u, v)); };
    auto contains = [&](int u, int v) {
        return std::find(edges.begin(), edges.end(), canon(u, v)) != edges.end();
    };
    for (int j = 1; j <= k / 2; ++j)
        for (int u = 0; u < n; ++u) edges.push_back(canon(u, (u + j) % n));
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    for (int j = 1; j <= k / 2; ++j) {
        for (int u = 0; u < n; ++u) {
            int v = (u + j) % n;
            if (!rng.bernoulli(beta)) continue;
            if (!contains(u, v)) continue;   // already rewired away
            int degree_u = 0;
            for (auto& e : edges) degree_u += (e.first == u || e.second == u);
            if (degree_u >= n - 1) continue; // saturated, nothing to rewire to
            int w;
            do {
                w = static_cast<int>(rng.below(n));
            } while (w == u || contains(u, w));
            edges.erase(std::find(edges.begin(), edges.end(), canon(u, v)));
            edges.push_back(canon(u, w));
        }
    }
    return make_graph(n, std::move(edges));
}

Graph sample_gnm(int n, int m, Rng& rng) {
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    // Fisher-Yates, then keep the first m pairs.
    for (std::size_t i = pairs.size() - 1; i > 0; --i)
        std::swap(pairs[i], pairs[rng.below(i + 1)]);
    pairs.resize(m);
    return make_graph(n, std::move(pairs));
}

// Pairing model: shuffle the degree stubs and match consecutive pairs.
// Returns nullopt when the matching has a self-loop or duplicate edge.
std::optional<Graph> sample_regular(int n, int d, Rng& rng) {
    std::vector<int> stubs;
    stubs.reserve(static_cast<std::size_t>(n) * d);
    for (int v = 0; v < n; ++v) stubs.insert(stubs.end(), d, v);
    for (std::size_t i = stubs.size() - 1; i > 0; --i)
        std::swap(stubs[i], stubs[rng.below(i + 1)]);
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
        int u = stubs[i], v = stubs[i + 1];
        if (u == v) return std::nullopt;
        edges.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) return std::nullopt;
    return make_graph(n, std::move(edges));
}

void check_feasible(const GraphModel& model, int n) {
    if (n < 1) throw InfeasibleModelError("vertex count must be positive");
    if (n > kMaxVertices)
        throw TooLargeError("vertex count " + std::to_string(n) + " exceeds limit " +
                            std::to_string(kMaxVertices));
    const long max_edges = static_cast<long>(n) * (n - 1) / 2;
    if (auto* ba = std::get_if<BarabasiAlbert>(&model)) {
        if (ba->attach < 1 || ba->attach >= n)
            throw InfeasibleModelError("ba attachment must satisfy 1 <= attach < n");
    } else if (auto* ws = std::get_if<WattsStrogatz>(&model)) {
        if (ws->k < 2 || ws->k % 2 != 0 || ws->k >= n)
            throw InfeasibleModelError("ws ring degree must be even with 2 <= k < n");
        if (ws->beta < 0.0 || ws->beta > 1.0)
            throw InfeasibleModelError("ws rewiring probability must lie in [0,1]");
    } else if (auto* gnm = std::get_if<Gnm>(&model)) {
        if (gnm->m > max_edges)
            throw InfeasibleModelError("gnm edge count exceeds n*(n-1)/2");
        if (gnm->m < n - 1)
            throw InfeasibleModelError("gnm edge count below n-1 cannot be connected");
    } else if (auto* reg = std::get_if<RandomRegular>(&model)) {
        if (reg->d >= n) throw InfeasibleModelError("regular degree must satisfy d < n");
        if ((static_cast<long>(n) * reg->d) % 2 != 0)
            throw InfeasibleModelError("regular graph needs n*d even");
        if (reg->d < 2 && n > 2)
            throw InfeasibleModelError("regular degree below 2 cannot be connected for n > 2");
        if (reg->d < 1)
            throw InfeasibleModelError("regular degree must be positive");
    }
}

} // namespace

Graph generate(const GraphModel& model, int n, std::uint64_t seed) {
    check_feasible(model, n);
    constexpr int kMaxAttempts = 1000;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        Rng rng(seed ^ static_cast<std::uint64_t>(attempt));
        std::optional<Graph> g;
        if (auto* ba = std::get_if<BarabasiAlbert>(&model))
            g = sample_ba(n, ba->attach, rng);
        else if (auto* ws = std::get_if<WattsStrogatz>(&model))
            g = sample_ws(n, ws->k, ws->beta, rng);
        else if (auto* gnm = std::get_if<Gnm>(&model))
            g = sample_gnm(n, gnm->m, rng);
        else
            g = sample_regular(n, std::get<RandomRegular>(model).d, rng);
        if (g && is_connected(*g)) return std::move(*g);
    }
    throw ConnectivityExhaustedError("no connected " + model_name(model) + " graph on " +
                                     std::to_string(n) + " vertices after " +
                                     std::to_string(kMaxAttempts) + " attempts");
}

bool is_feasible(const GraphModel& model, int n) {
    try {
        check_feasible(model, n);
    } catch (const InfeasibleModelError&) {
        return false;
    } catch (const TooLargeError&) {
        return false;
    }
    return true;
}

namespace {

bool parse_int(std::string_view tok, long& out) {
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc{} && ptr == tok.data() + tok.size();
}

struct RawLine {
    long a = 0, b = 0;
    long number = 0; // 1-based line number in the file
};

} // namespace

Graph read_edge_list(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string(), 0);

    std::vector<RawLine> rows;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view sv(line);
        if (auto hash = sv.find('#'); hash != std::string_view::npos) sv = sv.substr(0, hash);
        std::vector<std::string_view> toks;
        std::size_t i = 0;
        while (i < sv.size()) {
            while (i < sv.size() && std::isspace(static_cast<unsigned char>(sv[i]))) ++i;
            std::size_t start = i;
            while (i < sv.size() && !std::isspace(static_cast<unsigned char>(sv[i]))) ++i;
            if (i > start) toks.push_back(sv.substr(start, i - start));
        }
        if (toks.empty()) continue;
        if (toks.size() != 2)
            throw ParseError("expected two integers in " + path.string(), lineno);
        RawLine r;
        r.number = lineno;
        if (!parse_int(toks[0], r.a) || !parse_int(toks[1], r.b))
            throw ParseError("expected two integers in " + path.string(), lineno);
        rows.push_back(r);
    }
    if (rows.empty()) throw ParseError("no edges in " + path.string(), 0);

    // The first data line is an "n m" header exactly when reading it as one
    // is consistent: m matches the remaining line count and every label fits
    // inside n under 0- or 1-indexing.
    auto fits = [](const std::vector<RawLine>& body, long lo, long hi) {
        for (auto& r : body)
            if (r.a < lo || r.a > hi || r.b < lo || r.b > hi) return false;
        return true;
    };
    bool header = false;
    if (rows.size() >= 1) {
        long hn = rows[0].a, hm = rows[0].b;
        if (hn >= 1 && hm >= 0 && static_cast<long>(rows.size()) - 1 == hm) {
            std::vector<RawLine> body(rows.begin() + 1, rows.end());
            header = body.empty() || fits(body, 0, hn - 1) || fits(body, 1, hn);
        }
    }

    long declared_n = header ? rows[0].a : 0;
    if (header) rows.erase(rows.begin());

    long min_label = std::numeric_limits<long>::max();
    long max_label = std::numeric_limits<long>::min();
    for (auto& r : rows) {
        if (r.a < 0 || r.b < 0)
            throw ParseError("negative vertex label in " + path.string(), r.number);
        min_label = std::min({min_label, r.a, r.b});
        max_label = std::max({max_label, r.a, r.b});
    }
    const long shift = (!rows.empty() && min_label >= 1) ? 1 : 0;

    long n = header ? declared_n : max_label + 1 - shift;
    if (n > kMaxVertices)
        throw TooLargeError("edge list needs " + std::to_string(n) +
                            " vertices, limit is " + std::to_string(kMaxVertices));

    std::vector<std::pair<int, int>> edges;
    for (auto& r : rows) {
        long u = r.a - shift, v = r.b - shift;
        if (u == v) throw SelfLoopError("self-loop at line " + std::to_string(r.number) +
                                        " of " + path.string());
        if (u >= n || v >= n)
            throw ParseError("vertex label exceeds declared count in " + path.string(),
                             r.number);
        edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    }
    return make_graph(static_cast<int>(n), std::move(edges));
}

void write_edge_list(const Graph& g, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out << g.n << ' ' << g.m() << '\n';
    for (auto& [u, v] : g.edges) out << u << ' ' << v << '\n';
}

} // namespace cutbound
