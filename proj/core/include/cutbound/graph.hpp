#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace cutbound {

inline constexpr int kMaxVertices = 24;

/// Simple undirected graph. Vertices are 0..n-1. Edges are stored once with
/// u < v, sorted lexicographically. Adjacency is mirrored into per-vertex
/// bitmasks (n <= 24 keeps every mask in a uint32_t).
struct Graph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;       // u < v, sorted
    std::vector<std::uint32_t> adj;               // adj[v] bit u set iff {u,v} in E

    int m() const { return static_cast<int>(edges.size()); }
    int degree(int v) const;
    bool has_edge(int u, int v) const;

    /// Rebuilds adj from edges. Call after editing edges directly.
    void rebuild_adjacency();
};

/// Builds a graph from an edge list; validates labels, rejects self-loops,
/// collapses duplicates, sorts edges.
Graph make_graph(int n, std::vector<std::pair<int, int>> edges);

bool is_connected(const Graph& g);

// Generator parameter blocks. Each carries what the model needs beyond n.
struct BarabasiAlbert { int attach = 2; };       // edges added per new vertex
struct WattsStrogatz  { int k = 4; double beta = 0.1; };
struct Gnm            { int m = 0; };
struct RandomRegular  { int d = 3; };

using GraphModel = std::variant<BarabasiAlbert, WattsStrogatz, Gnm, RandomRegular>;

std::string model_name(const GraphModel& model);

/// Parses "ba", "ws", "gnm", "regular" (and their aliases used in config
/// files). Throws InvalidParamsError on unknown names.
GraphModel model_from_name(const std::string& name, int attach, int k, double beta,
                           int m, int d);

/// Samples one connected instance of the model. Resampling uses sub-seeds
/// derived from (seed, attempt); throws ConnectivityExhaustedError after
/// 1000 attempts, InfeasibleModelError if the parameters can never produce
/// a connected simple graph on n vertices.
Graph generate(const GraphModel& model, int n, std::uint64_t seed);

/// True when (model, n) can produce a connected simple graph at all.
bool is_feasible(const GraphModel& model, int n);

/// Reads the whitespace edge-list format: '#' comments, optional "n m"
/// header, 0- or 1-indexed labels (auto-detected from the minimum label).
Graph read_edge_list(const std::filesystem::path& path);

void write_edge_list(const Graph& g, const std::filesystem::path& path);

} // namespace cutbound
