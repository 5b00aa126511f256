#pragma once

// Reference implementations used to cross-check the library. Everything here
// is written the slow, obvious way and shares no code with core/ beyond the
// Graph container itself.

#include "cutbound/graph.hpp"
#include "cutbound/qaoa.hpp"

#include <complex>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

namespace oracle {

// -- fixed graphs ----------------------------------------------------------

cutbound::Graph path_graph(int n);
cutbound::Graph cycle_graph(int n);
cutbound::Graph complete_graph(int n);
cutbound::Graph complete_bipartite(int a, int b);
cutbound::Graph star_graph(int leaves);
cutbound::Graph petersen_graph();

// Erdos-Renyi style sample from std::mt19937 (independent of the library
// generator); may be disconnected.
cutbound::Graph random_graph(int n, double edge_prob, std::mt19937& gen);

cutbound::Graph permuted(const cutbound::Graph& g, const std::vector<int>& perm);
std::vector<int> random_permutation(int n, std::mt19937& gen);

// -- combinatorial references ----------------------------------------------

int naive_cut(const cutbound::Graph& g, std::uint32_t mask);
int naive_maxcut(const cutbound::Graph& g);
bool bfs_connected(const cutbound::Graph& g);
int exhaustive_chromatic(const cutbound::Graph& g);
int exhaustive_independence(const cutbound::Graph& g);
double naive_clustering(const cutbound::Graph& g);

// -- dense quantum reference -------------------------------------------------

// Evolves the uniform superposition through the same layer sequence as the
// library simulator, but with an explicitly built 2^n x 2^n mixer matrix
// (Kronecker product of one-qubit rotations) applied by dense mat-vec.
cutbound::Statevector dense_evolve(const cutbound::Graph& g,
                                   const cutbound::QaoaParams& params);
double dense_expectation(const cutbound::Graph& g, const cutbound::QaoaParams& params);

// -- scratch space -----------------------------------------------------------

// Fresh directory under the system temp root; removed on destruction.
struct TempDir {
    std::filesystem::path path;

    explicit TempDir(const std::string& tag);
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::filesystem::path file(const std::string& name) const { return path / name; }
};

std::string slurp(const std::filesystem::path& path);

} // namespace oracle
