#pragma once

#include "cutbound/graph.hpp"

#include <optional>

namespace cutbound {

/// Feature set recorded per instance. assortativity is empty for graphs
/// where the Pearson correlation degenerates (zero variance on either side
/// of the oriented degree pairs).
struct InvariantVector {
    int n = 0;
    int m = 0;
    double mean_degree = 0.0;
    double clustering = 0.0;
    int chromatic = 0;
    double mis_ratio = 0.0;
    std::optional<double> assortativity;
    double degree_std = 0.0;
};

double mean_clustering(const Graph& g);
int chromatic_number(const Graph& g);
int independence_number(const Graph& g);

/// Pearson correlation of (deg(u), deg(v)) over both orientations of every
/// edge; nullopt when either marginal has zero variance. Throws NoEdgesError
/// when m = 0.
std::optional<double> degree_assortativity(const Graph& g);

double degree_std(const Graph& g);

InvariantVector invariant_vector(const Graph& g);

} // namespace cutbound
