#pragma once

#include "cutbound/graph.hpp"
#include "cutbound/qaoa.hpp"

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace cutbound {

struct Interval {
    double lo = 0.0;
    double hi = 1.0;
};

struct NmResult {
    std::vector<double> point;
    double value = 0.0;
    long obj_calls = 0;
    bool converged = false;
};

struct NmOptions {
    double tol = 1e-8;     // simplex value spread at termination
    long max_iters = 0;    // 0 = pick 500 * dimension
};

/// Maximizes the objective with the standard Nelder-Mead moves (reflect 1,
/// expand 2, contract 0.5, shrink 0.5). Candidates are clipped to the bounds
/// componentwise before every evaluation; obj_calls counts all evaluations
/// including the initial simplex. Throws InvalidInitError when init is
/// outside the bounds.
NmResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                     const std::vector<Interval>& bounds,
                     const std::vector<double>& init, const NmOptions& opts = {});

struct OptResult {
    QaoaParams params;     // raw optimizer output, no angle normalization
    double value = 0.0;    // best expected cut
    double ratio = 0.0;    // value / maxcut
    int maxcut = 0;
    long obj_calls = 0;    // summed across restarts
    std::uint64_t seed = 0;
    bool converged = false;
};

struct OptimizeOptions {
    int restarts = 5;
    double tol = 1e-8;
    long max_iters = 0;    // 0 = 500 * 2p
};

/// Runs `restarts` Nelder-Mead searches from uniform random starts in
/// [0,pi]^p x [0,pi/2]^p (streams keyed by seed and restart index) and keeps
/// the best value; equal values resolve to the lowest restart index.
OptResult optimize_qaoa(const Graph& g, int p, std::uint64_t seed,
                        const OptimizeOptions& opts = {});

} // namespace cutbound
