#pragma once

#include "cutbound/graph.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace cutbound {

struct QaoaParams {
    std::vector<double> gamma; // in [0, pi]
    std::vector<double> beta;  // in [0, pi/2]

    int depth() const { return static_cast<int>(gamma.size()); }
};

/// Throws InvalidParamsError when sizes differ, depth is zero, or any
/// component is outside its closed interval.
void validate(const QaoaParams& params);

/// cut_value(g, b) for every basis index b; the cost operator is diagonal,
/// so this table is the whole Hamiltonian. Cut values fit in 16 bits
/// (m <= n(n-1)/2 = 276 at n = 24).
std::vector<std::uint16_t> cost_diagonal(const Graph& g);

using Statevector = std::vector<std::complex<double>>;

/// Applies p alternating layers exp(-i beta_k H_M) exp(-i gamma_k H_C) to the
/// uniform superposition. Checks the norm after every layer (1e-10).
Statevector evolve(const Graph& g, const QaoaParams& params);

/// Sum_b |amp_b|^2 cost_b over the evolved state.
double expectation(const Graph& g, const QaoaParams& params);

/// Reuses the cost table across evaluations of the same graph; this is what
/// the optimizer calls in its inner loop.
class Evaluator {
public:
    explicit Evaluator(const Graph& g);

    double expectation(const QaoaParams& params) const;
    const std::vector<std::uint16_t>& costs() const { return costs_; }

private:
    int n_;
    std::vector<std::uint16_t> costs_;
    int max_cost_;
};

} // namespace cutbound
