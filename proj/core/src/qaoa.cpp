#include "cutbound/qaoa.hpp"

#include "cutbound/errors.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

namespace cutbound {

void validate(const QaoaParams& params) {
    if (params.gamma.size() != params.beta.size())
        throw InvalidParamsError("gamma and beta must have equal length");
    if (params.gamma.empty()) throw InvalidParamsError("depth must be at least 1");
    for (double gv : params.gamma)
        if (!(gv >= 0.0 && gv <= std::numbers::pi))
            throw InvalidParamsError("gamma component outside [0, pi]");
    for (double bv : params.beta)
        if (!(bv >= 0.0 && bv <= std::numbers::pi / 2))
            throw InvalidParamsError("beta component outside [0, pi/2]");
}

std::vector<std::uint16_t> cost_diagonal(const Graph& g) {
    if (g.n > kMaxVertices)
        throw TooLargeError("cost table capped at n = " + std::to_string(kMaxVertices));
    const std::size_t dim = std::size_t{1} << g.n;
    std::vector<std::uint16_t> costs(dim);
    // Gray-code walk: one vertex flip per step keeps the update O(deg).
    std::uint32_t assign = 0;
    int cut = 0;
    costs[0] = 0;
    for (std::size_t k = 1; k < dim; ++k) {
        int v = std::countr_zero(k);
        std::uint32_t side_v = assign >> v & 1u;
        std::uint32_t opposite = side_v ? ~assign : assign;
        cut += g.degree(v) - 2 * std::popcount(g.adj[v] & opposite);
        assign ^= 1u << v;
        costs[assign] = static_cast<std::uint16_t>(cut);
    }
    return costs;
}

namespace {

void check_norm(const Statevector& state) {
    double norm = 0.0;
    for (const auto& amp : state) norm += std::norm(amp);
    if (std::abs(norm - 1.0) > 1e-10)
        throw Error("statevector norm drifted to " + std::to_string(norm));
}

void apply_phase_layer(Statevector& state, const std::vector<std::uint16_t>& costs,
                       double gamma, int max_cost) {
    // cost values are small integers; one phase per distinct value
    std::vector<std::complex<double>> phase(max_cost + 1);
    for (int c = 0; c <= max_cost; ++c)
        phase[c] = std::polar(1.0, -gamma * c);
    for (std::size_t b = 0; b < state.size(); ++b) state[b] *= phase[costs[b]];
}

void apply_mixer_layer(Statevector& state, int n, double beta) {
    const double c = std::cos(beta);
    const std::complex<double> s(0.0, -std::sin(beta));
    for (int q = 0; q < n; ++q) {
        const std::size_t stride = std::size_t{1} << q;
        for (std::size_t base = 0; base < state.size(); base += 2 * stride) {
            for (std::size_t i = base; i < base + stride; ++i) {
                const auto a0 = state[i];
                const auto a1 = state[i + stride];
                state[i] = c * a0 + s * a1;
                state[i + stride] = s * a0 + c * a1;
            }
        }
    }
}

Statevector evolve_with(const std::vector<std::uint16_t>& costs, int n, int max_cost,
                        const QaoaParams& params) {
    validate(params);
    const std::size_t dim = std::size_t{1} << n;
    Statevector state(dim, std::complex<double>(std::pow(2.0, -0.5 * n), 0.0));
    for (int layer = 0; layer < params.depth(); ++layer) {
        apply_phase_layer(state, costs, params.gamma[layer], max_cost);
        apply_mixer_layer(state, n, params.beta[layer]);
        check_norm(state);
    }
    return state;
}

int max_entry(const std::vector<std::uint16_t>& costs) {
    int best = 0;
    for (auto c : costs) best = std::max(best, static_cast<int>(c));
    return best;
}

} // namespace

Statevector evolve(const Graph& g, const QaoaParams& params) {
    auto costs = cost_diagonal(g);
    return evolve_with(costs, g.n, max_entry(costs), params);
}

double expectation(const Graph& g, const QaoaParams& params) {
    return Evaluator(g).expectation(params);
}

Evaluator::Evaluator(const Graph& g)
    : n_(g.n), costs_(cost_diagonal(g)), max_cost_(max_entry(costs_)) {}

double Evaluator::expectation(const QaoaParams& params) const {
    Statevector state = evolve_with(costs_, n_, max_cost_, params);
    double value = 0.0;
    for (std::size_t b = 0; b < state.size(); ++b)
        value += std::norm(state[b]) * costs_[b];
    return value;
}

} // namespace cutbound
