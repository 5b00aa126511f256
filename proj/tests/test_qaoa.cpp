#include "cutbound/errors.hpp"
#include "cutbound/maxcut.hpp"
#include "cutbound/qaoa.hpp"

#include "doctest.h"
#include "oracles.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace cutbound;
using doctest::Approx;

namespace {

QaoaParams random_params(int p, std::mt19937& gen) {
    std::uniform_real_distribution<double> g(0.0, std::numbers::pi);
    std::uniform_real_distribution<double> b(0.0, std::numbers::pi / 2);
    QaoaParams params;
    for (int k = 0; k < p; ++k) {
        params.gamma.push_back(g(gen));
        params.beta.push_back(b(gen));
    }
    return params;
}

} // namespace

TEST_CASE("cost diagonal is the cut function") {
    std::mt19937 gen(41);
    Graph g = oracle::random_graph(6, 0.5, gen);
    auto costs = cost_diagonal(g);
    REQUIRE(costs.size() == 64);
    for (std::uint32_t b = 0; b < 64; ++b)
        CHECK(costs[b] == oracle::naive_cut(g, b));
}

TEST_CASE("parameter validation") {
    const double pi = std::numbers::pi;
    CHECK_THROWS_AS(validate(QaoaParams{{}, {}}), InvalidParamsError);
    CHECK_THROWS_AS(validate(QaoaParams{{0.1, 0.2}, {0.1}}), InvalidParamsError);
    CHECK_THROWS_AS(validate(QaoaParams{{-0.01}, {0.1}}), InvalidParamsError);
    CHECK_THROWS_AS(validate(QaoaParams{{pi + 0.01}, {0.1}}), InvalidParamsError);
    CHECK_THROWS_AS(validate(QaoaParams{{0.1}, {pi / 2 + 0.01}}), InvalidParamsError);
    CHECK_THROWS_AS(validate(QaoaParams{{std::nan("")}, {0.1}}), InvalidParamsError);
    CHECK_NOTHROW(validate(QaoaParams{{0.0, pi}, {0.0, pi / 2}}));
}

TEST_CASE("statevector matches the dense kronecker reference") {
    std::mt19937 gen(42);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 2 + static_cast<int>(gen() % 5);
        Graph g = oracle::random_graph(n, 0.5, gen);
        int p = 1 + static_cast<int>(gen() % 3);
        QaoaParams params = random_params(p, gen);

        Statevector got = evolve(g, params);
        Statevector want = oracle::dense_evolve(g, params);
        REQUIRE(got.size() == want.size());
        for (std::size_t b = 0; b < got.size(); ++b)
            CHECK(std::abs(got[b] - want[b]) < 1e-10);
    }
}

TEST_CASE("the evolved state stays normalized") {
    std::mt19937 gen(43);
    Graph g = oracle::random_graph(10, 0.3, gen);
    Statevector state = evolve(g, random_params(3, gen));
    double norm = 0.0;
    for (auto amp : state) norm += std::norm(amp);
    CHECK(norm == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("zero gamma leaves the uniform distribution") {
    std::mt19937 gen(44);
    for (int trial = 0; trial < 5; ++trial) {
        int n = 3 + static_cast<int>(gen() % 8);
        Graph g = oracle::random_graph(n, 0.4, gen);
        std::uniform_real_distribution<double> b(0.0, std::numbers::pi / 2);
        QaoaParams params{{0.0, 0.0}, {b(gen), b(gen)}};
        CHECK(std::abs(expectation(g, params) - g.m() / 2.0) < 1e-12);
    }
}

TEST_CASE("single edge follows the closed form") {
    // For K2 at depth 1 the expected cut is (1 + sin(4 beta) sin(gamma)) / 2;
    // peak value 1 at gamma = pi/2, beta = pi/8.
    Graph k2 = make_graph(2, {{0, 1}});
    for (double gamma : {0.3, 1.1, 2.2, 3.0})
        for (double beta : {0.1, 0.5, 0.9, 1.4}) {
            double want = 0.5 + 0.5 * std::sin(4 * beta) * std::sin(gamma);
            CHECK(expectation(k2, QaoaParams{{gamma}, {beta}}) ==
                  Approx(want).epsilon(1e-12));
        }
    CHECK(expectation(k2, QaoaParams{{std::numbers::pi / 2}, {std::numbers::pi / 8}}) ==
          Approx(1.0).epsilon(1e-12));
}

TEST_CASE("phase signs at gamma = pi land exactly") {
    // Cut parities at gamma = pi give amplitudes (+,-,-,+)/2 with beta = 0.
    Graph k2 = make_graph(2, {{0, 1}});
    Statevector state = evolve(k2, QaoaParams{{std::numbers::pi}, {0.0}});
    CHECK(state[0].real() == Approx(0.5).epsilon(1e-12));
    CHECK(state[1].real() == Approx(-0.5).epsilon(1e-12));
    CHECK(state[2].real() == Approx(-0.5).epsilon(1e-12));
    CHECK(state[3].real() == Approx(0.5).epsilon(1e-12));
    for (auto amp : state) CHECK(std::abs(amp.imag()) < 1e-12);
}

TEST_CASE("evaluator reuses the cost table without changing answers") {
    std::mt19937 gen(45);
    Graph g = oracle::random_graph(8, 0.4, gen);
    Evaluator ev(g);
    CHECK(ev.costs() == cost_diagonal(g));
    for (int trial = 0; trial < 10; ++trial) {
        QaoaParams params = random_params(2, gen);
        CHECK(ev.expectation(params) == expectation(g, params));
    }
}

TEST_CASE("expectation against the dense reference") {
    std::mt19937 gen(46);
    for (int trial = 0; trial < 10; ++trial) {
        Graph g = oracle::random_graph(5, 0.5, gen);
        QaoaParams params = random_params(2, gen);
        CHECK(expectation(g, params) ==
              Approx(oracle::dense_expectation(g, params)).epsilon(1e-10));
    }
}
