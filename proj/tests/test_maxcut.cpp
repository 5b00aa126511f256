#include "cutbound/errors.hpp"
#include "cutbound/maxcut.hpp"

#include "doctest.h"
#include "oracles.hpp"

#include <random>

using namespace cutbound;

TEST_CASE("cut_value counts crossing edges") {
    Graph g = oracle::path_graph(4); // edges 01, 12, 23
    CHECK(cut_value(g, 0b0000) == 0);
    CHECK(cut_value(g, 0b1010) == 3); // alternating sides cut every edge
    CHECK(cut_value(g, 0b0001) == 1);
    CHECK(cut_value(g, 0b1111) == 0);
    CHECK_THROWS_AS(cut_value(g, 0b10000), LengthMismatchError);
}

TEST_CASE("known optima") {
    CHECK(maxcut_bruteforce(make_graph(2, {{0, 1}})).value == 1);
    CHECK(maxcut_bruteforce(oracle::cycle_graph(5)).value == 4);
    CHECK(maxcut_bruteforce(oracle::cycle_graph(6)).value == 6); // bipartite: all edges
    CHECK(maxcut_bruteforce(oracle::complete_graph(4)).value == 4);
    CHECK(maxcut_bruteforce(oracle::complete_bipartite(3, 4)).value == 12);
    CHECK(maxcut_bruteforce(oracle::star_graph(5)).value == 5);
    CHECK(maxcut_bruteforce(oracle::petersen_graph()).value == 12);
}

TEST_CASE("degenerate graphs") {
    CHECK(maxcut_bruteforce(make_graph(1, {})).value == 0);
    CHECK(maxcut_bruteforce(make_graph(5, {})).value == 0);
    CHECK(maxcut_bruteforce(make_graph(5, {})).witness == 0);
}

TEST_CASE("gray-code enumeration agrees with the flat scan") {
    std::mt19937 gen(31);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 2 + static_cast<int>(gen() % 9);
        Graph g = oracle::random_graph(n, 0.4, gen);
        CutResult r = maxcut_bruteforce(g);
        CHECK(r.value == oracle::naive_maxcut(g));
        CHECK(cut_value(g, r.witness) == r.value);
        CHECK((r.witness & 1u) == 0u); // vertex 0 pinned to side 0
    }
}

TEST_CASE("witness ties break to the smallest assignment") {
    // K2: cuts of value 1 are 01 and 10; with vertex 0 pinned only 10 remains.
    CutResult r = maxcut_bruteforce(make_graph(2, {{0, 1}}));
    CHECK(r.witness == 0b10);

    // C4: optimal cuts with vertex 0 on side 0 are {1,3} = 1010 and nothing
    // smaller, so the witness is 0b1010.
    CutResult c4 = maxcut_bruteforce(oracle::cycle_graph(4));
    CHECK(c4.value == 4);
    CHECK(c4.witness == 0b1010);
}
