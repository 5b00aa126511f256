#include "cutbound/errors.hpp"
#include "cutbound/graph.hpp"

#include "doctest.h"
#include "oracles.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>

using namespace cutbound;

TEST_CASE("make_graph sorts, dedups and mirrors adjacency") {
    Graph g = make_graph(4, {{2, 3}, {1, 0}, {0, 1}, {3, 2}, {1, 2}});
    CHECK(g.n == 4);
    CHECK(g.m() == 3);
    CHECK(g.edges == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 3}});
    CHECK(g.degree(0) == 1);
    CHECK(g.degree(1) == 2);
    CHECK(g.has_edge(1, 0));
    CHECK(g.has_edge(2, 3));
    CHECK_FALSE(g.has_edge(0, 3));
    for (auto [u, v] : g.edges) {
        CHECK((g.adj[u] >> v & 1u) == 1u);
        CHECK((g.adj[v] >> u & 1u) == 1u);
    }
}

TEST_CASE("make_graph rejects bad input") {
    CHECK_THROWS_AS(make_graph(3, {{1, 1}}), SelfLoopError);
    CHECK_THROWS_AS(make_graph(3, {{0, 3}}), InvalidParamsError);
    CHECK_THROWS_AS(make_graph(3, {{-1, 2}}), InvalidParamsError);
    CHECK_THROWS_AS(make_graph(0, {}), InvalidParamsError);
    CHECK_THROWS_AS(make_graph(25, {}), TooLargeError);
}

TEST_CASE("is_connected agrees with a BFS reference") {
    CHECK(is_connected(make_graph(1, {})));
    CHECK_FALSE(is_connected(make_graph(2, {})));
    CHECK(is_connected(oracle::path_graph(6)));
    CHECK_FALSE(is_connected(make_graph(4, {{0, 1}, {2, 3}})));

    std::mt19937 gen(11);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 2 + static_cast<int>(gen() % 9);
        Graph g = oracle::random_graph(n, 0.25, gen);
        CHECK(is_connected(g) == oracle::bfs_connected(g));
    }
}

TEST_CASE("generators are deterministic in the seed") {
    const GraphModel models[] = {GraphModel{BarabasiAlbert{2}}, GraphModel{WattsStrogatz{4, 0.2}},
                                 GraphModel{Gnm{14}}, GraphModel{RandomRegular{4}}};
    for (const auto& model : models) {
        Graph a = generate(model, 10, 99);
        Graph b = generate(model, 10, 99);
        CHECK(a.edges == b.edges);
        Graph c = generate(model, 10, 555);
        // different seed, almost surely a different graph
        bool same = a.edges == c.edges;
        CHECK((is_connected(c) && !same));
    }
}

TEST_CASE("barabasi-albert: star core plus attach edges per newcomer") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        Graph g = generate(BarabasiAlbert{2}, 12, seed);
        CHECK(g.n == 12);
        CHECK(g.m() == 2 * (12 - 2)); // attach * (n - attach)
        CHECK(is_connected(g));
        for (int v = 0; v < g.n; ++v) CHECK(g.degree(v) >= 2);
    }
}

TEST_CASE("watts-strogatz keeps the ring edge count") {
    for (std::uint64_t seed : {5u, 6u, 7u}) {
        Graph g = generate(WattsStrogatz{4, 0.3}, 11, seed);
        CHECK(g.m() == 11 * 4 / 2);
        CHECK(is_connected(g));
    }
    // beta = 0 is exactly the ring lattice
    Graph ring = generate(WattsStrogatz{4, 0.0}, 9, 3);
    for (int v = 0; v < 9; ++v)
        for (int step = 1; step <= 2; ++step) CHECK(ring.has_edge(v, (v + step) % 9));
}

TEST_CASE("gnm hits the requested edge count") {
    Graph g = generate(Gnm{17}, 9, 21);
    CHECK(g.m() == 17);
    CHECK(is_connected(g));
    std::set<std::pair<int, int>> unique_edges(g.edges.begin(), g.edges.end());
    CHECK(unique_edges.size() == g.edges.size());
}

TEST_CASE("random regular graphs are regular") {
    for (std::uint64_t seed : {13u, 14u}) {
        Graph g = generate(RandomRegular{4}, 10, seed);
        for (int v = 0; v < g.n; ++v) CHECK(g.degree(v) == 4);
        CHECK(is_connected(g));
    }
}

TEST_CASE("infeasible model parameters are reported, not retried") {
    CHECK_THROWS_AS(generate(RandomRegular{3}, 5, 1), InfeasibleModelError); // nd odd
    CHECK_THROWS_AS(generate(RandomRegular{9}, 9, 1), InfeasibleModelError); // d >= n
    CHECK_THROWS_AS(generate(Gnm{4}, 6, 1), InfeasibleModelError);           // m < n-1
    CHECK_THROWS_AS(generate(Gnm{40}, 6, 1), InfeasibleModelError);          // m > C(n,2)
    CHECK_THROWS_AS(generate(WattsStrogatz{3, 0.1}, 8, 1), InfeasibleModelError); // odd k
    CHECK_THROWS_AS(generate(BarabasiAlbert{8}, 8, 1), InfeasibleModelError);
    CHECK_THROWS_AS(generate(Gnm{10}, 25, 1), TooLargeError);

    CHECK(is_feasible(RandomRegular{4}, 10));
    CHECK(is_feasible(RandomRegular{1}, 2)); // K_2, the one connected 1-regular graph
    CHECK_FALSE(is_feasible(RandomRegular{1}, 4));
    CHECK_FALSE(is_feasible(RandomRegular{3}, 5));
    CHECK_FALSE(is_feasible(Gnm{3}, 6));
}

TEST_CASE("model names round-trip") {
    CHECK(model_name(BarabasiAlbert{2}) == "ba");
    CHECK(model_name(WattsStrogatz{4, 0.1}) == "ws");
    CHECK(model_name(Gnm{7}) == "gnm");
    CHECK(model_name(RandomRegular{3}) == "regular");
    CHECK(model_name(model_from_name("ws", 2, 6, 0.5, 0, 0)) == "ws");
    CHECK_THROWS_AS(model_from_name("smallworld", 2, 4, 0.1, 0, 3), InvalidParamsError);
}

TEST_CASE("edge list files round-trip") {
    oracle::TempDir dir("edgelist");
    Graph g = generate(Gnm{12}, 8, 5);
    auto file = dir.file("g.txt");
    write_edge_list(g, file);
    Graph back = read_edge_list(file);
    CHECK(back.n == g.n);
    CHECK(back.edges == g.edges);
}

TEST_CASE("edge list reader handles the format variants") {
    oracle::TempDir dir("edgefmt");

    SUBCASE("comments and n m header") {
        auto file = dir.file("a.txt");
        std::ofstream(file) << "# triangle plus pendant\n4 4\n0 1\n1 2\n0 2\n2 3\n";
        Graph g = read_edge_list(file);
        CHECK(g.n == 4);
        CHECK(g.m() == 4);
    }
    SUBCASE("one-indexed labels shift down") {
        auto file = dir.file("b.txt");
        std::ofstream(file) << "1 2\n2 3\n3 4\n";
        Graph g = read_edge_list(file);
        CHECK(g.n == 4);
        CHECK(g.has_edge(0, 1));
        CHECK(g.has_edge(2, 3));
    }
    SUBCASE("junk token reports its line") {
        auto file = dir.file("c.txt");
        std::ofstream(file) << "0 1\n1 two\n";
        try {
            read_edge_list(file);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 2);
        }
    }
    SUBCASE("self-loop is rejected") {
        auto file = dir.file("d.txt");
        std::ofstream(file) << "0 1\n2 2\n";
        CHECK_THROWS_AS(read_edge_list(file), SelfLoopError);
    }
    SUBCASE("empty file is an error") {
        auto file = dir.file("e.txt");
        std::ofstream(file) << "# nothing here\n";
        CHECK_THROWS_AS(read_edge_list(file), ParseError);
    }
    SUBCASE("missing file is an error") {
        CHECK_THROWS_AS(read_edge_list(dir.file("nope.txt")), ParseError);
    }
}
