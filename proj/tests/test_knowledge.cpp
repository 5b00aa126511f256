#include "cutbound/errors.hpp"
#include "cutbound/knowledge.hpp"

#include "doctest.h"
#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

using namespace cutbound;
using doctest::Approx;

namespace {

KnowledgeRow sample_row(const std::string& id, int depth) {
    KnowledgeRow row;
    row.instance_id = id;
    row.model_kind = "gnm";
    row.invariants.n = 8;
    row.invariants.m = 12;
    row.invariants.mean_degree = 3.0;
    row.invariants.clustering = 1.0 / 3.0;
    row.invariants.chromatic = 3;
    row.invariants.mis_ratio = 0.375;
    row.invariants.assortativity = -0.07142857142857145;
    row.invariants.degree_std = std::sqrt(2.0) / 3.0;
    row.depth = depth;
    for (int k = 0; k < depth; ++k) {
        row.gamma_star.push_back(0.5877852522924731 + k);
        row.beta_star_abs.push_back(0.39269908169872414 / (k + 1));
    }
    row.expectation = 9.124038404635961;
    row.maxcut = 10;
    row.ratio = row.expectation / row.maxcut;
    row.obj_calls = 271;
    row.seed = 987654329ULL;
    return row;
}

} // namespace

TEST_CASE("column naming") {
    CHECK(gamma_column(1) == "gamma_1");
    CHECK(beta_column(2) == "beta_2");
}

TEST_CASE("feature columns track the deepest row") {
    KnowledgeTable table;
    table.rows.push_back(sample_row("a", 1));
    auto cols = table.feature_columns();
    CHECK(cols.front() == "n");
    CHECK(std::find(cols.begin(), cols.end(), "gamma_1") != cols.end());
    CHECK(std::find(cols.begin(), cols.end(), "gamma_2") == cols.end());
    CHECK(std::find(cols.begin(), cols.end(), "instance_id") == cols.end());
    CHECK(std::find(cols.begin(), cols.end(), "seed") == cols.end());

    table.rows.push_back(sample_row("b", 2));
    cols = table.feature_columns();
    CHECK(std::find(cols.begin(), cols.end(), "gamma_2") != cols.end());
    CHECK(std::find(cols.begin(), cols.end(), "beta_2") != cols.end());
    CHECK(table.max_depth() == 2);
}

TEST_CASE("column_value resolves names and undefined cells") {
    KnowledgeRow row = sample_row("a", 1);
    CHECK(*column_value(row, "n") == 8.0);
    CHECK(*column_value(row, "mis_ratio") == 0.375);
    CHECK(*column_value(row, "p") == 1.0);
    CHECK(*column_value(row, "maxcut") == 10.0);
    CHECK(*column_value(row, "obj_calls") == 271.0);
    CHECK(*column_value(row, "gamma_1") == row.gamma_star[0]);
    CHECK(*column_value(row, "beta_1") == row.beta_star_abs[0]);
    CHECK_FALSE(column_value(row, "gamma_2").has_value()); // beyond this row's depth

    row.invariants.assortativity.reset();
    CHECK_FALSE(column_value(row, "assortativity").has_value());

    CHECK_THROWS_AS(column_value(row, "girth"), MissingColumnError);
}

TEST_CASE("build_row wires the pieces together") {
    Graph k2 = make_graph(2, {{0, 1}});
    KnowledgeRow row = build_row(k2, 1, 7, {}, "k2_demo", "handmade");
    CHECK(row.instance_id == "k2_demo");
    CHECK(row.model_kind == "handmade");
    CHECK(row.invariants.n == 2);
    CHECK(row.invariants.m == 1);
    CHECK(row.invariants.chromatic == 2);
    CHECK(row.depth == 1);
    CHECK(row.maxcut == 1);
    CHECK(row.ratio == Approx(1.0).epsilon(1e-6));
    CHECK(row.ratio == Approx(row.expectation / row.maxcut).epsilon(1e-15));
    CHECK(row.gamma_star.size() == 1);
    CHECK(row.beta_star_abs.size() == 1);
    CHECK(row.beta_star_abs[0] >= 0.0);
    CHECK(row.seed == 7);
    CHECK(row.obj_calls > 0);
}

TEST_CASE("save and load are exact inverses") {
    oracle::TempDir dir("knowledge");
    KnowledgeTable table;
    table.rows.push_back(sample_row("g0001_gnm_n08", 1));
    table.rows.push_back(sample_row("g0002_gnm_n08", 2));
    table.rows[1].invariants.assortativity.reset(); // exercise the empty cell
    table.rows[1].gamma_star[1] = std::numbers::pi; // 17 digits needed

    auto file = dir.file("knowledge.csv");
    save(table, file);
    KnowledgeTable back = load(file);

    REQUIRE(back.rows.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
        const KnowledgeRow& a = table.rows[i];
        const KnowledgeRow& b = back.rows[i];
        CHECK(a.instance_id == b.instance_id);
        CHECK(a.model_kind == b.model_kind);
        CHECK(a.invariants.n == b.invariants.n);
        CHECK(a.invariants.m == b.invariants.m);
        CHECK(a.invariants.mean_degree == b.invariants.mean_degree);
        CHECK(a.invariants.clustering == b.invariants.clustering);
        CHECK(a.invariants.chromatic == b.invariants.chromatic);
        CHECK(a.invariants.mis_ratio == b.invariants.mis_ratio);
        CHECK(a.invariants.assortativity == b.invariants.assortativity);
        CHECK(a.invariants.degree_std == b.invariants.degree_std);
        CHECK(a.depth == b.depth);
        CHECK(a.gamma_star == b.gamma_star);
        CHECK(a.beta_star_abs == b.beta_star_abs);
        CHECK(a.expectation == b.expectation);
        CHECK(a.maxcut == b.maxcut);
        CHECK(a.ratio == b.ratio);
        CHECK(a.obj_calls == b.obj_calls);
        CHECK(a.seed == b.seed);
    }

    // byte-level determinism of the writer itself
    auto file2 = dir.file("knowledge2.csv");
    save(back, file2);
    CHECK(oracle::slurp(file) == oracle::slurp(file2));
}

TEST_CASE("empty table still writes a parseable header") {
    oracle::TempDir dir("knowledge_empty");
    auto file = dir.file("empty.csv");
    save(KnowledgeTable{}, file);
    KnowledgeTable back = load(file);
    CHECK(back.rows.empty());
    CHECK(back.max_depth() == 0);
}

TEST_CASE("loader reports malformed cells with their location") {
    oracle::TempDir dir("knowledge_bad");

    SUBCASE("non-numeric cell") {
        auto file = dir.file("bad.csv");
        {
            KnowledgeTable table;
            table.rows.push_back(sample_row("x", 1));
            save(table, file);
        }
        std::string text = oracle::slurp(file);
        auto pos = text.find("271");
        REQUIRE(pos != std::string::npos);
        text.replace(pos, 3, "oops");
        std::ofstream(file, std::ios::trunc) << text;
        try {
            load(file);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find("obj_calls") != std::string::npos);
        }
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(load(dir.file("missing.csv")), ParseError);
    }
    SUBCASE("wrong header") {
        auto file = dir.file("head.csv");
        std::ofstream(file) << "a,b,c\n1,2,3\n";
        CHECK_THROWS_AS(load(file), ParseError);
    }
}
