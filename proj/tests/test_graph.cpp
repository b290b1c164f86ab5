#include <doctest.h>

#include <stdexcept>

#include "locavg/graph.hpp"

using namespace locavg;

TEST_CASE("edge list parsing") {
    Graph p3 = parse_edge_list("3 2\n0 1\n1 2\n");
    CHECK(p3.n() == 3);
    CHECK(p3.m() == 2);
    CHECK(p3.has_edge(0, 1));
    CHECK(p3.has_edge(1, 2));
    CHECK_FALSE(p3.has_edge(0, 2));

    Graph single = parse_edge_list("1 0\n");
    CHECK(single.n() == 1);
    CHECK(single.m() == 0);

    CHECK_THROWS_WITH_AS(parse_edge_list("2 1\n0 0\n"),
                         doctest::Contains("self-loop at line 2"), std::runtime_error);
    CHECK_THROWS_AS(parse_edge_list("2 1\n0 5\n"), std::runtime_error);
    CHECK_THROWS_AS(parse_edge_list("2 2\n0 1\n"), std::runtime_error);

    // comments and duplicate collapse
    Graph g = parse_edge_list("# comment\n3 3\n0 1\n0 1\n1 2\n");
    CHECK(g.m() == 2);
}

TEST_CASE("ring generator") {
    Graph c6 = gen_ring(6);
    CHECK(c6.n() == 6);
    CHECK(c6.m() == 6);
    for (int v = 0; v < 6; ++v) CHECK(c6.degree(v) == 2);
    CHECK(exact_arboricity(c6) == 2);

    Graph tri = gen_ring(3);
    CHECK(tri.m() == 3);
    CHECK(tri.has_edge(0, 1));
    CHECK(tri.has_edge(1, 2));
    CHECK(tri.has_edge(0, 2));

    CHECK_THROWS_AS(gen_ring(2), std::invalid_argument);
}

TEST_CASE("forest union generator") {
    Graph t = gen_forest_union(10, 1, 7);
    CHECK(t.n() == 10);
    CHECK(t.m() == 9);
    CHECK(exact_arboricity(t) == 1);

    Graph f3 = gen_forest_union(8, 3, 11);
    CHECK(exact_arboricity(f3) <= 3);

    Graph lone = gen_forest_union(1, 5, 3);
    CHECK(lone.n() == 1);
    CHECK(lone.m() == 0);
}

TEST_CASE("random graph generator") {
    Graph k4 = gen_random_graph(4, 6, 1);
    CHECK(k4.m() == 6);
    CHECK(exact_arboricity(k4) == 2);

    Graph empty = gen_random_graph(4, 0, 1);
    CHECK(empty.m() == 0);

    Graph k5 = gen_random_graph(5, 10, 9);
    CHECK(k5.m() == 10);
    CHECK(exact_arboricity(k5) == 3);

    CHECK_THROWS_AS(gen_random_graph(4, 7, 1), std::invalid_argument);
}

TEST_CASE("arboricity oracle") {
    Graph path7 = parse_edge_list("7 6\n0 1\n1 2\n2 3\n3 4\n4 5\n5 6\n");
    CHECK(exact_arboricity(path7) == 1);
    CHECK(exact_arboricity(gen_random_graph(4, 6, 1)) == 2);  // K4
    CHECK(exact_arboricity(gen_ring(6)) == 2);
    CHECK(exact_arboricity(parse_edge_list("3 0\n")) == 0);
    CHECK_THROWS_AS(exact_arboricity(gen_forest_union(17, 1, 1)), std::invalid_argument);
}

TEST_CASE("max degree") {
    CHECK(max_degree(gen_random_graph(4, 6, 1)) == 3);
    Graph star = parse_edge_list("6 5\n0 1\n0 2\n0 3\n0 4\n0 5\n");
    CHECK(max_degree(star) == 5);
    CHECK(max_degree(parse_edge_list("3 0\n")) == 0);
}

TEST_CASE("generator invariants") {
    for (std::uint64_t s = 1; s <= 20; ++s) {
        Graph g = gen_forest_union(12, 2, s);
        // simple + symmetric
        for (auto [u, v] : g.edges()) {
            CHECK(u != v);
            CHECK(g.has_edge(u, v));
            CHECK(g.has_edge(v, u));
        }
        CHECK(exact_arboricity(g) <= 2);
        if (g.m() > 0) {
            int lower = static_cast<int>((g.m() + g.n() - 2) / (g.n() - 1));
            CHECK(exact_arboricity(g) >= lower);
            CHECK(exact_arboricity(g) <= max_degree(g));
        }
    }
}

TEST_CASE("id assignments") {
    IdAssignment ids = IdAssignment::identity(5);
    ids.validate(5);
    CHECK(ids.max_id() == 5);
    IdAssignment perm = IdAssignment::permuted(5, 3);
    perm.validate(5);
    CHECK(perm.max_id() == 5);
    IdAssignment bad;
    bad.id = {1, 1, 2};
    CHECK_THROWS_AS(bad.validate(3), std::invalid_argument);
}
