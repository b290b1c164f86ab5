#include <doctest.h>

#include <stdexcept>

#include "locavg/oracle.hpp"
#include "locavg/randomized.hpp"

using namespace locavg;

TEST_CASE("rand delta-plus-one colors K2 for every seed") {
    Graph k2 = parse_edge_list("2 1\n0 1\n");
    for (std::uint64_t seed = 1; seed <= 32; ++seed) {
        auto res = rand_delta_plus1(k2, IdAssignment::identity(2), seed);
        CHECK(verify_proper_coloring(k2, res.coloring).pass);
        CHECK(res.coloring.max_flat_value() <= 2);
    }
}

TEST_CASE("isolated vertex terminates geometrically") {
    Graph lone = parse_edge_list("1 0\n");
    double sum = 0;
    const int trials = 10000;
    for (int t = 0; t < trials; ++t) {
        auto res = rand_delta_plus1(lone, IdAssignment::identity(1),
                                    static_cast<std::uint64_t>(t) + 1);
        sum += res.exec.ledger[0];
    }
    double mean = sum / trials;
    CHECK(mean >= 1.8);
    CHECK(mean <= 2.2);
}

TEST_CASE("same seed reproduces the transcript") {
    Graph g = gen_random_graph(40, 100, 6);
    auto a = rand_delta_plus1(g, IdAssignment::identity(40), 99);
    auto b = rand_delta_plus1(g, IdAssignment::identity(40), 99);
    CHECK(a.exec.transcript_hash == b.exec.transcript_hash);
    auto c = rand_delta_plus1(g, IdAssignment::identity(40), 100);
    CHECK(verify_proper_coloring(g, c.coloring).pass);
}

TEST_CASE("rand coloring proper within the palette on random graphs") {
    for (std::uint64_t s = 1; s <= 10; ++s) {
        Graph g = gen_random_graph(60, 180, s);
        auto res = rand_delta_plus1(g, IdAssignment::identity(60), s * 17);
        CHECK(verify_proper_coloring(g, res.coloring).pass);
        CHECK(res.coloring.max_flat_value() <= max_degree(g) + 1);
    }
}

TEST_CASE("two-phase randomized coloring") {
    Graph g = gen_forest_union(1024, 1, 5);
    auto res = rand_a_loglogn(g, IdAssignment::identity(1024), 1, Rational(2), 7);
    CHECK(res.t == 6);  // floor(2 * log2 log2 1024)
    CHECK(verify_proper_coloring(g, res.coloring).pass);
    CHECK(res.coloring.palette_size() <= res.palette_bound);
    CHECK(res.palette_bound == 5 * 7);
}

TEST_CASE("small graphs stay in phase one") {
    Graph g = gen_forest_union(16, 1, 9);
    auto res = rand_a_loglogn(g, IdAssignment::identity(16), 1, Rational(2), 3);
    CHECK(verify_proper_coloring(g, res.coloring).pass);
    for (const auto& c : res.coloring.colors) CHECK(c.size() == 2);  // all <c, i> pairs
    CHECK_THROWS_AS(rand_a_loglogn(parse_edge_list("2 1\n0 1\n"), IdAssignment::identity(2), 1,
                                   Rational(2), 1),
                    std::invalid_argument);
}

TEST_CASE("two-phase coloring across seeds") {
    Graph g = gen_forest_union(300, 2, 12);
    for (std::uint64_t s = 1; s <= 8; ++s) {
        auto res = rand_a_loglogn(g, IdAssignment::identity(300), 2, Rational(2), s);
        CHECK(verify_proper_coloring(g, res.coloring).pass);
        CHECK(res.coloring.palette_size() <= res.palette_bound);
    }
}

TEST_CASE("phase count at the largest corpus size") {
    Graph g = gen_forest_union(65536, 1, 2);
    auto res = rand_a_loglogn(g, IdAssignment::identity(65536), 1, Rational(2), 1);
    CHECK(res.t == 8);  // floor(2 * log2 log2 2^16)
    CHECK(verify_proper_coloring(g, res.coloring).pass);
}

TEST_CASE("randomized behavior ignores the id assignment") {
    Graph g = gen_random_graph(50, 120, 8);
    auto a = rand_delta_plus1(g, IdAssignment::identity(50), 31);
    auto b = rand_delta_plus1(g, IdAssignment::permuted(50, 99), 31);
    // streams hang off (seed, vertex index), so an ID sweep changes nothing
    CHECK(a.exec.transcript_hash == b.exec.transcript_hash);
    CHECK(a.exec.metrics.avg == b.exec.metrics.avg);
}
