#include <doctest.h>

#include <stdexcept>

#include <sstream>

#include "locavg/harness.hpp"
#include "locavg/oracle.hpp"

using namespace locavg;

namespace {

ExperimentConfig ring_config() {
    ExperimentConfig c;
    c.algorithm = "partition";
    c.graph = "ring";
    c.n = 12;
    c.a = 2;
    c.seeds = {1};
    c.id_permutations = 2;
    return c;
}

}  // namespace

TEST_CASE("partition experiment on a ring") {
    ExperimentReport rep = run_experiment(ring_config());
    CHECK(rep.all_valid);
    CHECK(rep.n == 12);
    CHECK(rep.runs.size() == 3);  // identity + 2 permutations
    for (const auto& r : rep.runs) CHECK(r.decay.size() <= 2);  // everyone joins H_1
}

TEST_CASE("empty seed list is rejected") {
    ExperimentConfig c = ring_config();
    c.seeds.clear();
    CHECK_THROWS_AS(run_experiment(c), std::invalid_argument);
}

TEST_CASE("reports are reproducible byte for byte") {
    ExperimentReport a = run_experiment(ring_config());
    ExperimentReport b = run_experiment(ring_config());
    CHECK(report_json(a) == report_json(b));
    CHECK(report_csv(a) == report_csv(b));
}

TEST_CASE("csv carries the fixed column set") {
    ExperimentReport rep = run_experiment(ring_config());
    std::string csv = report_csv(rep);
    std::istringstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header ==
          "algo,n,m,a,epsilon,k,seed,perm,avg_num,avg_den,avg_float,worst,colors_or_size,"
          "valid,substitution_flags,transcript_hash");
    int rows = 0;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 3);
}

TEST_CASE("csv float column repeats the json value to 12 digits") {
    Graph star = parse_edge_list("6 5\n0 1\n0 2\n0 3\n0 4\n0 5\n");
    write_edge_list(star, "/tmp/locavg_star.txt");
    ExperimentConfig c;
    c.algorithm = "partition";
    c.graph = "/tmp/locavg_star.txt";
    c.a = 1;
    c.seeds = {4};
    c.id_permutations = 0;
    ExperimentReport rep = run_experiment(c);
    REQUIRE(rep.runs.size() == 1);
    CHECK(rep.runs[0].avg == Rational(7, 6));
    std::string csv = report_csv(rep);
    CHECK(csv.find("7,6,1.16666666667") != std::string::npos);
}

TEST_CASE("svg decay chart has one marker per round") {
    ExperimentReport rep = run_experiment(ring_config());
    std::string svg = report_svg(rep);
    std::size_t count = 0, pos = 0;
    while ((pos = svg.find("<circle", pos)) != std::string::npos) {
        ++count;
        pos += 7;
    }
    CHECK(count == rep.runs[0].decay.size());
}

TEST_CASE("solution file verification") {
    Graph c6 = gen_ring(6);
    CHECK(verify_solution_file(c6, R"({"kind":"vertex-coloring","colors":[1,2,1,2,1,2]})").pass);
    CHECK_FALSE(
        verify_solution_file(c6, R"({"kind":"vertex-coloring","colors":[1,1,1,2,1,2]})").pass);

    Graph k2 = parse_edge_list("2 1\n0 1\n");
    FileVerdict fv = verify_solution_file(k2, R"({"kind":"mis","vertices":[]})");
    CHECK_FALSE(fv.pass);
    CHECK(fv.detail.find("maximal") != std::string::npos);

    Graph p3 = parse_edge_list("3 2\n0 1\n1 2\n");
    FileVerdict fm = verify_solution_file(p3, R"({"kind":"matching","edges":[[0,1],[1,2]]})");
    CHECK_FALSE(fm.pass);
    CHECK(fm.detail.find("share") != std::string::npos);
}

TEST_CASE("structural objects serialize to json") {
    Graph p3 = parse_edge_list("3 2\n0 1\n1 2\n");
    PartitionParams pp(1, Rational(2));
    auto res = parallelized_forest_decomposition(p3, IdAssignment::identity(3), pp);
    std::string hj = hpartition_json(res.hp);
    CHECK(hj.find("\"index\"") != std::string::npos);
    std::string fj = forest_decomposition_json(res.fd);
    CHECK(fj.find("\"label\"") != std::string::npos);
    CoverFreeFamily f = build_cff_polynomial(4, 1);
    CHECK(cff_json(f).find("\"m\"") != std::string::npos);
}

TEST_CASE("rational parsing") {
    CHECK(parse_rational("2") == Rational(2));
    CHECK(parse_rational("1/2") == Rational(1, 2));
    CHECK(parse_rational("0.5") == Rational(1, 2));
}

TEST_CASE("every registered algorithm runs end to end on a small forest") {
    for (const auto& name : algorithm_names()) {
        ExperimentConfig c;
        c.algorithm = name;
        c.graph = "forest";
        c.n = name == "rand-a-loglogn" ? 32 : 24;
        c.a = 1;
        c.seeds = {3};
        c.id_permutations = 1;
        ExperimentReport rep = run_experiment(c);
        INFO(name);
        CHECK(rep.all_valid);
    }
}

TEST_CASE("engine errors embed per run instead of aborting the batch") {
    // K6 with a=1 gives every vertex degree 5 > A=4: nobody ever joins
    Graph k6 = gen_random_graph(6, 15, 1);
    write_edge_list(k6, "/tmp/locavg_k6.txt");
    ExperimentConfig c;
    c.algorithm = "partition";
    c.graph = "/tmp/locavg_k6.txt";
    c.a = 1;
    c.seeds = {1, 2};
    c.id_permutations = 1;
    c.round_cap = 16;
    ExperimentReport rep = run_experiment(c);
    CHECK_FALSE(rep.all_valid);
    CHECK(rep.runs.size() == 4);
    for (const auto& r : rep.runs) {
        CHECK_FALSE(r.valid);
        CHECK(r.verdict.find("round cap") != std::string::npos);
    }
}

TEST_CASE("empty report renders as a bare csv header") {
    ExperimentReport empty;
    std::string csv = report_csv(empty);
    CHECK(csv.find('\n') == csv.size() - 1);
    CHECK(csv.rfind("algo,", 0) == 0);
}

TEST_CASE("oracles reject malformed solutions") {
    Graph c6 = gen_ring(6);
    Coloring bad = Coloring::flat({1, 1, 2, 1, 2, 1});
    CHECK_FALSE(verify_proper_coloring(c6, bad).pass);
    Coloring short_c;
    short_c.colors = {{1}, {2}};
    CHECK_FALSE(verify_proper_coloring(c6, short_c).pass);

    std::vector<long long> ec{1, 1, 2, 3, 1, 2};  // edges 0 and 1 share vertex 1
    CHECK_FALSE(verify_edge_coloring(c6, ec, 3).pass);
    std::vector<long long> range{1, 2, 3, 4, 1, 2};
    CHECK_FALSE(verify_edge_coloring(c6, range, 3).pass);  // color 4 > 2*Delta-1

    std::vector<char> not_ind(6, 1);
    CHECK_FALSE(verify_mis(c6, not_ind).pass);
    std::vector<char> double_match{1, 1, 0, 0, 0, 0};
    CHECK_FALSE(verify_matching(c6, double_match).pass);
}
