#include <doctest.h>

#include <map>
#include <set>

#include "locavg/arbdefective.hpp"
#include "locavg/oracle.hpp"

using namespace locavg;

namespace {

bool oriented_part_acyclic(int n, const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::vector<int>> succ(static_cast<std::size_t>(n));
    std::vector<int> indeg(static_cast<std::size_t>(n), 0);
    for (auto [t, h] : edges) {
        succ[static_cast<std::size_t>(t)].push_back(h);
        ++indeg[static_cast<std::size_t>(h)];
    }
    std::vector<int> q;
    for (int v = 0; v < n; ++v)
        if (!indeg[static_cast<std::size_t>(v)]) q.push_back(v);
    std::size_t done = 0;
    while (done < q.size()) {
        int v = q[done++];
        for (int u : succ[static_cast<std::size_t>(v)])
            if (--indeg[static_cast<std::size_t>(u)] == 0) q.push_back(u);
    }
    return static_cast<int>(done) == n;
}

}  // namespace

TEST_CASE("partial orientation leaves only same-set same-color edges undirected") {
    Graph g = gen_forest_union(40, 1, 6);
    IdAssignment ids = IdAssignment::identity(40);
    PartitionParams pp(1, Rational(2));
    auto [hp, exec] = procedure_partition(g, ids, pp);
    // defect target floor(1/5) = 0: the bucketing stays proper, so everything orients
    PartialOrientation po = partial_orientation(g, ids, hp, 5, 1, Rational(2));
    CHECK(po.unoriented.empty());
    CHECK(po.oriented.size() == g.edges().size());
    CHECK(oriented_part_acyclic(g.n(), po.oriented));
}

TEST_CASE("partial orientation with a coarse defect target") {
    for (std::uint64_t s = 1; s <= 25; ++s) {
        Graph g = gen_random_graph(30, 60, s);
        IdAssignment ids = IdAssignment::permuted(30, s);
        PartitionParams pp(4, Rational(2));
        auto [hp, exec] = procedure_partition(g, ids, pp);
        PartialOrientation po = partial_orientation(g, ids, hp, 1, 4, Rational(2));
        CHECK(oriented_part_acyclic(g.n(), po.oriented));
        CHECK(po.oriented.size() + po.unoriented.size() == g.edges().size());
        auto psi = po.psi.flat_values();
        for (auto [u, v] : po.unoriented) {
            CHECK(hp.index[static_cast<std::size_t>(u)] == hp.index[static_cast<std::size_t>(v)]);
            CHECK(psi[static_cast<std::size_t>(u)] == psi[static_cast<std::size_t>(v)]);
        }
    }
}

TEST_CASE("arbdefective pigeonhole and class certificates") {
    for (std::uint64_t s = 1; s <= 15; ++s) {
        Graph g = gen_random_graph(26, 52, s + 100);
        IdAssignment ids = IdAssignment::identity(26);
        int k = 3, t = 3, a = 4;
        ArbdefectiveResult res = arbdefective_coloring(g, ids, k, t, a, Rational(2));
        auto phi = res.phi.flat_values();
        // chosen color used by at most floor(|parents|/k) parents
        std::map<int, std::vector<int>> parents;
        for (auto [tail, head] : res.po.oriented) parents[tail].push_back(head);
        for (int v = 0; v < g.n(); ++v) {
            int same = 0;
            for (int p : parents[v])
                if (phi[static_cast<std::size_t>(p)] == phi[static_cast<std::size_t>(v)]) ++same;
            CHECK(same <= static_cast<int>(parents[v].size()) / k);
        }
        CHECK(res.cert_max_out_degree <= res.b_bound);
        CHECK(verify_arbdefective(g, res.phi, res.b_bound, &res.class_certificates).ok());
    }
}

TEST_CASE("arbdefective degenerate cases") {
    Graph g = gen_forest_union(12, 1, 2);
    IdAssignment ids = IdAssignment::identity(12);
    ArbdefectiveResult res = arbdefective_coloring(g, ids, 1, 2, 1, Rational(2));
    for (const auto& c : res.phi.colors) CHECK(c[0] == 1);

    Graph edgeless = parse_edge_list("5 0\n");
    ArbdefectiveResult flat =
        arbdefective_coloring(edgeless, IdAssignment::identity(5), 3, 2, 1, Rational(2));
    for (const auto& c : flat.phi.colors) CHECK(c[0] == 1);
    CHECK(verify_arbdefective(edgeless, flat.phi, 0, &flat.class_certificates).ok());
}

TEST_CASE("arbdefective verifier cross-checks the oracle on tiny graphs") {
    Graph g = gen_random_graph(10, 20, 3);
    // a proper coloring has edgeless classes: passes with b = 0
    Coloring proper = Coloring::flat({1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
    CHECK(verify_arbdefective(g, proper, 0).ok());
    // one class holding everything needs b >= arboricity
    Coloring whole = Coloring::flat(std::vector<long long>(10, 1));
    int arb = exact_arboricity(g);
    CHECK(verify_arbdefective(g, whole, arb).ok());
    CHECK_FALSE(verify_arbdefective(g, whole, arb - 1).ok());
}

TEST_CASE("legal coloring skips refinement for small bounds") {
    Graph g = gen_forest_union(60, 1, 8);
    LegalColoringResult res = legal_coloring(g, IdAssignment::identity(60), 1, 4, Rational(2));
    CHECK(res.refinement_iterations == 0);
    CHECK(verify_proper_coloring(g, res.coloring).pass);
    CHECK(res.coloring.max_flat_value() <= 5);  // floor((2+2)*1) + 1 colors
}

TEST_CASE("legal coloring refinement count follows the update oracle") {
    CHECK(legal_refinement_count(4096, 64, Rational(2)) == 2);
    CHECK(legal_refinement_count(64, 64, Rational(2)) == 0);
    CHECK(legal_refinement_count(65, 8, Rational(2)) > 0);

    Graph g = gen_forest_union(30, 1, 9);
    LegalColoringResult res =
        legal_coloring(g, IdAssignment::identity(30), 4096, 64, Rational(2));
    CHECK(res.refinement_iterations == legal_refinement_count(4096, 64, Rational(2)));
    CHECK(verify_proper_coloring(g, res.coloring).pass);

    Graph empty = parse_edge_list("0 0\n");
    LegalColoringResult none = legal_coloring(empty, IdAssignment::identity(0), 3, 4, Rational(2));
    CHECK(none.coloring.colors.empty());
}

TEST_CASE("one-plus-eta base case is prefix-free") {
    Graph g = gen_forest_union(50, 1, 4);
    OnePlusEtaResult res = one_plus_eta_arb_col(g, IdAssignment::identity(50), 1, EtaParams(8));
    CHECK(res.depth == 1);
    CHECK(verify_proper_coloring(g, res.coloring).pass);
    for (const auto& c : res.coloring.colors) CHECK(c.size() == 1);
}

TEST_CASE("one-plus-eta recursion depth and prefixes") {
    Graph g = gen_random_graph(60, 150, 17);
    int a = 64;  // bound, C = 8: two recursion levels before the base case
    OnePlusEtaResult res = one_plus_eta_arb_col(g, IdAssignment::identity(60), a, EtaParams(8));
    CHECK(verify_proper_coloring(g, res.coloring).pass);
    CHECK(res.depth == 3);  // two recursion levels, then the base case
    // colors starting 1 and colors starting 2 partition the vertex set
    for (const auto& c : res.coloring.colors) {
        if (c.size() > 1) CHECK((c[0] == 1 || c[0] == 2));
    }
}

TEST_CASE("one-plus-eta over random bounds") {
    for (std::uint64_t s = 1; s <= 12; ++s) {
        int a = 1 + static_cast<int>(s % 16);
        int n = 20 + static_cast<int>(s) * 5;
        Graph g = gen_forest_union(n, std::min(a, 4), s * 31);
        OnePlusEtaResult res =
            one_plus_eta_arb_col(g, IdAssignment::permuted(n, s), a, EtaParams(8));
        CHECK(verify_proper_coloring(g, res.coloring).pass);
        int ceil_log8 = 0;
        for (long long pw = 1; pw < a; pw *= 8) ++ceil_log8;
        CHECK(res.depth <= ceil_log8 + 1);
    }
}

TEST_CASE("supplied single H-set matches the self-computed call on low-degree graphs") {
    Graph g = gen_forest_union(18, 1, 4);  // degrees <= A: one H-set either way
    IdAssignment ids = IdAssignment::identity(18);
    ArbdefectiveResult self = arbdefective_coloring(g, ids, 4, 4, 1, Rational(2));
    HPartition one = HPartition::from_indices(std::vector<int>(18, 1));
    ArbdefectiveResult given = h_arbdefective_coloring(g, ids, 4, 4, one, 1, Rational(2));
    CHECK(self.phi.flat_values() == given.phi.flat_values());
    CHECK(given.rounds >= 1);
    CHECK(given.rounds <= static_cast<int>(given.po.psi_palette) * one.ell + 2);
}
