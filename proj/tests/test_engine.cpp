#include <doctest.h>

#include "locavg/engine.hpp"
#include "locavg/graph.hpp"

using namespace locavg;

namespace {

class FinishNow : public Program {
    class P : public VertexProcess {
        void step(int, RoundApi& api) override { api.finish({0}); }
    };

public:
    std::unique_ptr<VertexProcess> spawn(const VertexContext&) const override {
        return std::make_unique<P>();
    }
};

class FinishDegreeAfterIdle : public Program {
    class P : public VertexProcess {
    public:
        explicit P(int deg) : deg_(deg) {}
        void step(int round, RoundApi& api) override {
            if (round == 2) api.finish({deg_});
        }
        int deg_;
    };

public:
    std::unique_ptr<VertexProcess> spawn(const VertexContext& ctx) const override {
        return std::make_unique<P>(ctx.degree);
    }
};

class NeverFinish : public Program {
    class P : public VertexProcess {
        void step(int, RoundApi&) override {}
    };

public:
    std::unique_ptr<VertexProcess> spawn(const VertexContext&) const override {
        return std::make_unique<P>();
    }
};

class SendOutOfRange : public Program {
    class P : public VertexProcess {
        void step(int, RoundApi& api) override { api.send(api.degree(), 7, {1}); }
    };

public:
    std::unique_ptr<VertexProcess> spawn(const VertexContext&) const override {
        return std::make_unique<P>();
    }
};

}  // namespace

TEST_CASE("immediate finish costs one round") {
    Graph g = gen_ring(5);
    auto res = run(g, IdAssignment::identity(5), FinishNow{});
    for (int r : res.ledger) CHECK(r == 1);
    CHECK(res.metrics.avg == Rational(1));
    CHECK(res.metrics.worst == 1);
}

TEST_CASE("idle round then finish") {
    Graph p3 = parse_edge_list("3 2\n0 1\n1 2\n");
    auto res = run(p3, IdAssignment::identity(3), FinishDegreeAfterIdle{});
    for (int r : res.ledger) CHECK(r == 2);
    CHECK(res.metrics.avg == Rational(2));
    CHECK(res.outputs[1][0] == 2);  // middle vertex degree
}

TEST_CASE("ledger arithmetic") {
    CHECK(vertex_averaged({1, 1, 1, 1, 1, 2}) == Rational(7, 6));
    CHECK(vertex_averaged({3, 3, 3}) == Rational(3));
    CHECK(vertex_averaged({1, 3}) == Rational(2));
    CHECK(worst_case({1, 1, 2}) == 2);
    CHECK(worst_case({5}) == 5);
    CHECK(worst_case({1, 1, 1}) == 1);
}

TEST_CASE("metrics identities") {
    Metrics m = compute_metrics({1, 2, 2, 4});
    CHECK(m.decay.size() == 4);
    CHECK(m.decay[0] == 4);  // decay[1] = n
    long long sum_decay = 0, sum_r = 1 + 2 + 2 + 4;
    for (long long d : m.decay) sum_decay += d;
    CHECK(sum_decay == sum_r);
    for (std::size_t i = 1; i < m.decay.size(); ++i) CHECK(m.decay[i] <= m.decay[i - 1]);
    CHECK(m.avg <= Rational(m.worst));
}

TEST_CASE("determinism of transcripts") {
    Graph g = gen_random_graph(20, 40, 5);
    auto a = run(g, IdAssignment::identity(20), FinishDegreeAfterIdle{}, {.seed = 9});
    auto b = run(g, IdAssignment::identity(20), FinishDegreeAfterIdle{}, {.seed = 9});
    CHECK(a.transcript_hash == b.transcript_hash);
}

TEST_CASE("round cap diagnostics") {
    Graph g = gen_ring(4);
    RunOptions opt;
    opt.round_cap = 10;
    try {
        run(g, IdAssignment::identity(4), NeverFinish{}, opt);
        FAIL("expected round cap error");
    } catch (const RoundCapExceeded& e) {
        CHECK(e.active_vertices.size() == 4);
    }
}

TEST_CASE("locality violations rejected") {
    Graph g = gen_ring(4);
    CHECK_THROWS_WITH_AS(run(g, IdAssignment::identity(4), SendOutOfRange{}),
                         doctest::Contains("locality violation"), std::runtime_error);
}

TEST_CASE("default round cap formula") {
    CHECK(default_round_cap(1) == 64);
    CHECK(default_round_cap(256) == 64 * 81);
}

TEST_CASE("sweep over id assignments is invariant for id-oblivious programs") {
    Graph g = gen_forest_union(24, 1, 3);
    Metrics single = run(g, IdAssignment::identity(24), FinishDegreeAfterIdle{}).metrics;
    Metrics swept = sweep_ids(g, FinishDegreeAfterIdle{}, 4, 17);
    CHECK(swept.avg == single.avg);
    Metrics one = sweep_ids(g, FinishDegreeAfterIdle{}, 1, 17);
    CHECK(one.avg == single.avg);
}
