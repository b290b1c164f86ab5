#include "locavg/randomized.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "locavg/detail/pipeline.hpp"

namespace locavg {

using detail::PartitionLayer;
using detail::TAG_PROPOSE;

namespace {

class RandDeltaPlus1Process : public VertexProcess {
public:
    RandDeltaPlus1Process(const VertexContext& ctx, long long palette)
        : rng_(ctx.rng), palette_(palette) {}

    void step(int, RoundApi& api) override {
        for (const auto& m : api.inbox())
            if (m.tag == kFinalTag) forbidden_.insert(m.data[0]);
        proposal_ = -1;
        if (rng_.next_bit() == 0) return;  // coin discarded, idle this round
        std::vector<long long> avail;
        for (long long c = 1; c <= palette_; ++c)
            if (!forbidden_.count(c)) avail.push_back(c);
        if (avail.empty()) throw std::runtime_error("rand coloring: no available color");
        proposal_ = avail[rng_.next_below(avail.size())];
        api.broadcast(TAG_PROPOSE, {proposal_});
    }

    void resolve(int, RoundApi& api) override {
        if (proposal_ < 0) return;
        for (const auto& m : api.inbox())
            if (m.tag == TAG_PROPOSE && m.data[0] == proposal_) return;
        api.finish({proposal_});
    }

private:
    RngStream rng_;
    long long palette_;
    long long proposal_ = -1;
    std::set<long long> forbidden_;
};

class RandDeltaPlus1Program : public Program {
public:
    explicit RandDeltaPlus1Program(long long palette) : palette_(palette) {}
    std::unique_ptr<VertexProcess> spawn(const VertexContext& ctx) const override {
        return std::make_unique<RandDeltaPlus1Process>(ctx, palette_);
    }
    bool uses_resolve() const override { return true; }

private:
    long long palette_;
};

// ---------------------------------------------------------------------------

struct ALogLogConfig {
    int A = 0;
    int t = 0;
};

class RandALogLogProcess : public VertexProcess {
public:
    RandALogLogProcess(const VertexContext& ctx, const ALogLogConfig& cfg)
        : cfg_(cfg), rng_(ctx.rng) {
        part_.init(ctx, cfg.A);
    }

    void step(int round, RoundApi& api) override {
        proposal_ = -1;
        for (const auto& m : api.inbox()) {
            part_.absorb(m);
            if (m.tag == kFinalTag) {
                const auto& info = part_.nb[static_cast<std::size_t>(m.from_slot)];
                // finals carry {c, h}; phase-1 pairs clash only inside the set,
                // phase-2 colors clash across the whole second phase
                int nh = static_cast<int>(info.output.at(1));
                if (nh <= cfg_.t) {
                    if (nh == part_.own_h) forbidden_.insert(info.output[0]);
                } else {
                    forbidden_.insert(info.output[0]);
                }
            }
        }
        part_.maybe_join(round, api);
        if (!part_.joined()) return;

        if (part_.own_h <= cfg_.t) {
            // Phase 1: color the own H-set on formation from {1..A+1}.
            if (round < part_.own_h + 1) return;
            sample_phase1(api);
        } else {
            // Phase 2: wait for every later-set neighbor, then {A+2..2A+2}.
            for (const auto& info : part_.nb) {
                if (info.h == 0) return;  // will join a later set
                if (info.h > part_.own_h && !info.final) return;
            }
            sample_phase2(api);
        }
    }

    void resolve(int, RoundApi& api) override {
        if (proposal_ < 0) return;
        for (const auto& m : api.inbox()) {
            if (m.tag != TAG_PROPOSE) continue;
            const auto& info = part_.nb[static_cast<std::size_t>(m.from_slot)];
            bool same_pool = part_.own_h <= cfg_.t ? info.h == part_.own_h
                                                   : info.h > cfg_.t;
            if (same_pool && m.data[0] == proposal_) return;
        }
        api.finish({proposal_, static_cast<long long>(part_.own_h)});
    }

private:
    void sample_phase1(RoundApi& api) {
        if (rng_.next_bit() == 0) return;
        std::vector<long long> avail;
        for (long long c = 1; c <= cfg_.A + 1; ++c)
            if (!forbidden_.count(c)) avail.push_back(c);
        if (avail.empty())
            throw std::runtime_error("rand phase 1: palette exhausted");
        proposal_ = avail[rng_.next_below(avail.size())];
        api.broadcast(TAG_PROPOSE, {proposal_});
    }

    void sample_phase2(RoundApi& api) {
        if (rng_.next_bit() == 0) return;
        std::vector<long long> avail;
        for (long long c = cfg_.A + 2; c <= 2LL * cfg_.A + 2; ++c)
            if (!forbidden_.count(c)) avail.push_back(c);
        // A vertex has at most A neighbors in its own and later sets, so an
        // available color always exists at decision time.
        if (avail.empty())
            throw std::runtime_error("rand phase 2: availability invariant violated");
        proposal_ = avail[rng_.next_below(avail.size())];
        api.broadcast(TAG_PROPOSE, {proposal_});
    }

    ALogLogConfig cfg_;
    PartitionLayer part_;
    RngStream rng_;
    long long proposal_ = -1;
    std::set<long long> forbidden_;
};

class RandALogLogProgram : public Program {
public:
    explicit RandALogLogProgram(ALogLogConfig cfg) : cfg_(cfg) {}
    std::unique_ptr<VertexProcess> spawn(const VertexContext& ctx) const override {
        return std::make_unique<RandALogLogProcess>(ctx, cfg_);
    }
    bool uses_resolve() const override { return true; }

private:
    ALogLogConfig cfg_;
};

}  // namespace

RandColoringResult rand_delta_plus1(const Graph& g, const IdAssignment& ids,
                                    std::uint64_t seed, const RunOptions& opt) {
    long long palette = max_degree(g) + 1;
    RandDeltaPlus1Program prog(palette);
    RunOptions o = opt;
    o.seed = seed;
    RandColoringResult res;
    res.exec = run(g, ids, prog, o);
    std::vector<long long> vals(static_cast<std::size_t>(g.n()));
    for (int v = 0; v < g.n(); ++v)
        vals[static_cast<std::size_t>(v)] = res.exec.outputs[static_cast<std::size_t>(v)].at(0);
    res.coloring = Coloring::flat(std::move(vals));
    res.palette_bound = palette;
    return res;
}

RandALogLogResult rand_a_loglogn(const Graph& g, const IdAssignment& ids, int a,
                                 const Rational& epsilon, std::uint64_t seed,
                                 const RunOptions& opt) {
    if (g.n() < 4) throw std::invalid_argument("rand_a_loglogn: n >= 4 required");
    PartitionParams pp(a, epsilon);
    ALogLogConfig cfg;
    cfg.A = pp.A;
    cfg.t = static_cast<int>(std::floor(
        2.0 * std::log2(std::log2(static_cast<double>(g.n()))) + 1e-9));
    cfg.t = std::max(cfg.t, 1);

    RandALogLogProgram prog(cfg);
    RunOptions o = opt;
    o.seed = seed;
    RandALogLogResult res;
    res.exec = run(g, ids, prog, o);
    res.t = cfg.t;
    res.palette_bound = static_cast<long long>(cfg.A + 1) * (cfg.t + 1);
    res.coloring.colors.resize(static_cast<std::size_t>(g.n()));
    std::vector<int> h(static_cast<std::size_t>(g.n()), 0);
    for (int v = 0; v < g.n(); ++v) {
        const auto& out = res.exec.outputs[static_cast<std::size_t>(v)];
        int hv = static_cast<int>(out.at(1));
        h[static_cast<std::size_t>(v)] = hv;
        // phase-1 colors are <c, i> pairs, phase-2 colors plain values
        if (hv <= cfg.t)
            res.coloring.colors[static_cast<std::size_t>(v)] = {out[0], out[1]};
        else
            res.coloring.colors[static_cast<std::size_t>(v)] = {out[0]};
    }
    res.hp = HPartition::from_indices(std::move(h));
    return res;
}

}  // namespace locavg
