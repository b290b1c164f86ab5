#include "locavg/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "locavg/detail/pipeline.hpp"

namespace locavg {

using detail::PartitionLayer;
using detail::TAG_COLOR;
using detail::TAG_JOIN;
using detail::TAG_PICK;

int log_star(long long n) {
    if (n <= 1) return 0;
    double x = static_cast<double>(n);
    int count = 0;
    while (x > 1.0) {
        x = std::log2(x);
        ++count;
    }
    return count;
}

double iterated_log(long long n, int i) {
    double x = static_cast<double>(n);
    for (int j = 0; j < i; ++j) x = std::log2(x);
    return x;
}

int rho(long long n) {
    if (n < 2) throw std::invalid_argument("rho: n >= 2 required");
    int ls = log_star(n);
    int r = 1;
    while (true) {
        double v = iterated_log(n, r);  // log^(r) n, candidate for rho = r+1
        if (v >= static_cast<double>(ls))
            ++r;
        else
            break;
        if (r > 64) break;
    }
    return r;
}

SchemeParams::SchemeParams(int k_, const Rational& epsilon) : k(k_) {
    c = Rational(2 * epsilon.den, epsilon.num);
}

std::vector<int> segment_windows(int n, int k, const Rational& c) {
    std::vector<int> end(static_cast<std::size_t>(k) + 1, 0);
    double cv = c.value();
    int acc = 0;
    for (int i = k; i >= 2; --i) {
        double li = std::max(iterated_log(std::max(n, 2), i), 0.0);
        int len = static_cast<int>(std::ceil(cv * li - 1e-9));
        len = std::max(len, 1);
        acc += len;
        end[static_cast<std::size_t>(i)] = acc;
    }
    return end;
}

int segment_of_round(const std::vector<int>& windows, int k, int round) {
    for (int i = k; i >= 2; --i)
        if (round <= windows[static_cast<std::size_t>(i)]) return i;
    return 1;
}

namespace {

// Safe bound on the last join round of Procedure Partition when the arboricity
// precondition holds: n_i < 1 once (i-1) log2((2+eps)/2) > log2 n.
int exhaustion_bound(int n, const Rational& epsilon) {
    double base = (2.0 + epsilon.value()) / 2.0;
    double l = 1.0 + std::log2(static_cast<double>(std::max(n, 2))) / std::log2(base);
    return static_cast<int>(std::ceil(l)) + 1;
}

// ---------------------------------------------------------------------------
// Single reduction round per H-set, pipelined with Partition (the O(a^2 log n)
// coloring): a vertex joining H_i re-colors itself in round i+1 using the set
// family over IDs, escaping the union of its parents' sets.
// ---------------------------------------------------------------------------

struct A2Config {
    int A = 0;
    long long num_ids = 0;
    CoverFreeFamily::Kind kind = CoverFreeFamily::Kind::polynomial;
    std::shared_ptr<const CoverFreeFamily> greedy;
    long long q = 0;
    int d = 0;
    long long universe = 0;

    std::vector<int> set_for(long long index) const {
        if (kind == CoverFreeFamily::Kind::greedy) return greedy->set_for(index);
        return poly_cff_set(q, d, index);
    }
};

class A2LogNProcess : public VertexProcess {
public:
    A2LogNProcess(const VertexContext& ctx, const A2Config& cfg) : cfg_(cfg) {
        part_.init(ctx, cfg.A);
    }

    void step(int round, RoundApi& api) override {
        for (const auto& m : api.inbox()) part_.absorb(m);
        part_.maybe_join(round, api);
        if (part_.joined() && round == part_.own_h + 1) {
            std::set<int> blocked;
            for (const auto& info : part_.nb) {
                bool parent = (info.h == 0) ||
                              (info.h == part_.own_h && info.id > part_.own_id);
                if (!parent) continue;
                auto fu = cfg_.set_for(info.id - 1);
                blocked.insert(fu.begin(), fu.end());
            }
            auto own = cfg_.set_for(part_.own_id - 1);
            long long pick = -1;
            for (int x : own)
                if (!blocked.count(x)) { pick = x; break; }
            long long fallback = 0;
            if (pick < 0) {
                pick = cfg_.universe + (part_.own_id - 1);
                fallback = 1;
            }
            api.finish({pick, static_cast<long long>(part_.own_h), fallback});
        }
    }

private:
    A2Config cfg_;
    PartitionLayer part_;
};

class A2LogNProgram : public Program {
public:
    explicit A2LogNProgram(A2Config cfg) : cfg_(std::move(cfg)) {}
    std::unique_ptr<VertexProcess> spawn(const VertexContext& ctx) const override {
        return std::make_unique<A2LogNProcess>(ctx, cfg_);
    }

private:
    A2Config cfg_;
};

// ---------------------------------------------------------------------------
// Segmentation scheme
// ---------------------------------------------------------------------------

struct SegConfig {
    int A = 0;
    int k = 2;
    std::vector<int> end;  // window end rounds, valid for [2..k]
    int s1_start = 0;      // first reduction/recolor-eligible round of segment 1
    long long alpha = 0;
    SchemeInstance instance = SchemeInstance::reduction;
    LinialSchedule sched;  // reduction steps from the ID bound

    int start_round(int segment) const {
        return segment >= 2 ? end[static_cast<std::size_t>(segment)] + 1 : s1_start;
    }
    int segment_of(int h) const {
        for (int i = k; i >= 2; --i)
            if (h <= end[static_cast<std::size_t>(i)]) return i;
        return 1;
    }
};

class SegmentationProcess : public VertexProcess {
public:
    SegmentationProcess(const VertexContext& ctx, const SegConfig& cfg)
        : cfg_(cfg), degree_(ctx.degree) {
        part_.init(ctx, cfg.A);
        cur_ = part_.own_id - 1;
        nb_color_.assign(static_cast<std::size_t>(ctx.degree), -1);
        nb_pick_.assign(static_cast<std::size_t>(ctx.degree), -1);
        nb_recolor_.assign(static_cast<std::size_t>(ctx.degree), -1);
    }

    void step(int round, RoundApi& api) override {
        for (const auto& m : api.inbox()) {
            part_.absorb(m);
            if (m.tag == TAG_COLOR) nb_color_[static_cast<std::size_t>(m.from_slot)] = m.data[0];
            if (m.tag == TAG_PICK) nb_pick_[static_cast<std::size_t>(m.from_slot)] = m.data[0];
            if (m.tag == kFinalTag)
                nb_recolor_[static_cast<std::size_t>(m.from_slot)] = m.data[1];
        }
        part_.maybe_join(round, api);
        if (!part_.joined()) return;
        if (cfg_.instance == SchemeInstance::reduction)
            reduction_step(round, api);
        else
            recolor_step(round, api);
    }

private:
    long long neighbor_current(std::size_t s) const {
        return nb_color_[s] >= 0 ? nb_color_[s] : part_.nb[s].id - 1;
    }

    // Is neighbor slot s a parent of mine inside my segment?
    bool segment_parent(std::size_t s) const {
        const auto& info = part_.nb[s];
        if (info.h == 0) return false;  // joined later than my window closes or not yet
        int seg = cfg_.segment_of(info.h);
        if (seg != my_segment()) return false;
        if (info.h != part_.own_h) return info.h > part_.own_h;
        return info.id > part_.own_id;
    }

    int my_segment() const { return cfg_.segment_of(part_.own_h); }

    void reduction_step(int round, RoundApi& api) {
        const int start = cfg_.start_round(my_segment());
        const int steps = cfg_.sched.rounds();
        if (round < start) return;
        int s = round - start + 1;
        if (s <= steps) {
            const auto& st = cfg_.sched.steps[static_cast<std::size_t>(s - 1)];
            std::set<int> blocked;
            for (std::size_t i = 0; i < part_.nb.size(); ++i) {
                if (!segment_parent(i)) continue;
                auto fu = poly_cff_set(st.q, st.d, neighbor_current(i));
                blocked.insert(fu.begin(), fu.end());
            }
            auto own = poly_cff_set(st.q, st.d, cur_);
            long long pick = -1;
            for (int x : own)
                if (!blocked.count(x)) { pick = x; break; }
            if (pick < 0) {
                pick = st.universe + cur_;
                ++fallbacks_;
            }
            cur_ = pick;
            api.broadcast(TAG_COLOR, {cur_});
        } else {
            // payload: {segment, color, h, intra-set tiebreak, id, fallbacks}
            api.finish({static_cast<long long>(my_segment()),
                        static_cast<long long>(my_segment() - 1) * cfg_.alpha + cur_,
                        static_cast<long long>(part_.own_h), part_.own_id, part_.own_id,
                        fallbacks_});
        }
    }

    void recolor_step(int round, RoundApi& api) {
        const int steps = cfg_.sched.rounds();
        // Stage 1: reduction within the own H-set (parents: same set, higher ID).
        if (round <= part_.own_h + steps) {
            if (round >= part_.own_h + 1) {
                const auto& st = cfg_.sched.steps[static_cast<std::size_t>(round - part_.own_h - 1)];
                std::set<int> blocked;
                for (std::size_t i = 0; i < part_.nb.size(); ++i) {
                    const auto& info = part_.nb[i];
                    if (info.h != part_.own_h || info.id < part_.own_id) continue;
                    auto fu = poly_cff_set(st.q, st.d, neighbor_current(i));
                    blocked.insert(fu.begin(), fu.end());
                }
                auto own = poly_cff_set(st.q, st.d, cur_);
                long long pick = -1;
                for (int x : own)
                    if (!blocked.count(x)) { pick = x; break; }
                if (pick < 0) pick = st.universe + cur_;
                cur_ = pick;
                api.broadcast(TAG_COLOR, {cur_});
            }
            return;
        }
        // Stage 2: (deg+1)-list pick within the H-set, classes ascending by the
        // stage-1 color (ID as tiebreak).
        if (!picked_) {
            auto my_key = std::pair<long long, long long>(cur_, part_.own_id);
            int same_h = 0;
            for (std::size_t i = 0; i < part_.nb.size(); ++i) {
                const auto& info = part_.nb[i];
                if (info.h != part_.own_h) continue;
                ++same_h;
                auto key = std::pair<long long, long long>(neighbor_current(i), info.id);
                if (key < my_key && nb_pick_[i] < 0) return;  // wait for earlier classes
            }
            std::set<long long> used;
            for (std::size_t i = 0; i < part_.nb.size(); ++i)
                if (part_.nb[i].h == part_.own_h && nb_pick_[i] >= 0) used.insert(nb_pick_[i]);
            for (long long c = 1; c <= same_h + 1; ++c)
                if (!used.count(c)) { pick_ = c; break; }
            picked_ = true;
            api.broadcast(TAG_PICK, {pick_});
            return;
        }
        // Stage 3: recolor along the combined segment orientation, sinks first.
        int seg = my_segment();
        if (seg >= 2 && round <= cfg_.end[static_cast<std::size_t>(seg)] + 1) return;
        std::set<long long> used;
        auto my_pick_key = std::pair<long long, long long>(pick_, part_.own_id);
        for (std::size_t i = 0; i < part_.nb.size(); ++i) {
            const auto& info = part_.nb[i];
            if (info.h == 0) {
                if (seg == 1) return;  // a future joiner lands in my segment's tail
                continue;
            }
            if (cfg_.segment_of(info.h) != seg) continue;
            if (info.h == part_.own_h && nb_pick_[i] < 0) return;  // pick pending
            bool parent = info.h != part_.own_h
                              ? info.h > part_.own_h
                              : std::pair<long long, long long>(nb_pick_[i], info.id) > my_pick_key;
            if (!parent) continue;
            if (nb_recolor_[i] < 0) return;  // parent has not recolored yet
            used.insert(nb_recolor_[i]);
        }
        long long base = static_cast<long long>(seg - 1) * cfg_.alpha;
        for (long long l = 0; l < cfg_.alpha; ++l) {
            if (!used.count(base + l)) {
                // payload: {segment, color, h, intra-set tiebreak, id, fallbacks}
                api.finish({static_cast<long long>(seg), base + l,
                            static_cast<long long>(part_.own_h), pick_, part_.own_id, 0});
                return;
            }
        }
        throw std::runtime_error("segmentation: recolor palette exhausted");
    }

    SegConfig cfg_;
    int degree_;
    PartitionLayer part_;
    long long cur_ = 0;
    long long fallbacks_ = 0;
    bool picked_ = false;
    long long pick_ = -1;
    std::vector<long long> nb_color_;
    std::vector<long long> nb_pick_;
    std::vector<long long> nb_recolor_;
};

class SegmentationProgram : public Program {
public:
    explicit SegmentationProgram(SegConfig cfg) : cfg_(std::move(cfg)) {}
    std::unique_ptr<VertexProcess> spawn(const VertexContext& ctx) const override {
        return std::make_unique<SegmentationProcess>(ctx, cfg_);
    }

private:
    SegConfig cfg_;
};

void assert_segment_orientation_acyclic(const Graph& g, const SegmentationResult& res,
                                        const std::vector<int>& h,
                                        const std::vector<long long>& tiebreak,
                                        const std::vector<long long>& id) {
    const int n = g.n();
    std::vector<std::vector<int>> succ(static_cast<std::size_t>(n));
    std::vector<int> indeg(static_cast<std::size_t>(n), 0);
    auto key = [&](int v) {
        return std::tuple<int, int, long long, long long>(
            -res.coloring.segment[static_cast<std::size_t>(v)], h[static_cast<std::size_t>(v)],
            tiebreak[static_cast<std::size_t>(v)], id[static_cast<std::size_t>(v)]);
    };
    for (auto [u, v] : g.edges()) {
        int tail = key(u) < key(v) ? u : v;
        int head = tail == u ? v : u;
        succ[static_cast<std::size_t>(tail)].push_back(head);
        ++indeg[static_cast<std::size_t>(head)];
    }
    std::vector<int> queue;
    for (int v = 0; v < n; ++v)
        if (indeg[static_cast<std::size_t>(v)] == 0) queue.push_back(v);
    std::size_t done = 0;
    while (done < queue.size()) {
        int v = queue[done++];
        for (int u : succ[static_cast<std::size_t>(v)])
            if (--indeg[static_cast<std::size_t>(u)] == 0) queue.push_back(u);
    }
    if (static_cast<int>(done) != n)
        throw std::runtime_error("segmentation: combined orientation has a cycle");
}

SegmentationResult run_scheme(const Graph& g, const IdAssignment& ids,
                              const PartitionParams& pparams, SchemeParams sparams,
                              SchemeInstance instance, const RunOptions& opt) {
    const int n = g.n();
    // k = 2 is always admitted: on graphs so small that rho(n) < 2 the windows
    // collapse and everything lands in one segment.
    int k_cap = std::max(rho(std::max<long long>(n, 2)), 2);
    if (sparams.k < 2 || sparams.k > k_cap)
        throw std::invalid_argument("segmentation: k must lie in [2, rho(n)]");
    ids.validate(n);

    SegConfig cfg;
    cfg.A = pparams.A;
    cfg.k = sparams.k;
    cfg.end = segment_windows(n, sparams.k, sparams.c);
    cfg.s1_start = std::max(cfg.end[2], exhaustion_bound(n, pparams.epsilon)) + 1;
    cfg.instance = instance;
    cfg.sched = LinialSchedule::compute(ids.max_id(), pparams.A);
    cfg.alpha = instance == SchemeInstance::reduction ? cfg.sched.final_bound
                                                      : static_cast<long long>(pparams.A) + 1;

    SegmentationProgram prog(cfg);
    ExecutionResult exec = run(g, ids, prog, opt);

    SegmentationResult res;
    res.coloring.k = sparams.k;
    res.coloring.alpha = cfg.alpha;
    res.coloring.segment.resize(static_cast<std::size_t>(n));
    std::vector<long long> values(static_cast<std::size_t>(n));
    std::vector<int> h(static_cast<std::size_t>(n));
    std::vector<long long> tiebreak(static_cast<std::size_t>(n));
    std::vector<long long> vid(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        const auto& out = exec.outputs[static_cast<std::size_t>(v)];
        res.coloring.segment[static_cast<std::size_t>(v)] = static_cast<int>(out.at(0));
        values[static_cast<std::size_t>(v)] = out.at(1);
        h[static_cast<std::size_t>(v)] = static_cast<int>(out.at(2));
        tiebreak[static_cast<std::size_t>(v)] = out.at(3);
        vid[static_cast<std::size_t>(v)] = out.at(4);
    }
    res.coloring.coloring = Coloring::flat(std::move(values));
    res.exec = std::move(exec);
    res.segment_end_round.assign(cfg.end.begin(), cfg.end.end());
    assert_segment_orientation_acyclic(g, res, h, tiebreak, vid);
    return res;
}

}  // namespace

SegmentationResult segmentation_run(const Graph& g, const IdAssignment& ids,
                                    const PartitionParams& pparams, SchemeParams sparams,
                                    SchemeInstance instance, const RunOptions& opt) {
    return run_scheme(g, ids, pparams, sparams, instance, opt);
}

A2LogNResult color_a2logn(const Graph& g, const IdAssignment& ids, int a,
                          const Rational& epsilon, CoverFreeFamily::Kind family,
                          const RunOptions& opt) {
    PartitionParams pp(a, epsilon);
    ids.validate(g.n());

    A2Config cfg;
    cfg.A = pp.A;
    cfg.num_ids = ids.max_id();
    cfg.kind = family;
    A2LogNResult res;
    res.family_kind = family;
    if (family == CoverFreeFamily::Kind::greedy) {
        auto fam = std::make_shared<CoverFreeFamily>(build_cff_greedy(cfg.num_ids, pp.A));
        cfg.universe = fam->universe;
        cfg.greedy = fam;
        res.palette_bound = fam->universe;
    } else {
        PolyParams p = best_poly_params(cfg.num_ids, pp.A);
        cfg.q = p.q;
        cfg.d = p.d;
        cfg.universe = p.universe;
        res.palette_bound = p.universe;
    }

    A2LogNProgram prog(cfg);
    ExecutionResult exec = run(g, ids, prog, opt);
    std::vector<long long> values(static_cast<std::size_t>(g.n()));
    std::vector<int> h(static_cast<std::size_t>(g.n()));
    for (int v = 0; v < g.n(); ++v) {
        const auto& out = exec.outputs[static_cast<std::size_t>(v)];
        values[static_cast<std::size_t>(v)] = out.at(0);
        h[static_cast<std::size_t>(v)] = static_cast<int>(out.at(1));
        res.fallback_count += out.at(2);
    }
    res.coloring = Coloring::flat(std::move(values));
    res.hp = HPartition::from_indices(std::move(h));
    res.exec = std::move(exec);
    return res;
}

SegmentationResult color_ka2(const Graph& g, const IdAssignment& ids, int a,
                             const Rational& epsilon, int k, const RunOptions& opt) {
    PartitionParams pp(a, epsilon);
    SchemeParams sp(k, epsilon);
    sp.lambda = 0;
    return segmentation_run(g, ids, pp, sp, SchemeInstance::reduction, opt);
}

SegmentationResult color_ka(const Graph& g, const IdAssignment& ids, int a,
                            const Rational& epsilon, int k, const RunOptions& opt) {
    PartitionParams pp(a, epsilon);
    SchemeParams sp(k, epsilon);
    sp.lambda = pp.A;
    return segmentation_run(g, ids, pp, sp, SchemeInstance::recolor, opt);
}

}  // namespace locavg
