#include "locavg/extension.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "locavg/cff.hpp"
#include "locavg/detail/pipeline.hpp"
#include "locavg/oracle.hpp"

namespace locavg {

using detail::PartitionLayer;
using detail::TAG_ACCEPT;
using detail::TAG_COLOR;
using detail::TAG_PICK;
using detail::TAG_PROPOSE;
using detail::TAG_REJECT;
using detail::TAG_USED;

namespace {

struct ExtConfig {
    ExtensionKind kind = ExtensionKind::echo_id;
    int A = 0;
    long long delta = 0;     // Delta(G), for the {1..Delta+1} / {1..2Delta-1} palettes
    LinialSchedule sched;    // within-H-set reduction schedule over the ID space
    long long pick_slots = 0;  // matching: fixed slot count for the local pick phase
};

// Per-H-set solvers run inside one pipelined execution. A vertex acts only
// when everything it depends on from earlier sets is final, which realizes the
// converter's iteration gating locally.
class ExtensionProcess : public VertexProcess {
public:
    ExtensionProcess(const VertexContext& ctx, const ExtConfig& cfg) : cfg_(cfg), n_(ctx.n) {
        part_.init(ctx, cfg.A);
        cur_ = part_.own_id - 1;
        nb_chi_.assign(static_cast<std::size_t>(ctx.degree), -1);
        nb_pick_.assign(static_cast<std::size_t>(ctx.degree), -1);
        edge_color_.assign(static_cast<std::size_t>(ctx.degree), -1);
        used_nb_.assign(static_cast<std::size_t>(ctx.degree), {});
        outstanding_color_.assign(static_cast<std::size_t>(ctx.degree), -1);
    }

    void step(int round, RoundApi& api) override {
        proposals_.clear();
        for (const auto& m : api.inbox()) {
            part_.absorb(m);
            switch (m.tag) {
                case TAG_COLOR:
                    nb_chi_[static_cast<std::size_t>(m.from_slot)] = m.data[0];
                    break;
                case TAG_PICK:
                    nb_pick_[static_cast<std::size_t>(m.from_slot)] = m.data[0];
                    break;
                case TAG_PROPOSE:
                    proposals_.push_back({m.from_slot, m.data.empty() ? 0 : m.data[0]});
                    break;
                case TAG_ACCEPT:
                    on_accept(m.from_slot, m.data.empty() ? 0 : m.data[0]);
                    break;
                case TAG_REJECT:
                    if (cfg_.kind == ExtensionKind::edge_coloring)
                        outstanding_color_[static_cast<std::size_t>(m.from_slot)] = -1;
                    if (cfg_.kind == ExtensionKind::matching &&
                        outstanding_slot_ == m.from_slot)
                        outstanding_slot_ = -1;
                    break;
                case TAG_USED:
                    used_nb_[static_cast<std::size_t>(m.from_slot)].insert(m.data.begin(),
                                                                           m.data.end());
                    break;
                default:
                    break;
            }
            if (m.tag == kFinalTag) on_neighbor_final(m.from_slot);
        }
        part_.maybe_join(round, api);
        if (!part_.joined()) return;

        switch (cfg_.kind) {
            case ExtensionKind::echo_id:
                api.finish({part_.own_id, part_.own_h});
                break;
            case ExtensionKind::vertex_coloring:
                coloring_step(round, api);
                break;
            case ExtensionKind::mis:
                mis_step(round, api);
                break;
            case ExtensionKind::edge_coloring:
                edge_step(round, api);
                break;
            case ExtensionKind::matching:
                matching_step(round, api);
                break;
        }
    }

private:
    std::pair<int, long long> my_key() const { return {part_.own_h, part_.own_id}; }
    std::pair<int, long long> nb_key(std::size_t s) const {
        return {part_.nb[s].h, part_.nb[s].id};
    }
    bool nb_joined(std::size_t s) const { return part_.nb[s].h != 0; }
    bool nb_lower(std::size_t s) const { return nb_joined(s) && nb_key(s) < my_key(); }

    void on_neighbor_final(int slot) {
        const auto& out = part_.nb[static_cast<std::size_t>(slot)].output;
        if (cfg_.kind == ExtensionKind::vertex_coloring) {
            used_colors_.insert(out.at(0));  // remove the color from my list
        } else if (cfg_.kind == ExtensionKind::matching) {
            if (outstanding_slot_ == slot) outstanding_slot_ = -1;
        }
    }

    void on_accept(int slot, long long value) {
        if (cfg_.kind == ExtensionKind::edge_coloring) {
            edge_color_[static_cast<std::size_t>(slot)] = value;
            outstanding_color_[static_cast<std::size_t>(slot)] = -1;
            if (used_self_.insert(value).second) used_grew_ = true;
        } else if (cfg_.kind == ExtensionKind::matching) {
            matched_partner_ = slot;
        }
    }

    // --- within-H-set reduction: synchronized steps at rounds h+1 .. h+R ----

    bool chi_phase(int round, RoundApi& api) {
        const int R = cfg_.sched.rounds();
        if (round > part_.own_h + R) return false;
        if (round < part_.own_h + 1) return true;
        const auto& st = cfg_.sched.steps[static_cast<std::size_t>(round - part_.own_h - 1)];
        std::set<int> blocked;
        for (std::size_t i = 0; i < part_.nb.size(); ++i) {
            const auto& info = part_.nb[i];
            if (info.h != part_.own_h || info.id < part_.own_id) continue;
            long long nc = nb_chi_[i] >= 0 ? nb_chi_[i] : info.id - 1;
            auto fu = poly_cff_set(st.q, st.d, nc);
            blocked.insert(fu.begin(), fu.end());
        }
        auto own = poly_cff_set(st.q, st.d, cur_);
        long long pick = -1;
        for (int x : own)
            if (!blocked.count(x)) { pick = x; break; }
        if (pick < 0) pick = st.universe + cur_;
        cur_ = pick;
        api.broadcast(TAG_COLOR, {cur_});
        return true;
    }

    long long chi_of(std::size_t s) const {
        return nb_chi_[s] >= 0 ? nb_chi_[s] : part_.nb[s].id - 1;
    }

    // --- (Delta+1)-list coloring -------------------------------------------

    void coloring_step(int round, RoundApi& api) {
        if (chi_phase(round, api)) return;
        // Pick once every lower H-set neighbor is final and every same-set
        // neighbor of an earlier class has picked (classes ascend by chi).
        auto mine = std::pair<long long, long long>(cur_, part_.own_id);
        for (std::size_t i = 0; i < part_.nb.size(); ++i) {
            const auto& info = part_.nb[i];
            if (info.h == 0) continue;  // joins later; removes my color from its list
            if (info.h < part_.own_h && !info.final) return;
            if (info.h == part_.own_h &&
                std::pair<long long, long long>(chi_of(i), info.id) < mine && !info.final)
                return;
        }
        for (long long c = 1; c <= cfg_.delta + 1; ++c)
            if (!used_colors_.count(c)) {
                api.finish({c, part_.own_h});
                return;
            }
        throw std::runtime_error("delta-plus-one coloring: list exhausted");
    }

    // --- MIS ----------------------------------------------------------------

    void mis_step(int round, RoundApi& api) {
        if (chi_phase(round, api)) return;
        auto mine = std::pair<long long, long long>(cur_, part_.own_id);
        if (pick_ < 0) {
            long long same_h = 0;
            std::set<long long> used;
            for (std::size_t i = 0; i < part_.nb.size(); ++i) {
                const auto& info = part_.nb[i];
                if (info.h != part_.own_h) continue;
                ++same_h;
                if (std::pair<long long, long long>(chi_of(i), info.id) < mine &&
                    nb_pick_[i] < 0)
                    return;
                if (nb_pick_[i] >= 0) used.insert(nb_pick_[i]);
            }
            for (long long c = 1; c <= same_h + 1; ++c)
                if (!used.count(c)) { pick_ = c; break; }
            api.broadcast(TAG_PICK, {pick_});
            return;
        }
        // Decide in local color-class order once all earlier sets are final.
        auto my_pick = std::pair<long long, long long>(pick_, part_.own_id);
        for (std::size_t i = 0; i < part_.nb.size(); ++i) {
            const auto& info = part_.nb[i];
            if (info.h == 0) continue;
            if (info.h < part_.own_h && !info.final) return;
            if (info.h == part_.own_h) {
                if (nb_pick_[i] < 0) return;
                if (std::pair<long long, long long>(nb_pick_[i], info.id) < my_pick &&
                    !info.final)
                    return;
            }
        }
        long long in = 1;
        for (const auto& info : part_.nb)
            if (info.final && info.output.at(0) == 1) { in = 0; break; }
        api.finish({in, part_.own_h});
    }

    // --- (2*Delta - 1)-edge coloring ----------------------------------------

    void edge_step(int, RoundApi& api) {
        // Tail role: serialize acceptances at myself.
        std::set<long long> batch;
        for (auto [slot, c] : proposals_) {
            bool mine_outstanding = false;
            for (long long oc : outstanding_color_)
                if (oc == c) { mine_outstanding = true; break; }
            if (!used_self_.count(c) && !batch.count(c) && !mine_outstanding) {
                api.send(slot, TAG_ACCEPT, {c});
                edge_color_[static_cast<std::size_t>(slot)] = c;
                used_self_.insert(c);
                used_grew_ = true;
                batch.insert(c);
            } else {
                api.send(slot, TAG_REJECT, {c});
            }
        }
        // Head role: propose the least color both endpoints can still take.
        std::set<long long> proposed = batch;
        for (long long oc : outstanding_color_)
            if (oc >= 0) proposed.insert(oc);
        for (std::size_t i = 0; i < part_.nb.size(); ++i) {
            if (!nb_lower(i) || edge_color_[i] >= 0 || outstanding_color_[i] >= 0) continue;
            long long c = -1;
            for (long long cand = 1; cand <= 2 * cfg_.delta - 1; ++cand)
                if (!used_self_.count(cand) && !used_nb_[i].count(cand) && !proposed.count(cand)) {
                    c = cand;
                    break;
                }
            if (c < 0) throw std::runtime_error("edge coloring: palette exhausted");
            api.send(static_cast<int>(i), TAG_PROPOSE, {c});
            outstanding_color_[i] = c;
            proposed.insert(c);
        }
        if (used_grew_) {
            Payload all(used_self_.begin(), used_self_.end());
            api.broadcast(TAG_USED, all);
            used_grew_ = false;
        }
        for (std::size_t i = 0; i < part_.nb.size(); ++i)
            if (edge_color_[i] < 0) return;
        Payload out{static_cast<long long>(part_.own_h)};
        for (std::size_t i = 0; i < part_.nb.size(); ++i)
            if (nb_lower(i)) {  // I am the head and assigned this edge
                out.push_back(static_cast<long long>(i));
                out.push_back(edge_color_[i]);
            }
        api.finish(out);
    }

    // --- maximal matching ----------------------------------------------------

    // Local pick phase in fixed chi-value slots, then per-pick-class proposal
    // windows inside the H-set, then claims on edges into earlier sets.
    void matching_step(int round, RoundApi& api) {
        if (matched_partner_ >= 0) {
            api.finish({1, static_cast<long long>(matched_partner_),
                        static_cast<long long>(part_.own_h)});
            return;
        }
        if (chi_phase(round, api)) return;

        const int R = cfg_.sched.rounds();
        const long long slot_base = part_.own_h + R;  // pick slots follow the reduction
        if (pick_ < 0) {
            if (round <= slot_base + cur_) return;  // my slot is slot_base + chi + 1
            std::set<long long> used;
            long long same_h = 0;
            for (std::size_t i = 0; i < part_.nb.size(); ++i) {
                if (part_.nb[i].h != part_.own_h) continue;
                ++same_h;
                if (nb_pick_[i] >= 0) used.insert(nb_pick_[i]);
            }
            for (long long c = 1; c <= same_h + 1; ++c)
                if (!used.count(c)) { pick_ = c; break; }
            api.broadcast(TAG_PICK, {pick_});
            return;
        }

        // Answer proposals: accept the highest-ID proposer when free.
        if (!proposals_.empty()) {
            std::sort(proposals_.begin(), proposals_.end(),
                      [&](auto a, auto b) {
                          return part_.nb[static_cast<std::size_t>(a.first)].id >
                                 part_.nb[static_cast<std::size_t>(b.first)].id;
                      });
            bool first = outstanding_slot_ < 0;
            for (auto [slot, ignored] : proposals_) {
                (void)ignored;
                if (first) {
                    first = false;
                    matched_partner_ = slot;
                    api.send(slot, TAG_ACCEPT, {});
                    // finish immediately; remaining proposers see the final output
                } else {
                    api.send(slot, TAG_REJECT, {});
                }
            }
            if (matched_partner_ >= 0) {
                api.finish({1, static_cast<long long>(matched_partner_),
                            static_cast<long long>(part_.own_h)});
                return;
            }
        }
        if (outstanding_slot_ >= 0) return;  // binding proposal in flight

        // Intra-set proposal windows: class c proposes during
        // [window_base + W(c-1), window_base + W*c), even offsets. Both the
        // class count and the retry budget are at most min(A, n-1) + 1.
        const long long classes = std::min<long long>(cfg_.A + 1, n_);
        const long long window_base = slot_base + cfg_.pick_slots + 2;
        const long long window = 2LL * classes;
        long long my_start = window_base + window * (pick_ - 1);
        if (round >= my_start && round < my_start + window && (round - my_start) % 2 == 0) {
            for (std::size_t i = 0; i < part_.nb.size(); ++i) {
                const auto& info = part_.nb[i];
                if (info.h != part_.own_h || info.final) continue;
                api.send(static_cast<int>(i), TAG_PROPOSE, {});
                outstanding_slot_ = static_cast<int>(i);
                return;
            }
            return;
        }
        if (round < window_base + window * classes) return;

        // Cross-set claims: one earlier-set candidate at a time.
        for (std::size_t i = 0; i < part_.nb.size(); ++i) {
            const auto& info = part_.nb[i];
            if (!nb_lower(i) || info.final) continue;
            api.send(static_cast<int>(i), TAG_PROPOSE, {});
            outstanding_slot_ = static_cast<int>(i);
            return;
        }
        // Unmatched and quiescent: final once every neighbor is resolved.
        for (const auto& info : part_.nb)
            if (!info.final) return;
        api.finish({0, -1, static_cast<long long>(part_.own_h)});
    }

    ExtConfig cfg_;
    int n_;
    PartitionLayer part_;
    long long cur_ = 0;
    std::vector<long long> nb_chi_;
    std::vector<long long> nb_pick_;
    long long pick_ = -1;
    std::set<long long> used_colors_;

    // edge coloring
    std::vector<long long> edge_color_;
    std::vector<std::set<long long>> used_nb_;
    std::vector<long long> outstanding_color_;
    std::set<long long> used_self_;
    bool used_grew_ = false;

    // matching
    int outstanding_slot_ = -1;
    int matched_partner_ = -1;

    std::vector<std::pair<int, long long>> proposals_;
};

class ExtensionProgram : public Program {
public:
    explicit ExtensionProgram(ExtConfig cfg) : cfg_(std::move(cfg)) {}
    std::unique_ptr<VertexProcess> spawn(const VertexContext& ctx) const override {
        return std::make_unique<ExtensionProcess>(ctx, cfg_);
    }

private:
    ExtConfig cfg_;
};

}  // namespace

ExtensionOutcome extend_from_partial(const Graph& g, const IdAssignment& ids,
                                     const PartitionParams& pparams, ExtensionKind kind,
                                     const RunOptions& opt) {
    ids.validate(g.n());
    ExtConfig cfg;
    cfg.kind = kind;
    cfg.A = pparams.A;
    cfg.delta = max_degree(g);
    cfg.sched = LinialSchedule::compute(ids.max_id(), pparams.A);
    cfg.pick_slots = cfg.sched.final_bound + 1;

    ExtensionProgram prog(cfg);
    ExecutionResult exec = run(g, ids, prog, opt);

    ExtensionOutcome out;
    out.kind = kind;
    const int n = g.n();
    std::vector<int> h(static_cast<std::size_t>(n), 0);

    std::map<std::pair<int, int>, std::size_t> edge_index;
    for (std::size_t e = 0; e < g.edges().size(); ++e) edge_index[g.edges()[e]] = e;
    auto eidx = [&](int a, int b) {
        return edge_index.at({std::min(a, b), std::max(a, b)});
    };

    switch (kind) {
        case ExtensionKind::echo_id:
        case ExtensionKind::vertex_coloring: {
            std::vector<long long> vals(static_cast<std::size_t>(n));
            for (int v = 0; v < n; ++v) {
                const auto& o = exec.outputs[static_cast<std::size_t>(v)];
                vals[static_cast<std::size_t>(v)] = o.at(0);
                h[static_cast<std::size_t>(v)] = static_cast<int>(o.at(1));
            }
            out.vertex_colors = Coloring::flat(std::move(vals));
            break;
        }
        case ExtensionKind::mis: {
            out.in_mis.assign(static_cast<std::size_t>(n), 0);
            for (int v = 0; v < n; ++v) {
                const auto& o = exec.outputs[static_cast<std::size_t>(v)];
                out.in_mis[static_cast<std::size_t>(v)] = o.at(0) == 1;
                h[static_cast<std::size_t>(v)] = static_cast<int>(o.at(1));
            }
            break;
        }
        case ExtensionKind::edge_coloring: {
            out.edge_colors.assign(g.edges().size(), -1);
            for (int v = 0; v < n; ++v) {
                const auto& o = exec.outputs[static_cast<std::size_t>(v)];
                h[static_cast<std::size_t>(v)] = static_cast<int>(o.at(0));
                for (std::size_t i = 1; i + 1 < o.size(); i += 2) {
                    int slot = static_cast<int>(o[i]);
                    long long color = o[i + 1];
                    int u = g.neighbors(v)[static_cast<std::size_t>(slot)];
                    out.edge_colors[eidx(v, u)] = color;
                }
            }
            break;
        }
        case ExtensionKind::matching: {
            out.matched.assign(g.edges().size(), 0);
            for (int v = 0; v < n; ++v) {
                const auto& o = exec.outputs[static_cast<std::size_t>(v)];
                h[static_cast<std::size_t>(v)] = static_cast<int>(o.at(2));
                if (o.at(0) == 1) {
                    int u = g.neighbors(v)[static_cast<std::size_t>(o.at(1))];
                    out.matched[eidx(v, u)] = 1;
                }
            }
            break;
        }
    }

    out.hp = HPartition::from_indices(std::move(h));
    out.exec = std::move(exec);

    switch (kind) {
        case ExtensionKind::vertex_coloring:
            out.prefix_violations = audit_prefix_validity(g, out.hp, &out.vertex_colors,
                                                          nullptr, nullptr, nullptr, 0);
            break;
        case ExtensionKind::mis:
            out.prefix_violations =
                audit_prefix_validity(g, out.hp, nullptr, &out.in_mis, nullptr, nullptr, 0);
            break;
        case ExtensionKind::edge_coloring:
            out.prefix_violations = audit_prefix_validity(
                g, out.hp, nullptr, nullptr, &out.edge_colors, nullptr, 2 * cfg.delta - 1);
            break;
        case ExtensionKind::matching:
            out.prefix_violations =
                audit_prefix_validity(g, out.hp, nullptr, nullptr, nullptr, &out.matched, 0);
            break;
        default:
            break;
    }
    return out;
}

ExtensionOutcome delta_plus1_coloring(const Graph& g, const IdAssignment& ids, int a,
                                      const Rational& epsilon, const RunOptions& opt) {
    return extend_from_partial(g, ids, PartitionParams(a, epsilon),
                               ExtensionKind::vertex_coloring, opt);
}

ExtensionOutcome mis(const Graph& g, const IdAssignment& ids, int a, const Rational& epsilon,
                     const RunOptions& opt) {
    return extend_from_partial(g, ids, PartitionParams(a, epsilon), ExtensionKind::mis, opt);
}

ExtensionOutcome edge_coloring_2d1(const Graph& g, const IdAssignment& ids, int a,
                                   const Rational& epsilon, const RunOptions& opt) {
    return extend_from_partial(g, ids, PartitionParams(a, epsilon),
                               ExtensionKind::edge_coloring, opt);
}

ExtensionOutcome maximal_matching(const Graph& g, const IdAssignment& ids, int a,
                                  const Rational& epsilon, const RunOptions& opt) {
    return extend_from_partial(g, ids, PartitionParams(a, epsilon), ExtensionKind::matching,
                               opt);
}

}  // namespace locavg
