#include "locavg/arbdefective.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "locavg/schemes.hpp"

namespace locavg {

int EtaParams::r_sets(int n) {
    double ll = std::log2(std::max(std::log2(static_cast<double>(std::max(n, 2))), 1.0));
    return std::max(1, static_cast<int>(std::ceil(2.0 * ll)));
}

namespace {

// floor(x * (num/den)) for integers
long long floor_mul(long long x, long long num, long long den) { return (x * num) / den; }

std::vector<std::vector<int>> group_by_hset(const HPartition& hp) {
    std::vector<std::vector<int>> groups(static_cast<std::size_t>(hp.ell) + 1);
    for (std::size_t v = 0; v < hp.index.size(); ++v)
        groups[static_cast<std::size_t>(hp.index[v])].push_back(static_cast<int>(v));
    return groups;
}

}  // namespace

PartialOrientation partial_orientation(const Graph& g_sub, const IdAssignment& ids,
                                       const HPartition& hsets, int t, int a_bound,
                                       const Rational& epsilon) {
    const int n = g_sub.n();
    if (static_cast<int>(hsets.index.size()) != n)
        throw std::invalid_argument("partial_orientation: invalid h-partition");
    if (t < 1) throw std::invalid_argument("partial_orientation: t >= 1 required");

    PartialOrientation po;
    po.defect_target = a_bound / t;
    std::vector<long long> psi(static_cast<std::size_t>(n), 0);
    long long palette = 0;

    // Per H-set: proper coloring via the reduction machinery on the higher-ID
    // orientation, bucketed into residue classes sized for the defect target.
    for (const auto& members : group_by_hset(hsets)) {
        if (members.empty()) continue;
        Graph sub = g_sub.induced_subgraph(members);
        IdAssignment sub_ids;
        for (int v : members) sub_ids.id.push_back(ids.id[static_cast<std::size_t>(v)]);
        HPartition trivial =
            HPartition::from_indices(std::vector<int>(members.size(), 1));
        ForestDecomposition fd = derive_forest_decomposition(sub, sub_ids, trivial);
        LinialFullResult proper =
            arb_linial_full(sub, fd, sub_ids, std::max(max_degree(sub), 1));
        long long m = std::max<long long>(proper.palette_bound, 1);
        long long p = (m + po.defect_target) / (po.defect_target + 1);  // ceil(m/(D+1))
        Coloring bucketed = defective_coloring_mod(proper.coloring, p);
        auto vals = bucketed.flat_values();
        for (std::size_t i = 0; i < members.size(); ++i)
            psi[static_cast<std::size_t>(members[i])] = vals[i];
        palette = std::max(palette, p);
    }
    po.psi = Coloring::flat(psi);
    po.psi_palette = palette;

    for (auto [u, v] : g_sub.edges()) {
        int hu = hsets.index[static_cast<std::size_t>(u)];
        int hv = hsets.index[static_cast<std::size_t>(v)];
        if (hu != hv) {
            po.oriented.push_back(hu < hv ? std::pair(u, v) : std::pair(v, u));
        } else if (psi[static_cast<std::size_t>(u)] != psi[static_cast<std::size_t>(v)]) {
            po.oriented.push_back(psi[static_cast<std::size_t>(u)] < psi[static_cast<std::size_t>(v)]
                                      ? std::pair(u, v)
                                      : std::pair(v, u));
        } else {
            po.unoriented.emplace_back(u, v);
        }
    }
    return po;
}

namespace {

ArbdefectiveResult arbdefective_core(const Graph& g_sub, const IdAssignment& ids, int k, int t,
                                     HPartition hsets, int a_bound, const Rational& epsilon) {
    if (k < 1) throw std::invalid_argument("arbdefective_coloring: k >= 1 required");
    const int n = g_sub.n();
    ArbdefectiveResult res;
    res.hsets = std::move(hsets);
    res.po = partial_orientation(g_sub, ids, res.hsets, t, a_bound, epsilon);

    // Vertices wait for all parents under the partial orientation, then take
    // the palette color used by the fewest parents (smallest color wins ties).
    std::vector<std::vector<int>> parents(static_cast<std::size_t>(n));
    std::vector<std::vector<int>> children(static_cast<std::size_t>(n));
    std::vector<int> waiting(static_cast<std::size_t>(n), 0);
    for (auto [tail, head] : res.po.oriented) {
        parents[static_cast<std::size_t>(tail)].push_back(head);
        children[static_cast<std::size_t>(head)].push_back(tail);
        ++waiting[static_cast<std::size_t>(tail)];
    }
    std::vector<long long> phi(static_cast<std::size_t>(n), 0);
    std::vector<int> depth(static_cast<std::size_t>(n), 1);
    std::vector<int> queue;
    for (int v = 0; v < n; ++v)
        if (waiting[static_cast<std::size_t>(v)] == 0) queue.push_back(v);
    std::size_t done = 0;
    int rounds = n > 0 ? 1 : 0;
    while (done < queue.size()) {
        int v = queue[done++];
        std::vector<int> usage(static_cast<std::size_t>(k) + 1, 0);
        for (int p : parents[static_cast<std::size_t>(v)])
            ++usage[static_cast<std::size_t>(phi[static_cast<std::size_t>(p)])];
        int best = 1;
        for (int c = 2; c <= k; ++c)
            if (usage[static_cast<std::size_t>(c)] < usage[static_cast<std::size_t>(best)]) best = c;
        phi[static_cast<std::size_t>(v)] = best;
        rounds = std::max(rounds, depth[static_cast<std::size_t>(v)]);
        for (int ch : children[static_cast<std::size_t>(v)]) {
            depth[static_cast<std::size_t>(ch)] =
                std::max(depth[static_cast<std::size_t>(ch)], depth[static_cast<std::size_t>(v)] + 1);
            if (--waiting[static_cast<std::size_t>(ch)] == 0) queue.push_back(ch);
        }
    }
    if (static_cast<int>(done) != n)
        throw std::runtime_error("arbdefective_coloring: partial orientation is cyclic");
    res.phi = Coloring::flat(phi);
    res.rounds = rounds;

    // Class certificates: retained same-color parent edges plus unoriented
    // same-psi edges directed to the higher ID; (H-index, psi, ID) ascends
    // along every certificate path.
    res.class_certificates.assign(static_cast<std::size_t>(k) + 1, {});
    std::vector<int> outdeg(static_cast<std::size_t>(n), 0);
    for (auto [tail, head] : res.po.oriented)
        if (phi[static_cast<std::size_t>(tail)] == phi[static_cast<std::size_t>(head)]) {
            res.class_certificates[static_cast<std::size_t>(phi[static_cast<std::size_t>(tail)])]
                .emplace_back(tail, head);
            ++outdeg[static_cast<std::size_t>(tail)];
        }
    for (auto [u, v] : res.po.unoriented)
        if (phi[static_cast<std::size_t>(u)] == phi[static_cast<std::size_t>(v)]) {
            bool u_tail = ids.id[static_cast<std::size_t>(u)] < ids.id[static_cast<std::size_t>(v)];
            int tail = u_tail ? u : v, head = u_tail ? v : u;
            res.class_certificates[static_cast<std::size_t>(phi[static_cast<std::size_t>(tail)])]
                .emplace_back(tail, head);
            ++outdeg[static_cast<std::size_t>(tail)];
        }
    for (int v = 0; v < n; ++v)
        res.cert_max_out_degree = std::max(res.cert_max_out_degree, outdeg[static_cast<std::size_t>(v)]);

    PartitionParams pp(std::max(a_bound, 1), epsilon);
    Rational b = Rational(pp.A, t) +
                 Rational((2 * epsilon.den + epsilon.num) * pp.A, epsilon.den * k);
    res.b_bound = b.num / b.den;
    if (res.cert_max_out_degree > res.b_bound)
        throw std::runtime_error("arbdefective_coloring: certificate exceeds the class bound");
    return res;
}

}  // namespace

ArbdefectiveResult arbdefective_coloring(const Graph& g_sub, const IdAssignment& ids, int k,
                                         int t, int a_bound, const Rational& epsilon) {
    PartitionParams pp(std::max(a_bound, 1), epsilon);
    auto [hp, exec] = procedure_partition(g_sub, ids, pp);
    (void)exec;
    return arbdefective_core(g_sub, ids, k, t, std::move(hp), a_bound, epsilon);
}

ArbdefectiveResult h_arbdefective_coloring(const Graph& g_sub, const IdAssignment& ids, int k,
                                           int t, const HPartition& hsets, int a_bound,
                                           const Rational& epsilon) {
    return arbdefective_core(g_sub, ids, k, t, hsets, a_bound, epsilon);
}

VerificationReport verify_arbdefective(const Graph& g_sub, const Coloring& phi, long long b,
                                       const std::vector<std::vector<std::pair<int, int>>>*
                                           certificates) {
    VerificationReport rep;
    auto colors = phi.flat_values();
    std::map<long long, std::vector<int>> classes;
    for (std::size_t v = 0; v < colors.size(); ++v)
        classes[colors[v]].push_back(static_cast<int>(v));

    for (const auto& [color, members] : classes) {
        std::vector<int> pos(static_cast<std::size_t>(g_sub.n()), -1);
        for (std::size_t i = 0; i < members.size(); ++i)
            pos[static_cast<std::size_t>(members[i])] = static_cast<int>(i);
        Graph cls = g_sub.induced_subgraph(members);
        if (cls.n() <= 14) {
            int arb = exact_arboricity(cls);
            if (arb > b) {
                rep.violations.push_back("class " + std::to_string(color) + " has arboricity " +
                                         std::to_string(arb) + " > " + std::to_string(b));
            }
            continue;
        }
        if (!certificates || static_cast<std::size_t>(color) >= certificates->size()) {
            rep.violations.push_back("class " + std::to_string(color) +
                                     " too large for the oracle and no certificate given");
            continue;
        }
        const auto& cert = (*certificates)[static_cast<std::size_t>(color)];
        if (cert.size() != static_cast<std::size_t>(cls.m())) {
            rep.violations.push_back("class " + std::to_string(color) +
                                     " certificate does not cover the class edges");
            continue;
        }
        std::vector<int> outdeg(members.size(), 0);
        std::vector<int> indeg(members.size(), 0);
        std::vector<std::vector<int>> succ(members.size());
        bool bad = false;
        for (auto [tail, head] : cert) {
            int lt = pos[static_cast<std::size_t>(tail)], lh = pos[static_cast<std::size_t>(head)];
            if (lt < 0 || lh < 0 || !cls.has_edge(lt, lh)) { bad = true; break; }
            ++outdeg[static_cast<std::size_t>(lt)];
            ++indeg[static_cast<std::size_t>(lh)];
            succ[static_cast<std::size_t>(lt)].push_back(lh);
        }
        if (bad) {
            rep.violations.push_back("class " + std::to_string(color) + " certificate edge invalid");
            continue;
        }
        for (std::size_t i = 0; i < members.size(); ++i)
            if (outdeg[i] > b) {
                rep.violations.push_back("class " + std::to_string(color) +
                                         " certificate out-degree exceeds " + std::to_string(b));
                bad = true;
                break;
            }
        if (bad) continue;
        std::vector<int> queue;
        for (std::size_t i = 0; i < members.size(); ++i)
            if (indeg[i] == 0) queue.push_back(static_cast<int>(i));
        std::size_t done = 0;
        while (done < queue.size()) {
            int v = queue[done++];
            for (int u : succ[static_cast<std::size_t>(v)])
                if (--indeg[static_cast<std::size_t>(u)] == 0) queue.push_back(u);
        }
        if (done != members.size())
            rep.violations.push_back("class " + std::to_string(color) + " certificate is cyclic");
    }
    return rep;
}

int legal_refinement_count(long long a_bound, long long p, const Rational& epsilon) {
    int iters = 0;
    long long alpha = a_bound;
    while (alpha > p) {
        alpha = floor_mul(alpha, 3 * epsilon.den + epsilon.num, epsilon.den * p);
        ++iters;
    }
    return iters;
}

LegalColoringResult legal_coloring(const Graph& g_sub, const IdAssignment& ids, int a_bound,
                                   long long p, const Rational& epsilon) {
    if (p < 2) throw std::invalid_argument("legal_coloring: p >= 2 required");
    LegalColoringResult res;
    const int n = g_sub.n();
    res.coloring.colors.assign(static_cast<std::size_t>(n), {});
    if (n == 0) return res;

    struct Part {
        std::vector<int> vertices;  // g_sub indices
    };
    std::vector<Part> parts{{std::vector<int>(static_cast<std::size_t>(n))}};
    std::iota(parts[0].vertices.begin(), parts[0].vertices.end(), 0);
    long long alpha = a_bound;

    while (alpha > p) {
        std::vector<Part> refined;
        for (const auto& part : parts) {
            if (part.vertices.empty()) {
                for (long long j = 0; j < p; ++j) refined.push_back({});
                continue;
            }
            Graph sub = g_sub.induced_subgraph(part.vertices);
            IdAssignment sub_ids;
            for (int v : part.vertices) sub_ids.id.push_back(ids.id[static_cast<std::size_t>(v)]);
            ArbdefectiveResult arb = arbdefective_coloring(
                sub, sub_ids, static_cast<int>(p), static_cast<int>(p),
                static_cast<int>(alpha), epsilon);
            auto phi = arb.phi.flat_values();
            std::vector<Part> buckets(static_cast<std::size_t>(p));
            for (std::size_t i = 0; i < part.vertices.size(); ++i)
                buckets[static_cast<std::size_t>(phi[i] - 1)].vertices.push_back(
                    part.vertices[i]);
            for (auto& b : buckets) refined.push_back(std::move(b));
        }
        parts = std::move(refined);
        alpha = floor_mul(alpha, 3 * epsilon.den + epsilon.num, epsilon.den * p);
        ++res.refinement_iterations;
    }

    long long band = floor_mul(std::max<long long>(alpha, 0), 2 * epsilon.den + epsilon.num,
                               epsilon.den) + 1;  // floor((2+eps)*alpha) + 1
    long long index = 0;
    std::vector<long long> out(static_cast<std::size_t>(n), 0);
    for (const auto& part : parts) {
        long long offset = index * band;
        ++index;
        if (part.vertices.empty()) continue;
        Graph sub = g_sub.induced_subgraph(part.vertices);
        IdAssignment sub_ids;
        for (int v : part.vertices) sub_ids.id.push_back(ids.id[static_cast<std::size_t>(v)]);
        PartitionParams pp(std::max<int>(static_cast<int>(alpha), 1), epsilon);
        auto [hp, exec] = procedure_partition(sub, sub_ids, pp);
        (void)exec;
        ForestDecomposition fd = derive_forest_decomposition(sub, sub_ids, hp);
        std::vector<std::pair<int, int>> oriented;
        for (const auto& e : fd.edges) oriented.emplace_back(e.tail, e.head);
        std::vector<long long> palette(static_cast<std::size_t>(band));
        std::iota(palette.begin(), palette.end(), offset + 1);
        AcyclicRecolorResult rec = acyclic_recolor(sub, oriented, palette);
        auto vals = rec.coloring.flat_values();
        for (std::size_t i = 0; i < part.vertices.size(); ++i)
            out[static_cast<std::size_t>(part.vertices[i])] = vals[i];
    }
    res.coloring = Coloring::flat(out);
    std::set<long long> used(out.begin(), out.end());
    res.palette_used = static_cast<long long>(used.size());
    return res;
}

namespace {

struct EtaContext {
    const EtaParams& params;
    int max_depth_allowed;
    int observed_depth = 0;
    std::vector<std::string> audit;
};

Coloring eta_recurse(const Graph& g_sub, const IdAssignment& ids, int a, int depth,
                     EtaContext& ctx) {
    const int n = g_sub.n();
    Coloring result;
    result.colors.assign(static_cast<std::size_t>(n), {});
    if (n == 0) return result;
    ctx.observed_depth = std::max(ctx.observed_depth, depth);
    if (depth > ctx.max_depth_allowed)
        throw std::runtime_error("one_plus_eta_arb_col: recursion depth exceeded");

    const int C = ctx.params.C;
    if (a < C) {
        if (n == 1) {
            result.colors[0] = {0};
            return result;
        }
        SegmentationResult base = color_ka2(g_sub, ids, std::max(a, 1), ctx.params.epsilon, 2);
        auto vals = base.coloring.coloring.flat_values();
        for (int v = 0; v < n; ++v) result.colors[static_cast<std::size_t>(v)] = {vals[static_cast<std::size_t>(v)]};
        return result;
    }

    PartitionParams pp(a, ctx.params.epsilon);
    auto [hp, exec] = procedure_partition(g_sub, ids, pp);
    (void)exec;
    int r = EtaParams::r_sets(n);

    std::vector<int> in_h, rest;
    for (int v = 0; v < n; ++v)
        (hp.index[static_cast<std::size_t>(v)] <= r ? in_h : rest).push_back(v);
    ctx.audit.push_back("depth " + std::to_string(depth) + ": a=" + std::to_string(a) +
                        " |H|=" + std::to_string(in_h.size()) +
                        " |V\\H|=" + std::to_string(rest.size()));

    if (!rest.empty()) {
        Graph sub = g_sub.induced_subgraph(rest);
        IdAssignment sub_ids;
        for (int v : rest) sub_ids.id.push_back(ids.id[static_cast<std::size_t>(v)]);
        LegalColoringResult legal =
            legal_coloring(sub, sub_ids, a, ctx.params.p_legal(), ctx.params.epsilon);
        auto vals = legal.coloring.flat_values();
        for (std::size_t i = 0; i < rest.size(); ++i)
            result.colors[static_cast<std::size_t>(rest[i])] = {1, vals[i]};
    }

    if (!in_h.empty()) {
        Graph sub = g_sub.induced_subgraph(in_h);
        IdAssignment sub_ids;
        std::vector<int> sub_h;
        for (int v : in_h) {
            sub_ids.id.push_back(ids.id[static_cast<std::size_t>(v)]);
            sub_h.push_back(hp.index[static_cast<std::size_t>(v)]);
        }
        ArbdefectiveResult arb = h_arbdefective_coloring(
            sub, sub_ids, ctx.params.kt(), ctx.params.kt(),
            HPartition::from_indices(sub_h), a, ctx.params.epsilon);
        VerificationReport rep =
            verify_arbdefective(sub, arb.phi, a / C, &arb.class_certificates);
        if (!rep.ok())
            throw std::runtime_error("one_plus_eta_arb_col: arbdefective verification failed: " +
                                     rep.violations.front());
        auto phi = arb.phi.flat_values();
        for (int j = 1; j <= ctx.params.kt(); ++j) {
            std::vector<int> cls;
            for (std::size_t i = 0; i < in_h.size(); ++i)
                if (phi[i] == j) cls.push_back(static_cast<int>(i));
            if (cls.empty()) continue;
            Graph cls_graph = sub.induced_subgraph(cls);
            IdAssignment cls_ids;
            for (int v : cls) cls_ids.id.push_back(sub_ids.id[static_cast<std::size_t>(v)]);
            Coloring rec = eta_recurse(cls_graph, cls_ids, a / C, depth + 1, ctx);
            for (std::size_t i = 0; i < cls.size(); ++i) {
                Color c = {2, j};
                const Color& tail = rec.colors[i];
                c.insert(c.end(), tail.begin(), tail.end());
                result.colors[static_cast<std::size_t>(in_h[static_cast<std::size_t>(cls[i])])] =
                    std::move(c);
            }
        }
    }
    return result;
}

}  // namespace

OnePlusEtaResult one_plus_eta_arb_col(const Graph& g, const IdAssignment& ids, int a,
                                      const EtaParams& params) {
    if (a < 1) throw std::invalid_argument("one_plus_eta_arb_col: a >= 1 required");
    EtaContext ctx{params,
                   static_cast<int>(std::ceil(std::log(static_cast<double>(std::max(a, 1))) /
                                              std::log(static_cast<double>(params.C)))) + 1,
                   0,
                   {}};
    OnePlusEtaResult res;
    res.coloring = eta_recurse(g, ids, a, 1, ctx);
    res.depth = ctx.observed_depth;
    res.palette = res.coloring.palette_size();
    res.prefix_audit = std::move(ctx.audit);
    return res;
}

}  // namespace locavg
