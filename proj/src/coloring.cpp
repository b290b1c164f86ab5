#include "locavg/coloring.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace locavg {

int Coloring::palette_size() const {
    std::set<Color> distinct(colors.begin(), colors.end());
    return static_cast<int>(distinct.size());
}

long long Coloring::max_flat_value() const {
    long long mx = 0;
    for (const auto& c : colors)
        if (c.size() == 1) mx = std::max(mx, c[0]);
    return mx;
}

Coloring Coloring::flat(std::vector<long long> values) {
    Coloring c;
    c.colors.reserve(values.size());
    for (long long v : values) c.colors.push_back({v});
    return c;
}

bool Coloring::is_flat() const {
    for (const auto& c : colors)
        if (c.size() != 1) return false;
    return true;
}

std::vector<long long> Coloring::flat_values() const {
    std::vector<long long> out;
    out.reserve(colors.size());
    for (const auto& c : colors) {
        if (c.size() != 1) throw std::logic_error("Coloring: not flat");
        out.push_back(c[0]);
    }
    return out;
}

LinialRoundResult arb_linial_round(const Coloring& current,
                                   const std::vector<std::vector<int>>& parents,
                                   const CoverFreeFamily& family) {
    const std::size_t n = current.colors.size();
    if (parents.size() != n) throw std::invalid_argument("arb_linial_round: size mismatch");
    std::vector<long long> cur = current.flat_values();
    LinialRoundResult res;
    std::vector<long long> next(n);
    for (std::size_t v = 0; v < n; ++v) {
        if (static_cast<int>(parents[v].size()) > family.union_param)
            throw std::invalid_argument("arb_linial_round: more than A parents at vertex " +
                                        std::to_string(v));
        const auto& own = family.set_for(cur[v]);
        std::set<int> blocked;
        for (int u : parents[v]) {
            const auto& fu = family.set_for(cur[static_cast<std::size_t>(u)]);
            blocked.insert(fu.begin(), fu.end());
        }
        long long pick = -1;
        for (int x : own)
            if (!blocked.count(x)) { pick = x; break; }
        if (pick < 0) {
            pick = family.universe + cur[v];  // extended-universe fallback
            ++res.fallback_count;
        }
        next[v] = pick;
    }
    res.coloring = Coloring::flat(std::move(next));
    return res;
}

LinialFullResult arb_linial_full(const Graph& g_sub, const ForestDecomposition& fd,
                                 const IdAssignment& ids, int A) {
    const int n = g_sub.n();
    LinialFullResult res;
    if (n == 0) {
        res.coloring = Coloring{};
        return res;
    }
    std::vector<std::vector<int>> parents(static_cast<std::size_t>(n));
    for (const auto& e : fd.edges) parents[static_cast<std::size_t>(e.tail)].push_back(e.head);

    std::vector<long long> cur(static_cast<std::size_t>(n));
    long long p0 = 0;
    for (int v = 0; v < n; ++v) {
        cur[static_cast<std::size_t>(v)] = ids.id[static_cast<std::size_t>(v)] - 1;
        p0 = std::max(p0, ids.id[static_cast<std::size_t>(v)]);
    }

    LinialSchedule sched = LinialSchedule::compute(p0, A);
    Coloring col = Coloring::flat(cur);
    for (const auto& step : sched.steps) {
        CoverFreeFamily fam;
        fam.kind = CoverFreeFamily::Kind::polynomial;
        fam.union_param = A;
        fam.q = step.q;
        fam.d = step.d;
        fam.universe = step.universe;
        long long bound = res.iterations == 0 ? p0 : sched.steps[static_cast<std::size_t>(res.iterations - 1)].universe;
        fam.sets.reserve(static_cast<std::size_t>(bound));
        for (long long i = 0; i < bound; ++i) fam.sets.push_back(poly_cff_set(step.q, step.d, i));
        LinialRoundResult r = arb_linial_round(col, parents, fam);
        res.fallback_count += r.fallback_count;
        col = std::move(r.coloring);
        ++res.iterations;
    }
    res.coloring = std::move(col);
    res.palette_bound = sched.final_bound;
    res.c_over_A2 = static_cast<double>(sched.final_bound) / (static_cast<double>(A) * A);
    return res;
}

Coloring defective_coloring_mod(const Coloring& proper, long long p) {
    if (p < 1) throw std::invalid_argument("defective_coloring_mod: p >= 1 required");
    std::vector<long long> vals = proper.flat_values();
    for (auto& v : vals) v %= p;
    return Coloring::flat(std::move(vals));
}

ListColoringResult deg_plus1_list_coloring(const Graph& g_sub,
                                           const std::vector<std::vector<long long>>& lists,
                                           const IdAssignment& ids) {
    const int n = g_sub.n();
    if (static_cast<int>(lists.size()) != n)
        throw std::invalid_argument("deg_plus1_list_coloring: list count mismatch");
    for (int v = 0; v < n; ++v)
        if (static_cast<int>(lists[static_cast<std::size_t>(v)].size()) < g_sub.degree(v) + 1)
            throw std::invalid_argument("deg_plus1_list_coloring: list at vertex " +
                                        std::to_string(v) + " shorter than degree+1");
    ListColoringResult res;
    if (n == 0) return res;

    // Proper coloring via the reduction machinery on the higher-ID orientation.
    HPartition trivial = HPartition::from_indices(std::vector<int>(static_cast<std::size_t>(n), 1));
    ForestDecomposition fd = derive_forest_decomposition(g_sub, ids, trivial);
    int dmax = max_degree(g_sub);
    LinialFullResult linial = arb_linial_full(g_sub, fd, ids, std::max(dmax, 1));
    std::vector<long long> chi = linial.coloring.flat_values();

    // Class schedule, ascending chi; classes are independent sets.
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) order[static_cast<std::size_t>(v)] = v;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return chi[static_cast<std::size_t>(a)] < chi[static_cast<std::size_t>(b)];
    });

    std::vector<long long> out(static_cast<std::size_t>(n), -1);
    std::set<long long> classes;
    for (int v : order) {
        classes.insert(chi[static_cast<std::size_t>(v)]);
        std::set<long long> used;
        for (int u : g_sub.neighbors(v))
            if (out[static_cast<std::size_t>(u)] >= 0) used.insert(out[static_cast<std::size_t>(u)]);
        long long pick = -1;
        for (long long c : lists[static_cast<std::size_t>(v)])
            if (!used.count(c)) { pick = c; break; }
        if (pick < 0)
            throw std::runtime_error("deg_plus1_list_coloring: list exhausted at vertex " +
                                     std::to_string(v));
        out[static_cast<std::size_t>(v)] = pick;
    }
    res.coloring = Coloring::flat(std::move(out));
    res.rounds = static_cast<int>(classes.size());
    return res;
}

AcyclicRecolorResult acyclic_recolor(const Graph& g_sub,
                                     const std::vector<std::pair<int, int>>& oriented_edges,
                                     const std::vector<long long>& palette) {
    const int n = g_sub.n();
    AcyclicRecolorResult res;
    if (n == 0) return res;
    if (palette.empty()) throw std::invalid_argument("acyclic_recolor: empty palette");

    std::vector<std::vector<int>> parents(static_cast<std::size_t>(n));
    std::vector<std::vector<int>> children(static_cast<std::size_t>(n));
    std::vector<int> waiting(static_cast<std::size_t>(n), 0);  // unresolved parents
    for (auto [tail, head] : oriented_edges) {
        parents[static_cast<std::size_t>(tail)].push_back(head);
        children[static_cast<std::size_t>(head)].push_back(tail);
        ++waiting[static_cast<std::size_t>(tail)];
    }
    for (int v = 0; v < n; ++v)
        if (static_cast<int>(parents[static_cast<std::size_t>(v)].size()) >=
            static_cast<int>(palette.size()))
            throw std::invalid_argument("acyclic_recolor: out-degree " +
                                        std::to_string(parents[static_cast<std::size_t>(v)].size()) +
                                        " exceeds palette size - 1");

    std::vector<long long> out(static_cast<std::size_t>(n), -1);
    std::vector<int> depth(static_cast<std::size_t>(n), 0);
    std::vector<int> queue;
    for (int v = 0; v < n; ++v)
        if (waiting[static_cast<std::size_t>(v)] == 0) {
            queue.push_back(v);
            depth[static_cast<std::size_t>(v)] = 1;
        }
    std::size_t processed = 0;
    int rounds = 0;
    while (processed < queue.size()) {
        int v = queue[processed++];
        std::set<long long> used;
        for (int p : parents[static_cast<std::size_t>(v)]) used.insert(out[static_cast<std::size_t>(p)]);
        for (long long c : palette)
            if (!used.count(c)) { out[static_cast<std::size_t>(v)] = c; break; }
        rounds = std::max(rounds, depth[static_cast<std::size_t>(v)]);
        for (int ch : children[static_cast<std::size_t>(v)]) {
            depth[static_cast<std::size_t>(ch)] =
                std::max(depth[static_cast<std::size_t>(ch)], depth[static_cast<std::size_t>(v)] + 1);
            if (--waiting[static_cast<std::size_t>(ch)] == 0) queue.push_back(ch);
        }
    }
    if (static_cast<int>(processed) != n)
        throw std::invalid_argument("acyclic_recolor: orientation is cyclic");
    res.coloring = Coloring::flat(std::move(out));
    res.rounds = rounds;
    return res;
}

}  // namespace locavg
