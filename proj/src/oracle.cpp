#include "locavg/oracle.hpp"

#include <algorithm>

namespace locavg {

Verdict verify_proper_coloring(const Graph& g, const Coloring& coloring) {
    Verdict v;
    if (static_cast<int>(coloring.colors.size()) != g.n()) {
        v.fail("coloring not total");
        return v;
    }
    for (auto [a, b] : g.edges())
        if (coloring.colors[static_cast<std::size_t>(a)] ==
            coloring.colors[static_cast<std::size_t>(b)]) {
            v.fail("edge (" + std::to_string(a) + "," + std::to_string(b) + ") monochromatic");
            if (v.reasons.size() > 8) return v;
        }
    return v;
}

Verdict verify_edge_coloring(const Graph& g, const std::vector<long long>& edge_colors,
                             long long max_color) {
    Verdict v;
    if (edge_colors.size() != g.edges().size()) {
        v.fail("edge coloring not total");
        return v;
    }
    for (std::size_t i = 0; i < edge_colors.size(); ++i)
        if (edge_colors[i] < 1 || edge_colors[i] > max_color) {
            v.fail("edge " + std::to_string(i) + " color " + std::to_string(edge_colors[i]) +
                   " outside [1," + std::to_string(max_color) + "]");
            return v;
        }
    // incident conflicts
    std::vector<std::vector<std::pair<long long, std::size_t>>> at(
        static_cast<std::size_t>(g.n()));
    for (std::size_t i = 0; i < g.edges().size(); ++i) {
        auto [a, b] = g.edges()[i];
        at[static_cast<std::size_t>(a)].emplace_back(edge_colors[i], i);
        at[static_cast<std::size_t>(b)].emplace_back(edge_colors[i], i);
    }
    for (int w = 0; w < g.n(); ++w) {
        auto& lst = at[static_cast<std::size_t>(w)];
        std::sort(lst.begin(), lst.end());
        for (std::size_t i = 1; i < lst.size(); ++i)
            if (lst[i].first == lst[i - 1].first) {
                v.fail("vertex " + std::to_string(w) + " has two incident edges colored " +
                       std::to_string(lst[i].first));
                return v;
            }
    }
    return v;
}

Verdict verify_mis(const Graph& g, const std::vector<char>& in_set) {
    Verdict v;
    if (static_cast<int>(in_set.size()) != g.n()) {
        v.fail("mis state not total");
        return v;
    }
    for (auto [a, b] : g.edges())
        if (in_set[static_cast<std::size_t>(a)] && in_set[static_cast<std::size_t>(b)]) {
            v.fail("adjacent vertices " + std::to_string(a) + "," + std::to_string(b) +
                   " both in the set");
            return v;
        }
    for (int w = 0; w < g.n(); ++w) {
        if (in_set[static_cast<std::size_t>(w)]) continue;
        bool dominated = false;
        for (int u : g.neighbors(w))
            if (in_set[static_cast<std::size_t>(u)]) { dominated = true; break; }
        if (!dominated) {
            v.fail("vertex " + std::to_string(w) + " could be added (not maximal)");
            return v;
        }
    }
    return v;
}

Verdict verify_matching(const Graph& g, const std::vector<char>& matched) {
    Verdict v;
    if (matched.size() != g.edges().size()) {
        v.fail("matching not total");
        return v;
    }
    std::vector<char> covered(static_cast<std::size_t>(g.n()), 0);
    for (std::size_t i = 0; i < matched.size(); ++i) {
        if (!matched[i]) continue;
        auto [a, b] = g.edges()[i];
        if (covered[static_cast<std::size_t>(a)] || covered[static_cast<std::size_t>(b)]) {
            v.fail("matched edges share vertex at edge " + std::to_string(i));
            return v;
        }
        covered[static_cast<std::size_t>(a)] = covered[static_cast<std::size_t>(b)] = 1;
    }
    for (std::size_t i = 0; i < matched.size(); ++i) {
        auto [a, b] = g.edges()[i];
        if (!covered[static_cast<std::size_t>(a)] && !covered[static_cast<std::size_t>(b)]) {
            v.fail("edge " + std::to_string(i) + " could be added (not maximal)");
            return v;
        }
    }
    return v;
}

std::vector<std::string> audit_prefix_validity(const Graph& g, const HPartition& hp,
                                               const Coloring* vertex_colors,
                                               const std::vector<char>* in_mis,
                                               const std::vector<long long>* edge_colors,
                                               const std::vector<char>* matched,
                                               long long edge_palette_max) {
    std::vector<std::string> violations;
    for (int i = 1; i <= hp.ell; ++i) {
        std::vector<int> prefix;
        for (int v = 0; v < g.n(); ++v)
            if (hp.index[static_cast<std::size_t>(v)] <= i) prefix.push_back(v);
        Graph sub = g.induced_subgraph(prefix);

        if (vertex_colors) {
            Coloring c;
            for (int v : prefix) c.colors.push_back(vertex_colors->colors[static_cast<std::size_t>(v)]);
            Verdict verdict = verify_proper_coloring(sub, c);
            if (!verdict.pass)
                violations.push_back("prefix " + std::to_string(i) + ": " + verdict.reasons[0]);
        }
        if (in_mis) {
            std::vector<char> s;
            for (int v : prefix) s.push_back((*in_mis)[static_cast<std::size_t>(v)]);
            Verdict verdict = verify_mis(sub, s);
            if (!verdict.pass)
                violations.push_back("prefix " + std::to_string(i) + ": " + verdict.reasons[0]);
        }
        if (edge_colors || matched) {
            std::vector<int> pos(static_cast<std::size_t>(g.n()), -1);
            for (std::size_t j = 0; j < prefix.size(); ++j)
                pos[static_cast<std::size_t>(prefix[j])] = static_cast<int>(j);
            std::vector<long long> sub_colors;
            std::vector<char> sub_matched;
            for (std::size_t e = 0; e < g.edges().size(); ++e) {
                auto [a, b] = g.edges()[e];
                if (pos[static_cast<std::size_t>(a)] < 0 || pos[static_cast<std::size_t>(b)] < 0)
                    continue;
                if (edge_colors) sub_colors.push_back((*edge_colors)[e]);
                if (matched) sub_matched.push_back((*matched)[e]);
            }
            if (edge_colors) {
                Verdict verdict = verify_edge_coloring(sub, sub_colors, edge_palette_max);
                if (!verdict.pass)
                    violations.push_back("prefix " + std::to_string(i) + ": " + verdict.reasons[0]);
            }
            if (matched) {
                Verdict verdict = verify_matching(sub, sub_matched);
                if (!verdict.pass)
                    violations.push_back("prefix " + std::to_string(i) + ": " + verdict.reasons[0]);
            }
        }
    }
    return violations;
}

}  // namespace locavg
