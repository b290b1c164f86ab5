#include "locavg/graph.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "locavg/rng.hpp"

namespace locavg {

Graph::Graph(int n, std::vector<std::pair<int, int>> edges) : n_(n) {
    if (n < 0) throw std::invalid_argument("Graph: negative vertex count");
    for (auto& [u, v] : edges) {
        if (u == v) throw std::invalid_argument("Graph: self-loop at vertex " + std::to_string(u));
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw std::invalid_argument("Graph: vertex index out of range");
        if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    edges_ = std::move(edges);
    adj_.assign(static_cast<std::size_t>(n), {});
    for (auto [u, v] : edges_) {
        adj_[static_cast<std::size_t>(u)].push_back(v);
        adj_[static_cast<std::size_t>(v)].push_back(u);
    }
    for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
}

bool Graph::has_edge(int u, int v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v) return false;
    const auto& nb = adj_[static_cast<std::size_t>(u)];
    return std::binary_search(nb.begin(), nb.end(), v);
}

Graph Graph::induced_subgraph(const std::vector<int>& vertices,
                              std::vector<int>* index_map) const {
    std::vector<int> pos(static_cast<std::size_t>(n_), -1);
    for (std::size_t i = 0; i < vertices.size(); ++i)
        pos[static_cast<std::size_t>(vertices[i])] = static_cast<int>(i);
    std::vector<std::pair<int, int>> sub;
    for (auto [u, v] : edges_) {
        int pu = pos[static_cast<std::size_t>(u)], pv = pos[static_cast<std::size_t>(v)];
        if (pu >= 0 && pv >= 0) sub.emplace_back(pu, pv);
    }
    if (index_map) *index_map = vertices;
    return Graph(static_cast<int>(vertices.size()), std::move(sub));
}

IdAssignment IdAssignment::identity(int n) {
    IdAssignment ids;
    ids.id.resize(static_cast<std::size_t>(n));
    std::iota(ids.id.begin(), ids.id.end(), 1LL);
    return ids;
}

IdAssignment IdAssignment::permuted(int n, std::uint64_t seed) {
    IdAssignment ids = identity(n);
    RngStream rng(splitmix64(seed));
    for (int i = n - 1; i > 0; --i) {
        int j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(i) + 1));
        std::swap(ids.id[static_cast<std::size_t>(i)], ids.id[static_cast<std::size_t>(j)]);
    }
    return ids;
}

void IdAssignment::validate(int n) const {
    if (static_cast<int>(id.size()) != n)
        throw std::invalid_argument("IdAssignment: wrong length");
    std::set<long long> seen;
    for (long long x : id) {
        if (x <= 0) throw std::invalid_argument("IdAssignment: ids must be positive");
        if (!seen.insert(x).second) throw std::invalid_argument("IdAssignment: duplicate id");
    }
}

long long IdAssignment::max_id() const {
    long long mx = 0;
    for (long long x : id) mx = std::max(mx, x);
    return mx;
}

Graph parse_edge_list(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    long long n = -1, m = -1;
    std::vector<std::pair<int, int>> edges;
    long long seen = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        if (n < 0) {
            if (!(ls >> n >> m) || n < 0 || m < 0)
                throw std::runtime_error("edge list: bad header at line " + std::to_string(lineno));
            continue;
        }
        long long u, v;
        if (!(ls >> u >> v))
            throw std::runtime_error("edge list: parse error at line " + std::to_string(lineno));
        if (u == v)
            throw std::runtime_error("edge list: self-loop at line " + std::to_string(lineno));
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw std::runtime_error("edge list: vertex index out of range at line " +
                                     std::to_string(lineno));
        edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
        ++seen;
    }
    if (n < 0) throw std::runtime_error("edge list: missing header");
    if (seen != m)
        throw std::runtime_error("edge list: header promises " + std::to_string(m) +
                                 " edges, found " + std::to_string(seen));
    return Graph(static_cast<int>(n), std::move(edges));
}

Graph load_edge_list(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::stringstream buf;
    buf << f.rdbuf();
    return parse_edge_list(buf.str());
}

void write_edge_list(const Graph& g, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << g.n() << " " << g.m() << "\n";
    for (auto [u, v] : g.edges()) f << u << " " << v << "\n";
}

Graph gen_ring(int n) {
    if (n < 3) throw std::invalid_argument("gen_ring: need n >= 3");
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    return Graph(n, std::move(edges));
}

Graph gen_forest_union(int n, int a, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("gen_forest_union: need n >= 1");
    if (a < 1) throw std::invalid_argument("gen_forest_union: need a >= 1");
    std::vector<std::pair<int, int>> edges;
    if (n >= 2) {
        for (int f = 0; f < a; ++f) {
            RngStream rng(hash_combine(seed, static_cast<std::uint64_t>(f) + 0x5151));
            if (n == 2) {
                edges.emplace_back(0, 1);
                continue;
            }
            // Uniform random labelled tree via a Pruefer sequence.
            std::vector<int> pruefer(static_cast<std::size_t>(n - 2));
            for (auto& x : pruefer) x = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
            std::vector<int> deg(static_cast<std::size_t>(n), 1);
            for (int x : pruefer) ++deg[static_cast<std::size_t>(x)];
            std::vector<int> leaves;
            for (int v = 0; v < n; ++v)
                if (deg[static_cast<std::size_t>(v)] == 1) leaves.push_back(v);
            std::make_heap(leaves.begin(), leaves.end(), std::greater<>());
            for (int x : pruefer) {
                std::pop_heap(leaves.begin(), leaves.end(), std::greater<>());
                int leaf = leaves.back();
                leaves.pop_back();
                edges.emplace_back(leaf, x);
                if (--deg[static_cast<std::size_t>(x)] == 1) {
                    leaves.push_back(x);
                    std::push_heap(leaves.begin(), leaves.end(), std::greater<>());
                }
            }
            std::pop_heap(leaves.begin(), leaves.end(), std::greater<>());
            int b = leaves.back();
            leaves.pop_back();
            edges.emplace_back(leaves.front(), b);
        }
    }
    return Graph(n, std::move(edges));  // duplicates collapse in the constructor
}

Graph gen_random_graph(int n, long long m, std::uint64_t seed) {
    if (n < 0) throw std::invalid_argument("gen_random_graph: negative n");
    long long total = static_cast<long long>(n) * (n - 1) / 2;
    if (m < 0 || m > total)
        throw std::invalid_argument("gen_random_graph: m exceeds n(n-1)/2");
    RngStream rng(splitmix64(seed ^ 0xabcdef12345ULL));
    std::vector<std::pair<int, int>> edges;
    if (2 * m > total) {
        // Dense request: enumerate all pairs and take a random prefix.
        std::vector<std::pair<int, int>> all;
        all.reserve(static_cast<std::size_t>(total));
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) all.emplace_back(u, v);
        for (std::size_t i = all.size(); i > 1; --i)
            std::swap(all[i - 1], all[rng.next_below(i)]);
        edges.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(m));
    } else {
        std::set<std::pair<int, int>> chosen;
        while (static_cast<long long>(chosen.size()) < m) {
            int u = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
            int v = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
            if (u == v) continue;
            if (u > v) std::swap(u, v);
            chosen.emplace(u, v);
        }
        edges.assign(chosen.begin(), chosen.end());
    }
    return Graph(n, std::move(edges));
}

int exact_arboricity(const Graph& g) {
    if (g.n() > 16) throw std::invalid_argument("exact_arboricity: n > 16 exceeds oracle guard");
    if (g.m() == 0) return 0;
    int n = g.n();
    std::vector<std::uint32_t> adj_mask(static_cast<std::size_t>(n), 0);
    for (auto [u, v] : g.edges()) {
        adj_mask[static_cast<std::size_t>(u)] |= 1u << v;
        adj_mask[static_cast<std::size_t>(v)] |= 1u << u;
    }
    int best = 1;
    for (std::uint32_t s = 1; s < (1u << n); ++s) {
        int size = __builtin_popcount(s);
        if (size < 2) continue;
        int e2 = 0;
        for (int v = 0; v < n; ++v)
            if (s & (1u << v)) e2 += __builtin_popcount(adj_mask[static_cast<std::size_t>(v)] & s);
        int e = e2 / 2;
        int bound = (e + size - 2) / (size - 1);  // ceil(e / (size-1))
        best = std::max(best, bound);
    }
    return best;
}

int max_degree(const Graph& g) {
    int mx = 0;
    for (int v = 0; v < g.n(); ++v) mx = std::max(mx, g.degree(v));
    return mx;
}

}  // namespace locavg
