#ifndef LOCAVG_GRAPH_HPP
#define LOCAVG_GRAPH_HPP

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace locavg {

// Simple undirected graph on dense vertex indices 0..n-1.
// Invariants enforced on construction: no self-loops, no parallel edges,
// adjacency consistent with the edge set.
class Graph {
public:
    Graph() = default;
    Graph(int n, std::vector<std::pair<int, int>> edges);

    int n() const { return n_; }
    int m() const { return static_cast<int>(edges_.size()); }

    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    std::span<const int> neighbors(int v) const {
        return {adj_[static_cast<std::size_t>(v)].data(), adj_[static_cast<std::size_t>(v)].size()};
    }
    int degree(int v) const { return static_cast<int>(adj_[static_cast<std::size_t>(v)].size()); }
    bool has_edge(int u, int v) const;

    Graph induced_subgraph(const std::vector<int>& vertices,
                           std::vector<int>* index_map = nullptr) const;

private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;   // canonical u < v
    std::vector<std::vector<int>> adj_;        // sorted neighbor lists
};

// Distinct positive per-vertex identifiers. Kept apart from topology so
// adversarial ID sweeps never touch the graph itself.
struct IdAssignment {
    std::vector<long long> id;

    static IdAssignment identity(int n);          // ids 1..n
    static IdAssignment permuted(int n, std::uint64_t seed);
    void validate(int n) const;
    long long max_id() const;
};

// --- I/O -------------------------------------------------------------------

// Edge-list format: first line "n m"; then m lines "u v" (0 <= u,v < n, u != v);
// lines starting with '#' are comments. Duplicate edges collapse.
Graph load_edge_list(const std::string& path);
Graph parse_edge_list(const std::string& text);
void write_edge_list(const Graph& g, const std::string& path);

// --- Generators --------------------------------------------------------------

Graph gen_ring(int n);
Graph gen_forest_union(int n, int a, std::uint64_t seed);
Graph gen_random_graph(int n, long long m, std::uint64_t seed);

// --- Oracles -----------------------------------------------------------------

// Nash-Williams density over all vertex subsets (exponential; n <= 16 guard).
int exact_arboricity(const Graph& g);

int max_degree(const Graph& g);

}  // namespace locavg

#endif
