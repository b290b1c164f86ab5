#ifndef LOCAVG_ORACLE_HPP
#define LOCAVG_ORACLE_HPP

#include <string>
#include <vector>

#include "locavg/coloring.hpp"
#include "locavg/graph.hpp"
#include "locavg/partition.hpp"

namespace locavg {

// Solution-validity oracles. Everything here checks by direct enumeration and
// shares no code with the solution constructors.

struct Verdict {
    bool pass = true;
    std::vector<std::string> reasons;

    void fail(std::string why) {
        pass = false;
        reasons.push_back(std::move(why));
    }
};

Verdict verify_proper_coloring(const Graph& g, const Coloring& coloring);

// Conflict freedom plus palette bound (colors in [1, max_color]).
Verdict verify_edge_coloring(const Graph& g, const std::vector<long long>& edge_colors,
                             long long max_color);

Verdict verify_mis(const Graph& g, const std::vector<char>& in_set);

Verdict verify_matching(const Graph& g, const std::vector<char>& matched);

// After every iteration i, the partial solution restricted to the union of the
// first i H-sets must already be valid; finalized outputs never change, so the
// final solution restricted to each prefix decides this.
std::vector<std::string> audit_prefix_validity(const Graph& g, const HPartition& hp,
                                               const Coloring* vertex_colors,
                                               const std::vector<char>* in_mis,
                                               const std::vector<long long>* edge_colors,
                                               const std::vector<char>* matched,
                                               long long edge_palette_max);

}  // namespace locavg

#endif
