#ifndef LOCAVG_COLORING_HPP
#define LOCAVG_COLORING_HPP

#include <vector>

#include "locavg/cff.hpp"
#include "locavg/graph.hpp"
#include "locavg/partition.hpp"

namespace locavg {

// Hierarchical color: a finite sequence of non-negative integers. A plain
// color is a length-1 sequence. Proper iff adjacent sequences differ.
using Color = std::vector<long long>;

struct Coloring {
    std::vector<Color> colors;

    int palette_size() const;                 // distinct sequences in use
    long long max_flat_value() const;         // max entry of length-1 colors
    static Coloring flat(std::vector<long long> values);
    bool is_flat() const;
    std::vector<long long> flat_values() const;
};

// One Linial-style reduction round: each vertex takes the least element of its
// own set that escapes the union of its parents' sets. If no escape value
// exists the vertex falls back to universe + old color; fallbacks are counted
// and must be zero under a verified family.
struct LinialRoundResult {
    Coloring coloring;
    long long fallback_count = 0;
};

LinialRoundResult arb_linial_round(const Coloring& current,
                                   const std::vector<std::vector<int>>& parents,
                                   const CoverFreeFamily& family);

// Iterated reduction over a forest decomposition, starting from the ID
// coloring; polynomial families per the reduction schedule, then stops at the
// schedule's fixed point.
struct LinialFullResult {
    Coloring coloring;
    int iterations = 0;
    long long palette_bound = 0;   // final color-value bound
    long long fallback_count = 0;
    double c_over_A2 = 0.0;        // achieved palette bound / A^2, reported
};

LinialFullResult arb_linial_full(const Graph& g_sub, const ForestDecomposition& fd,
                                 const IdAssignment& ids, int A);

// psi(v) = phi(v) mod p on a flat proper coloring; every vertex gets at most
// ceil(m/p) - 1 neighbors of its own psi color.
Coloring defective_coloring_mod(const Coloring& proper, long long p);

// Substitute (deg+1)-list-coloring: a proper coloring via the Linial machinery
// on the trivial higher-ID orientation, then color classes scheduled in
// ascending order, each vertex taking its least unused list color.
struct ListColoringResult {
    Coloring coloring;
    int rounds = 0;  // scheduled class count
};

ListColoringResult deg_plus1_list_coloring(const Graph& g_sub,
                                           const std::vector<std::vector<long long>>& lists,
                                           const IdAssignment& ids);

// Vertices wait for all parents under an acyclic orientation, then take the
// least palette color no parent took.
struct AcyclicRecolorResult {
    Coloring coloring;
    int rounds = 0;  // longest dependency chain + 1
};

AcyclicRecolorResult acyclic_recolor(const Graph& g_sub,
                                     const std::vector<std::pair<int, int>>& oriented_edges,
                                     const std::vector<long long>& palette);

}  // namespace locavg

#endif
