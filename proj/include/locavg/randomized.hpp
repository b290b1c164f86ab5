#ifndef LOCAVG_RANDOMIZED_HPP
#define LOCAVG_RANDOMIZED_HPP

#include "locavg/coloring.hpp"
#include "locavg/engine.hpp"
#include "locavg/graph.hpp"
#include "locavg/partition.hpp"

namespace locavg {

// Luby-style (Delta+1)-coloring: per round, flip a coin; on heads propose a
// uniform color outside the finalized neighborhood; commit when no neighbor
// proposed the same color this round.
struct RandColoringResult {
    Coloring coloring;
    ExecutionResult exec;
    long long palette_bound = 0;
};

RandColoringResult rand_delta_plus1(const Graph& g, const IdAssignment& ids,
                                    std::uint64_t seed, const RunOptions& opt = {});

// Restriction of the same sampler to an induced subgraph with an explicit
// palette; callers fence the participant set. Used per H-set below.

// Two-phase randomized coloring: H-sets 1..t are colored on formation with the
// palette {1..A+1} (final color <c, i>), remaining sets from ell down to t+1
// with the palette {A+2..2A+2}, each vertex first waiting for all later-set
// neighbors to finalize.
struct RandALogLogResult {
    Coloring coloring;  // phase-1 colors are pairs {c, i}; phase-2 singletons
    ExecutionResult exec;
    HPartition hp;
    int t = 0;
    long long palette_bound = 0;  // (A+1)*t + (A+1)
};

RandALogLogResult rand_a_loglogn(const Graph& g, const IdAssignment& ids, int a,
                                 const Rational& epsilon, std::uint64_t seed,
                                 const RunOptions& opt = {});

}  // namespace locavg

#endif
