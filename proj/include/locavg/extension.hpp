#ifndef LOCAVG_EXTENSION_HPP
#define LOCAVG_EXTENSION_HPP

#include <string>
#include <vector>

#include "locavg/coloring.hpp"
#include "locavg/engine.hpp"
#include "locavg/graph.hpp"
#include "locavg/partition.hpp"

namespace locavg {

// Problems solvable by extension from any partial solution. echo_id is the
// trivial per-H-set solver used to exercise the generic converter.
enum class ExtensionKind { echo_id, vertex_coloring, mis, edge_coloring, matching };

struct ExtensionOutcome {
    ExtensionKind kind;
    HPartition hp;
    ExecutionResult exec;

    // Populated per kind:
    Coloring vertex_colors;              // echo_id, vertex_coloring
    std::vector<char> in_mis;            // mis
    std::vector<long long> edge_colors;  // edge_coloring, aligned with Graph::edges()
    std::vector<char> matched;           // matching, aligned with Graph::edges()

    std::vector<std::string> prefix_violations;  // per-iteration validity audit
};

// One pipelined execution: Procedure Partition keeps running every round; each
// vertex runs the kind's per-H-set solver once its set forms, gated so that
// everything it depends on from earlier sets is final before it acts.
ExtensionOutcome extend_from_partial(const Graph& g, const IdAssignment& ids,
                                     const PartitionParams& pparams, ExtensionKind kind,
                                     const RunOptions& opt = {});

ExtensionOutcome delta_plus1_coloring(const Graph& g, const IdAssignment& ids, int a,
                                      const Rational& epsilon, const RunOptions& opt = {});

ExtensionOutcome mis(const Graph& g, const IdAssignment& ids, int a, const Rational& epsilon,
                     const RunOptions& opt = {});

ExtensionOutcome edge_coloring_2d1(const Graph& g, const IdAssignment& ids, int a,
                                   const Rational& epsilon, const RunOptions& opt = {});

ExtensionOutcome maximal_matching(const Graph& g, const IdAssignment& ids, int a,
                                  const Rational& epsilon, const RunOptions& opt = {});

}  // namespace locavg

#endif
