#ifndef LOCAVG_PARTITION_HPP
#define LOCAVG_PARTITION_HPP

#include <string>
#include <vector>

#include "locavg/engine.hpp"
#include "locavg/graph.hpp"

namespace locavg {

struct PartitionParams {
    int a = 1;
    Rational epsilon{2, 1};
    int A = 4;  // floor((2 + epsilon) * a)

    PartitionParams() = default;
    PartitionParams(int a_, Rational eps);

    // floor((2/epsilon) * log2 n)
    int ell_cap(int n) const;
};

struct HPartition {
    std::vector<int> index;  // H-set number per vertex, >= 1
    int ell = 0;             // largest used index

    static HPartition from_indices(std::vector<int> idx);
};

// Acyclic edge orientation with per-vertex distinct out-edge labels; each
// label class, ignoring direction, is a forest.
struct ForestDecomposition {
    struct OrientedEdge {
        int tail;
        int head;
        int label;  // distinct among the tail's out-edges, 1..d_out(tail)
    };
    std::vector<OrientedEdge> edges;  // aligned with Graph::edges()

    int out_degree(int v) const;
    int max_out_degree() const;
    int num_labels() const;
};

struct VerificationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

// Engine program: every active vertex joins H_i in the first round i where its
// count of still-active neighbors is at most A; the join announcement is the
// final-output broadcast, so r(v) equals the H-index.
class PartitionProgram : public Program {
public:
    explicit PartitionProgram(int A) : A_(A) {}
    std::unique_ptr<VertexProcess> spawn(const VertexContext& ctx) const override;

private:
    int A_;
};

std::pair<HPartition, ExecutionResult> procedure_partition(const Graph& g,
                                                           const IdAssignment& ids,
                                                           const PartitionParams& params,
                                                           const RunOptions& opt = {});

// Orientation rule on top of the H-partition: cross-set edges point to the
// higher H-index endpoint, intra-set edges to the higher paper-ID endpoint;
// each tail labels its out-edges 1..d_out in head-ID order. Orienting and
// labeling ride on the join round, so the ledger equals procedure_partition's.
ForestDecomposition derive_forest_decomposition(const Graph& g, const IdAssignment& ids,
                                                const HPartition& hp);

struct ForestDecompositionResult {
    ForestDecomposition fd;
    HPartition hp;
    ExecutionResult exec;
};

ForestDecompositionResult parallelized_forest_decomposition(const Graph& g,
                                                            const IdAssignment& ids,
                                                            const PartitionParams& params,
                                                            const RunOptions& opt = {});

VerificationReport verify_h_partition(const Graph& g, const HPartition& hp,
                                      const PartitionParams& params);

VerificationReport verify_forest_decomposition(const Graph& g, const ForestDecomposition& fd,
                                               const PartitionParams& params);

// Longest directed path length of an acyclic orientation (edge count).
int orientation_length(const Graph& g, const ForestDecomposition& fd);

// Exact check of n_i <= (2/(2+eps))^(i-1) * n against a run's decay curve,
// evaluated in exact integer arithmetic (no floating point).
bool decay_within_partition_bound(const Metrics& metrics, int n, const Rational& epsilon);

}  // namespace locavg

#endif
