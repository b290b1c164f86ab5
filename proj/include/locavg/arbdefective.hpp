#ifndef LOCAVG_ARBDEFECTIVE_HPP
#define LOCAVG_ARBDEFECTIVE_HPP

#include <cmath>
#include <vector>

#include "locavg/coloring.hpp"
#include "locavg/graph.hpp"
#include "locavg/partition.hpp"

namespace locavg {

struct EtaParams {
    int C = 8;
    Rational epsilon{2, 1};

    explicit EtaParams(int C_ = 8) : C(C_) {
        if (C < 4) throw std::invalid_argument("EtaParams: C >= 4 required");
    }
    int kt() const { return 5 * C; }            // (3 + epsilon) * C at epsilon = 2
    long long p_legal() const { return static_cast<long long>(C) * C; }
    double eta() const { return 6.0 / std::log2(static_cast<double>(C)); }
    static int r_sets(int n);                   // ceil(2 log2 log2 n), >= 1
};

// Orientation leaving same-H-set same-psi edges undirected; the oriented part
// strictly ascends (H-index, psi), hence is acyclic.
struct PartialOrientation {
    std::vector<std::pair<int, int>> oriented;    // (tail, head)
    std::vector<std::pair<int, int>> unoriented;  // same set, same psi
    Coloring psi;                                 // flat defective colors
    long long psi_palette = 0;
    long long defect_target = 0;                  // floor(a_bound / t)
};

PartialOrientation partial_orientation(const Graph& g_sub, const IdAssignment& ids,
                                       const HPartition& hsets, int t, int a_bound,
                                       const Rational& epsilon);

struct ArbdefectiveResult {
    Coloring phi;  // flat colors 1..k
    PartialOrientation po;
    // Per color class: acyclic orientation of the class-induced subgraph
    // (retained same-color parents plus ID-oriented same-psi edges).
    std::vector<std::vector<std::pair<int, int>>> class_certificates;
    int cert_max_out_degree = 0;
    long long b_bound = 0;  // floor(A/t + (2+eps)A/k), asserted against the certificate
    int rounds = 0;         // dependency depth of the waiting chain
    HPartition hsets;
};

ArbdefectiveResult arbdefective_coloring(const Graph& g_sub, const IdAssignment& ids, int k,
                                         int t, int a_bound, const Rational& epsilon);

ArbdefectiveResult h_arbdefective_coloring(const Graph& g_sub, const IdAssignment& ids, int k,
                                           int t, const HPartition& hsets, int a_bound,
                                           const Rational& epsilon);

VerificationReport verify_arbdefective(const Graph& g_sub, const Coloring& phi, long long b,
                                       const std::vector<std::vector<std::pair<int, int>>>*
                                           certificates = nullptr);

struct LegalColoringResult {
    Coloring coloring;  // flat
    int refinement_iterations = 0;
    long long palette_used = 0;
};

LegalColoringResult legal_coloring(const Graph& g_sub, const IdAssignment& ids, int a_bound,
                                   long long p, const Rational& epsilon);

// Expected refinement count: iterate alpha <- floor((3+eps) * alpha / p).
int legal_refinement_count(long long a_bound, long long p, const Rational& epsilon);

struct OnePlusEtaResult {
    Coloring coloring;  // hierarchical colors: {c}, {1, ...} or {2, j, ...}
    int depth = 0;
    int palette = 0;
    std::vector<std::string> prefix_audit;  // per-level class/prefix sizes
};

OnePlusEtaResult one_plus_eta_arb_col(const Graph& g, const IdAssignment& ids, int a,
                                      const EtaParams& params);

}  // namespace locavg

#endif
