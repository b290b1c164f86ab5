#ifndef LOCAVG_SCHEMES_HPP
#define LOCAVG_SCHEMES_HPP

#include <memory>

#include "locavg/cff.hpp"
#include "locavg/coloring.hpp"
#include "locavg/engine.hpp"
#include "locavg/partition.hpp"

namespace locavg {

// Iterated base-2 logarithms.
int log_star(long long n);                 // 0 for n <= 1, else 1 + log*(log2 n)
double iterated_log(long long n, int i);   // log^(i): i-fold log2, log^(0) = n
int rho(long long n);                      // largest r with log^(r-1) n >= log* n

struct SchemeParams {
    int k = 2;
    Rational c{1, 1};        // 2 / epsilon
    long long alpha = 0;     // per-segment palette size (filled by the scheme)
    int lambda = 0;          // per-H-set orientation length bound declared by algorithm B

    SchemeParams() = default;
    SchemeParams(int k_, const Rational& epsilon);
};

struct SegmentedColoring {
    std::vector<int> segment;  // in [1, k]
    Coloring coloring;         // flat; segment-i colors lie in [(i-1)*alpha, i*alpha)
    int k = 0;
    long long alpha = 0;
};

// Which concrete algorithms fill the scheme's A/B/C slots.
//   reduction:  algA = null, algB = forest orientation, algC = iterated
//               one-round color reduction over the whole segment (synchronized).
//   recolor:    algA = (deg+1)-list coloring per H-set, algB = orient to the
//               higher algA color, algC = palette-(A+1) recoloring along the
//               combined segment orientation.
enum class SchemeInstance { reduction, recolor };

struct SegmentationResult {
    SegmentedColoring coloring;
    ExecutionResult exec;
    std::vector<int> segment_end_round;  // partition-round window ends, index k..2
};

SegmentationResult segmentation_run(const Graph& g, const IdAssignment& ids,
                                    const PartitionParams& pparams, SchemeParams sparams,
                                    SchemeInstance instance, const RunOptions& opt = {});

// Single reduction round per H-set, pipelined with Procedure Partition;
// family built greedily (verified, small n) or from polynomials (scalable).
struct A2LogNResult {
    Coloring coloring;
    ExecutionResult exec;
    HPartition hp;
    long long palette_bound = 0;
    long long fallback_count = 0;
    CoverFreeFamily::Kind family_kind = CoverFreeFamily::Kind::polynomial;
};

A2LogNResult color_a2logn(const Graph& g, const IdAssignment& ids, int a,
                          const Rational& epsilon,
                          CoverFreeFamily::Kind family = CoverFreeFamily::Kind::polynomial,
                          const RunOptions& opt = {});

SegmentationResult color_ka2(const Graph& g, const IdAssignment& ids, int a,
                             const Rational& epsilon, int k, const RunOptions& opt = {});

SegmentationResult color_ka(const Graph& g, const IdAssignment& ids, int a,
                            const Rational& epsilon, int k, const RunOptions& opt = {});

// Segment windows over partition rounds: segment k gets max(1, ceil(c*log^(k) n))
// rounds, then each i < k gets ceil(c*log^(i) n); segment 1 is open-ended.
std::vector<int> segment_windows(int n, int k, const Rational& c);
int segment_of_round(const std::vector<int>& windows, int k, int round);

}  // namespace locavg

#endif
