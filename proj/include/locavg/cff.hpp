#ifndef LOCAVG_CFF_HPP
#define LOCAVG_CFF_HPP

#include <cstdint>
#include <vector>

namespace locavg {

// n sets over a bounded universe such that no set is contained in the union
// of any `union_param` others. Universe elements are 0..universe-1; sets are
// indexed by the current color (or ID) they serve.
struct CoverFreeFamily {
    enum class Kind { greedy, polynomial };

    Kind kind = Kind::greedy;
    long long universe = 0;  // m
    int union_param = 0;     // A
    std::vector<std::vector<int>> sets;  // sorted element lists

    // polynomial construction parameters (kind == polynomial)
    long long q = 0;
    int d = 0;

    long long count() const { return static_cast<long long>(sets.size()); }
    const std::vector<int>& set_for(long long index) const;
};

// Randomized search hitting universe m = 5 * ceil(A^2 * log2(num_ids)), with a
// pairwise-intersection certificate that proves A-cover-freeness outright.
// Retries with fresh randomness, then doubles m a bounded number of times.
// num_ids <= 4096 (verification cost guard).
CoverFreeFamily build_cff_greedy(long long num_ids, int A);

// Deterministic construction from degree-<=d polynomials over GF(q):
// set(p) = { x*q + p(x) : x in GF(q) } with q^(d+1) >= num_ids and
// q >= A*d + 2 prime; distinct sets meet in <= d points. (q, d) minimize q^2.
CoverFreeFamily build_cff_polynomial(long long num_ids, int A);

// Set for one index of the polynomial construction without materializing the
// family; used by vertex programs, which compute their own sets locally.
std::vector<int> poly_cff_set(long long q, int d, long long index);

// Smallest-universe polynomial parameters for a given bound on current colors.
struct PolyParams {
    long long q = 0;
    int d = 0;
    long long universe = 0;
};
PolyParams best_poly_params(long long num_ids, int A);

// Exhaustive check over all (A+1)-tuples; cost explodes quickly, callers keep
// num_ids small. Returns true iff no set lies in the union of A others.
bool cff_exhaustive_check(const CoverFreeFamily& f, int A);

// Certificate check: all pairwise intersections <= t with A*t < min set size.
bool cff_pairwise_certificate(const CoverFreeFamily& f, int A);

// The one-round color reduction schedule: repeatedly replace the palette bound
// P with the best polynomial universe until it stops shrinking.
struct LinialStep {
    long long q;
    int d;
    long long universe;
};

struct LinialSchedule {
    std::vector<LinialStep> steps;
    long long final_bound = 0;

    static LinialSchedule compute(long long initial_bound, int A);
    int rounds() const { return static_cast<int>(steps.size()); }
};

bool is_prime(long long x);
long long next_prime(long long x);

}  // namespace locavg

#endif
