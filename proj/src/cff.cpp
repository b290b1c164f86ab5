#include "locavg/cff.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "locavg/rng.hpp"

namespace locavg {

const std::vector<int>& CoverFreeFamily::set_for(long long index) const {
    if (index < 0 || index >= count())
        throw std::out_of_range("CoverFreeFamily: no set for index " + std::to_string(index));
    return sets[static_cast<std::size_t>(index)];
}

bool is_prime(long long x) {
    if (x < 2) return false;
    for (long long p = 2; p * p <= x; ++p)
        if (x % p == 0) return false;
    return true;
}

long long next_prime(long long x) {
    while (!is_prime(x)) ++x;
    return x;
}

namespace {

// q^e >= bound, with overflow saturation.
bool pow_at_least(long long q, int e, long long bound) {
    long long acc = 1;
    for (int i = 0; i < e; ++i) {
        if (acc > bound / q) return true;
        acc *= q;
    }
    return acc >= bound;
}

}  // namespace

PolyParams best_poly_params(long long num_ids, int A) {
    if (num_ids < 1) throw std::invalid_argument("best_poly_params: num_ids >= 1 required");
    PolyParams best;
    for (int d = 1; d <= 62; ++d) {
        long long root = 2;
        while (!pow_at_least(root, d + 1, num_ids)) ++root;
        long long q = next_prime(std::max<long long>(static_cast<long long>(A) * d + 2, root));
        long long universe = q * q;
        if (best.universe == 0 || universe < best.universe) best = {q, d, universe};
        // Once the degree constraint alone dominates, larger d only hurts.
        long long floor_q = static_cast<long long>(A) * d + 2;
        if (best.universe != 0 && floor_q * floor_q >= best.universe) break;
    }
    return best;
}

std::vector<int> poly_cff_set(long long q, int d, long long index) {
    std::vector<long long> coeff(static_cast<std::size_t>(d) + 1, 0);
    long long rest = index;
    for (int i = 0; i <= d; ++i) {
        coeff[static_cast<std::size_t>(i)] = rest % q;
        rest /= q;
    }
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(q));
    for (long long x = 0; x < q; ++x) {
        long long val = 0;
        for (int i = d; i >= 0; --i) val = (val * x + coeff[static_cast<std::size_t>(i)]) % q;
        out.push_back(static_cast<int>(x * q + val));
    }
    std::sort(out.begin(), out.end());
    return out;
}

CoverFreeFamily build_cff_polynomial(long long num_ids, int A) {
    CoverFreeFamily f;
    f.kind = CoverFreeFamily::Kind::polynomial;
    f.union_param = A;
    if (num_ids <= 1) {
        f.universe = 1;
        f.q = 1;
        f.d = 0;
        f.sets = {{0}};
        return f;
    }
    PolyParams p = best_poly_params(num_ids, A);
    f.q = p.q;
    f.d = p.d;
    f.universe = p.universe;
    f.sets.reserve(static_cast<std::size_t>(num_ids));
    for (long long i = 0; i < num_ids; ++i) f.sets.push_back(poly_cff_set(p.q, p.d, i));
    return f;
}

CoverFreeFamily build_cff_greedy(long long num_ids, int A) {
    if (num_ids < 1) throw std::invalid_argument("build_cff_greedy: num_ids >= 1 required");
    if (num_ids > 4096) throw std::invalid_argument("build_cff_greedy: num_ids > 4096 guard");
    if (A < 1) throw std::invalid_argument("build_cff_greedy: A >= 1 required");

    double lg = std::log2(static_cast<double>(num_ids));
    long long m0 = 5 * static_cast<long long>(
                           std::ceil(static_cast<double>(A) * A * lg - 1e-9));
    m0 = std::max<long long>(m0, 1);

    CoverFreeFamily f;
    f.kind = CoverFreeFamily::Kind::greedy;
    f.union_param = A;

    if (num_ids == 1) {
        f.universe = m0;
        f.sets = {{0}};
        return f;
    }

    long long m = m0;
    for (int growth = 0; growth < 8; ++growth) {
        long long s = std::max<long long>(1, m / (2 * (A + 1)));
        long long t = (s - 1) / A;  // A*t < s, so s - A*t >= 1 escape values
        RngStream rng(hash_combine(hash_combine(0x5eedf00dULL, static_cast<std::uint64_t>(num_ids)),
                                   static_cast<std::uint64_t>(A) ^ static_cast<std::uint64_t>(m)));
        std::vector<std::vector<int>> sets;
        std::vector<std::vector<char>> membership;
        sets.reserve(static_cast<std::size_t>(num_ids));
        bool failed = false;
        std::vector<int> pool(static_cast<std::size_t>(m));
        for (long long i = 0; i < m; ++i) pool[static_cast<std::size_t>(i)] = static_cast<int>(i);

        for (long long idx = 0; idx < num_ids && !failed; ++idx) {
            bool placed = false;
            for (int attempt = 0; attempt < 300 && !placed; ++attempt) {
                // random s-subset via partial shuffle
                for (long long i = 0; i < s; ++i) {
                    long long j = i + static_cast<long long>(
                                          rng.next_below(static_cast<std::uint64_t>(m - i)));
                    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
                }
                std::vector<int> cand(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(s));
                std::vector<char> mem(static_cast<std::size_t>(m), 0);
                for (int e : cand) mem[static_cast<std::size_t>(e)] = 1;
                bool ok = true;
                for (const auto& prev_mem : membership) {
                    long long inter = 0;
                    for (int e : cand) inter += prev_mem[static_cast<std::size_t>(e)];
                    if (inter > t) { ok = false; break; }
                }
                if (ok) {
                    std::sort(cand.begin(), cand.end());
                    sets.push_back(std::move(cand));
                    membership.push_back(std::move(mem));
                    placed = true;
                }
            }
            if (!placed) failed = true;
        }
        if (!failed) {
            f.universe = m;
            f.sets = std::move(sets);
            return f;
        }
        m *= 2;
    }
    throw std::runtime_error("build_cff_greedy: construction failed; achieved universe " +
                             std::to_string(m));
}

bool cff_pairwise_certificate(const CoverFreeFamily& f, int A) {
    std::size_t n = f.sets.size();
    long long min_size = f.sets.empty() ? 0 : static_cast<long long>(f.sets[0].size());
    for (const auto& s : f.sets) min_size = std::min<long long>(min_size, static_cast<long long>(s.size()));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            std::vector<int> inter;
            std::set_intersection(f.sets[i].begin(), f.sets[i].end(), f.sets[j].begin(),
                                  f.sets[j].end(), std::back_inserter(inter));
            if (static_cast<long long>(inter.size()) * A >= min_size) return false;
        }
    return true;
}

bool cff_exhaustive_check(const CoverFreeFamily& f, int A) {
    const long long n = f.count();
    if (n <= 1) return true;
    std::size_t words = static_cast<std::size_t>((f.universe + 63) / 64);
    std::vector<std::vector<std::uint64_t>> masks(static_cast<std::size_t>(n),
                                                  std::vector<std::uint64_t>(words, 0));
    for (long long i = 0; i < n; ++i)
        for (int e : f.sets[static_cast<std::size_t>(i)])
            masks[static_cast<std::size_t>(i)][static_cast<std::size_t>(e) / 64] |=
                1ULL << (e % 64);

    int k = static_cast<int>(std::min<long long>(A, n - 1));
    for (long long target = 0; target < n; ++target) {
        std::vector<long long> others;
        for (long long j = 0; j < n; ++j)
            if (j != target) others.push_back(j);
        std::vector<int> pick(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) pick[static_cast<std::size_t>(i)] = i;
        while (true) {
            std::vector<std::uint64_t> uni(words, 0);
            for (int i = 0; i < k; ++i) {
                const auto& mk = masks[static_cast<std::size_t>(
                    others[static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])])];
                for (std::size_t w = 0; w < words; ++w) uni[w] |= mk[w];
            }
            bool covered = true;
            const auto& tm = masks[static_cast<std::size_t>(target)];
            for (std::size_t w = 0; w < words; ++w)
                if (tm[w] & ~uni[w]) { covered = false; break; }
            if (covered) return false;
            int pos = k - 1;
            while (pos >= 0 &&
                   pick[static_cast<std::size_t>(pos)] ==
                       static_cast<int>(others.size()) - k + pos)
                --pos;
            if (pos < 0) break;
            ++pick[static_cast<std::size_t>(pos)];
            for (int i = pos + 1; i < k; ++i)
                pick[static_cast<std::size_t>(i)] = pick[static_cast<std::size_t>(i - 1)] + 1;
        }
    }
    return true;
}

LinialSchedule LinialSchedule::compute(long long initial_bound, int A) {
    LinialSchedule sched;
    long long P = std::max<long long>(initial_bound, 1);
    while (P > 1) {
        PolyParams p = best_poly_params(P, A);
        if (p.universe >= P) break;
        sched.steps.push_back({p.q, p.d, p.universe});
        P = p.universe;
    }
    sched.final_bound = P;
    return sched;
}

}  // namespace locavg
