#include "locavg/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace locavg {

namespace {

// Minimal unsigned big integer: multiply by small factors, compare. Enough for
// the exact decay inequality at any epsilon and round count.
class BigUint {
public:
    explicit BigUint(unsigned long long x) { if (x) limbs_.push_back(x); }

    void mul(unsigned long long f) {
        unsigned __int128 carry = 0;
        for (auto& l : limbs_) {
            unsigned __int128 t = static_cast<unsigned __int128>(l) * f + carry;
            l = static_cast<unsigned long long>(t);
            carry = t >> 64;
        }
        if (carry) limbs_.push_back(static_cast<unsigned long long>(carry));
    }

    friend bool operator<=(const BigUint& a, const BigUint& b) {
        if (a.limbs_.size() != b.limbs_.size()) return a.limbs_.size() < b.limbs_.size();
        for (std::size_t i = a.limbs_.size(); i-- > 0;)
            if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] < b.limbs_[i];
        return true;
    }

private:
    std::vector<unsigned long long> limbs_;  // little-endian, no leading zeros
};

class PartitionProcess : public VertexProcess {
public:
    PartitionProcess(int A, int degree) : A_(A), active_deg_(degree) {}

    void step(int round, RoundApi& api) override {
        for (const auto& msg : api.inbox())
            if (msg.tag == kFinalTag) --active_deg_;
        if (active_deg_ <= A_) api.finish({round});
    }

private:
    int A_;
    int active_deg_;
};

}  // namespace

PartitionParams::PartitionParams(int a_, Rational eps) : a(a_), epsilon(eps) {
    if (a < 1) throw std::invalid_argument("PartitionParams: a >= 1 required");
    if (!(Rational(0) < epsilon) || !(epsilon <= Rational(2)))
        throw std::invalid_argument("PartitionParams: epsilon in (0, 2] required");
    // floor((2 + p/q) * a) = (2q + p) * a / q
    A = static_cast<int>(((2 * epsilon.den + epsilon.num) * a) / epsilon.den);
}

int PartitionParams::ell_cap(int n) const {
    double e = epsilon.value();
    return static_cast<int>(std::floor((2.0 / e) * std::log2(static_cast<double>(std::max(n, 2)))));
}

HPartition HPartition::from_indices(std::vector<int> idx) {
    HPartition hp;
    hp.index = std::move(idx);
    hp.ell = hp.index.empty() ? 0 : *std::max_element(hp.index.begin(), hp.index.end());
    return hp;
}

int ForestDecomposition::out_degree(int v) const {
    int d = 0;
    for (const auto& e : edges)
        if (e.tail == v) ++d;
    return d;
}

int ForestDecomposition::max_out_degree() const {
    int mx = 0;
    std::vector<int> cnt;
    for (const auto& e : edges) {
        if (e.tail >= static_cast<int>(cnt.size())) cnt.resize(static_cast<std::size_t>(e.tail) + 1, 0);
        mx = std::max(mx, ++cnt[static_cast<std::size_t>(e.tail)]);
    }
    return mx;
}

int ForestDecomposition::num_labels() const {
    int mx = 0;
    for (const auto& e : edges) mx = std::max(mx, e.label);
    return mx;
}

std::unique_ptr<VertexProcess> PartitionProgram::spawn(const VertexContext& ctx) const {
    return std::make_unique<PartitionProcess>(A_, ctx.degree);
}

std::pair<HPartition, ExecutionResult> procedure_partition(const Graph& g,
                                                           const IdAssignment& ids,
                                                           const PartitionParams& params,
                                                           const RunOptions& opt) {
    PartitionProgram prog(params.A);
    ExecutionResult res = run(g, ids, prog, opt);
    std::vector<int> idx(static_cast<std::size_t>(g.n()));
    for (int v = 0; v < g.n(); ++v) idx[static_cast<std::size_t>(v)] =
        static_cast<int>(res.outputs[static_cast<std::size_t>(v)].at(0));
    return {HPartition::from_indices(std::move(idx)), std::move(res)};
}

ForestDecomposition derive_forest_decomposition(const Graph& g, const IdAssignment& ids,
                                                const HPartition& hp) {
    auto rank = [&](int v) {
        return std::pair<int, long long>(hp.index[static_cast<std::size_t>(v)],
                                         ids.id[static_cast<std::size_t>(v)]);
    };
    ForestDecomposition fd;
    fd.edges.reserve(g.edges().size());
    for (auto [u, v] : g.edges()) {
        if (rank(u) < rank(v))
            fd.edges.push_back({u, v, 0});
        else
            fd.edges.push_back({v, u, 0});
    }
    // Each tail labels its out-edges in head-ID order: 1..d_out(tail).
    std::vector<std::vector<std::pair<long long, std::size_t>>> out(
        static_cast<std::size_t>(g.n()));
    for (std::size_t i = 0; i < fd.edges.size(); ++i)
        out[static_cast<std::size_t>(fd.edges[i].tail)].emplace_back(
            ids.id[static_cast<std::size_t>(fd.edges[i].head)], i);
    for (auto& lst : out) {
        std::sort(lst.begin(), lst.end());
        int label = 1;
        for (auto& [hid, i] : lst) fd.edges[i].label = label++;
    }
    return fd;
}

ForestDecompositionResult parallelized_forest_decomposition(const Graph& g,
                                                            const IdAssignment& ids,
                                                            const PartitionParams& params,
                                                            const RunOptions& opt) {
    auto [hp, exec] = procedure_partition(g, ids, params, opt);
    ForestDecomposition fd = derive_forest_decomposition(g, ids, hp);
    return {std::move(fd), std::move(hp), std::move(exec)};
}

VerificationReport verify_h_partition(const Graph& g, const HPartition& hp,
                                      const PartitionParams& params) {
    VerificationReport rep;
    if (static_cast<int>(hp.index.size()) != g.n()) {
        rep.violations.push_back("h-partition not total");
        return rep;
    }
    for (int v = 0; v < g.n(); ++v) {
        int count = 0;
        for (int u : g.neighbors(v))
            if (hp.index[static_cast<std::size_t>(u)] >= hp.index[static_cast<std::size_t>(v)])
                ++count;
        if (count > params.A)
            rep.violations.push_back("vertex " + std::to_string(v) + " has " +
                                     std::to_string(count) + " >=-index neighbors (A=" +
                                     std::to_string(params.A) + ")");
    }
    return rep;
}

VerificationReport verify_forest_decomposition(const Graph& g, const ForestDecomposition& fd,
                                               const PartitionParams& params) {
    VerificationReport rep;
    const int n = g.n();
    if (fd.edges.size() != g.edges().size()) {
        rep.violations.push_back("decomposition does not cover the edge set");
        return rep;
    }

    // (i) acyclicity of the orientation
    std::vector<int> indeg(static_cast<std::size_t>(n), 0);
    std::vector<std::vector<int>> succ(static_cast<std::size_t>(n));
    for (const auto& e : fd.edges) {
        ++indeg[static_cast<std::size_t>(e.head)];
        succ[static_cast<std::size_t>(e.tail)].push_back(e.head);
    }
    std::vector<int> queue;
    for (int v = 0; v < n; ++v)
        if (indeg[static_cast<std::size_t>(v)] == 0) queue.push_back(v);
    std::size_t processed = 0;
    while (processed < queue.size()) {
        int v = queue[processed++];
        for (int u : succ[static_cast<std::size_t>(v)])
            if (--indeg[static_cast<std::size_t>(u)] == 0) queue.push_back(u);
    }
    if (static_cast<int>(processed) != n)
        rep.violations.push_back("orientation contains a directed cycle");

    // (ii) out-degree bound
    std::vector<int> outdeg(static_cast<std::size_t>(n), 0);
    for (const auto& e : fd.edges) ++outdeg[static_cast<std::size_t>(e.tail)];
    for (int v = 0; v < n; ++v)
        if (outdeg[static_cast<std::size_t>(v)] > params.A) {
            rep.violations.push_back("vertex " + std::to_string(v) + " has out-degree " +
                                     std::to_string(outdeg[static_cast<std::size_t>(v)]) + " > A=" +
                                     std::to_string(params.A));
            break;
        }

    // (iii) distinct labels per tail
    {
        std::vector<std::vector<int>> labels(static_cast<std::size_t>(n));
        bool bad = false;
        for (const auto& e : fd.edges) {
            auto& lv = labels[static_cast<std::size_t>(e.tail)];
            if (std::find(lv.begin(), lv.end(), e.label) != lv.end()) {
                rep.violations.push_back("vertex " + std::to_string(e.tail) +
                                         " repeats out-label " + std::to_string(e.label));
                bad = true;
                break;
            }
            lv.push_back(e.label);
        }
        (void)bad;
    }

    // (iv) each label class is a forest
    int num_labels = fd.num_labels();
    for (int lbl = 1; lbl <= num_labels; ++lbl) {
        std::vector<int> parent(static_cast<std::size_t>(n));
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[static_cast<std::size_t>(x)] != x) {
                parent[static_cast<std::size_t>(x)] =
                    parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
                x = parent[static_cast<std::size_t>(x)];
            }
            return x;
        };
        bool cyc = false;
        for (const auto& e : fd.edges) {
            if (e.label != lbl) continue;
            int a = find(e.tail), b = find(e.head);
            if (a == b) { cyc = true; break; }
            parent[static_cast<std::size_t>(a)] = b;
        }
        if (cyc) {
            rep.violations.push_back("label class " + std::to_string(lbl) + " contains a cycle");
            break;
        }
    }
    return rep;
}

int orientation_length(const Graph& g, const ForestDecomposition& fd) {
    const int n = g.n();
    std::vector<std::vector<int>> succ(static_cast<std::size_t>(n));
    std::vector<int> indeg(static_cast<std::size_t>(n), 0);
    for (const auto& e : fd.edges) {
        succ[static_cast<std::size_t>(e.tail)].push_back(e.head);
        ++indeg[static_cast<std::size_t>(e.head)];
    }
    std::vector<int> queue, depth(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v)
        if (indeg[static_cast<std::size_t>(v)] == 0) queue.push_back(v);
    std::size_t processed = 0;
    int longest = 0;
    while (processed < queue.size()) {
        int v = queue[processed++];
        for (int u : succ[static_cast<std::size_t>(v)]) {
            depth[static_cast<std::size_t>(u)] =
                std::max(depth[static_cast<std::size_t>(u)], depth[static_cast<std::size_t>(v)] + 1);
            longest = std::max(longest, depth[static_cast<std::size_t>(u)]);
            if (--indeg[static_cast<std::size_t>(u)] == 0) queue.push_back(u);
        }
    }
    if (static_cast<int>(processed) != n)
        throw std::runtime_error("orientation_length: orientation is cyclic");
    return longest;
}

bool decay_within_partition_bound(const Metrics& metrics, int n, const Rational& epsilon) {
    // n_i * (2q + p)^(i-1) <= n * (2q)^(i-1) for epsilon = p/q.
    unsigned long long grow = static_cast<unsigned long long>(2 * epsilon.den + epsilon.num);
    unsigned long long shrink = static_cast<unsigned long long>(2 * epsilon.den);
    BigUint lhs_factor(1), rhs(static_cast<unsigned long long>(n));
    for (std::size_t i = 0; i < metrics.decay.size(); ++i) {
        long long ni = metrics.decay[i];
        if (ni > 0) {
            BigUint scaled = lhs_factor;  // grow^(i)
            scaled.mul(static_cast<unsigned long long>(ni));
            if (!(scaled <= rhs)) return false;
        }
        lhs_factor.mul(grow);
        rhs.mul(shrink);
    }
    return true;
}

}  // namespace locavg
