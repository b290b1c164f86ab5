#include "locavg/engine.hpp"

#include <algorithm>
#include <cmath>

namespace locavg {

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

inline void fnv(std::uint64_t& h, std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
        h ^= (x >> (8 * i)) & 0xff;
        h *= kFnvPrime;
    }
}

}  // namespace

long long default_round_cap(int n) {
    double l = std::log2(static_cast<double>(std::max(n, 1)));
    double cap = 64.0 * (l + 1.0) * (l + 1.0);
    return static_cast<long long>(std::llround(cap));
}

Rational vertex_averaged(const std::vector<int>& ledger) {
    long long sum = 0;
    for (int r : ledger) sum += r;
    return Rational(sum, static_cast<long long>(ledger.size()));
}

int worst_case(const std::vector<int>& ledger) {
    int w = 0;
    for (int r : ledger) w = std::max(w, r);
    return w;
}

Metrics compute_metrics(const std::vector<int>& ledger) {
    Metrics m;
    m.worst = worst_case(ledger);
    m.avg = vertex_averaged(ledger);
    m.decay.assign(static_cast<std::size_t>(m.worst), 0);
    for (int r : ledger)
        for (int i = 0; i < r; ++i) ++m.decay[static_cast<std::size_t>(i)];
    return m;
}

ExecutionResult run(const Graph& g, const IdAssignment& ids, const Program& program,
                    const RunOptions& opt) {
    const int n = g.n();
    if (n == 0) throw std::invalid_argument("run: empty graph");
    ids.validate(n);

    // slot_of_me[v][s]: position of v in the neighbor list of g.neighbors(v)[s].
    std::vector<std::vector<int>> slot_of_me(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        auto nb = g.neighbors(v);
        slot_of_me[static_cast<std::size_t>(v)].resize(nb.size());
        for (std::size_t s = 0; s < nb.size(); ++s) {
            auto back = g.neighbors(nb[s]);
            slot_of_me[static_cast<std::size_t>(v)][s] = static_cast<int>(
                std::lower_bound(back.begin(), back.end(), v) - back.begin());
        }
    }

    std::vector<std::unique_ptr<VertexProcess>> procs;
    procs.reserve(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        VertexContext ctx{v, ids.id[static_cast<std::size_t>(v)], g.degree(v), n,
                          RngStream::for_vertex(opt.seed, v)};
        procs.push_back(program.spawn(ctx));
    }

    ExecutionResult res;
    res.outputs.assign(static_cast<std::size_t>(n), {});
    res.ledger.assign(static_cast<std::size_t>(n), 0);

    std::vector<std::vector<Message>> cur(static_cast<std::size_t>(n));
    std::vector<std::vector<Message>> nxt(static_cast<std::size_t>(n));
    std::vector<char> active(static_cast<std::size_t>(n), 1);
    int remaining = n;

    const long long cap = opt.round_cap > 0 ? opt.round_cap : default_round_cap(n);
    const bool has_resolve = program.uses_resolve();
    std::uint64_t hash = kFnvOffset;

    auto deliver = [&](int from, int slot, long long tag, const Payload& data, int round) {
        int to = g.neighbors(from)[static_cast<std::size_t>(slot)];
        fnv(hash, static_cast<std::uint64_t>(round));
        fnv(hash, static_cast<std::uint64_t>(from));
        fnv(hash, static_cast<std::uint64_t>(to));
        fnv(hash, static_cast<std::uint64_t>(tag));
        fnv(hash, data.size());
        for (long long x : data) fnv(hash, static_cast<std::uint64_t>(x));
        ++res.message_count;
        nxt[static_cast<std::size_t>(to)].push_back(
            {slot_of_me[static_cast<std::size_t>(from)][static_cast<std::size_t>(slot)], tag, data});
    };

    int round = 0;
    while (remaining > 0) {
        ++round;
        if (round > cap) {
            std::vector<int> act;
            for (int v = 0; v < n; ++v)
                if (active[static_cast<std::size_t>(v)]) act.push_back(v);
            throw RoundCapExceeded(cap, std::move(act));
        }

        std::vector<char> finished_now(static_cast<std::size_t>(n), 0);

        for (int v = 0; v < n; ++v) {
            if (!active[static_cast<std::size_t>(v)]) continue;
            auto& inbox = cur[static_cast<std::size_t>(v)];
            RoundApi api({inbox.data(), inbox.size()}, g.degree(v));
            procs[static_cast<std::size_t>(v)]->step(round, api);
            for (const auto& out : api.outgoing()) deliver(v, out.slot, out.tag, out.data, round);
            if (api.finished()) {
                res.outputs[static_cast<std::size_t>(v)] = api.take_output();
                res.ledger[static_cast<std::size_t>(v)] = round;
                for (int s = 0; s < g.degree(v); ++s)
                    deliver(v, s, kFinalTag, res.outputs[static_cast<std::size_t>(v)], round);
                finished_now[static_cast<std::size_t>(v)] = 1;
            }
        }

        if (has_resolve) {
            // Receive phase sees exactly the messages delivered during this
            // round's send phase; finals produced here land in the next round.
            std::vector<std::size_t> snapshot(static_cast<std::size_t>(n));
            for (int v = 0; v < n; ++v)
                snapshot[static_cast<std::size_t>(v)] = nxt[static_cast<std::size_t>(v)].size();
            for (int v = 0; v < n; ++v) {
                if (!active[static_cast<std::size_t>(v)] || finished_now[static_cast<std::size_t>(v)])
                    continue;
                auto& box = nxt[static_cast<std::size_t>(v)];
                RoundApi api({box.data(), snapshot[static_cast<std::size_t>(v)]}, g.degree(v));
                procs[static_cast<std::size_t>(v)]->resolve(round, api);
                if (!api.outgoing().empty())
                    throw std::runtime_error("resolve phase may not send messages");
                if (api.finished()) {
                    res.outputs[static_cast<std::size_t>(v)] = api.take_output();
                    res.ledger[static_cast<std::size_t>(v)] = round;
                    for (int s = 0; s < g.degree(v); ++s)
                        deliver(v, s, kFinalTag, res.outputs[static_cast<std::size_t>(v)], round);
                    finished_now[static_cast<std::size_t>(v)] = 1;
                }
            }
        }

        for (int v = 0; v < n; ++v) {
            if (finished_now[static_cast<std::size_t>(v)]) {
                active[static_cast<std::size_t>(v)] = 0;
                --remaining;
            }
            cur[static_cast<std::size_t>(v)].clear();
        }
        // Messages addressed to vertices that went inert this round vanish.
        for (int v = 0; v < n; ++v) {
            if (active[static_cast<std::size_t>(v)])
                std::swap(cur[static_cast<std::size_t>(v)], nxt[static_cast<std::size_t>(v)]);
            else
                nxt[static_cast<std::size_t>(v)].clear();
        }
    }

    for (int v = 0; v < n; ++v) {
        fnv(hash, 0x0f1e2d3c4b5a6978ULL);
        fnv(hash, static_cast<std::uint64_t>(res.ledger[static_cast<std::size_t>(v)]));
        for (long long x : res.outputs[static_cast<std::size_t>(v)])
            fnv(hash, static_cast<std::uint64_t>(x));
    }
    res.transcript_hash = hash;
    res.rounds = round;
    res.metrics = compute_metrics(res.ledger);
    return res;
}

Metrics sweep_ids(const Graph& g, const Program& program, int num_permutations,
                  std::uint64_t seed, const RunOptions& opt) {
    if (num_permutations < 1) throw std::invalid_argument("sweep_ids: need >= 1 permutation");
    Metrics worst;
    bool first = true;
    for (int p = 0; p <= num_permutations; ++p) {
        IdAssignment ids = (p == 0) ? IdAssignment::identity(g.n())
                                    : IdAssignment::permuted(g.n(), hash_combine(seed, p));
        ExecutionResult r = run(g, ids, program, opt);
        if (first || worst.avg < r.metrics.avg) {
            worst = r.metrics;
            first = false;
        }
    }
    return worst;
}

}  // namespace locavg
