#ifndef LOCAVG_ENGINE_HPP
#define LOCAVG_ENGINE_HPP

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "locavg/graph.hpp"
#include "locavg/rational.hpp"
#include "locavg/rng.hpp"

namespace locavg {

using Payload = std::vector<long long>;

struct Message {
    int from_slot;  // position of the sender in the receiver's neighbor list
    long long tag;
    Payload data;
};

// What a vertex knows at spawn time: its own index, its paper-ID, its degree,
// the global parameters its program was configured with, and a private
// random stream derived from (run seed, vertex index).
struct VertexContext {
    int vertex;
    long long paper_id;
    int degree;
    int n;
    RngStream rng;
};

// Per-round interface handed to a vertex. Neighbors are addressed by slot
// (0..degree-1); a slot out of range is a locality violation.
class RoundApi {
public:
    RoundApi(std::span<const Message> inbox, int degree)
        : inbox_(inbox), degree_(degree) {}

    std::span<const Message> inbox() const { return inbox_; }
    int degree() const { return degree_; }

    void send(int slot, long long tag, Payload data) {
        if (slot < 0 || slot >= degree_)
            throw std::runtime_error("locality violation: message to non-neighbor slot " +
                                     std::to_string(slot));
        out_.push_back({slot, tag, std::move(data)});
    }
    void broadcast(long long tag, const Payload& data) {
        for (int s = 0; s < degree_; ++s) out_.push_back({s, tag, data});
    }

    // Final output. The engine broadcasts it to all neighbors as this round's
    // traffic; the vertex is inert afterwards.
    void finish(Payload output) {
        finished_ = true;
        output_ = std::move(output);
    }
    bool finished() const { return finished_; }

    struct Out { int slot; long long tag; Payload data; };
    const std::vector<Out>& outgoing() const { return out_; }
    Payload take_output() { return std::move(output_); }

private:
    std::span<const Message> inbox_;
    int degree_;
    std::vector<Out> out_;
    bool finished_ = false;
    Payload output_;
};

class VertexProcess {
public:
    virtual ~VertexProcess() = default;

    // Send phase: sees messages sent in the previous round (start-of-round state).
    virtual void step(int round, RoundApi& api) = 0;

    // Optional receive phase: sees the messages sent in THIS round and may only
    // finish (propose/compare/commit compression for the randomized programs).
    virtual void resolve(int /*round*/, RoundApi& /*api*/) {}
};

class Program {
public:
    virtual ~Program() = default;
    virtual std::unique_ptr<VertexProcess> spawn(const VertexContext& ctx) const = 0;
    virtual bool uses_resolve() const { return false; }
};

// Tag reserved for the automatic final-output broadcast.
inline constexpr long long kFinalTag = -1;

struct Metrics {
    Rational avg;
    int worst = 0;
    std::vector<long long> decay;  // decay[i-1] = #vertices with r(v) >= i

    long long decay_at(int i) const {  // 1-based round index
        if (i < 1 || i > static_cast<int>(decay.size())) return 0;
        return decay[static_cast<std::size_t>(i - 1)];
    }
};

struct ExecutionResult {
    std::vector<Payload> outputs;
    std::vector<int> ledger;  // r(v): round of the final-output broadcast
    Metrics metrics;
    std::uint64_t transcript_hash = 0;
    int rounds = 0;
    long long message_count = 0;
};

struct RunOptions {
    std::uint64_t seed = 0;
    long long round_cap = 0;  // 0: default 64*(log2(n)+1)^2
};

class RoundCapExceeded : public std::runtime_error {
public:
    RoundCapExceeded(long long cap, std::vector<int> active)
        : std::runtime_error("round cap " + std::to_string(cap) + " exceeded with " +
                             std::to_string(active.size()) + " active vertices"),
          active_vertices(std::move(active)) {}
    std::vector<int> active_vertices;
};

long long default_round_cap(int n);

ExecutionResult run(const Graph& g, const IdAssignment& ids, const Program& program,
                    const RunOptions& opt = {});

Rational vertex_averaged(const std::vector<int>& ledger);
int worst_case(const std::vector<int>& ledger);
Metrics compute_metrics(const std::vector<int>& ledger);

// Runs the identity assignment plus `num_permutations` sampled ID bijections,
// returns the metrics of the worst observed average.
Metrics sweep_ids(const Graph& g, const Program& program, int num_permutations,
                  std::uint64_t seed, const RunOptions& opt = {});

}  // namespace locavg

#endif
