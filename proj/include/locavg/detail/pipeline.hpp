#ifndef LOCAVG_DETAIL_PIPELINE_HPP
#define LOCAVG_DETAIL_PIPELINE_HPP

#include <vector>

#include "locavg/engine.hpp"

namespace locavg::detail {

// Message tags shared by the pipelined vertex programs.
inline constexpr long long TAG_HELLO = 1;    // {id}
inline constexpr long long TAG_JOIN = 2;     // {id, h_index}
inline constexpr long long TAG_COLOR = 3;    // {value} reduction-step color
inline constexpr long long TAG_PICK = 4;     // {value} committed local color
inline constexpr long long TAG_PROPOSE = 5;  // proposals (edge color / match / rand color)
inline constexpr long long TAG_ACCEPT = 6;
inline constexpr long long TAG_REJECT = 7;
inline constexpr long long TAG_USED = 8;     // {colors...} grown incident-used set
inline constexpr long long TAG_DONE = 9;     // stage completion marker

// Per-neighbor knowledge a pipelined vertex accumulates: the paper-ID
// (announced in round 1) and the H-set join round (0 while active).
struct NeighborInfo {
    long long id = 0;
    int h = 0;
    bool final = false;
    Payload output;  // final-broadcast payload once `final`
};

// Procedure-Partition bookkeeping shared by every composed program: vertices
// join the first round in which at most A neighbors are still unjoined and
// announce the join; the announcement is an ordinary message here because the
// composed programs keep running afterwards.
struct PartitionLayer {
    long long own_id = 0;
    int A = 0;
    int own_h = 0;  // 0 while unjoined
    int unjoined_neighbors = 0;
    std::vector<NeighborInfo> nb;

    void init(const VertexContext& ctx, int A_) {
        own_id = ctx.paper_id;
        A = A_;
        unjoined_neighbors = ctx.degree;
        nb.assign(static_cast<std::size_t>(ctx.degree), {});
    }

    // Digest HELLO/JOIN and record final payloads; call once per step inbox.
    void absorb(const Message& m) {
        auto& info = nb[static_cast<std::size_t>(m.from_slot)];
        if (m.tag == TAG_HELLO) {
            info.id = m.data[0];
        } else if (m.tag == TAG_JOIN) {
            info.id = m.data[0];
            info.h = static_cast<int>(m.data[1]);
            --unjoined_neighbors;
        } else if (m.tag == kFinalTag) {
            info.final = true;
            info.output = m.data;
        }
    }

    // Join rule; returns true in the round the vertex joins.
    bool maybe_join(int round, RoundApi& api) {
        if (own_h != 0) return false;
        if (round == 1) api.broadcast(TAG_HELLO, {own_id});
        if (unjoined_neighbors <= A) {
            own_h = round;
            api.broadcast(TAG_JOIN, {own_id, own_h});
            return true;
        }
        return false;
    }

    bool joined() const { return own_h != 0; }
};

}  // namespace locavg::detail

#endif
