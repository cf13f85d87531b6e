// -*- c-basic-offset: 4; indent-tabs-mode: nil -*-
#ifndef SMARTT_PACKET_H
#define SMARTT_PACKET_H

#include <cstdint>

#include "smartt/sim_time.h"

namespace smartt {

using FlowId = uint32_t;
using HostId = uint32_t;
using PacketSeq = uint32_t;

// Ack, Nack and TrimmedHeader are control packets: they ride the
// strict-priority queue and are never ECN-marked.
enum class PacketKind : uint8_t { Data, TrimmedHeader, Ack, Nack };

constexpr ByteCount HEADER_SIZE = 64;  // wire size of all control packets

struct Packet {
    FlowId flow_id = 0;
    PacketSeq psn = 0;
    PacketKind kind = PacketKind::Data;
    HostId src = 0;          // original data direction; control packets swap
    HostId dst = 0;
    ByteCount size_bytes = 0;      // wire size of *this* packet
    ByteCount orig_size_bytes = 0; // data bytes covered (Ack) or trimmed (TrimmedHeader/Nack)
    uint32_t entropy = 0;          // path selector; echoed back on Ack/Nack
    bool ecn_marked = false;       // set by RED at switch dequeue
    bool ecn_echo = false;         // Ack only: receiver's copy of the data mark
    bool retransmit = false;
    SimTime ts_sent = 0;           // sender timestamp, echoed on Ack/Nack

    bool is_control() const { return kind != PacketKind::Data; }
};

inline Packet make_data(FlowId flow, PacketSeq psn, HostId src, HostId dst,
                        ByteCount size, uint32_t entropy, SimTime now) {
    Packet p;
    p.flow_id = flow;
    p.psn = psn;
    p.kind = PacketKind::Data;
    p.src = src;
    p.dst = dst;
    p.size_bytes = size;
    p.orig_size_bytes = size;
    p.entropy = entropy;
    p.ts_sent = now;
    return p;
}

// Payload removed, header forwarded on the control queue toward the
// receiver, which answers with a Nack.  Entropy, psn and the timestamp
// echo survive so the feedback is attributed to the path actually taken.
inline Packet make_trim_header(const Packet& data) {
    Packet p = data;
    p.kind = PacketKind::TrimmedHeader;
    p.size_bytes = HEADER_SIZE;
    p.orig_size_bytes = data.size_bytes;
    p.ecn_marked = false;
    return p;
}

inline Packet make_ack(const Packet& data) {
    Packet p;
    p.flow_id = data.flow_id;
    p.psn = data.psn;
    p.kind = PacketKind::Ack;
    p.src = data.dst;  // travels back to the sender
    p.dst = data.src;
    p.size_bytes = HEADER_SIZE;
    p.orig_size_bytes = data.size_bytes;
    p.entropy = data.entropy;
    p.ecn_echo = data.ecn_marked;
    p.ts_sent = data.ts_sent;
    return p;
}

inline Packet make_nack(const Packet& trim_header) {
    Packet p;
    p.flow_id = trim_header.flow_id;
    p.psn = trim_header.psn;
    p.kind = PacketKind::Nack;
    p.src = trim_header.dst;
    p.dst = trim_header.src;
    p.size_bytes = HEADER_SIZE;
    p.orig_size_bytes = trim_header.orig_size_bytes;
    p.entropy = trim_header.entropy;
    p.ts_sent = trim_header.ts_sent;
    return p;
}

}  // namespace smartt

#endif
