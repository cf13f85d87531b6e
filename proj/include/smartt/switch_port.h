// -*- c-basic-offset: 4; indent-tabs-mode: nil -*-
#ifndef SMARTT_SWITCH_PORT_H
#define SMARTT_SWITCH_PORT_H

#include <deque>
#include <functional>
#include <string>

#include "smartt/event_queue.h"
#include "smartt/packet.h"
#include "smartt/rng.h"
#include "smartt/sim_time.h"

namespace smartt {

// RED thresholds in bytes.  Marking probability rises linearly from 0 at
// kmin to 1 at kmax, applied to data packets when they are dequeued.
struct RedConfig {
    ByteCount kmin = 0;
    ByteCount kmax = 0;
};

enum class EnqueueOutcome : uint8_t { Enqueued, Trimmed, Dropped, DroppedCtrl };

struct PortStats {
    uint64_t data_enqueued = 0;
    uint64_t ctrl_enqueued = 0;
    uint64_t trims = 0;        // data packets whose payload was cut here
    uint64_t data_drops = 0;   // full drops (trimming disabled)
    uint64_t ctrl_drops = 0;
    uint64_t marks = 0;
    uint64_t data_dequeued = 0;
    uint64_t ctrl_dequeued = 0;
    ByteCount peak_occupancy = 0;
    // time-weighted average occupancy support
    ByteCount cur_occupancy = 0;
    SimTime last_change = 0;
    double occupancy_integral = 0;  // bytes * ns
};

// Output port of a switch: a data FIFO bounded at one BDP with RED
// marking and trim-on-overflow, plus a strict-priority control FIFO.
// The port owns the attached link: it serializes one packet at a time
// and schedules the arrival at the next node after link propagation and
// the downstream switch traversal latency.
class SwitchPort {
  public:
    SwitchPort(EventQueue& ev, Rng& rng, std::string name, LinkSpeed link_speed,
               ByteCount data_capacity, ByteCount ctrl_capacity, RedConfig red,
               bool trimming, bool marking, SimTime link_latency,
               SimTime dst_switch_latency);

    // Where packets go after crossing the link.
    void set_deliver(std::function<void(Packet)> f) { _deliver = std::move(f); }
    // Invoked on every enqueue/dequeue with (time, data occupancy, ctrl occupancy).
    void set_trace(std::function<void(SimTime, ByteCount, ByteCount)> f) {
        _trace = std::move(f);
    }

    EnqueueOutcome try_enqueue(Packet p);

    static double mark_probability(ByteCount q, const RedConfig& red);

    const PortStats& stats() const { return _stats; }
    const std::string& name() const { return _name; }
    ByteCount data_occupancy() const { return _data_occ; }
    ByteCount ctrl_occupancy() const { return _ctrl_occ; }
    ByteCount capacity() const { return _data_capacity; }
    LinkSpeed link_speed() const { return _link_speed; }

  private:
    void start_transmit();
    void on_transmit_done();
    void touch_stats();

    EventQueue& _ev;
    Rng& _rng;
    std::string _name;
    LinkSpeed _link_speed;
    ByteCount _data_capacity;
    ByteCount _ctrl_capacity;
    RedConfig _red;
    bool _trimming;
    bool _marking;
    SimTime _link_latency;
    SimTime _dst_switch_latency;

    std::deque<Packet> _data_q;
    std::deque<Packet> _ctrl_q;
    ByteCount _data_occ = 0;
    ByteCount _ctrl_occ = 0;
    bool _busy = false;

    PortStats _stats;
    std::function<void(Packet)> _deliver;
    std::function<void(SimTime, ByteCount, ByteCount)> _trace;
};

}  // namespace smartt

#endif
