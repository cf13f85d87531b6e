// -*- c-basic-offset: 4; indent-tabs-mode: nil -*-
#ifndef SMARTT_EVENT_QUEUE_H
#define SMARTT_EVENT_QUEUE_H

#include <cstdint>
#include <functional>
#include <queue>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "smartt/sim_time.h"

namespace smartt {

using EventId = uint64_t;

// Time-ordered scheduler driving the whole simulation.  Strictly
// single-threaded: all model state is mutated from event callbacks.
// Events with equal fire time run in insertion order, so a run is a
// total order over (fire_at, insertion sequence).
class EventQueue {
  public:
    EventQueue() = default;

    SimTime now() const { return _now; }

    // Schedules cb at fire_at.  Scheduling in the past is a programming
    // error and throws.
    EventId schedule(SimTime fire_at, std::function<void()> cb);

    // True iff the event existed and had not fired; a cancelled event
    // never fires.
    bool cancel(EventId id);

    // Processes every event with fire_at <= t_end in order.  The clock
    // ends at t_end, or at the last processed event if the queue drains
    // first and nothing new is scheduled.
    void run_until(SimTime t_end);

    // Runs until the queue is empty (or t_cap as a safety stop).
    // Returns true if the queue fully drained.
    bool run_to_quiescence(SimTime t_cap = TIME_INFINITY);

    size_t pending() const { return _heap.size() - _cancelled.size(); }
    uint64_t processed() const { return _processed; }

  private:
    struct Entry {
        SimTime fire_at;
        uint64_t seq;  // tie-break: FIFO among equal fire times
        EventId id;
        bool operator>(const Entry& o) const {
            if (fire_at != o.fire_at) return fire_at > o.fire_at;
            return seq > o.seq;
        }
    };

    bool pop_next(Entry& out);
    void dispatch(const Entry& e);

    SimTime _now = 0;
    uint64_t _next_seq = 0;
    EventId _next_id = 1;
    uint64_t _processed = 0;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> _heap;
    std::unordered_map<EventId, std::function<void()>> _callbacks;
    std::unordered_set<EventId> _cancelled;
};

}  // namespace smartt

#endif
