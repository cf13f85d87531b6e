// -*- c-basic-offset: 4; indent-tabs-mode: nil -*-
#include "smartt/event_queue.h"

#include <stdexcept>
#include <string>

namespace smartt {

EventId EventQueue::schedule(SimTime fire_at, std::function<void()> cb) {
    if (fire_at < _now) {
        throw std::logic_error("schedule in the past: fire_at=" +
                               std::to_string(fire_at) + " now=" + std::to_string(_now));
    }
    const EventId id = _next_id++;
    _heap.push(Entry{fire_at, _next_seq++, id});
    _callbacks.emplace(id, std::move(cb));
    return id;
}

bool EventQueue::cancel(EventId id) {
    auto it = _callbacks.find(id);
    if (it == _callbacks.end()) return false;  // already fired or never existed
    _callbacks.erase(it);
    _cancelled.insert(id);  // lazy removal; heap entry is skipped on pop
    return true;
}

bool EventQueue::pop_next(Entry& out) {
    while (!_heap.empty()) {
        Entry e = _heap.top();
        _heap.pop();
        auto c = _cancelled.find(e.id);
        if (c != _cancelled.end()) {
            _cancelled.erase(c);
            continue;
        }
        out = e;
        return true;
    }
    return false;
}

void EventQueue::dispatch(const Entry& e) {
    auto it = _callbacks.find(e.id);
    auto cb = std::move(it->second);
    _callbacks.erase(it);
    _now = e.fire_at;
    ++_processed;
    cb();
}

void EventQueue::run_until(SimTime t_end) {
    while (!_heap.empty()) {
        Entry e;
        if (!pop_next(e)) break;
        if (e.fire_at > t_end) {
            // not due yet: put it back and stop
            _heap.push(e);
            break;
        }
        dispatch(e);
    }
    if (_now < t_end) _now = t_end;
}

bool EventQueue::run_to_quiescence(SimTime t_cap) {
    Entry e;
    while (pop_next(e)) {
        if (e.fire_at > t_cap) {
            _heap.push(e);
            _now = t_cap;
            return false;
        }
        dispatch(e);
    }
    return true;
}

}  // namespace smartt
