// -*- c-basic-offset: 4; indent-tabs-mode: nil -*-
#include "smartt/switch_port.h"

#include <cassert>
#include <utility>

namespace smartt {

SwitchPort::SwitchPort(EventQueue& ev, Rng& rng, std::string name,
                       LinkSpeed link_speed, ByteCount data_capacity,
                       ByteCount ctrl_capacity, RedConfig red, bool trimming,
                       bool marking, SimTime link_latency, SimTime dst_switch_latency)
    : _ev(ev),
      _rng(rng),
      _name(std::move(name)),
      _link_speed(link_speed),
      _data_capacity(data_capacity),
      _ctrl_capacity(ctrl_capacity),
      _red(red),
      _trimming(trimming),
      _marking(marking),
      _link_latency(link_latency),
      _dst_switch_latency(dst_switch_latency) {
    assert(_red.kmin >= 0 && _red.kmin < _red.kmax && _red.kmax <= _data_capacity);
}

double SwitchPort::mark_probability(ByteCount q, const RedConfig& red) {
    if (q <= red.kmin) return 0.0;
    if (q >= red.kmax) return 1.0;
    return static_cast<double>(q - red.kmin) / static_cast<double>(red.kmax - red.kmin);
}

void SwitchPort::touch_stats() {
    const SimTime now = _ev.now();
    const ByteCount occ = _data_occ;
    _stats.occupancy_integral +=
        static_cast<double>(_stats.cur_occupancy) * static_cast<double>(now - _stats.last_change);
    _stats.cur_occupancy = occ;
    _stats.last_change = now;
    if (occ > _stats.peak_occupancy) _stats.peak_occupancy = occ;
    if (_trace) _trace(now, _data_occ, _ctrl_occ);
}

EnqueueOutcome SwitchPort::try_enqueue(Packet p) {
    EnqueueOutcome outcome;
    if (p.is_control()) {
        if (_ctrl_occ + p.size_bytes > _ctrl_capacity) {
            ++_stats.ctrl_drops;
            return EnqueueOutcome::DroppedCtrl;
        }
        _ctrl_q.push_back(p);
        _ctrl_occ += p.size_bytes;
        ++_stats.ctrl_enqueued;
        outcome = EnqueueOutcome::Enqueued;
    } else if (_data_occ + p.size_bytes <= _data_capacity) {
        _data_q.push_back(p);
        _data_occ += p.size_bytes;
        ++_stats.data_enqueued;
        outcome = EnqueueOutcome::Enqueued;
    } else if (_trimming) {
        // Trim only what would otherwise be dropped: keep the header,
        // forward it on the priority queue so feedback outruns the data.
        Packet header = make_trim_header(p);
        ++_stats.trims;
        if (_ctrl_occ + header.size_bytes > _ctrl_capacity) {
            ++_stats.ctrl_drops;
            outcome = EnqueueOutcome::Trimmed;  // header lost; RTO recovers
        } else {
            _ctrl_q.push_back(header);
            _ctrl_occ += header.size_bytes;
            outcome = EnqueueOutcome::Trimmed;
        }
    } else {
        ++_stats.data_drops;
        return EnqueueOutcome::Dropped;  // silent loss, detected by timeout
    }
    touch_stats();
    if (!_busy) start_transmit();
    return outcome;
}

void SwitchPort::start_transmit() {
    assert(!_busy);
    Packet p;
    if (!_ctrl_q.empty()) {
        p = _ctrl_q.front();
        _ctrl_q.pop_front();
        _ctrl_occ -= p.size_bytes;
        ++_stats.ctrl_dequeued;
    } else if (!_data_q.empty()) {
        p = _data_q.front();
        // RED samples the occupancy at dequeue, including the departing
        // packet; control packets are never marked.
        if (_marking && !p.ecn_marked) {
            const double prob = mark_probability(_data_occ, _red);
            if (prob >= 1.0 || (prob > 0.0 && _rng.bernoulli(prob))) {
                p.ecn_marked = true;
                ++_stats.marks;
            }
        }
        _data_q.pop_front();
        _data_occ -= p.size_bytes;
        ++_stats.data_dequeued;
    } else {
        return;
    }
    touch_stats();
    _busy = true;

    const SimTime ser = serialization_ns(p.size_bytes, _link_speed);
    const SimTime arrival = _ev.now() + ser + _link_latency + _dst_switch_latency;
    _ev.schedule(arrival, [this, p]() { _deliver(p); });
    _ev.schedule(_ev.now() + ser, [this]() { on_transmit_done(); });
}

void SwitchPort::on_transmit_done() {
    _busy = false;
    if (!_ctrl_q.empty() || !_data_q.empty()) start_transmit();
}

}  // namespace smartt
