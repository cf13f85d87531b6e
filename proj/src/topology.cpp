// -*- c-basic-offset: 4; indent-tabs-mode: nil -*-
#include "smartt/topology.h"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace smartt {

void FatTreeConfig::validate_and_derive() {
    if (n_hosts <= 0) throw ConfigError("topology.n_hosts must be positive");
    if (link_speed <= 0) throw ConfigError("topology.link_speed must be positive");
    if (link_latency <= 0) throw ConfigError("topology.link_latency: zero-length links are forbidden");
    if (switch_latency < 0) throw ConfigError("topology.switch_latency must be non-negative");
    if (mtu < 2 * HEADER_SIZE) throw ConfigError("topology.mtu too small");
    if (oversub != 1 && oversub != 2 && oversub != 4 && oversub != 8)
        throw ConfigError("topology.oversub must be 1, 2, 4 or 8");
    if (tiers != 2 && tiers != 3) throw ConfigError("topology.tiers must be 2 or 3");
    if (!(red_kmin_frac >= 0 && red_kmin_frac < red_kmax_frac && red_kmax_frac <= 1.0))
        throw ConfigError("topology.red thresholds must satisfy 0 <= kmin < kmax <= capacity");

    if (tiers == 3) {
        // classic k-ary tree: k pods of (k/2) leaves x (k/2) hosts
        int k = 2;
        while (k * k * k / 4 < n_hosts) k += 2;
        if (k * k * k / 4 != n_hosts)
            throw ConfigError("topology.n_hosts: a 3-tier tree needs k^3/4 hosts (16, 54, 128, ...)");
        if (oversub != 1)
            throw ConfigError("topology.oversub: 3-tier trees are built non-blocking here");
        if (hosts_per_rack != 0 && hosts_per_rack != k / 2)
            throw ConfigError("topology.hosts_per_rack inconsistent with 3-tier radix");
        hosts_per_rack = k / 2;
        return;
    }

    if (hosts_per_rack == 0) {
        const int root = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n_hosts))));
        for (int d = root; d <= n_hosts; ++d) {
            if (n_hosts % d == 0) {
                hosts_per_rack = d;
                break;
            }
        }
    }
    if (hosts_per_rack <= 0 || n_hosts % hosts_per_rack != 0)
        throw ConfigError("topology.hosts_per_rack must divide n_hosts");
    if (n_hosts / hosts_per_rack < 2)
        throw ConfigError("topology: a fat tree needs at least two racks");
    if (hosts_per_rack % oversub != 0 || hosts_per_rack / oversub < 1)
        throw ConfigError("topology.oversub must divide hosts_per_rack");
}

Topology::Topology(const FatTreeConfig& cfg, EventQueue& ev, Rng& rng)
    : _cfg(cfg), _ev(ev), _rng(rng) {
    _cfg.validate_and_derive();
    _n_racks = _cfg.n_hosts / _cfg.hosts_per_rack;

    if (_cfg.tiers == 2) {
        _n_spines = _cfg.hosts_per_rack / _cfg.oversub;
        _brtt_ref = base_rtt(_n_racks > 1 ? HopClass::InterRack : HopClass::IntraRack);
    } else {
        _k = _cfg.hosts_per_rack * 2;
        _brtt_ref = base_rtt(HopClass::InterPod);
    }
    _bdp_ref = (_cfg.link_speed * _brtt_ref + 8 * 1000000000LL - 1) / (8 * 1000000000LL);
    _queue_capacity = _bdp_ref;
    _red.kmin = static_cast<ByteCount>(_cfg.red_kmin_frac * static_cast<double>(_queue_capacity));
    _red.kmax = static_cast<ByteCount>(_cfg.red_kmax_frac * static_cast<double>(_queue_capacity));

    _host_rx.resize(_cfg.n_hosts);
    if (_cfg.tiers == 2)
        build_two_tier();
    else
        build_three_tier();
}

int Topology::pod_of(HostId h) const {
    if (_cfg.tiers == 2) return rack_of(h);
    const int leaves_per_pod = _k / 2;
    return rack_of(h) / leaves_per_pod;
}

HopClass Topology::hop_class(HostId src, HostId dst) const {
    if (rack_of(src) == rack_of(dst)) return HopClass::IntraRack;
    if (_cfg.tiers == 2) return HopClass::InterRack;
    return pod_of(src) == pod_of(dst) ? HopClass::InterRack : HopClass::InterPod;
}

static int switches_on_path(HopClass c) {
    switch (c) {
        case HopClass::IntraRack: return 1;
        case HopClass::InterRack: return 3;
        case HopClass::InterPod: return 5;
    }
    return 0;
}

SimTime Topology::base_rtt(HopClass c) const {
    const int n_sw = switches_on_path(c);
    const int n_links = n_sw + 1;
    const SimTime ser_data = serialization_ns(_cfg.mtu, _cfg.link_speed);
    const SimTime ser_hdr = serialization_ns(HEADER_SIZE, _cfg.link_speed);
    const SimTime one_way_fixed = n_links * _cfg.link_latency + n_sw * _cfg.switch_latency;
    return (one_way_fixed + n_links * ser_data) + (one_way_fixed + n_links * ser_hdr);
}

ByteCount Topology::bdp(HopClass c) const {
    return (_cfg.link_speed * base_rtt(c) + 8 * 1000000000LL - 1) / (8 * 1000000000LL);
}

int Topology::path_count(HostId src, HostId dst) const {
    assert(src != dst);
    switch (hop_class(src, dst)) {
        case HopClass::IntraRack: return 1;
        case HopClass::InterRack: return _cfg.tiers == 2 ? _n_spines : _k / 2;
        case HopClass::InterPod: return (_k / 2) * (_k / 2);
    }
    return 0;
}

SwitchPort& Topology::make_port(Switch& sw, const std::string& port_name, bool to_host) {
    const SimTime dst_latency = to_host ? 0 : _cfg.switch_latency;
    sw.ports.push_back(std::make_unique<SwitchPort>(
        _ev, _rng, sw.name + "." + port_name, _cfg.link_speed, _queue_capacity,
        _queue_capacity, _red, _cfg.trimming, /*marking=*/true, _cfg.link_latency,
        dst_latency));
    return *sw.ports.back();
}

void Topology::wire(SwitchPort& port, int dst_switch) {
    port.set_deliver([this, dst_switch](Packet p) { switch_receive(dst_switch, p); });
}

void Topology::wire_to_host(SwitchPort& port, HostId h) {
    port.set_deliver([this, h](Packet p) {
        assert(_host_rx[h]);
        _host_rx[h](p);
    });
}

void Topology::build_two_tier() {
    // layout: [0, n_racks) ToRs, [n_racks, n_racks + n_spines) spines.
    // ToR ports: hosts_per_rack downlinks then n_spines uplinks.
    // Spine ports: one downlink per ToR.
    for (int t = 0; t < _n_racks; ++t) _switches.push_back({"tor" + std::to_string(t), {}});
    for (int s = 0; s < _n_spines; ++s) _switches.push_back({"spine" + std::to_string(s), {}});

    for (int t = 0; t < _n_racks; ++t) {
        Switch& tor = _switches[t];
        for (int j = 0; j < _cfg.hosts_per_rack; ++j) {
            const HostId h = static_cast<HostId>(t * _cfg.hosts_per_rack + j);
            wire_to_host(make_port(tor, "host" + std::to_string(j), true), h);
        }
        for (int s = 0; s < _n_spines; ++s) {
            wire(make_port(tor, "up" + std::to_string(s), false), _n_racks + s);
        }
    }
    for (int s = 0; s < _n_spines; ++s) {
        Switch& spine = _switches[_n_racks + s];
        for (int t = 0; t < _n_racks; ++t) {
            wire(make_port(spine, "down" + std::to_string(t), false), t);
        }
    }
}

void Topology::build_three_tier() {
    // k pods; pod p has k/2 leaves (global leaf index p*k/2+l) and k/2
    // aggs; (k/2)^2 cores, core a*(k/2)+j attaches to agg a of each pod.
    const int half = _k / 2;
    const int n_leaves = _n_racks;
    const int n_aggs = _k * half;
    _agg_base = n_leaves;
    _core_base = n_leaves + n_aggs;

    for (int l = 0; l < n_leaves; ++l) _switches.push_back({"leaf" + std::to_string(l), {}});
    for (int a = 0; a < n_aggs; ++a) _switches.push_back({"agg" + std::to_string(a), {}});
    for (int c = 0; c < half * half; ++c) _switches.push_back({"core" + std::to_string(c), {}});

    for (int l = 0; l < n_leaves; ++l) {
        Switch& leaf = _switches[l];
        const int pod = l / half;
        for (int j = 0; j < half; ++j) {
            const HostId h = static_cast<HostId>(l * half + j);
            wire_to_host(make_port(leaf, "host" + std::to_string(j), true), h);
        }
        for (int a = 0; a < half; ++a) {
            wire(make_port(leaf, "up" + std::to_string(a), false), _agg_base + pod * half + a);
        }
    }
    for (int a = 0; a < n_aggs; ++a) {
        Switch& agg = _switches[_agg_base + a];
        const int pod = a / half;
        const int row = a % half;  // position within pod decides core row
        for (int l = 0; l < half; ++l) {
            wire(make_port(agg, "down" + std::to_string(l), false), pod * half + l);
        }
        for (int j = 0; j < half; ++j) {
            wire(make_port(agg, "up" + std::to_string(j), false), _core_base + row * half + j);
        }
    }
    for (int c = 0; c < half * half; ++c) {
        Switch& core = _switches[_core_base + c];
        const int row = c / half;
        for (int pod = 0; pod < _k; ++pod) {
            wire(make_port(core, "pod" + std::to_string(pod), false),
                 _agg_base + pod * half + row);
        }
    }
}

SwitchPort& Topology::next_port(int sw_idx, const Packet& p) {
    const int dst_rack = rack_of(p.dst);
    const int within = static_cast<int>(p.dst) % _cfg.hosts_per_rack;
    Switch& sw = _switches[sw_idx];

    if (_cfg.tiers == 2) {
        if (sw_idx < _n_racks) {  // ToR
            if (sw_idx == dst_rack) return *sw.ports[within];
            return *sw.ports[_cfg.hosts_per_rack + static_cast<int>(p.entropy) % _n_spines];
        }
        return *sw.ports[dst_rack];  // spine downlink
    }

    const int half = _k / 2;
    const int dst_pod = dst_rack / half;
    if (sw_idx < _n_racks) {  // leaf
        if (sw_idx == dst_rack) return *sw.ports[within];
        return *sw.ports[half + static_cast<int>(p.entropy) % half];
    }
    if (sw_idx < _core_base) {  // agg
        const int pod = (sw_idx - _agg_base) / half;
        if (pod == dst_pod) return *sw.ports[dst_rack % half];
        return *sw.ports[half + (static_cast<int>(p.entropy) / half) % half];
    }
    return *sw.ports[dst_pod];  // core
}

void Topology::switch_receive(int sw_idx, Packet p) {
    next_port(sw_idx, p).try_enqueue(std::move(p));
}

void Topology::receive_from_host(HostId src, Packet p) {
    switch_receive(rack_of(src), std::move(p));
}

void Topology::set_host_receiver(HostId h, std::function<void(Packet)> f) {
    _host_rx[h] = std::move(f);
}

void Topology::set_queue_trace(
    std::function<void(const std::string&, SimTime, ByteCount, ByteCount)> f) {
    _queue_trace = std::move(f);
    for (auto& sw : _switches) {
        for (auto& port : sw.ports) {
            SwitchPort* raw = port.get();
            raw->set_trace([this, raw](SimTime t, ByteCount d, ByteCount c) {
                _queue_trace(raw->name(), t, d, c);
            });
        }
    }
}

std::vector<std::vector<std::string>> Topology::enumerate_paths(HostId src, HostId dst) const {
    std::vector<std::vector<std::string>> out;
    const int n = path_count(src, dst);
    out.reserve(n);
    for (int e = 0; e < n; ++e) out.push_back(route(src, dst, static_cast<uint32_t>(e)));
    return out;
}

std::vector<std::string> Topology::route(HostId src, HostId dst, uint32_t entropy) const {
    std::vector<std::string> path;
    path.push_back("host" + std::to_string(src) + ".nic");
    Packet probe;
    probe.dst = dst;
    probe.entropy = entropy;
    int sw_idx = rack_of(src);
    // walk the same forwarding logic the data path uses
    auto* self = const_cast<Topology*>(this);
    while (true) {
        SwitchPort& port = self->next_port(sw_idx, probe);
        path.push_back(port.name());
        // ports toward hosts terminate the walk
        if (port.name().find(".host") != std::string::npos) break;
        // find the switch this port delivers into by name lookup
        const std::string& pname = port.name();
        const std::string sw_name = pname.substr(0, pname.find('.'));
        int next = -1;
        if (_cfg.tiers == 2) {
            if (sw_idx < _n_racks) {
                next = _n_racks + static_cast<int>(probe.entropy) % _n_spines;
            } else {
                next = rack_of(dst);
            }
        } else {
            const int half = _k / 2;
            const int dst_pod = rack_of(dst) / half;
            if (sw_idx < _n_racks) {
                next = _agg_base + (sw_idx / half) * half + static_cast<int>(probe.entropy) % half;
            } else if (sw_idx < _core_base) {
                const int pod = (sw_idx - _agg_base) / half;
                const int row = (sw_idx - _agg_base) % half;
                if (pod == dst_pod)
                    next = rack_of(dst);
                else
                    next = _core_base + row * half + (static_cast<int>(probe.entropy) / half) % half;
            } else {
                next = _agg_base + dst_pod * half + (sw_idx - _core_base) / half;
            }
        }
        sw_idx = next;
    }
    return path;
}

Topology::FabricStats Topology::fabric_stats() const {
    FabricStats fs;
    for (const auto& sw : _switches) {
        for (const auto& port : sw.ports) {
            const PortStats& s = port->stats();
            fs.trims += s.trims;
            fs.data_drops += s.data_drops;
            fs.ctrl_drops += s.ctrl_drops;
            fs.marks += s.marks;
            if (s.peak_occupancy > fs.peak_occupancy) fs.peak_occupancy = s.peak_occupancy;
        }
    }
    return fs;
}

std::vector<const SwitchPort*> Topology::ports() const {
    std::vector<const SwitchPort*> out;
    for (const auto& sw : _switches)
        for (const auto& port : sw.ports) out.push_back(port.get());
    return out;
}

SwitchPort* Topology::find_port(const std::string& name) {
    for (auto& sw : _switches)
        for (auto& port : sw.ports)
            if (port->name() == name) return port.get();
    return nullptr;
}

}  // namespace smartt
