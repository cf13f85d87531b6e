// -*- c-basic-offset: 4; indent-tabs-mode: nil -*-
#ifndef SMARTT_TOPOLOGY_H
#define SMARTT_TOPOLOGY_H

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "smartt/event_queue.h"
#include "smartt/packet.h"
#include "smartt/rng.h"
#include "smartt/switch_port.h"

namespace smartt {

struct FatTreeConfig {
    int n_hosts = 16;
    int hosts_per_rack = 0;  // 0 = auto (smallest divisor >= sqrt(n_hosts))
    int oversub = 1;         // 1, 2, 4 or 8; applied at leaf uplinks
    int tiers = 2;
    LinkSpeed link_speed = 800000000000LL;  // 800 Gb/s
    SimTime link_latency = 600;
    SimTime switch_latency = 400;
    ByteCount mtu = 4096;
    double red_kmin_frac = 0.2;
    double red_kmax_frac = 0.8;
    bool trimming = true;

    void validate_and_derive();  // throws ConfigError; fills hosts_per_rack
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Hop classes by switch count on the forward path: 1 (same rack),
// 3 (via spine / intra-pod) or 5 (via core on a 3-tier tree).
enum class HopClass : uint8_t { IntraRack, InterRack, InterPod };

// Fat-tree network: switches, output ports, links and the deterministic
// (dst, entropy) -> path mapping.  Immutable wiring after build; all
// mutation happens through port queues on the event loop.
class Topology {
  public:
    Topology(const FatTreeConfig& cfg, EventQueue& ev, Rng& rng);

    const FatTreeConfig& config() const { return _cfg; }
    int n_hosts() const { return _cfg.n_hosts; }
    int n_racks() const { return _n_racks; }
    int rack_of(HostId h) const { return static_cast<int>(h) / _cfg.hosts_per_rack; }
    int pod_of(HostId h) const;

    HopClass hop_class(HostId src, HostId dst) const;
    int path_count(HostId src, HostId dst) const;
    // All distinct shortest up/down paths in entropy order; each path is
    // the port-name sequence from the source NIC to the last switch port.
    std::vector<std::vector<std::string>> enumerate_paths(HostId src, HostId dst) const;
    std::vector<std::string> route(HostId src, HostId dst, uint32_t entropy) const;

    // Idle round-trip of a full-MTU data packet plus a header-size ACK.
    SimTime base_rtt(HopClass c) const;
    SimTime base_rtt(HostId src, HostId dst) const { return base_rtt(hop_class(src, dst)); }
    // Worst (longest) class present; defines the network BDP and queue sizing.
    SimTime base_rtt_ref() const { return _brtt_ref; }
    ByteCount bdp(HopClass c) const;
    ByteCount bdp_ref() const { return _bdp_ref; }
    ByteCount queue_capacity() const { return _queue_capacity; }
    RedConfig red() const { return _red; }

    // Entry point for host NICs: routes p at the source's ToR.
    void receive_from_host(HostId src, Packet p);
    // Packets addressed to host h leave the fabric through this callback.
    void set_host_receiver(HostId h, std::function<void(Packet)> f);
    void set_queue_trace(std::function<void(const std::string&, SimTime, ByteCount, ByteCount)> f);

    struct FabricStats {
        uint64_t trims = 0;
        uint64_t data_drops = 0;
        uint64_t ctrl_drops = 0;
        uint64_t marks = 0;
        ByteCount peak_occupancy = 0;
    };
    FabricStats fabric_stats() const;
    std::vector<const SwitchPort*> ports() const;  // deterministic order
    SwitchPort* find_port(const std::string& name);

  private:
    struct Switch {
        std::string name;
        std::vector<std::unique_ptr<SwitchPort>> ports;
    };

    SwitchPort& make_port(Switch& sw, const std::string& port_name, bool to_host);
    void build_two_tier();
    void build_three_tier();
    void wire(SwitchPort& port, int dst_switch);        // deliver into a switch
    void wire_to_host(SwitchPort& port, HostId h);      // deliver to an endpoint
    void switch_receive(int sw_idx, Packet p);
    SwitchPort& next_port(int sw_idx, const Packet& p);

    FatTreeConfig _cfg;
    EventQueue& _ev;
    Rng& _rng;
    int _n_racks = 0;
    int _n_spines = 0;    // 2-tier
    int _k = 0;           // 3-tier radix
    SimTime _brtt_ref = 0;
    ByteCount _bdp_ref = 0;
    ByteCount _queue_capacity = 0;
    RedConfig _red;

    // switch layout: [0, n_racks) ToR/leaf, then spines (2-tier) or
    // aggs followed by cores (3-tier)
    std::vector<Switch> _switches;
    int _agg_base = 0;
    int _core_base = 0;
    std::vector<std::function<void(Packet)>> _host_rx;
    std::function<void(const std::string&, SimTime, ByteCount, ByteCount)> _queue_trace;
};

}  // namespace smartt

#endif
