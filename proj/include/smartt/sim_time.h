// -*- c-basic-offset: 4; indent-tabs-mode: nil -*-
#ifndef SMARTT_SIM_TIME_H
#define SMARTT_SIM_TIME_H

#include <cstdint>

namespace smartt {

// All simulation time is integer nanoseconds.  Latency constants are
// integral and comparisons are exact, which keeps runs bit-reproducible.
using SimTime = int64_t;

using ByteCount = int64_t;   // bytes
using LinkSpeed = int64_t;   // bits per second

constexpr SimTime TIME_INFINITY = INT64_MAX;

constexpr SimTime time_from_us(int64_t us) { return us * 1000; }
constexpr SimTime time_from_ms(int64_t ms) { return ms * 1000000; }
constexpr double time_as_us(SimTime t) { return static_cast<double>(t) / 1e3; }

// Wire time of size_bytes at speed_bps, rounded up to a whole nanosecond
// so that even a 64B header occupies the link for a nonzero tick.
constexpr SimTime serialization_ns(ByteCount size_bytes, LinkSpeed speed_bps) {
    const int64_t bits = size_bytes * 8;
    return (bits * 1000000000 + speed_bps - 1) / speed_bps;
}

}  // namespace smartt

#endif
