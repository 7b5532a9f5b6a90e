// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nova/errors.hpp"
#include "nova/fixed_point.hpp"
#include "nova/pwl.hpp"

namespace nova {

/// One broadcast wave on the line network: eight (slope, bias) word pairs
/// plus a single parity tag. Words are stored widened; on the wire each is
/// format.total_bits wide. wave_index is schedule bookkeeping, not on-wire.
struct BroadcastFlit {
    std::array<std::pair<std::int32_t, std::int32_t>, 8> pairs{};
    int tag = 0;
    int wave_index = 0;
};

/// On-wire width of one flit: 8 slope/bias pairs plus the tag bit.
/// 257 bits for 16-bit words.
inline constexpr int flit_wire_bits(const FixedPointFormat& fmt) {
    return 8 * 2 * fmt.total_bits + 1;
}

inline constexpr int kLinkWireBits = 257;

/// How a lookup address maps onto the wire for a table of wave_count waves.
/// Slots index the eight pair positions of a flit; the tag selects the wave.
/// One wave (B <= 8): every pair rides wave 0, slot = segment index.
/// Two waves (B <= 16): the segment index's low bit picks the wave and the
/// remaining high bits pick the slot, so consecutive segments alternate
/// between the two waves.
struct WireAddress {
    int tag = 0;
    int slot = 0;
};

inline WireAddress wire_address(int address, int wave_count) {
    if (wave_count != 1 && wave_count != 2)
        throw ProtocolError("wire_address: wave_count must be 1 or 2, got " +
                            std::to_string(wave_count));
    if (address < 1)
        throw ProtocolError("wire_address: lookup address must be >= 1, got " +
                            std::to_string(address));
    const int s = address - 1;
    WireAddress wa;
    if (wave_count == 1) {
        wa.tag = 0;
        wa.slot = s;
    } else {
        wa.tag = s & 1;
        wa.slot = s >> 1;
    }
    if (wa.slot >= 8)
        throw ProtocolError("wire_address: address " + std::to_string(address) +
                            " needs slot " + std::to_string(wa.slot) +
                            " but a flit has 8 slots");
    return wa;
}

struct WaveSchedule {
    std::vector<BroadcastFlit> flits;
    int noc_freq_multiplier = 1;

    int wave_count() const { return static_cast<int>(flits.size()); }
};

/// Pack a quantized table into broadcast waves. ceil(B/8) flits; the NoC
/// clock multiplier equals the flit count so a full wave set still fits in
/// one base cycle. More than 16 segments cannot be addressed: the single
/// tag bit distinguishes at most two waves.
inline WaveSchedule schedule_waves(const QuantizedPwl& q) {
    const int b = static_cast<int>(q.breakpoints.size());
    if (b < 1)
        throw UnsupportedBreakpointCount("schedule_waves: table has no segments");
    if (b > static_cast<int>(kMaxHardwareSegments))
        throw UnsupportedBreakpointCount(
            "schedule_waves: " + std::to_string(b) +
            " segments exceed the 16 addressable with a 1-bit wave tag");
    const int waves = (b + 7) / 8;
    WaveSchedule sched;
    sched.noc_freq_multiplier = waves;
    sched.flits.resize(static_cast<std::size_t>(waves));
    for (int w = 0; w < waves; ++w) {
        sched.flits[static_cast<std::size_t>(w)].tag = (waves == 1) ? 0 : w;
        sched.flits[static_cast<std::size_t>(w)].wave_index = w;
    }
    for (int s = 0; s < b; ++s) {
        const WireAddress wa = wire_address(s + 1, waves);
        sched.flits[static_cast<std::size_t>(wa.tag)].pairs[static_cast<std::size_t>(wa.slot)] = {
            q.slopes[static_cast<std::size_t>(s)], q.biases[static_cast<std::size_t>(s)]};
    }
    return sched;
}

inline WaveSchedule schedule_waves(const PiecewiseLinearFn& pwl, const FixedPointFormat& fmt) {
    return schedule_waves(quantize_pwl(pwl, fmt));
}

/// Tag-match step performed at each router's input port: the wave parity of
/// the lane's lookup address is compared with the flit's tag bit; on a match
/// the (slope, bias) pair at the address's slot is pulled off the wire,
/// otherwise the lane waits for the other wave.
inline std::optional<std::pair<std::int32_t, std::int32_t>>
router_match(const BroadcastFlit& flit, int address, int wave_count) {
    const WireAddress wa = wire_address(address, wave_count);
    if (wa.tag != flit.tag) return std::nullopt;
    return flit.pairs[static_cast<std::size_t>(wa.slot)];
}

/// Line-topology broadcast network parameters. Routers sit on one snaking
/// line; clockless repeaters let a flit cross up to max_single_cycle_hops
/// routers in a single NoC cycle, and the NoC clock runs at
/// noc_freq_multiplier times the accelerator base clock.
struct NovaNocConfig {
    int num_routers = 1;
    int neurons_per_router = 1;
    int link_pairs_per_cycle = 8;
    double base_freq_mhz = 1000.0;
    int noc_freq_multiplier = 1;
    int max_single_cycle_hops = 10;
    double repeater_spacing_mm = 1.0;
    int lanes_per_cycle = 1;

    void validate() const {
        if (num_routers < 1) throw ConfigError("noc: num_routers must be >= 1");
        if (neurons_per_router < 1) throw ConfigError("noc: neurons_per_router must be >= 1");
        if (link_pairs_per_cycle != 8)
            throw ConfigError("noc: link carries exactly 8 slope/bias pairs per cycle, got " +
                              std::to_string(link_pairs_per_cycle));
        if (!(base_freq_mhz > 0.0)) throw ConfigError("noc: base_freq_mhz must be positive");
        if (noc_freq_multiplier < 1) throw ConfigError("noc: noc_freq_multiplier must be >= 1");
        if (max_single_cycle_hops < 1)
            throw ConfigError("noc: max_single_cycle_hops must be >= 1");
        if (!(repeater_spacing_mm > 0.0))
            throw ConfigError("noc: repeater_spacing_mm must be positive");
        if (lanes_per_cycle < 1) throw ConfigError("noc: lanes_per_cycle must be >= 1");
        if (lanes_per_cycle > neurons_per_router)
            throw ConfigError("noc: lanes_per_cycle cannot exceed neurons_per_router");
    }

    /// Buffered line segments a broadcast must cross: 1 while the whole
    /// line fits in a single-cycle traversal, one extra NoC cycle per
    /// additional max_single_cycle_hops routers beyond that.
    int traversal_segments() const {
        return (num_routers + max_single_cycle_hops - 1) / max_single_cycle_hops;
    }
};

struct FlitEvent {
    int wave_index = 0;
    int router = 0;
    long noc_cycle = 0;
};

/// Deliver one wave set to every router. Waves are injected at router 0 on
/// successive NoC cycles; within a cycle a wave sweeps one whole repeater
/// segment, and segment-boundary routers buffer it for the next cycle, so
/// wave w reaches segment g at NoC cycle w + g. Every router sees every
/// flit exactly once.
inline std::vector<FlitEvent> route_broadcast(const NovaNocConfig& cfg,
                                              const std::vector<BroadcastFlit>& flits,
                                              long noc_cycle_offset = 0) {
    cfg.validate();
    std::vector<FlitEvent> events;
    events.reserve(flits.size() * static_cast<std::size_t>(cfg.num_routers));
    const int segments = cfg.traversal_segments();
    const long span = static_cast<long>(flits.size()) + segments - 1;
    for (long cycle = 0; cycle < span; ++cycle)
        for (std::size_t w = 0; w < flits.size(); ++w) {
            const long g = cycle - static_cast<long>(w);
            if (g < 0 || g >= segments) continue;
            const int first = static_cast<int>(g) * cfg.max_single_cycle_hops;
            const int last =
                std::min(cfg.num_routers, first + cfg.max_single_cycle_hops);
            for (int r = first; r < last; ++r)
                events.push_back({flits[w].wave_index, r, noc_cycle_offset + cycle});
        }
    return events;
}

/// Per-router bookkeeping during one approximation transaction. The input
/// port either forwards the flit combinationally (mid-segment) or buffers
/// it for the next NoC cycle (segment tail); each lane matches exactly one
/// wave of the set.
struct RouterState {
    enum class Mode { buffer, forward };

    int position = 0;
    Mode mode = Mode::forward;
    std::vector<int> pending_addresses;
    std::vector<std::optional<std::pair<std::int32_t, std::int32_t>>> matched;
};

struct SimResult {
    std::vector<std::vector<std::int32_t>> outputs;
    long base_cycles = 0;
    long noc_cycles = 0;
    std::vector<FlitEvent> flit_events;
    long broadcast_count = 0;
};

/// Cycle-accurate run of one approximation over a rectangular input block
/// (num_routers x lanes_active). Lanes are served lanes_per_cycle per
/// router per base cycle; each lane batch costs one wave-set broadcast
/// (coefficients live on the wires, not in per-PE storage, so every batch
/// re-broadcasts). base_cycles is the latency of one batch transaction:
/// one base cycle for comparator + broadcast (the wave set fits in it by
/// construction of the clock multiplier, stretched only when the line
/// needs multi-cycle traversal) plus one for the MAC.
inline SimResult simulate_approximation(const NovaNocConfig& cfg, const PiecewiseLinearFn& pwl,
                                        const std::vector<std::vector<double>>& inputs,
                                        const FixedPointFormat& fmt) {
    cfg.validate();
    pwl.validate();
    fmt.validate();
    const QuantizedPwl q = quantize_pwl(pwl, fmt);
    const WaveSchedule sched = schedule_waves(q);
    if (cfg.noc_freq_multiplier != sched.noc_freq_multiplier)
        throw ConfigError("noc: noc_freq_multiplier is " + std::to_string(cfg.noc_freq_multiplier) +
                          " but a " + std::to_string(pwl.segment_count()) +
                          "-segment table needs " + std::to_string(sched.noc_freq_multiplier));
    if (static_cast<int>(inputs.size()) != cfg.num_routers)
        throw std::invalid_argument("simulate_approximation: expected " +
                                    std::to_string(cfg.num_routers) + " input rows, got " +
                                    std::to_string(inputs.size()));
    const std::size_t lanes = inputs.empty() ? 0 : inputs[0].size();
    for (const auto& row : inputs)
        if (row.size() != lanes)
            throw std::invalid_argument("simulate_approximation: ragged input rows");
    if (lanes < 1)
        throw std::invalid_argument("simulate_approximation: need at least one active lane");
    if (static_cast<int>(lanes) > cfg.neurons_per_router)
        throw std::invalid_argument("simulate_approximation: " + std::to_string(lanes) +
                                    " lanes exceed neurons_per_router = " +
                                    std::to_string(cfg.neurons_per_router));

    const int waves = sched.wave_count();
    const int segments = cfg.traversal_segments();
    const long span = static_cast<long>(waves) + segments - 1;
    const long batches =
        (static_cast<long>(lanes) + cfg.lanes_per_cycle - 1) / cfg.lanes_per_cycle;

    std::vector<RouterState> routers(static_cast<std::size_t>(cfg.num_routers));
    for (int r = 0; r < cfg.num_routers; ++r) {
        routers[static_cast<std::size_t>(r)].position = r;
        const bool segment_tail =
            (r + 1) % cfg.max_single_cycle_hops == 0 || r + 1 == cfg.num_routers;
        routers[static_cast<std::size_t>(r)].mode =
            segment_tail ? RouterState::Mode::buffer : RouterState::Mode::forward;
    }

    SimResult result;
    result.outputs.assign(inputs.size(), {});
    for (auto& row : result.outputs) row.resize(lanes);

    for (long batch = 0; batch < batches; ++batch) {
        const std::size_t lane_lo = static_cast<std::size_t>(batch * cfg.lanes_per_cycle);
        const std::size_t lane_hi =
            std::min(lanes, lane_lo + static_cast<std::size_t>(cfg.lanes_per_cycle));
        for (auto& router : routers) {
            router.pending_addresses.clear();
            router.matched.assign(lane_hi - lane_lo, std::nullopt);
            for (std::size_t l = lane_lo; l < lane_hi; ++l) {
                const std::int32_t x_word =
                    quantize(inputs[static_cast<std::size_t>(router.position)][l], fmt);
                router.pending_addresses.push_back(lookup_address_words(q.breakpoints, x_word));
            }
        }
        const auto events = route_broadcast(cfg, sched.flits, batch * span);
        for (const FlitEvent& ev : events) {
            RouterState& router = routers[static_cast<std::size_t>(ev.router)];
            const BroadcastFlit& flit = sched.flits[static_cast<std::size_t>(ev.wave_index)];
            for (std::size_t i = 0; i < router.pending_addresses.size(); ++i) {
                const auto pair = router_match(flit, router.pending_addresses[i], waves);
                if (!pair) continue;
                if (router.matched[i])
                    throw ProtocolError("simulate_approximation: lane matched twice in one "
                                        "transaction at router " +
                                        std::to_string(ev.router));
                router.matched[i] = pair;
            }
        }
        for (auto& router : routers) {
            for (std::size_t i = 0; i < router.matched.size(); ++i) {
                if (!router.matched[i])
                    throw ProtocolError("simulate_approximation: lane left unmatched at router " +
                                        std::to_string(router.position));
                const std::size_t l = lane_lo + i;
                const std::int32_t x_word =
                    quantize(inputs[static_cast<std::size_t>(router.position)][l], fmt);
                result.outputs[static_cast<std::size_t>(router.position)][l] =
                    fixed_mac(router.matched[i]->first, x_word, router.matched[i]->second, fmt);
            }
        }
        result.flit_events.insert(result.flit_events.end(), events.begin(), events.end());
    }

    result.base_cycles = (span + waves - 1) / waves + 1;
    result.noc_cycles = batches * span;
    result.broadcast_count = batches * waves;
    return result;
}

struct ThroughputResult {
    long base_cycles = 0;
    long noc_cycles = 0;
    long broadcast_count = 0;
};

/// Steady-state pipelined cost of num_queries approximations. Each base
/// cycle serves num_routers * lanes_per_cycle queries and re-broadcasts one
/// wave set; the trailing +1 drains the MAC stage. The initiation interval
/// stretches beyond one base cycle only when the line is too long for
/// single-cycle traversal.
inline ThroughputResult throughput_model(const NovaNocConfig& cfg, const PiecewiseLinearFn& pwl,
                                         long num_queries) {
    cfg.validate();
    pwl.validate();
    if (num_queries < 0)
        throw std::invalid_argument("throughput_model: num_queries must be >= 0");
    const int b = static_cast<int>(pwl.segment_count());
    if (b > static_cast<int>(kMaxHardwareSegments))
        throw UnsupportedBreakpointCount("throughput_model: " + std::to_string(b) +
                                         " segments exceed the 16 addressable");
    const long waves = (b + 7) / 8;
    const long span = waves + cfg.traversal_segments() - 1;
    const long interval = (span + waves - 1) / waves;
    ThroughputResult res;
    if (num_queries == 0) return res;
    const long per_cycle = static_cast<long>(cfg.num_routers) * cfg.lanes_per_cycle;
    const long occupied = (num_queries + per_cycle - 1) / per_cycle;
    res.base_cycles = occupied * interval + 1;
    res.noc_cycles = occupied * span;
    res.broadcast_count = occupied * waves;
    return res;
}

} // namespace nova
