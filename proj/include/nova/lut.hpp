// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "nova/errors.hpp"
#include "nova/fixed_point.hpp"
#include "nova/pwl.hpp"

namespace nova {

/// The two LUT-based vector-unit baselines: a private bank per neuron
/// (maximal replication, fully parallel) or one multi-ported bank shared
/// by the whole core (minimal storage, port-serialised lookups).
enum class LutKind { per_neuron, per_core };

inline std::string lut_kind_name(LutKind kind) {
    return kind == LutKind::per_neuron ? "per_neuron" : "per_core";
}

struct LutConfig {
    LutKind kind = LutKind::per_neuron;
    int neurons = 1;
    int bank_bytes = 64;
    int ports = 1;
    double base_freq_mhz = 1000.0;

    void validate() const {
        if (neurons < 1) throw ConfigError("lut: neurons must be >= 1");
        if (bank_bytes < 4) throw ConfigError("lut: bank_bytes must hold at least one pair");
        if (ports < 1) throw ConfigError("lut: ports must be >= 1");
        if (kind == LutKind::per_neuron && ports != 1)
            throw ConfigError("lut: per-neuron banks are single-ported");
        if (!(base_freq_mhz > 0.0)) throw ConfigError("lut: base_freq_mhz must be positive");
    }

    /// Segments a bank can hold: one 16-bit slope + 16-bit bias pair per
    /// segment, 4 bytes each.
    int capacity_segments() const { return bank_bytes / 4; }
};

struct LutStats {
    long total_bytes = 0;
    long total_reads = 0;
    std::vector<std::vector<std::int32_t>> outputs;
    long base_cycles = 0;
};

/// Storage footprint per core: replicated banks for per-neuron, a single
/// bank for per-core.
inline LutStats lut_storage_stats(const LutConfig& cfg) {
    cfg.validate();
    LutStats stats;
    stats.total_bytes = cfg.kind == LutKind::per_neuron
                            ? static_cast<long>(cfg.neurons) * cfg.bank_bytes
                            : cfg.bank_bytes;
    return stats;
}

/// Functional model of one LUT transaction over a rectangular input block
/// (cores x lanes): every lane fetches its segment's pair and runs the
/// same fixed-point MAC as the broadcast fabric, so outputs are
/// bit-identical to direct quantized evaluation. Latency is fetch + MAC:
/// per-neuron banks fetch all lanes in parallel (2 cycles total); a shared
/// per-core bank serialises fetches at one per port per cycle.
inline LutStats simulate_lut(const LutConfig& cfg, const PiecewiseLinearFn& pwl,
                             const std::vector<std::vector<double>>& inputs,
                             const FixedPointFormat& fmt) {
    cfg.validate();
    pwl.validate();
    fmt.validate();
    const int b = static_cast<int>(pwl.segment_count());
    if (b > cfg.capacity_segments())
        throw CapacityError("lut: " + std::to_string(b) + "-segment table needs " +
                            std::to_string(4 * b) + " bytes but the bank holds " +
                            std::to_string(cfg.bank_bytes));

    const std::size_t lanes = inputs.empty() ? 0 : inputs[0].size();
    for (const auto& row : inputs)
        if (row.size() != lanes)
            throw std::invalid_argument("simulate_lut: ragged input rows");
    if (static_cast<int>(lanes) > cfg.neurons)
        throw std::invalid_argument("simulate_lut: " + std::to_string(lanes) +
                                    " lanes exceed neurons = " + std::to_string(cfg.neurons));

    LutStats stats = lut_storage_stats(cfg);
    const QuantizedPwl q = quantize_pwl(pwl, fmt);
    stats.outputs.assign(inputs.size(), {});
    for (std::size_t r = 0; r < inputs.size(); ++r) {
        stats.outputs[r].resize(lanes);
        for (std::size_t l = 0; l < lanes; ++l)
            stats.outputs[r][l] = eval_pwl_fixed(q, quantize(inputs[r][l], fmt));
    }
    stats.total_reads = static_cast<long>(inputs.size()) * static_cast<long>(lanes);
    if (stats.total_reads > 0) {
        const long fetch_cycles =
            cfg.kind == LutKind::per_neuron
                ? 1
                : (static_cast<long>(lanes) + cfg.ports - 1) / cfg.ports;
        stats.base_cycles = fetch_cycles + 1;
    }
    return stats;
}

/// Steady-state pipelined cost of num_queries lookups when the LUT unit
/// replaces the broadcast fabric in the same host: cores x lanes_per_cycle
/// queries issue per base cycle, stretched by port serialisation for a
/// shared bank, plus one cycle to drain the MAC stage.
inline long lut_throughput_cycles(const LutConfig& cfg, long num_queries, int cores,
                                  int lanes_per_cycle) {
    cfg.validate();
    if (num_queries < 0)
        throw std::invalid_argument("lut_throughput_cycles: num_queries must be >= 0");
    if (cores < 1 || lanes_per_cycle < 1)
        throw std::invalid_argument("lut_throughput_cycles: cores and lanes_per_cycle must be >= 1");
    if (num_queries == 0) return 0;
    const long interval = cfg.kind == LutKind::per_neuron
                              ? 1
                              : (static_cast<long>(lanes_per_cycle) + cfg.ports - 1) / cfg.ports;
    const long per_cycle = static_cast<long>(cores) * lanes_per_cycle;
    const long occupied = (num_queries + per_cycle - 1) / per_cycle;
    return occupied * interval + 1;
}

} // namespace nova
