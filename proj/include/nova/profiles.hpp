// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "nova/config.hpp"
#include "nova/errors.hpp"
#include "nova/io.hpp"

namespace nova {

/// Synthesized block-level cost of one approximator variant inside a host
/// accelerator. Kinds in the shipped data: nova, per_neuron_lut,
/// per_core_lut, nvdla_sdp.
struct ApproximatorEntry {
    std::string kind;
    double area_mm2 = 0.0;
    double power_mw = 0.0;
};

/// Integration parameters of one host accelerator plus the measured
/// costs of the approximator variants evaluated in it.
struct AcceleratorProfile {
    std::string name;
    int num_nova_routers = 0;
    int neurons_per_router = 0;
    long onchip_memory_bytes = 0;
    double base_freq_mhz = 0.0;
    std::vector<ApproximatorEntry> entries;

    void validate() const {
        if (name.empty()) throw ConfigError("profile: empty name");
        if (num_nova_routers < 1)
            throw ConfigError("profile " + name + ": num_nova_routers must be >= 1");
        if (neurons_per_router < 1)
            throw ConfigError("profile " + name + ": neurons_per_router must be >= 1");
        if (onchip_memory_bytes < 1)
            throw ConfigError("profile " + name + ": onchip_memory_bytes must be >= 1");
        if (!(base_freq_mhz > 0.0))
            throw ConfigError("profile " + name + ": base_freq_mhz must be positive");
        for (const auto& e : entries) {
            if (e.kind.empty()) throw ConfigError("profile " + name + ": entry with empty kind");
            if (!(e.area_mm2 > 0.0) || !(e.power_mw > 0.0))
                throw ConfigError("profile " + name + ": entry " + e.kind +
                                  " needs positive area and power");
        }
    }

    const ApproximatorEntry* find_entry(const std::string& kind) const {
        for (const auto& e : entries)
            if (e.kind == kind) return &e;
        return nullptr;
    }
};

inline AcceleratorProfile parse_profile(const ConfigFile& file) {
    const ConfigSection& sec = file.only_section("profile");
    AcceleratorProfile p;
    p.name = sec.name();
    p.num_nova_routers = static_cast<int>(sec.require_long("num_nova_routers"));
    p.neurons_per_router = static_cast<int>(sec.require_long("neurons_per_router"));
    p.onchip_memory_bytes = sec.require_long("onchip_memory_bytes");
    p.base_freq_mhz = sec.require_double("base_freq_mhz");
    sec.reject_unknown();
    for (const ConfigSection* esec : file.sections_of("approximator")) {
        ApproximatorEntry e;
        e.kind = esec->name();
        e.area_mm2 = esec->require_double("area_mm2");
        e.power_mw = esec->require_double("power_mw");
        esec->reject_unknown();
        p.entries.push_back(e);
    }
    file.global().reject_unknown();
    p.validate();
    return p;
}

inline std::string serialize_profile(const AcceleratorProfile& p) {
    p.validate();
    std::string out;
    out += "[profile " + p.name + "]\n";
    out += "num_nova_routers = " + std::to_string(p.num_nova_routers) + "\n";
    out += "neurons_per_router = " + std::to_string(p.neurons_per_router) + "\n";
    out += "onchip_memory_bytes = " + std::to_string(p.onchip_memory_bytes) + "\n";
    out += "base_freq_mhz = " + format_double(p.base_freq_mhz) + "\n";
    for (const auto& e : p.entries) {
        out += "\n[approximator " + e.kind + "]\n";
        out += "area_mm2 = " + format_double(e.area_mm2) + "\n";
        out += "power_mw = " + format_double(e.power_mw) + "\n";
    }
    return out;
}

inline std::vector<std::string> known_profiles(const std::string& profiles_dir) {
    namespace fs = std::filesystem;
    std::vector<std::string> names;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(profiles_dir, ec))
        if (entry.path().extension() == ".cfg") names.push_back(entry.path().stem().string());
    std::sort(names.begin(), names.end());
    return names;
}

inline AcceleratorProfile load_profile(const std::string& name, const std::string& profiles_dir) {
    namespace fs = std::filesystem;
    const fs::path path = fs::path(profiles_dir) / (name + ".cfg");
    if (!fs::exists(path)) {
        std::string msg = "unknown profile '" + name + "'; known profiles:";
        for (const auto& known : known_profiles(profiles_dir)) msg += " " + known;
        throw ConfigError(msg);
    }
    AcceleratorProfile p = parse_profile(load_config(path.string()));
    if (p.name != name)
        throw ConfigError("profile file " + path.string() + " declares name '" + p.name + "'");
    return p;
}

/// Transformer encoder shape; every per-inference non-linear count derives
/// from these five numbers.
struct WorkloadSpec {
    std::string model_name;
    int num_layers = 0;
    int num_heads = 0;
    int hidden_dim = 0;
    int ffn_dim = 0;
    int seq_len = 0;
    bool include_layernorm = false;

    void validate() const {
        if (model_name.empty()) throw ConfigError("workload: empty model_name");
        if (num_layers < 1 || num_heads < 1 || hidden_dim < 1 || ffn_dim < 1 || seq_len < 1)
            throw ConfigError("workload " + model_name + ": all dimensions must be >= 1");
    }
};

struct QueryCounts {
    long softmax_elements = 0;
    long softmax_rows = 0;
    long gelu_elements = 0;
    long layernorm_elements = 0;

    long total() const {
        return softmax_elements + softmax_rows + gelu_elements + layernorm_elements;
    }
};

/// Analytic non-linear query counts for one inference pass. Every
/// attention row costs seq_len exponentials plus one reciprocal; the FFN
/// applies GELU element-wise; LayerNorm (off by default) costs two
/// evaluations (reciprocal square root split into reciprocal + sqrt seeds)
/// per normalised row, two normalisations per layer.
inline QueryCounts nonlinear_query_count(const WorkloadSpec& w) {
    w.validate();
    QueryCounts q;
    const long layers = w.num_layers;
    const long heads = w.num_heads;
    const long seq = w.seq_len;
    q.softmax_rows = layers * heads * seq;
    q.softmax_elements = q.softmax_rows * seq;
    q.gelu_elements = layers * seq * static_cast<long>(w.ffn_dim);
    if (w.include_layernorm) q.layernorm_elements = 2 * (2 * layers * seq);
    return q;
}

inline WorkloadSpec parse_workload(const ConfigFile& file) {
    const ConfigSection& sec = file.only_section("workload");
    WorkloadSpec w;
    w.model_name = sec.name();
    w.num_layers = static_cast<int>(sec.require_long("num_layers"));
    w.num_heads = static_cast<int>(sec.require_long("num_heads"));
    w.hidden_dim = static_cast<int>(sec.require_long("hidden_dim"));
    w.ffn_dim = static_cast<int>(sec.require_long("ffn_dim"));
    w.seq_len = static_cast<int>(sec.require_long("seq_len"));
    w.include_layernorm = sec.get_bool("include_layernorm", false);
    sec.reject_unknown();
    file.global().reject_unknown();
    w.validate();
    return w;
}

inline std::string serialize_workload(const WorkloadSpec& w) {
    w.validate();
    std::string out;
    out += "[workload " + w.model_name + "]\n";
    out += "num_layers = " + std::to_string(w.num_layers) + "\n";
    out += "num_heads = " + std::to_string(w.num_heads) + "\n";
    out += "hidden_dim = " + std::to_string(w.hidden_dim) + "\n";
    out += "ffn_dim = " + std::to_string(w.ffn_dim) + "\n";
    out += "seq_len = " + std::to_string(w.seq_len) + "\n";
    out += std::string("include_layernorm = ") + (w.include_layernorm ? "true" : "false") + "\n";
    return out;
}

inline WorkloadSpec load_workload(const std::string& name, const std::string& workloads_dir) {
    namespace fs = std::filesystem;
    const fs::path path = fs::path(workloads_dir) / (name + ".cfg");
    if (!fs::exists(path)) {
        std::string msg = "unknown workload '" + name + "'; known workloads:";
        for (const auto& known : known_profiles(workloads_dir)) msg += " " + known;
        throw ConfigError(msg);
    }
    WorkloadSpec w = parse_workload(load_config(path.string()));
    if (w.model_name != name)
        throw ConfigError("workload file " + path.string() + " declares name '" + w.model_name +
                          "'");
    return w;
}

inline constexpr int kMaxSingleCycleRouters = 10;
inline constexpr double kMaxRepeaterGhz = 1.5;

struct ScalabilityReport {
    bool ok = false;
    int num_routers = 0;
    double noc_freq_ghz = 0.0;
    int required_segments = 1;
    std::string message;
};

/// Repeater timing closure rule: a broadcast traverses at most 10 routers
/// in one cycle at up to 1.5 GHz. Longer lines split into buffered
/// segments, each boundary adding one NoC cycle to every wave.
inline ScalabilityReport check_scalability(const AcceleratorProfile& profile,
                                           double noc_freq_ghz) {
    profile.validate();
    ScalabilityReport rep;
    rep.num_routers = profile.num_nova_routers;
    rep.noc_freq_ghz = noc_freq_ghz;
    rep.required_segments =
        (profile.num_nova_routers + kMaxSingleCycleRouters - 1) / kMaxSingleCycleRouters;
    rep.ok = profile.num_nova_routers <= kMaxSingleCycleRouters && noc_freq_ghz <= kMaxRepeaterGhz;
    if (rep.ok) {
        rep.message = "single-cycle traversal holds";
    } else {
        rep.message = "traversal needs " + std::to_string(rep.required_segments) +
                      " buffered segments (" + std::to_string(rep.required_segments - 1) +
                      " extra NoC cycle(s) per wave)";
        if (noc_freq_ghz > kMaxRepeaterGhz)
            rep.message += "; NoC clock " + format_double(noc_freq_ghz) + " GHz exceeds " +
                           format_double(kMaxRepeaterGhz) + " GHz repeater closure";
    }
    return rep;
}

} // namespace nova
