// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "nova/config.hpp"
#include "nova/errors.hpp"
#include "nova/fixed_point.hpp"
#include "nova/pwl.hpp"

namespace nova {

/// Shortest decimal form that round-trips the exact double. Keeps every
/// emitted artifact byte-stable across runs and platforms with IEEE-754
/// doubles.
inline std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

/// Write via a sibling temp file + rename so readers never observe a
/// partially written artifact and reruns replace files atomically.
inline void atomic_write_file(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(target.parent_path(), ec);
        if (ec)
            throw std::runtime_error("cannot create directory " +
                                     target.parent_path().string() + ": " + ec.message());
    }
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
        out << content;
        if (!out) throw std::runtime_error("write failed: " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) throw std::runtime_error("rename to " + path + " failed: " + ec.message());
}

inline std::string csv_row(const std::vector<std::string>& cells) {
    std::string row;
    for (std::size_t i = 0; i < cells.size(); ++i)
        row += (i ? "," : "") + cells[i];
    row += "\n";
    return row;
}

/// Table exchange text: the config grammar with a fixed field order, so
/// files are diffable and a write -> parse round trip reproduces the table
/// (and its quantization) bit-exactly.
inline std::string serialize_pwl(const PiecewiseLinearFn& pwl, const FixedPointFormat& fmt) {
    pwl.validate();
    fmt.validate();
    std::string out;
    out += "[pwl " + function_name(pwl.function_id) + "]\n";
    out += "function = " + function_name(pwl.function_id) + "\n";
    out += "domain_lo = " + format_double(pwl.domain.lo) + "\n";
    out += "domain_hi = " + format_double(pwl.domain.hi) + "\n";
    out += "segments = " + std::to_string(pwl.segment_count()) + "\n";
    out += "fixed_total_bits = " + std::to_string(fmt.total_bits) + "\n";
    out += "fixed_frac_bits = " + std::to_string(fmt.frac_bits) + "\n";
    out += std::string("fixed_signed = ") + (fmt.is_signed ? "true" : "false") + "\n";
    const auto join = [](const std::vector<double>& xs) {
        std::string s;
        for (std::size_t i = 0; i < xs.size(); ++i)
            s += (i ? ", " : "") + format_double(xs[i]);
        return s;
    };
    out += "breakpoints = " + join(pwl.breakpoints) + "\n";
    out += "slopes = " + join(pwl.slopes) + "\n";
    out += "biases = " + join(pwl.biases) + "\n";
    return out;
}

struct PwlFile {
    PiecewiseLinearFn pwl;
    FixedPointFormat fmt;
};

inline PwlFile parse_pwl_text(const std::string& text, const std::string& source_name) {
    const ConfigFile file = parse_config(text, source_name);
    const ConfigSection& sec = file.only_section("pwl");
    PwlFile out;
    out.pwl.function_id = parse_function(sec.require_string("function"));
    out.pwl.domain.lo = sec.require_double("domain_lo");
    out.pwl.domain.hi = sec.require_double("domain_hi");
    const long segments = sec.require_long("segments");
    out.fmt.total_bits = static_cast<int>(sec.require_long("fixed_total_bits"));
    out.fmt.frac_bits = static_cast<int>(sec.require_long("fixed_frac_bits"));
    out.fmt.is_signed = sec.require_bool("fixed_signed");
    out.pwl.breakpoints = sec.require_double_list("breakpoints");
    out.pwl.slopes = sec.require_double_list("slopes");
    out.pwl.biases = sec.require_double_list("biases");
    sec.reject_unknown();
    file.global().reject_unknown();
    if (static_cast<long>(out.pwl.breakpoints.size()) != segments)
        throw ConfigError(source_name + ": segments = " + std::to_string(segments) + " but " +
                          std::to_string(out.pwl.breakpoints.size()) + " breakpoints listed");
    out.fmt.validate();
    out.pwl.validate();
    return out;
}

inline void write_pwl_file(const std::string& path, const PiecewiseLinearFn& pwl,
                           const FixedPointFormat& fmt) {
    atomic_write_file(path, serialize_pwl(pwl, fmt));
}

inline PwlFile load_pwl_file(const std::string& path) {
    return parse_pwl_text(read_file(path), path);
}

} // namespace nova
