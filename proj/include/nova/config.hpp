// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "nova/errors.hpp"

namespace nova {

/// Line-oriented structured text:
///   # comment (full line or trailing)
///   key = value
///   [kind name]       <- opens a section; keys above any header are global
/// Values are free text; typed accessors parse on demand. Lists are
/// comma-separated. Keys are unique per section; every key a consumer does
/// not read is an error (catches typos in experiment files).
class ConfigSection {
public:
    ConfigSection(std::string kind, std::string name, std::string source, long header_line)
        : kind_(std::move(kind)), name_(std::move(name)), source_(std::move(source)),
          header_line_(header_line) {}

    const std::string& kind() const { return kind_; }
    const std::string& name() const { return name_; }
    const std::string& source() const { return source_; }

    void insert(const std::string& key, const std::string& value, long line) {
        if (values_.count(key))
            throw ConfigError(where(line) + ": duplicate key '" + key + "'");
        values_[key] = {value, line};
    }

    bool has(const std::string& key) const { return values_.count(key) != 0; }

    std::string require_string(const std::string& key) const {
        auto it = values_.find(key);
        if (it == values_.end())
            throw ConfigError(where(header_line_) + ": missing required key '" + key + "'");
        consumed_.insert(key);
        return it->second.text;
    }

    std::string get_string(const std::string& key, const std::string& fallback) const {
        if (!has(key)) return fallback;
        return require_string(key);
    }

    double require_double(const std::string& key) const {
        return parse_double(key, require_string(key));
    }

    double get_double(const std::string& key, double fallback) const {
        if (!has(key)) return fallback;
        return require_double(key);
    }

    long require_long(const std::string& key) const {
        return parse_long(key, require_string(key));
    }

    long get_long(const std::string& key, long fallback) const {
        if (!has(key)) return fallback;
        return require_long(key);
    }

    bool require_bool(const std::string& key) const {
        const std::string v = require_string(key);
        if (v == "true" || v == "1" || v == "yes") return true;
        if (v == "false" || v == "0" || v == "no") return false;
        throw ConfigError(where(line_of(key)) + ": key '" + key + "' expects a boolean, got '" +
                          v + "'");
    }

    bool get_bool(const std::string& key, bool fallback) const {
        if (!has(key)) return fallback;
        return require_bool(key);
    }

    std::vector<std::string> require_string_list(const std::string& key) const {
        return split_list(require_string(key));
    }

    std::vector<std::string> get_string_list(const std::string& key,
                                             const std::vector<std::string>& fallback) const {
        if (!has(key)) return fallback;
        return require_string_list(key);
    }

    std::vector<double> require_double_list(const std::string& key) const {
        std::vector<double> out;
        for (const std::string& item : split_list(require_string(key)))
            out.push_back(parse_double(key, item));
        return out;
    }

    std::vector<long> require_long_list(const std::string& key) const {
        std::vector<long> out;
        for (const std::string& item : split_list(require_string(key)))
            out.push_back(parse_long(key, item));
        return out;
    }

    std::vector<long> get_long_list(const std::string& key,
                                    const std::vector<long>& fallback) const {
        if (!has(key)) return fallback;
        return require_long_list(key);
    }

    /// Call once the consumer has read everything it understands.
    void reject_unknown() const {
        std::vector<std::string> unknown;
        for (const auto& [key, entry] : values_)
            if (!consumed_.count(key))
                unknown.push_back("'" + key + "' (line " + std::to_string(entry.line) + ")");
        if (unknown.empty()) return;
        std::string joined;
        for (std::size_t i = 0; i < unknown.size(); ++i)
            joined += (i ? ", " : "") + unknown[i];
        throw ConfigError(where(header_line_) + ": unknown key(s) " + joined);
    }

    static std::vector<std::string> split_list(const std::string& text) {
        std::vector<std::string> out;
        std::string item;
        std::stringstream ss(text);
        while (std::getline(ss, item, ',')) {
            const std::string trimmed = trim(item);
            if (!trimmed.empty()) out.push_back(trimmed);
        }
        return out;
    }

    static std::string trim(const std::string& s) {
        const auto begin = s.find_first_not_of(" \t\r");
        if (begin == std::string::npos) return "";
        const auto end = s.find_last_not_of(" \t\r");
        return s.substr(begin, end - begin + 1);
    }

private:
    struct Entry {
        std::string text;
        long line = 0;
    };

    std::string where(long line) const {
        std::string loc = source_;
        if (line > 0) loc += ":" + std::to_string(line);
        if (!kind_.empty()) loc += " [" + kind_ + (name_.empty() ? "" : " " + name_) + "]";
        return loc;
    }

    long line_of(const std::string& key) const {
        auto it = values_.find(key);
        return it == values_.end() ? header_line_ : it->second.line;
    }

    double parse_double(const std::string& key, const std::string& text) const {
        try {
            std::size_t pos = 0;
            const double v = std::stod(text, &pos);
            if (pos != text.size()) throw std::invalid_argument(text);
            return v;
        } catch (const std::exception&) {
            throw ConfigError(where(line_of(key)) + ": key '" + key + "' expects a number, got '" +
                              text + "'");
        }
    }

    long parse_long(const std::string& key, const std::string& text) const {
        long v = 0;
        const char* first = text.data();
        const char* last = text.data() + text.size();
        const auto res = std::from_chars(first, last, v);
        if (res.ec != std::errc{} || res.ptr != last)
            throw ConfigError(where(line_of(key)) + ": key '" + key +
                              "' expects an integer, got '" + text + "'");
        return v;
    }

    std::string kind_;
    std::string name_;
    std::string source_;
    long header_line_;
    std::map<std::string, Entry> values_;
    mutable std::set<std::string> consumed_;
};

class ConfigFile {
public:
    explicit ConfigFile(std::string source) : source_(std::move(source)) {
        sections_.emplace_back("", "", source_, 0);
    }

    const std::string& source() const { return source_; }

    /// Top-level keys appearing before any section header.
    ConfigSection& global() { return sections_.front(); }
    const ConfigSection& global() const { return sections_.front(); }

    const std::vector<ConfigSection>& sections() const { return sections_; }

    std::vector<const ConfigSection*> sections_of(const std::string& kind) const {
        std::vector<const ConfigSection*> out;
        for (const auto& s : sections_)
            if (s.kind() == kind) out.push_back(&s);
        return out;
    }

    const ConfigSection& only_section(const std::string& kind) const {
        const auto list = sections_of(kind);
        if (list.size() != 1)
            throw ConfigError(source_ + ": expected exactly one [" + kind + "] section, found " +
                              std::to_string(list.size()));
        return *list.front();
    }

    void reject_unknown() const {
        for (const auto& s : sections_) s.reject_unknown();
    }

    ConfigSection& add_section(const std::string& kind, const std::string& name, long line) {
        sections_.emplace_back(kind, name, source_, line);
        return sections_.back();
    }

private:
    std::string source_;
    std::vector<ConfigSection> sections_;
};

inline ConfigFile parse_config(const std::string& text, const std::string& source_name) {
    ConfigFile file(source_name);
    ConfigSection* current = &file.global();
    std::stringstream stream(text);
    std::string raw;
    long line_no = 0;
    while (std::getline(stream, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        std::string line = ConfigSection::trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(source_name + ":" + std::to_string(line_no) +
                                  ": malformed section header '" + line + "'");
            const std::string inner = ConfigSection::trim(line.substr(1, line.size() - 2));
            if (inner.empty())
                throw ConfigError(source_name + ":" + std::to_string(line_no) +
                                  ": empty section header");
            const auto space = inner.find_first_of(" \t");
            const std::string kind = inner.substr(0, space);
            const std::string name =
                space == std::string::npos ? "" : ConfigSection::trim(inner.substr(space + 1));
            current = &file.add_section(kind, name, line_no);
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(source_name + ":" + std::to_string(line_no) +
                              ": expected 'key = value', got '" + line + "'");
        const std::string key = ConfigSection::trim(line.substr(0, eq));
        const std::string value = ConfigSection::trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError(source_name + ":" + std::to_string(line_no) + ": empty key");
        current->insert(key, value, line_no);
    }
    return file;
}

inline ConfigFile load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), path);
}

} // namespace nova
