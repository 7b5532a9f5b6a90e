// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "nova/config.hpp"
#include "nova/errors.hpp"
#include "nova/profiles.hpp"

namespace nova {

/// Energy booked to one approximator kind for one workload: constant
/// synthesized power over the cycles the block is active. mW times
/// seconds gives millijoules directly.
struct EnergyReport {
    std::string kind;
    std::string workload;
    long active_base_cycles = 0;
    double active_time_s = 0.0;
    double power_mw = 0.0;
    double energy_mj = 0.0;
    double area_mm2 = 0.0;
};

inline EnergyReport energy_per_inference(const AcceleratorProfile& profile,
                                         const std::string& kind, const std::string& workload,
                                         long active_base_cycles) {
    profile.validate();
    if (active_base_cycles < 0)
        throw std::invalid_argument("energy_per_inference: negative cycle count");
    const ApproximatorEntry* entry = profile.find_entry(kind);
    if (!entry)
        throw ConfigError("profile " + profile.name + " has no power/area entry for kind '" +
                          kind + "'");
    EnergyReport rep;
    rep.kind = kind;
    rep.workload = workload;
    rep.active_base_cycles = active_base_cycles;
    rep.active_time_s = static_cast<double>(active_base_cycles) / (profile.base_freq_mhz * 1e6);
    rep.power_mw = entry->power_mw;
    rep.energy_mj = entry->power_mw * rep.active_time_s;
    rep.area_mm2 = entry->area_mm2;
    return rep;
}

struct ComparisonPair {
    std::string kind_a;
    std::string kind_b;
    double power_ratio = 0.0;
    double area_ratio = 0.0;
    double energy_ratio = 0.0;
};

struct ComparisonReport {
    std::string profile_name;
    std::vector<ComparisonPair> pairs;
};

/// All ordered pairwise ratios between the profile's approximator entries.
/// Energy ratio folds in per-kind active cycle counts when provided;
/// absent cycle data the kinds are assumed active for equal time (the
/// latency-parity operating point), making energy ratio == power ratio.
inline ComparisonReport compare(const AcceleratorProfile& profile,
                                const std::map<std::string, long>& cycles_by_kind = {}) {
    profile.validate();
    if (profile.entries.size() < 2)
        throw ConfigError("profile " + profile.name +
                          ": need at least two approximator entries to compare");
    ComparisonReport rep;
    rep.profile_name = profile.name;
    const auto cycles = [&](const std::string& kind) -> double {
        auto it = cycles_by_kind.find(kind);
        return it == cycles_by_kind.end() ? 1.0 : static_cast<double>(it->second);
    };
    for (const auto& a : profile.entries)
        for (const auto& b : profile.entries) {
            if (a.kind == b.kind) continue;
            ComparisonPair pair;
            pair.kind_a = a.kind;
            pair.kind_b = b.kind;
            pair.power_ratio = a.power_mw / b.power_mw;
            pair.area_ratio = a.area_mm2 / b.area_mm2;
            pair.energy_ratio = pair.power_ratio * (cycles(a.kind) / cycles(b.kind));
            rep.pairs.push_back(pair);
        }
    return rep;
}

enum class ClaimCheck { approx, at_least };
enum class ClaimMetric { power, area, energy };

/// One published ratio to reproduce: mean(metric over numerator kinds) /
/// mean(metric over denominator kinds) inside one profile, compared to the
/// claimed value. Published values are rounded, so approx checks use a
/// relative band; at_least checks are one-sided.
struct ClaimSpec {
    std::string name;
    std::string profile;
    ClaimMetric metric = ClaimMetric::power;
    std::vector<std::string> numerator_kinds;
    std::vector<std::string> denominator_kinds;
    ClaimCheck check = ClaimCheck::approx;
    double claimed = 0.0;
    double rel_tol = 0.0;
};

struct ClaimResult {
    ClaimSpec spec;
    double computed = 0.0;
    bool passed = false;
    std::string detail;
};

inline std::string claim_metric_name(ClaimMetric m) {
    switch (m) {
    case ClaimMetric::power: return "power";
    case ClaimMetric::area: return "area";
    case ClaimMetric::energy: return "energy";
    }
    return "?";
}

inline ClaimMetric parse_claim_metric(const std::string& text) {
    if (text == "power") return ClaimMetric::power;
    if (text == "area") return ClaimMetric::area;
    if (text == "energy") return ClaimMetric::energy;
    throw ConfigError("claim metric must be power, area, or energy; got '" + text + "'");
}

inline std::vector<ClaimSpec> parse_claims(const ConfigFile& file) {
    std::vector<ClaimSpec> claims;
    for (const ConfigSection* sec : file.sections_of("claim")) {
        ClaimSpec c;
        c.name = sec->name();
        if (c.name.empty()) throw ConfigError(file.source() + ": claim section needs a name");
        c.profile = sec->require_string("profile");
        c.metric = parse_claim_metric(sec->require_string("metric"));
        c.numerator_kinds = sec->require_string_list("numerator");
        c.denominator_kinds = sec->require_string_list("denominator");
        const std::string check = sec->get_string("check", "approx");
        if (check == "approx") {
            c.check = ClaimCheck::approx;
            c.rel_tol = sec->require_double("rel_tol");
        } else if (check == "at_least") {
            c.check = ClaimCheck::at_least;
        } else {
            throw ConfigError(file.source() + ": claim " + c.name +
                              ": check must be approx or at_least, got '" + check + "'");
        }
        c.claimed = sec->require_double("claimed");
        sec->reject_unknown();
        if (c.numerator_kinds.empty() || c.denominator_kinds.empty())
            throw ConfigError(file.source() + ": claim " + c.name + ": empty kind list");
        if (!(c.claimed > 0.0))
            throw ConfigError(file.source() + ": claim " + c.name + ": claimed must be positive");
        claims.push_back(c);
    }
    file.global().reject_unknown();
    return claims;
}

/// Evaluate one claim against a loaded profile. Energy claims need the
/// per-kind active cycle counts of the workload being claimed about;
/// power/area claims ignore them.
inline ClaimResult evaluate_claim(const ClaimSpec& spec, const AcceleratorProfile& profile,
                                  const std::map<std::string, long>& cycles_by_kind = {}) {
    profile.validate();
    if (profile.name != spec.profile)
        throw ConfigError("claim " + spec.name + " is about profile " + spec.profile +
                          ", got " + profile.name);
    const auto metric_value = [&](const std::string& kind) -> double {
        const ApproximatorEntry* entry = profile.find_entry(kind);
        if (!entry)
            throw ConfigError("claim " + spec.name + ": profile " + profile.name +
                              " has no entry for kind '" + kind + "'");
        switch (spec.metric) {
        case ClaimMetric::power: return entry->power_mw;
        case ClaimMetric::area: return entry->area_mm2;
        case ClaimMetric::energy: {
            auto it = cycles_by_kind.find(kind);
            if (it == cycles_by_kind.end())
                throw ConfigError("claim " + spec.name + ": energy claim needs a cycle count "
                                  "for kind '" + kind + "'");
            return entry->power_mw * static_cast<double>(it->second);
        }
        }
        return 0.0;
    };
    const auto mean_over = [&](const std::vector<std::string>& kinds) {
        double sum = 0.0;
        for (const auto& k : kinds) sum += metric_value(k);
        return sum / static_cast<double>(kinds.size());
    };
    ClaimResult res;
    res.spec = spec;
    res.computed = mean_over(spec.numerator_kinds) / mean_over(spec.denominator_kinds);
    if (spec.check == ClaimCheck::approx) {
        const double diff = std::abs(res.computed - spec.claimed);
        res.passed = diff <= spec.rel_tol * spec.claimed;
        res.detail = "computed " + format_double(res.computed) + " vs claimed " +
                     format_double(spec.claimed) + " (rel diff " +
                     format_double(diff / spec.claimed) + ", tol " + format_double(spec.rel_tol) +
                     ")";
    } else {
        res.passed = res.computed >= spec.claimed;
        res.detail = "computed " + format_double(res.computed) + " vs floor " +
                     format_double(spec.claimed);
    }
    return res;
}

} // namespace nova
