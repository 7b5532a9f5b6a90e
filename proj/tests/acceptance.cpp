// SPDX-License-Identifier: Apache-2.0
//
// Release gate: one check per shipped guarantee, one [PASS]/[FAIL] line
// each, exit 0 only when everything holds. Expected numbers and tolerances
// are pinned here as literals on purpose; changing them is a contract
// change, not a refactor.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "nova/cost.hpp"
#include "nova/fit_direct.hpp"
#include "nova/io.hpp"
#include "nova/lut.hpp"
#include "nova/mlp.hpp"
#include "nova/noc.hpp"
#include "nova/profiles.hpp"
#include "nova/random.hpp"
#include "nova/softmax.hpp"

namespace fs = std::filesystem;
using namespace nova;
using Clock = std::chrono::steady_clock;

namespace {

const std::string kCli = NOVA_CLI_PATH;
const std::string kRepo = NOVA_REPO_DIR;
const FixedPointFormat kQ5_10{16, 10, true};

int g_failures = 0;

void verdict(int idx, const std::string& name, bool ok, const std::string& detail) {
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << idx << ": " << name << " ("
              << detail << ")\n";
    if (!ok) ++g_failures;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

int run_cli(const std::string& args) {
    const std::string cmd = kCli + " " + args + " >acceptance_cli.log 2>&1";
    const int status = std::system(cmd.c_str());
    if (status == -1 || !WIFEXITED(status)) return -1;
    return WEXITSTATUS(status);
}

std::string fmt(double v) { return format_double(v); }

bool close_rel(double computed, double expected, double rel_tol, std::string& note) {
    const bool ok = std::abs(computed - expected) <= rel_tol * std::abs(expected);
    if (!ok)
        note += " " + fmt(computed) + "!=" + fmt(expected) + ";";
    return ok;
}

// ---------------------------------------------------------------- criterion 1

/// Per-kind steady-state cycles at the default operating point (one lane
/// per router per cycle, 16-segment tables), mirroring the report command.
std::map<std::string, long> default_cycles(const AcceleratorProfile& p, long queries) {
    NovaNocConfig noc;
    noc.num_routers = p.num_nova_routers;
    noc.neurons_per_router = p.neurons_per_router;
    noc.base_freq_mhz = p.base_freq_mhz;
    noc.noc_freq_multiplier = 2;
    PiecewiseLinearFn pwl;
    pwl.function_id = FunctionId::identity;
    pwl.domain = {0.0, 1.0};
    for (int i = 0; i < 16; ++i) {
        pwl.breakpoints.push_back(i / 16.0);
        pwl.slopes.push_back(1.0);
        pwl.biases.push_back(0.0);
    }
    const long nova_cycles = throughput_model(noc, pwl, queries).base_cycles;
    LutConfig lut;
    lut.neurons = p.neurons_per_router;
    lut.base_freq_mhz = p.base_freq_mhz;
    std::map<std::string, long> cycles;
    for (const ApproximatorEntry& e : p.entries) {
        if (e.kind == "per_neuron_lut") {
            lut.kind = LutKind::per_neuron;
            lut.ports = 1;
            cycles[e.kind] = lut_throughput_cycles(lut, queries, p.num_nova_routers, 1);
        } else if (e.kind == "per_core_lut") {
            lut.kind = LutKind::per_core;
            lut.ports = 1;
            cycles[e.kind] = lut_throughput_cycles(lut, queries, p.num_nova_routers, 1);
        } else {
            cycles[e.kind] = nova_cycles;
        }
    }
    return cycles;
}

void criterion_published_ratios() {
    const auto t0 = Clock::now();
    std::string note;
    bool ok = true;

    // End to end through the CLI first.
    fs::remove_all("acc_scratch/report");
    fs::create_directories("acc_scratch/report");
    atomic_write_file("acc_scratch/report/exp.cfg",
                      "data_dir = " + kRepo + "/data\n" +
                          "profiles = react, tpu_v3_like, tpu_v4_like, jetson_xavier_nx\n" +
                          "workload = bert_tiny\n");
    const int code = run_cli("report --config acc_scratch/report/exp.cfg --against-paper "
                             "--out-dir acc_scratch/report/out");
    if (code != 0) {
        ok = false;
        note += " cli exit " + std::to_string(code) + ";";
    }

    // Same arithmetic recomputed in process, pinned tight. Published values
    // are rounded to 2-3 digits, so their bands are relative; the exact
    // ratios the data implies are pinned at 1e-6 so silent drift in the
    // data files or the fold arithmetic cannot pass unnoticed.
    const std::string dir = kRepo + "/data/profiles";
    const AcceleratorProfile react = load_profile("react", dir);
    const AcceleratorProfile tpu3 = load_profile("tpu_v3_like", dir);
    const AcceleratorProfile tpu4 = load_profile("tpu_v4_like", dir);
    const AcceleratorProfile jetson = load_profile("jetson_xavier_nx", dir);
    const auto entry = [](const AcceleratorProfile& p, const std::string& kind) {
        const ApproximatorEntry* e = p.find_entry(kind);
        if (!e) throw std::runtime_error("missing entry " + kind);
        return *e;
    };

    const double react_power = (entry(react, "per_neuron_lut").power_mw +
                                entry(react, "per_core_lut").power_mw) /
                               2.0 / entry(react, "nova").power_mw;
    const double react_area_pn =
        entry(react, "per_neuron_lut").area_mm2 / entry(react, "nova").area_mm2;
    const double react_area_pc =
        entry(react, "per_core_lut").area_mm2 / entry(react, "nova").area_mm2;

    const WorkloadSpec bert = load_workload("bert_tiny", kRepo + "/data/workloads");
    const long queries = nonlinear_query_count(bert).total();
    const std::map<std::string, long> tpu4_cycles = default_cycles(tpu4, queries);
    const auto energy = [&](const std::string& kind) {
        return entry(tpu4, kind).power_mw * static_cast<double>(tpu4_cycles.at(kind));
    };
    const double tpu4_energy_pn = energy("per_neuron_lut") / energy("nova");
    const double tpu4_energy_pc = energy("per_core_lut") / energy("nova");

    const double tpu3_area =
        entry(tpu3, "per_neuron_lut").area_mm2 / entry(tpu3, "nova").area_mm2;
    const double jetson_power =
        entry(jetson, "nvdla_sdp").power_mw / entry(jetson, "nova").power_mw;
    const double jetson_area =
        entry(jetson, "nvdla_sdp").area_mm2 / entry(jetson, "nova").area_mm2;

    // Exact values implied by the data files, pinned at 1e-6 relative.
    ok &= close_rel(react_power, 2.474895753552889, 1e-6, note);
    ok &= close_rel(react_area_pn, 3.334067143643368, 1e-6, note);
    ok &= close_rel(react_area_pc, 1.7754540451293341, 1e-6, note);
    ok &= close_rel(tpu4_energy_pn, 4.138592219877726, 1e-6, note);
    ok &= close_rel(tpu4_energy_pc, 9.332575880538874, 1e-6, note);
    ok &= close_rel(tpu3_area, 3.0603864734299515, 1e-6, note);
    ok &= close_rel(jetson_power, 37.76429675425038, 1e-6, note);
    ok &= close_rel(jetson_area, 5.007246376811594, 1e-6, note);

    // Published bands on top of the exact pins.
    ok &= close_rel(react_power, 2.5, 0.05, note);
    ok &= close_rel(react_area_pn, 3.34, 0.02, note);
    ok &= close_rel(react_area_pc, 1.78, 0.02, note);
    ok &= close_rel(tpu4_energy_pn, 4.14, 0.05, note);
    ok &= close_rel(tpu4_energy_pc, 9.4, 0.05, note);
    if (!(tpu3_area >= 3.0)) {
        ok = false;
        note += " tpu_v3 area " + fmt(tpu3_area) + " < 3;";
    }
    ok &= close_rel(jetson_power, 37.8, 0.1, note);
    ok &= close_rel(jetson_area, 4.99, 0.02, note);

    const double elapsed = seconds_since(t0);
    if (elapsed >= 1.0) {
        ok = false;
        note += " too slow;";
    }
    verdict(1, "published power/area/energy ratios reproduced", ok,
            "8 claims via cli + in-process pins at 1e-6," + note + " " + fmt(elapsed) + "s");
}

// ---------------------------------------------------------------- criterion 2

void criterion_latency_parity() {
    const auto t0 = Clock::now();
    std::string note;
    bool ok = true;
    const std::string dir = kRepo + "/data/profiles";
    for (const std::string& name : known_profiles(dir)) {
        const AcceleratorProfile p = load_profile(name, dir);
        for (const int b : {8, 16}) {
            const PiecewiseLinearFn pwl =
                fit_direct(FunctionId::sigmoid, b, {-6.0, 6.0}, 512);
            const int expected_multiplier = b <= 8 ? 1 : 2;
            NovaNocConfig noc;
            noc.num_routers = p.num_nova_routers;
            noc.neurons_per_router = p.neurons_per_router;
            noc.base_freq_mhz = p.base_freq_mhz;
            noc.noc_freq_multiplier = expected_multiplier;
            const std::vector<std::vector<double>> inputs(
                static_cast<std::size_t>(p.num_nova_routers), std::vector<double>(1, 0.25));
            const SimResult nova_run = simulate_approximation(noc, pwl, inputs, kQ5_10);

            LutConfig lut;
            lut.neurons = p.neurons_per_router;
            lut.base_freq_mhz = p.base_freq_mhz;
            lut.kind = LutKind::per_neuron;
            lut.ports = 1;
            const LutStats pn = simulate_lut(lut, pwl, inputs, kQ5_10);
            lut.kind = LutKind::per_core;
            const LutStats pc = simulate_lut(lut, pwl, inputs, kQ5_10);

            const WaveSchedule sched = schedule_waves(pwl, kQ5_10);
            if (nova_run.base_cycles != 2 || pn.base_cycles != 2 || pc.base_cycles != 2 ||
                sched.noc_freq_multiplier != expected_multiplier) {
                ok = false;
                note += " " + name + " B" + std::to_string(b) + " cycles " +
                        std::to_string(nova_run.base_cycles) + "/" +
                        std::to_string(pn.base_cycles) + "/" + std::to_string(pc.base_cycles) +
                        " mult " + std::to_string(sched.noc_freq_multiplier) + ";";
            }
        }
    }
    const double elapsed = seconds_since(t0);
    if (elapsed >= 1.0) {
        ok = false;
        note += " too slow;";
    }
    verdict(2, "two-cycle transactions and wave-count clock multiplier on every profile", ok,
            "4 profiles x B in {8,16}," + note + " " + fmt(elapsed) + "s");
}

// ---------------------------------------------------------------- criterion 3

void criterion_oracle_equivalence() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(20240501);
    const int cases = 10000;
    long mismatches = 0;
    long words = 0;
    for (int c = 0; c < cases; ++c) {
        const int total_bits = static_cast<int>(uniform_int(rng, 8, 16));
        const int frac_bits = static_cast<int>(uniform_int(rng, 1, total_bits - 1));
        const FixedPointFormat word_fmt{total_bits, frac_bits, true};
        const int b = static_cast<int>(uniform_int(rng, 1, 16));
        PiecewiseLinearFn pwl;
        pwl.function_id = FunctionId::identity;
        pwl.domain = {-4.0, 4.0};
        double d = -4.0;
        for (int i = 0; i < b; ++i) {
            pwl.breakpoints.push_back(d);
            pwl.slopes.push_back(uniform_double(rng, -2.0, 2.0));
            pwl.biases.push_back(uniform_double(rng, -2.0, 2.0));
            d += uniform_double(rng, 0.05, 8.0 / b);
        }
        const int routers = static_cast<int>(uniform_int(rng, 1, 10));
        const int neurons = static_cast<int>(uniform_int(rng, 1, 8));
        const int lanes = static_cast<int>(uniform_int(rng, 1, neurons));
        const int lanes_per_cycle = static_cast<int>(uniform_int(rng, 1, lanes));
        NovaNocConfig noc;
        noc.num_routers = routers;
        noc.neurons_per_router = neurons;
        noc.base_freq_mhz = 500.0;
        noc.noc_freq_multiplier = (b + 7) / 8;
        noc.lanes_per_cycle = lanes_per_cycle;
        std::vector<std::vector<double>> inputs(static_cast<std::size_t>(routers));
        for (auto& row : inputs) {
            row.resize(static_cast<std::size_t>(lanes));
            for (double& x : row) x = uniform_double(rng, -5.0, 5.0);
        }
        const SimResult nova_run = simulate_approximation(noc, pwl, inputs, word_fmt);
        LutConfig lut;
        lut.neurons = neurons;
        lut.bank_bytes = 64;
        lut.base_freq_mhz = 500.0;
        lut.kind = LutKind::per_neuron;
        lut.ports = 1;
        const LutStats pn = simulate_lut(lut, pwl, inputs, word_fmt);
        lut.kind = LutKind::per_core;
        lut.ports = static_cast<int>(uniform_int(rng, 1, 4));
        const LutStats pc = simulate_lut(lut, pwl, inputs, word_fmt);
        const QuantizedPwl q = quantize_pwl(pwl, word_fmt);
        for (std::size_t r = 0; r < inputs.size(); ++r)
            for (std::size_t l = 0; l < inputs[r].size(); ++l) {
                const std::int32_t direct = eval_pwl_fixed(q, quantize(inputs[r][l], word_fmt));
                ++words;
                if (nova_run.outputs[r][l] != direct || pn.outputs[r][l] != direct ||
                    pc.outputs[r][l] != direct)
                    ++mismatches;
            }
    }
    const double elapsed = seconds_since(t0);
    const bool ok = mismatches == 0 && elapsed < 60.0;
    verdict(3, "fabric, LUT, and direct fixed-point outputs bit-identical", ok,
            std::to_string(cases) + " random cases, " + std::to_string(words) + " words, " +
                std::to_string(mismatches) + " mismatches, " + fmt(elapsed) + "s");
}

// ---------------------------------------------------------------- criterion 4

void criterion_scalability_rule() {
    std::string note;
    bool ok = true;
    AcceleratorProfile p;
    p.name = "probe";
    p.neurons_per_router = 4;
    p.onchip_memory_bytes = 1024;
    p.base_freq_mhz = 750.0;
    p.entries = {{"nova", 1.0, 1.0}};

    p.num_nova_routers = 10;
    if (!check_scalability(p, 1.5).ok) {
        ok = false;
        note += " 10@1.5 failed;";
    }
    p.num_nova_routers = 11;
    const ScalabilityReport eleven = check_scalability(p, 1.5);
    if (eleven.ok || eleven.required_segments != 2) {
        ok = false;
        note += " 11 routers not split;";
    }
    p.num_nova_routers = 10;
    if (check_scalability(p, 1.5 + 1e-9).ok) {
        ok = false;
        note += " clock cap leaked;";
    }

    // The split must surface as a real buffering cycle in the router model.
    NovaNocConfig noc;
    noc.num_routers = 11;
    noc.neurons_per_router = 4;
    noc.base_freq_mhz = 750.0;
    noc.noc_freq_multiplier = 1;
    const WaveSchedule sched =
        schedule_waves(fit_direct(FunctionId::sigmoid, 8, {-6.0, 6.0}, 512), kQ5_10);
    long max_cycle_11 = 0;
    for (const FlitEvent& ev : route_broadcast(noc, sched.flits))
        max_cycle_11 = std::max(max_cycle_11, ev.noc_cycle);
    noc.num_routers = 10;
    long max_cycle_10 = 0;
    for (const FlitEvent& ev : route_broadcast(noc, sched.flits))
        max_cycle_10 = std::max(max_cycle_10, ev.noc_cycle);
    if (max_cycle_10 != 0 || max_cycle_11 < 1) {
        ok = false;
        note += " buffering cycles " + std::to_string(max_cycle_10) + "/" +
                std::to_string(max_cycle_11) + ";";
    }
    verdict(4, "single-cycle traversal capped at 10 routers / 1.5 GHz", ok,
            "boundary at 10/11 routers, extra cycle observed in routing," + note);
}

// ---------------------------------------------------------------- criterion 5

struct QualityCell {
    FunctionId id;
    Interval domain;
    double recorded_baseline; // direct-fit max error recorded at first build
};

void criterion_approximation_quality() {
    const auto t0 = Clock::now();
    std::string note;
    bool ok = true;

    const std::vector<QualityCell> cells = {
        {FunctionId::exp, {-8.0, 0.0}, 0.0013550757},
        {FunctionId::gelu, {-4.0, 4.0}, 0.0030016626},
        {FunctionId::sigmoid, {-6.0, 6.0}, 0.0017456348},
    };
    for (const QualityCell& cell : cells) {
        const PiecewiseLinearFn direct = fit_direct(cell.id, 16, cell.domain, 4096);
        const double direct_err =
            error_metrics(direct, cell.id, cell.domain, 4096).max_abs_error;
        if (direct_err > cell.recorded_baseline) {
            ok = false;
            note += " " + function_name(cell.id) + " oracle regressed " + fmt(direct_err) +
                    " > " + fmt(cell.recorded_baseline) + ";";
        }
        MlpTrainConfig train;
        train.seed = 1;
        const MlpApproximator m = fit_mlp(cell.id, 16, cell.domain, train);
        const PiecewiseLinearFn learned = extract_pwl(m, cell.domain, cell.id);
        const double learned_err =
            error_metrics(learned, cell.id, cell.domain, 4096).max_abs_error;
        if (learned_err > 3.0 * direct_err) {
            ok = false;
            note += " " + function_name(cell.id) + " trained " + fmt(learned_err) + " > 3x " +
                    fmt(direct_err) + ";";
        }
    }

    // Softmax built from the trained 16-segment exp and reciprocal tables.
    MlpTrainConfig train;
    train.seed = 1;
    const PiecewiseLinearFn exp_pwl =
        extract_pwl(fit_mlp(FunctionId::exp, 16, {-8.0, 0.0}, train), {-8.0, 0.0},
                    FunctionId::exp);
    const PiecewiseLinearFn recip_pwl =
        extract_pwl(fit_mlp(FunctionId::reciprocal, 16, {1.0, 2.0}, train), {1.0, 2.0},
                    FunctionId::reciprocal);
    std::mt19937_64 rng(777);
    const int trials = 10000;
    int argmax_hits = 0;
    double sum_lo = 2.0, sum_hi = 0.0;
    for (int t = 0; t < trials; ++t) {
        std::vector<double> row(128);
        for (double& x : row) x = gaussian(rng) * 3.0;
        const std::vector<double> approx = approx_softmax(row, exp_pwl, recip_pwl);
        const std::vector<double> exact = exact_softmax(row);
        const auto ai = std::max_element(approx.begin(), approx.end()) - approx.begin();
        const auto xi = std::max_element(exact.begin(), exact.end()) - exact.begin();
        argmax_hits += (ai == xi);
        double sum = 0.0;
        for (double v : approx) sum += v;
        sum_lo = std::min(sum_lo, sum);
        sum_hi = std::max(sum_hi, sum);
    }
    if (argmax_hits < trials * 99 / 100) {
        ok = false;
        note += " argmax " + std::to_string(argmax_hits) + "/" + std::to_string(trials) + ";";
    }
    if (sum_lo < 0.98 || sum_hi > 1.02) {
        ok = false;
        note += " sums [" + fmt(sum_lo) + ", " + fmt(sum_hi) + "];";
    }
    const double elapsed = seconds_since(t0);
    if (elapsed >= 300.0) {
        ok = false;
        note += " too slow;";
    }
    verdict(5, "table quality: oracle baselines hold, trained fits within 3x, softmax intact",
            ok,
            "argmax " + std::to_string(argmax_hits) + "/" + std::to_string(trials) + ", sums [" +
                fmt(sum_lo) + ", " + fmt(sum_hi) + "]," + note + " " + fmt(elapsed) + "s");
}

// ---------------------------------------------------------------- criterion 6

bool trees_identical(const fs::path& a, const fs::path& b, std::string& note) {
    std::map<std::string, fs::path> files_a, files_b;
    for (const auto& e : fs::recursive_directory_iterator(a))
        if (e.is_regular_file()) files_a[fs::relative(e.path(), a).string()] = e.path();
    for (const auto& e : fs::recursive_directory_iterator(b))
        if (e.is_regular_file()) files_b[fs::relative(e.path(), b).string()] = e.path();
    if (files_a.size() != files_b.size() || files_a.empty()) {
        note += " file count " + std::to_string(files_a.size()) + " vs " +
                std::to_string(files_b.size()) + ";";
        return false;
    }
    for (const auto& [rel, path] : files_a) {
        const auto it = files_b.find(rel);
        if (it == files_b.end()) {
            note += " missing " + rel + ";";
            return false;
        }
        if (read_file(path.string()) != read_file(it->second.string())) {
            note += " differs " + rel + ";";
            return false;
        }
    }
    return true;
}

void criterion_determinism() {
    const auto t0 = Clock::now();
    std::string note;
    bool ok = true;
    fs::remove_all("acc_scratch/sweep_a");
    fs::remove_all("acc_scratch/sweep_b");
    const std::string cfg = kRepo + "/configs/sweep_reference.cfg";
    if (run_cli("sweep --config " + cfg + " --out-dir acc_scratch/sweep_a") != 0) {
        ok = false;
        note += " first run failed;";
    }
    if (run_cli("sweep --config " + cfg + " --out-dir acc_scratch/sweep_b") != 0) {
        ok = false;
        note += " second run failed;";
    }
    if (ok) ok = trees_identical("acc_scratch/sweep_a", "acc_scratch/sweep_b", note);
    const double elapsed = seconds_since(t0);
    if (elapsed >= 120.0) {
        ok = false;
        note += " too slow;";
    }
    verdict(6, "reference sweep reruns byte-identical", ok,
            "two full cli sweeps compared file by file," + note + " " + fmt(elapsed) + "s");
}

// ---------------------------------------------------------------- criterion 7

void criterion_wave_addressing() {
    std::string note;
    bool ok = true;
    for (int b = 1; b <= 16; ++b) {
        const int waves = (b + 7) / 8;
        std::set<std::pair<int, int>> seen;
        for (int address = 1; address <= b; ++address) {
            const WireAddress wa = wire_address(address, waves);
            if (wa.tag < 0 || wa.tag >= waves || wa.slot < 0 || wa.slot >= 8) {
                ok = false;
                note += " B" + std::to_string(b) + " addr " + std::to_string(address) +
                        " out of range;";
            }
            seen.insert({wa.tag, wa.slot});
        }
        if (seen.size() != static_cast<std::size_t>(b)) {
            ok = false;
            note += " B" + std::to_string(b) + " not injective;";
        }

        // Retrieval through the scheduled waves: exactly one wave matches
        // each address and yields that segment's quantized pair.
        PiecewiseLinearFn pwl;
        pwl.function_id = FunctionId::identity;
        pwl.domain = {0.0, 1.0};
        for (int i = 0; i < b; ++i) {
            pwl.breakpoints.push_back(static_cast<double>(i) / b);
            pwl.slopes.push_back((i + 1) / 32.0);
            pwl.biases.push_back(-(i + 1) / 32.0);
        }
        const QuantizedPwl q = quantize_pwl(pwl, kQ5_10);
        const WaveSchedule sched = schedule_waves(q);
        if (sched.wave_count() != waves) {
            ok = false;
            note += " B" + std::to_string(b) + " wave count;";
        }
        for (int address = 1; address <= b; ++address) {
            int matches = 0;
            std::pair<std::int32_t, std::int32_t> got{0, 0};
            for (const BroadcastFlit& flit : sched.flits) {
                const auto hit = router_match(flit, address, waves);
                if (hit) {
                    ++matches;
                    got = *hit;
                }
            }
            const auto s = static_cast<std::size_t>(address - 1);
            if (matches != 1 || got.first != q.slopes[s] || got.second != q.biases[s]) {
                ok = false;
                note += " B" + std::to_string(b) + " addr " + std::to_string(address) +
                        " match " + std::to_string(matches) + ";";
            }
        }
    }
    verdict(7, "wave addressing is a bijection and matching retrieves every segment", ok,
            "B 1..16 enumerated exhaustively," + note);
}

} // namespace

int main() {
    try {
        criterion_published_ratios();
        criterion_latency_parity();
        criterion_oracle_equivalence();
        criterion_scalability_rule();
        criterion_approximation_quality();
        criterion_determinism();
        criterion_wave_addressing();
    } catch (const std::exception& e) {
        std::cout << "[FAIL] acceptance suite aborted: " << e.what() << "\n";
        return 1;
    }
    if (g_failures != 0) {
        std::cout << g_failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all 7 criteria passed\n";
    return 0;
}
