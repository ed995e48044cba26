// Command-line front end. Talks to the library only through the C API.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gkp/gkp.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

// Library failure, reported with exit code 1.
struct LibraryFailure {
    std::string message;
};

struct UsageFailure {
    std::string message;
};

void check(gkp_status status, const char* what) {
    if (status != GKP_OK) throw LibraryFailure{std::string(what) + ": " + gkp_last_error_message()};
}

template <class T, void (*Free)(T*)>
struct Deleter {
    void operator()(T* p) const { Free(p); }
};
using CombPtr = std::unique_ptr<gkp_comb, Deleter<gkp_comb, gkp_comb_free>>;
using GridPtr = std::unique_ptr<gkp_grid, Deleter<gkp_grid, gkp_grid_free>>;
using RecordsPtr = std::unique_ptr<gkp_records, Deleter<gkp_records, gkp_records_free>>;
using SchedulePtr = std::unique_ptr<gkp_schedule, Deleter<gkp_schedule, gkp_schedule_free>>;
using RngPtr = std::unique_ptr<gkp_rng, Deleter<gkp_rng, gkp_rng_free>>;

std::string take_string(char* raw) {
    std::string out(raw ? raw : "");
    gkp_string_free(raw);
    return out;
}

double parse_alpha(const std::string& text) {
    double alpha = 0.0;
    if (gkp_parse_alpha(text.c_str(), &alpha) != GKP_OK) throw UsageFailure{gkp_last_error_message()};
    return alpha;
}

gkp_axis parse_axis(const std::string& text) { return text == "momentum" ? GKP_MOMENTUM : GKP_POSITION; }

gkp_mode parse_mode(const std::string& text) {
    if (text == "deterministic") return GKP_DETERMINISTIC;
    if (text == "sample") return GKP_SAMPLE;
    return GKP_POSTSELECT;
}

std::vector<int> parse_bits(const std::string& text) {
    std::vector<int> bits;
    for (char c : text) {
        if (c != '0' && c != '1') throw UsageFailure{"--bits must contain only 0 and 1"};
        bits.push_back(c - '0');
    }
    return bits;
}

std::string bit_string(const std::vector<int>& bits) {
    std::string s;
    for (int b : bits) s += static_cast<char>('0' + b);
    return s;
}

// Collects output files and writes the run manifest last.
class OutputDir {
public:
    explicit OutputDir(const std::string& path) : root_(path) { fs::create_directories(root_); }

    void write(const std::string& name, const std::string& content) {
        std::ofstream f(root_ / name, std::ios::binary);
        if (!f) throw LibraryFailure{"cannot write " + (root_ / name).string()};
        f << content;
        files_.push_back(name);
    }

    void finish(const std::string& command, json config, std::uint64_t seed,
                std::chrono::steady_clock::time_point start) {
        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        json manifest{{"command", command},     {"config", std::move(config)}, {"seed", seed},
                      {"outputs", files_},      {"tool_version", gkp_version()}, {"wall_time_s", wall}};
        std::ofstream f(root_ / "manifest.json", std::ios::binary);
        f << manifest.dump(2) << "\n";
    }

private:
    fs::path root_;
    std::vector<std::string> files_;
};

double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t h = v.size() / 2;
    return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

struct PrepareArgs {
    int n = 3;
    double delta = 0.15;
    std::string alpha = "sqrt(pi/2)";
    int bit = 1;
    std::string mode = "postselect";
    std::string bits;
    std::string axis = "position";
    std::uint64_t seed = 0;
};

json record_json(const gkp_records* records, std::size_t i) {
    double probability = 0.0;
    double normalization = 0.0;
    std::size_t count = 0;
    check(gkp_records_info(records, i, &probability, &normalization, nullptr, 0, &count), "record");
    std::vector<int> bits(count);
    check(gkp_records_info(records, i, nullptr, nullptr, bits.data(), bits.size(), &count), "record");
    gkp_comb* raw = nullptr;
    check(gkp_records_state(records, i, &raw), "record state");
    CombPtr comb(raw);
    char* text = nullptr;
    check(gkp_comb_to_json(comb.get(), &text), "comb json");
    return json{{"bits", bits},
                {"probability", probability},
                {"normalization", normalization},
                {"state", json::parse(take_string(text))}};
}

int cmd_prepare(const PrepareArgs& a, const std::string& out_dir) {
    const auto start = std::chrono::steady_clock::now();
    gkp_prep_config cfg;
    gkp_prep_config_default(&cfg);
    cfg.alpha = parse_alpha(a.alpha);
    cfg.delta = a.delta;
    cfg.iterations = a.n;
    cfg.bit = a.bit;
    cfg.axis = parse_axis(a.axis);
    cfg.mode = parse_mode(a.mode);
    cfg.seed = a.seed;

    gkp_records* raw = nullptr;
    if (!a.bits.empty()) {
        const std::vector<int> bits = parse_bits(a.bits);
        check(gkp_run_outcomes(&cfg, bits.data(), bits.size(), &raw), "prepare");
    } else {
        check(gkp_prepare(&cfg, &raw), "prepare");
    }
    RecordsPtr records(raw);

    gkp_grid_spec spec;
    check(gkp_default_grid(cfg.alpha, a.n, cfg.axis, &spec), "grid");
    OutputDir out(out_dir);
    const std::size_t count = gkp_records_count(records.get());
    json all = json::array();
    for (std::size_t i = 0; i < count; ++i) {
        json rec = record_json(records.get(), i);
        const std::string suffix = count > 1 ? "_" + bit_string(rec["bits"].get<std::vector<int>>()) : "";
        gkp_comb* comb_raw = nullptr;
        check(gkp_records_state(records.get(), i, &comb_raw), "record state");
        CombPtr comb(comb_raw);
        gkp_grid* own_raw = nullptr;
        check(gkp_comb_to_grid(comb.get(), &spec, &own_raw), "grid");
        GridPtr own(own_raw);
        gkp_grid* dual_raw = nullptr;
        check(gkp_grid_fourier(own.get(), &dual_raw), "fourier");
        GridPtr dual(dual_raw);
        GridPtr& position = cfg.axis == GKP_POSITION ? own : dual;
        GridPtr& momentum = cfg.axis == GKP_POSITION ? dual : own;
        char* text = nullptr;
        check(gkp_grid_to_csv(position.get(), &text), "csv");
        out.write("position" + suffix + ".csv", take_string(text));
        check(gkp_grid_to_csv(momentum.get(), &text), "csv");
        out.write("momentum" + suffix + ".csv", take_string(text));
        all.push_back(std::move(rec));
    }
    out.write("records.json", all.dump(2) + "\n");
    for (const json& r : all) {
        std::printf("bits=%s probability=%.12g peaks=%zu\n", bit_string(r["bits"].get<std::vector<int>>()).c_str(),
                    r["probability"].get<double>(), r["state"]["peaks"].size());
    }
    out.finish("prepare",
               json{{"n", a.n},
                    {"delta", a.delta},
                    {"alpha", cfg.alpha},
                    {"bit", a.bit},
                    {"mode", a.mode},
                    {"bits", a.bits},
                    {"axis", a.axis}},
               a.seed, start);
    return kExitOk;
}

struct AnalyzeArgs {
    std::string alpha = "sqrt(pi/2)";
    std::vector<double> deltas{0.1, 0.15, 0.2, 0.3};
    int max_n = 4;
};

int cmd_analyze(const AnalyzeArgs& a, const std::string& out_dir) {
    const auto start = std::chrono::steady_clock::now();
    const double alpha = parse_alpha(a.alpha);
    OutputDir out(out_dir);
    json reports = json::array();
    std::string csv =
        "delta,n,position_error,position_bound,position_within_bound,momentum_error,momentum_bound,"
        "momentum_within_bound,overlap01,mean_energy\n";
    for (double delta : a.deltas) {
        for (int n = 1; n <= a.max_n; ++n) {
            gkp_error_report r;
            check(gkp_analyze(alpha, delta, n, &r), "analyze");
            const bool pos_ok = r.position_error <= r.position_bound;
            const bool mom_ok = r.momentum_error <= r.momentum_bound;
            char line[512];
            std::snprintf(line, sizeof line, "%.17g,%d,%.17g,%.17g,%s,%.17g,%.17g,%s,%.17g,%.17g\n", delta, n,
                          r.position_error, r.position_bound, pos_ok ? "true" : "false", r.momentum_error,
                          r.momentum_bound, mom_ok ? "true" : "false", r.overlap01, r.mean_energy);
            csv += line;
            reports.push_back(json{{"alpha", r.alpha},
                                   {"delta", r.delta},
                                   {"n", r.iterations},
                                   {"position_error", r.position_error},
                                   {"position_bound", r.position_bound},
                                   {"momentum_error", r.momentum_error},
                                   {"momentum_bound", r.momentum_bound},
                                   {"overlap01", r.overlap01},
                                   {"mean_energy", r.mean_energy}});
        }
    }
    out.write("report.json", reports.dump(2) + "\n");
    out.write("sweep.csv", csv);
    std::fputs(csv.c_str(), stdout);
    out.finish("analyze", json{{"alpha", alpha}, {"deltas", a.deltas}, {"max_n", a.max_n}}, 0, start);
    return kExitOk;
}

struct RecoverArgs {
    std::string alpha = "sqrt(pi/2)";
    double delta = 0.15;
    int n = 2;
    std::string logical = "0";
    std::string quadrature = "position";
    std::string ancilla = "ideal";
    int trials = 100;
    double shift = 0.0;   // alpha (position) or pi/alpha (momentum)
    double spread = 0.0;  // uniform half-width, same unit
    int cells_per_alpha = 32;
    std::uint64_t seed = 1;
};

int cmd_recover(const RecoverArgs& a, const std::string& out_dir) {
    const auto start = std::chrono::steady_clock::now();
    const double alpha = parse_alpha(a.alpha);
    const bool momentum = a.quadrature == "momentum";
    const double unit = momentum ? std::numbers::pi / alpha : alpha;

    gkp_prep_config cfg;
    gkp_prep_config_default(&cfg);
    cfg.alpha = alpha;
    cfg.delta = a.delta;
    cfg.iterations = a.n;
    double c0 = 1.0;
    double c1 = 0.0;
    if (a.logical == "1") {
        c0 = 0.0;
        c1 = 1.0;
    } else if (a.logical == "plus") {
        c0 = c1 = std::sqrt(0.5);
    }
    gkp_comb* raw = nullptr;
    check(gkp_encode_superposition(c0, 0.0, c1, 0.0, &cfg, &raw), "encode");
    CombPtr encoded(raw);

    gkp_recovery_config rc;
    gkp_recovery_config_default(&rc);
    rc.alpha = alpha;
    rc.delta = a.delta;
    rc.quadrature = momentum ? GKP_MOMENTUM : GKP_POSITION;
    rc.cells_per_alpha = a.cells_per_alpha;

    gkp_rng* rng_raw = nullptr;
    check(gkp_rng_create(a.seed, &rng_raw), "rng");
    RngPtr rng(rng_raw);

    OutputDir out(out_dir);
    std::string csv = "trial,shift,measured,estimate,residual,abs_error,fidelity,logical_failure\n";
    std::vector<double> errors;
    std::vector<double> fidelities;
    int failures = 0;
    for (int t = 0; t < a.trials; ++t) {
        const double u = a.spread > 0.0 ? gkp_rng_uniform(rng.get()) : 0.5;
        const double shift = (a.shift + a.spread * (2.0 * u - 1.0)) * unit;
        gkp_recovery_result r;
        check(gkp_recover(encoded.get(), momentum ? 0.0 : shift, momentum ? shift : 0.0, a.ancilla.c_str(), &rc,
                          rng.get(), &r, nullptr),
              "recover");
        const double abs_error = std::abs(r.estimate - r.true_shift);
        errors.push_back(abs_error);
        fidelities.push_back(r.fidelity);
        failures += r.logical_failure;
        char line[320];
        std::snprintf(line, sizeof line, "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n", t, shift, r.measured,
                      r.estimate, r.residual_shift, abs_error, r.fidelity, r.logical_failure);
        csv += line;
    }
    double mean_fidelity = 0.0;
    for (double f : fidelities) mean_fidelity += f;
    if (!fidelities.empty()) mean_fidelity /= static_cast<double>(fidelities.size());
    json summary{{"trials", a.trials},
                 {"position_spacing", alpha / a.cells_per_alpha},
                 {"median_abs_error", median(errors)},
                 {"mean_fidelity", mean_fidelity},
                 {"median_fidelity", median(fidelities)},
                 {"logical_failure_rate", a.trials ? static_cast<double>(failures) / a.trials : 0.0}};
    out.write("trials.csv", csv);
    out.write("summary.json", summary.dump(2) + "\n");
    std::printf("%s", summary.dump(2).c_str());
    std::printf("\n");
    out.finish("recover",
               json{{"alpha", alpha},
                    {"delta", a.delta},
                    {"n", a.n},
                    {"logical", a.logical},
                    {"quadrature", a.quadrature},
                    {"ancilla", a.ancilla},
                    {"trials", a.trials},
                    {"shift", a.shift},
                    {"spread", a.spread},
                    {"cells_per_alpha", a.cells_per_alpha}},
               a.seed, start);
    return kExitOk;
}

struct CompileArgs {
    int n = 3;
    std::string alpha = "sqrt(pi/2)";
    double delta = 0.15;
    int bit = 1;
    std::string axis = "position";
    std::string mode = "postselect";
    std::string format = "json";
    std::uint64_t seed = 0;
};

int cmd_compile(const CompileArgs& a, const std::string& out_dir) {
    const auto start = std::chrono::steady_clock::now();
    gkp_prep_config cfg;
    gkp_prep_config_default(&cfg);
    cfg.alpha = parse_alpha(a.alpha);
    cfg.delta = a.delta;
    cfg.iterations = a.n;
    cfg.bit = a.bit;
    cfg.axis = parse_axis(a.axis);
    cfg.mode = parse_mode(a.mode);
    cfg.seed = a.seed;
    gkp_schedule* raw = nullptr;
    check(gkp_compile(&cfg, &raw), "compile");
    SchedulePtr schedule(raw);

    char* violations = nullptr;
    std::size_t count = 0;
    check(gkp_schedule_validate(schedule.get(), &violations, &count), "validate");
    const std::string listing = take_string(violations);
    if (count) throw LibraryFailure{"schedule failed validation:\n" + listing};

    const bool text = a.format == "text";
    char* emitted = nullptr;
    check(gkp_schedule_emit(schedule.get(), text ? GKP_FORMAT_TEXT : GKP_FORMAT_JSON, &emitted), "emit");
    const std::string body = take_string(emitted);
    OutputDir out(out_dir);
    out.write(text ? "schedule.txt" : "schedule.json", body);
    std::fputs(body.c_str(), stdout);
    out.finish("compile-schedule",
               json{{"n", a.n}, {"alpha", cfg.alpha}, {"delta", a.delta}, {"bit", a.bit}, {"format", a.format}},
               a.seed, start);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Approximate GKP code-state preparation: simulate, analyze, recover, compile"};
    app.set_version_flag("--version", gkp_version());
    app.require_subcommand(1);
    std::string out_dir = "out";
    app.add_option("--out-dir", out_dir, "Directory for output files and manifest.json");

    const auto alpha_help = "Lattice constant: sqrt(pi/2), sqrt(pi) or a number";

    PrepareArgs pa;
    auto* prepare = app.add_subcommand("prepare", "Run the preparation protocol and write densities");
    prepare->add_option("--n", pa.n, "Iterations")->check(CLI::Range(0, 16));
    prepare->add_option("--delta", pa.delta, "Peak width")->check(CLI::PositiveNumber);
    prepare->add_option("--alpha", pa.alpha, alpha_help);
    prepare->add_option("--bit", pa.bit, "Logical bit")->check(CLI::IsMember({0, 1}));
    prepare->add_option("--mode", pa.mode)->check(CLI::IsMember({"postselect", "deterministic", "sample"}));
    prepare->add_option("--bits", pa.bits, "Fixed outcome sequence, e.g. 101");
    prepare->add_option("--axis", pa.axis)->check(CLI::IsMember({"position", "momentum"}));
    prepare->add_option("--seed", pa.seed);
    prepare->add_option("--out-dir", out_dir);

    AnalyzeArgs aa;
    auto* analyze = app.add_subcommand("analyze", "Error probabilities against their bounds");
    analyze->add_option("--alpha", aa.alpha, alpha_help);
    analyze->add_option("--delta", aa.deltas, "Peak widths to sweep")->check(CLI::PositiveNumber);
    analyze->add_option("--n", aa.max_n, "Largest iteration count")->check(CLI::Range(1, 12));
    analyze->add_option("--out-dir", out_dir);

    RecoverArgs ra;
    double dq = 0.0;
    double dp = 0.0;
    double dq_spread = 0.0;
    double dp_spread = 0.0;
    auto* recover = app.add_subcommand("recover", "Shift-error recovery trials");
    recover->add_option("--alpha", ra.alpha, alpha_help);
    recover->add_option("--delta", ra.delta)->check(CLI::PositiveNumber);
    recover->add_option("--n", ra.n, "Iterations of the encoded codewords")->check(CLI::Range(1, 8));
    recover->add_option("--logical", ra.logical)->check(CLI::IsMember({"0", "1", "plus"}));
    recover->add_option("--ancilla", ra.ancilla, "ideal or bits:<pattern>");
    recover->add_option("--trials", ra.trials)->check(CLI::Range(1, 100000));
    auto* dq_opt = recover->add_option("--dq-shift", dq, "Position shift in units of alpha");
    auto* dp_opt = recover->add_option("--dp-shift", dp, "Momentum shift in units of pi/alpha");
    recover->add_option("--dq-spread", dq_spread, "Uniform half-width of the position shift, units of alpha")
        ->check(CLI::NonNegativeNumber);
    recover->add_option("--dp-spread", dp_spread, "Uniform half-width of the momentum shift, units of pi/alpha")
        ->check(CLI::NonNegativeNumber);
    recover->add_option("--cells-per-alpha", ra.cells_per_alpha)->check(CLI::Range(2, 256));
    recover->add_option("--seed", ra.seed);
    recover->add_option("--out-dir", out_dir);

    CompileArgs ca;
    auto* compile = app.add_subcommand("compile-schedule", "Lower the protocol to an ion-trap pulse schedule");
    compile->add_option("--n", ca.n)->check(CLI::Range(0, 16));
    compile->add_option("--alpha", ca.alpha, alpha_help);
    compile->add_option("--delta", ca.delta)->check(CLI::PositiveNumber);
    compile->add_option("--bit", ca.bit)->check(CLI::IsMember({0, 1}));
    compile->add_option("--axis", ca.axis)->check(CLI::IsMember({"position", "momentum"}));
    compile->add_option("--format", ca.format)->check(CLI::IsMember({"json", "text"}));
    compile->add_option("--seed", ca.seed);
    compile->add_option("--out-dir", out_dir);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*prepare) return cmd_prepare(pa, out_dir);
        if (*analyze) return cmd_analyze(aa, out_dir);
        if (*recover) {
            const bool momentum = dp_opt->count() > 0 || dp_spread > 0.0;
            if (momentum && (dq_opt->count() > 0 || dq_spread > 0.0)) {
                throw UsageFailure{"recover corrects one quadrature per run; give either dq or dp options"};
            }
            ra.quadrature = momentum ? "momentum" : "position";
            ra.shift = momentum ? dp : dq;
            ra.spread = momentum ? dp_spread : dq_spread;
            return cmd_recover(ra, out_dir);
        }
        if (*compile) return cmd_compile(ca, out_dir);
    } catch (const UsageFailure& e) {
        std::cerr << "usage error: " << e.message << "\n";
        return kExitUsage;
    } catch (const LibraryFailure& e) {
        std::cerr << "error: " << e.message << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    }
    return kExitUsage;
}
