#include "gkp/schedule.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "gkp/errors.hpp"

namespace gkp {

using nlohmann::json;

namespace {

constexpr double kPhaseTolerance = 1e-12;
constexpr double kTimeTolerance = 1e-9;
constexpr PulseKind kPattern[] = {PulseKind::pi_half, PulseKind::displacement, PulseKind::pi,
                                  PulseKind::displacement, PulseKind::pi_half, PulseKind::measure};
constexpr std::size_t kPatternLength = std::size(kPattern);

bool near_phase(double phase, double target) {
    const double d = std::remainder(phase - target, 2.0 * kPi);
    return std::abs(d) < kPhaseTolerance;
}

std::string format_number(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", value);
    return buf;
}

}  // namespace

std::string_view to_string(PulseKind kind) noexcept {
    switch (kind) {
        case PulseKind::pi_half: return "PiHalfPulse";
        case PulseKind::pi: return "PiPulse";
        case PulseKind::displacement: return "DisplacementPulse";
        case PulseKind::measure: return "Measure";
        case PulseKind::wait: return "Wait";
    }
    return "Wait";
}

PulseKind parse_pulse_kind(std::string_view text) {
    for (PulseKind k : {PulseKind::pi_half, PulseKind::pi, PulseKind::displacement, PulseKind::measure,
                        PulseKind::wait}) {
        if (text == to_string(k)) return k;
    }
    throw ParseError("unknown pulse kind '" + std::string(text) + "'");
}

PulseSchedule compile(const ProtocolConfig& config) {
    gkp::validate(config);
    if (config.iterations < 1) throw DomainError("cannot compile an empty schedule (n = 0)");
    PulseSchedule s;
    s.config = config;
    for (int k = 1; k <= config.iterations; ++k) {
        const double t0 = k - 1;
        const double m = std::ldexp(1.0, k - 1);
        s.ops.push_back({.kind = PulseKind::pi_half, .time = t0, .phase = 0.0});
        s.ops.push_back({.kind = PulseKind::displacement, .time = t0, .magnitude = m, .phase = kPi});
        s.ops.push_back({.kind = PulseKind::pi, .time = t0});
        s.ops.push_back({.kind = PulseKind::displacement, .time = t0, .magnitude = m, .phase = 0.0});
        s.ops.push_back({.kind = PulseKind::pi_half, .time = t0, .phase = kPi});
        s.ops.push_back({.kind = PulseKind::wait, .time = t0, .duration = 1.0});
        s.ops.push_back({.kind = PulseKind::measure, .time = t0 + 1.0, .bright_state = 1});
    }
    s.total_duration = config.iterations;
    return s;
}

std::vector<std::string> validate(const PulseSchedule& schedule) {
    std::vector<std::string> problems;
    const auto& ops = schedule.ops;
    for (std::size_t i = 1; i < ops.size(); ++i) {
        if (ops[i].time < ops[i - 1].time) problems.push_back("timestamps out of order at op " + std::to_string(i));
    }
    std::vector<const PulseOp*> pulses;
    for (const PulseOp& op : ops) {
        if (op.kind == PulseKind::measure) {
            if (std::abs(op.time - std::nearbyint(op.time)) > kTimeTolerance) problems.push_back("measure off-period");
            if (op.bright_state != 0 && op.bright_state != 1) problems.push_back("bright state must be 0 or 1");
        }
        if (op.kind == PulseKind::wait && !(op.duration >= 0.0)) problems.push_back("negative wait");
        if (op.kind != PulseKind::wait) pulses.push_back(&op);
    }
    if (pulses.empty()) {
        problems.push_back("schedule has no iterations");
        return problems;
    }
    if (pulses.size() % kPatternLength != 0) problems.push_back("pattern broken: incomplete iteration");
    const std::size_t iterations = pulses.size() / kPatternLength;
    double previous = 0.5;
    for (std::size_t it = 0; it < iterations; ++it) {
        const PulseOp* const* group = pulses.data() + it * kPatternLength;
        bool intact = true;
        for (std::size_t j = 0; j < kPatternLength; ++j) intact = intact && group[j]->kind == kPattern[j];
        if (!intact) {
            problems.push_back("pattern broken in iteration " + std::to_string(it + 1));
            continue;
        }
        const double m = group[1]->magnitude;
        if (group[3]->magnitude != m || m != 2.0 * previous) problems.push_back("magnitude not doubling");
        previous = m;
    }
    return problems;
}

std::string emit(const PulseSchedule& schedule, ScheduleFormat format) {
    if (const auto problems = validate(schedule); !problems.empty()) {
        throw DomainError("refusing to emit an invalid schedule: " + problems.front());
    }
    const ProtocolConfig& c = schedule.config;
    if (format == ScheduleFormat::json) {
        json ops = json::array();
        for (const PulseOp& op : schedule.ops) {
            json o{{"t", op.time}, {"kind", to_string(op.kind)}};
            switch (op.kind) {
                case PulseKind::displacement:
                    o["magnitude"] = op.magnitude;
                    o["phase"] = op.phase;
                    break;
                case PulseKind::pi_half:
                case PulseKind::pi: o["phase"] = op.phase; break;
                case PulseKind::wait: o["duration"] = op.duration; break;
                case PulseKind::measure: o["bright_state"] = op.bright_state; break;
            }
            ops.push_back(std::move(o));
        }
        json doc{{"version", "1"},
                 {"config",
                  {{"alpha", c.alpha},
                   {"delta", c.delta},
                   {"n", c.iterations},
                   {"mode", to_string(c.mode)},
                   {"seed", c.seed},
                   {"bit", c.bit},
                   {"axis", to_string(c.axis)}}},
                 {"ops", std::move(ops)},
                 {"total_duration", schedule.total_duration}};
        return doc.dump(2) + "\n";
    }
    std::string out = "# pulse schedule v1  n=" + std::to_string(c.iterations) + "  alpha=" + format_number(c.alpha) +
                      "  delta=" + format_number(c.delta) + "  axis=" + std::string(to_string(c.axis)) + "\n";
    for (const PulseOp& op : schedule.ops) {
        char line[160];
        std::snprintf(line, sizeof line, "t=%-8s %-18s", format_number(op.time).c_str(),
                      std::string(to_string(op.kind)).c_str());
        out += line;
        switch (op.kind) {
            case PulseKind::displacement:
                out += " magnitude=" + format_number(op.magnitude) + " alpha  phase=" + format_number(op.phase);
                break;
            case PulseKind::pi_half:
            case PulseKind::pi: out += " phase=" + format_number(op.phase); break;
            case PulseKind::wait: out += " duration=" + format_number(op.duration); break;
            case PulseKind::measure: out += " bright=|" + std::to_string(op.bright_state) + ">"; break;
        }
        out += "\n";
    }
    out += "total_duration=" + format_number(schedule.total_duration) + "\n";
    return out;
}

PulseSchedule parse_schedule(const std::string& text) {
    try {
        const json doc = json::parse(text);
        if (doc.at("version").get<std::string>() != "1") throw ParseError("unsupported schedule version");
        PulseSchedule s;
        const json& c = doc.at("config");
        s.config.alpha = c.at("alpha").get<double>();
        s.config.delta = c.at("delta").get<double>();
        s.config.iterations = c.at("n").get<int>();
        s.config.mode = parse_prep_mode(c.at("mode").get<std::string>());
        s.config.seed = c.at("seed").get<std::uint64_t>();
        s.config.bit = c.value("bit", 1);
        s.config.axis = parse_quadrature(c.value("axis", std::string("position")));
        for (const json& o : doc.at("ops")) {
            PulseOp op;
            op.kind = parse_pulse_kind(o.at("kind").get<std::string>());
            op.time = o.at("t").get<double>();
            op.magnitude = o.value("magnitude", 0.0);
            op.phase = o.value("phase", 0.0);
            op.duration = o.value("duration", 0.0);
            op.bright_state = o.value("bright_state", 1);
            s.ops.push_back(op);
        }
        s.total_duration = doc.at("total_duration").get<double>();
        return s;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed schedule: ") + e.what());
    }
}

OutcomeRecord interpret(const PulseSchedule& schedule, std::span<const int> outcomes) {
    const ProtocolConfig& c = schedule.config;
    gkp::validate(c);
    QubitOscState state = qubit_zero(squeezed_vacuum(c.delta, c.axis));
    std::vector<int> bits;
    double probability = 1.0;
    for (const PulseOp& op : schedule.ops) {
        switch (op.kind) {
            case PulseKind::pi_half:
                if (near_phase(op.phase, kPi)) {
                    state = hadamard(pauli_x(state));
                } else if (near_phase(op.phase, 0.0)) {
                    state = hadamard(state);
                } else {
                    throw DomainError("pi/2 pulse phase must be 0 or pi");
                }
                break;
            case PulseKind::pi: state = pauli_x(state); break;
            case PulseKind::displacement:
                state = excited_displacement(state, op.magnitude * c.alpha * std::cos(op.phase), c.axis);
                break;
            case PulseKind::measure: {
                if (bits.size() >= outcomes.size()) throw DomainError("not enough measurement outcomes");
                const int outcome = outcomes[bits.size()];
                const MeasureResult r = measure_qubit(state, outcome);
                probability *= r.probability;
                bits.push_back(outcome);
                state = qubit_zero(r.collapsed);
                break;
            }
            case PulseKind::wait: break;
        }
    }
    if (bits.size() != outcomes.size()) throw DomainError("more outcomes than measurements");
    if (state.branch1) throw DomainError("schedule leaves the qubit unmeasured");
    GaussianComb osc = *state.branch0;
    if (c.bit == 0) osc = displace(osc, c.alpha, c.axis);
    const double norm = std::abs(osc.peaks().front().coeff) * std::sqrt(static_cast<double>(osc.peaks().size()));
    return OutcomeRecord{std::move(bits), probability, std::move(osc), norm};
}

}  // namespace gkp
