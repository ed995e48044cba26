#include "gkp/protocol.hpp"

#include <cmath>
#include <functional>

#include "gkp/errors.hpp"

namespace gkp {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kJointNormTolerance = 1e-9;

std::optional<GaussianComb> combine(const std::optional<GaussianComb>& a, const std::optional<GaussianComb>& b,
                                    double sign) {
    if (a && b) return superpose(kInvSqrt2, *a, sign * kInvSqrt2, *b);
    if (a) return scale(*a, kInvSqrt2);
    if (b) return scale(*b, sign * kInvSqrt2);
    return std::nullopt;
}

double branch_norm(const std::optional<GaussianComb>& branch) { return branch ? branch->norm_squared() : 0.0; }

double normalization_of(const GaussianComb& state) {
    return std::abs(state.peaks().front().coeff) * std::sqrt(static_cast<double>(state.peaks().size()));
}

OutcomeRecord finish(const ProtocolConfig& config, std::vector<int> bits, double probability, GaussianComb state) {
    if (config.bit == 0) state = displace(state, config.alpha, config.axis);
    const double n = normalization_of(state);
    return OutcomeRecord{std::move(bits), probability, std::move(state), n};
}

}  // namespace

std::string_view to_string(PrepMode mode) noexcept {
    switch (mode) {
        case PrepMode::postselect: return "postselect";
        case PrepMode::deterministic: return "deterministic";
        case PrepMode::sample: return "sample";
    }
    return "postselect";
}

PrepMode parse_prep_mode(std::string_view text) {
    if (text == "postselect") return PrepMode::postselect;
    if (text == "deterministic") return PrepMode::deterministic;
    if (text == "sample") return PrepMode::sample;
    throw ParseError("unknown preparation mode '" + std::string(text) + "'");
}

void validate(const ProtocolConfig& config) {
    if (!(config.alpha > 0.0) || !std::isfinite(config.alpha)) throw DomainError("alpha must be positive");
    if (!(config.delta > 0.0) || !std::isfinite(config.delta)) throw DomainError("delta must be positive");
    if (config.bit != 0 && config.bit != 1) throw DomainError("target bit must be 0 or 1");
    if (config.iterations < 0 || config.iterations > kMaxIterations) {
        throw DomainError("iterations must be in [0, " + std::to_string(kMaxIterations) + "]");
    }
}

std::vector<std::string> config_warnings(const ProtocolConfig& config) {
    std::vector<std::string> out;
    if (config.delta / config.alpha >= 1.0) {
        out.push_back("delta/alpha >= 1: peaks overlap and the codewords are not distinguishable");
    }
    return out;
}

double QubitOscState::norm_squared() const { return branch_norm(branch0) + branch_norm(branch1); }

QubitOscState qubit_zero(const GaussianComb& oscillator) { return {oscillator, std::nullopt}; }

QubitOscState hadamard(const QubitOscState& state) {
    return {combine(state.branch0, state.branch1, 1.0), combine(state.branch0, state.branch1, -1.0)};
}

QubitOscState pauli_x(const QubitOscState& state) { return {state.branch1, state.branch0}; }

QubitOscState conditional_displacement(const QubitOscState& state, double d, Quadrature axis) {
    QubitOscState out = state;
    if (out.branch0) out.branch0 = displace(*out.branch0, d, axis);
    if (out.branch1) out.branch1 = displace(*out.branch1, -d, axis);
    return out;
}

QubitOscState excited_displacement(const QubitOscState& state, double d, Quadrature axis) {
    QubitOscState out = state;
    if (out.branch1) out.branch1 = displace(*out.branch1, d, axis);
    return out;
}

std::pair<double, double> outcome_probabilities(const QubitOscState& state) {
    return {branch_norm(state.branch0), branch_norm(state.branch1)};
}

MeasureResult measure_qubit(const QubitOscState& state, int outcome) {
    if (outcome != 0 && outcome != 1) throw DomainError("qubit outcome must be 0 or 1");
    if (std::abs(state.norm_squared() - 1.0) > kJointNormTolerance) {
        throw DomainError("qubit-oscillator state is not normalized");
    }
    const auto& branch = outcome == 0 ? state.branch0 : state.branch1;
    const double p = branch_norm(branch);
    if (!(p > 0.0)) throw DegenerateError("measured qubit outcome has zero probability");
    return {p, with_canonical_phase(normalize(*branch))};
}

QubitOscState iteration_unitary(const GaussianComb& oscillator, int k, const ProtocolConfig& config) {
    const double d = std::ldexp(config.alpha, k - 1);
    return hadamard(conditional_displacement(hadamard(qubit_zero(oscillator)), d, config.axis));
}

OutcomeRecord run_with_outcomes(const ProtocolConfig& config, std::span<const int> outcomes) {
    validate(config);
    if (static_cast<int>(outcomes.size()) != config.iterations) {
        throw DomainError("outcome sequence length must equal the iteration count");
    }
    GaussianComb osc = squeezed_vacuum(config.delta, config.axis);
    double probability = 1.0;
    for (int k = 1; k <= config.iterations; ++k) {
        MeasureResult m = measure_qubit(iteration_unitary(osc, k, config), outcomes[static_cast<std::size_t>(k - 1)]);
        probability *= m.probability;
        osc = std::move(m.collapsed);
    }
    return finish(config, {outcomes.begin(), outcomes.end()}, probability, std::move(osc));
}

OutcomeRecord prepare(const ProtocolConfig& config) {
    validate(config);
    const std::vector<int> zeros(static_cast<std::size_t>(config.iterations), 0);
    return run_with_outcomes(config, zeros);
}

std::vector<OutcomeRecord> enumerate_branches(const ProtocolConfig& config) {
    validate(config);
    if (config.iterations > kMaxEnumeratedIterations) {
        throw DomainError("branch enumeration is limited to " + std::to_string(kMaxEnumeratedIterations) +
                          " iterations");
    }
    std::vector<OutcomeRecord> records;
    records.reserve(std::size_t{1} << config.iterations);
    std::vector<int> bits;
    std::function<void(const GaussianComb&, double)> descend = [&](const GaussianComb& osc, double probability) {
        const int k = static_cast<int>(bits.size()) + 1;
        if (k > config.iterations) {
            records.push_back(finish(config, bits, probability, osc));
            return;
        }
        const QubitOscState joint = iteration_unitary(osc, k, config);
        const auto [p0, p1] = outcome_probabilities(joint);
        for (int outcome = 0; outcome <= 1; ++outcome) {
            if (!((outcome == 0 ? p0 : p1) > 0.0)) continue;
            MeasureResult m = measure_qubit(joint, outcome);
            bits.push_back(outcome);
            descend(m.collapsed, probability * m.probability);
            bits.pop_back();
        }
    };
    descend(squeezed_vacuum(config.delta, config.axis), 1.0);
    return records;
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

OutcomeRecord sample_run(const ProtocolConfig& config, std::mt19937_64& rng) {
    validate(config);
    GaussianComb osc = squeezed_vacuum(config.delta, config.axis);
    double probability = 1.0;
    std::vector<int> bits;
    for (int k = 1; k <= config.iterations; ++k) {
        const QubitOscState joint = iteration_unitary(osc, k, config);
        const auto [p0, p1] = outcome_probabilities(joint);
        const int outcome = uniform01(rng) < p0 / (p0 + p1) ? 0 : 1;
        MeasureResult m = measure_qubit(joint, outcome);
        probability *= m.probability;
        bits.push_back(outcome);
        osc = std::move(m.collapsed);
    }
    return finish(config, std::move(bits), probability, std::move(osc));
}

OutcomeRecord sample_run(const ProtocolConfig& config) {
    std::mt19937_64 rng(config.seed);
    return sample_run(config, rng);
}

std::vector<OutcomeRecord> run(const ProtocolConfig& config) {
    switch (config.mode) {
        case PrepMode::postselect: return {prepare(config)};
        case PrepMode::deterministic: return enumerate_branches(config);
        case PrepMode::sample: return {sample_run(config)};
    }
    return {};
}

}  // namespace gkp
