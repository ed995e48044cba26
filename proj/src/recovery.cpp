#include "gkp/recovery.hpp"

#include <algorithm>
#include <cmath>

#include "gkp/errors.hpp"

namespace gkp {

namespace {

constexpr double kTruncationMass = 1e-10;
constexpr double kCellTolerance = 1e-6;
constexpr double kCoefficientNormTolerance = 1e-9;
constexpr double kMarginWidths = 8.0;

std::size_t pow2_at_least(double cells, std::size_t floor_size) {
    std::size_t size = floor_size;
    while (static_cast<double>(size) < cells) size *= 2;
    return size;
}

long whole_cells(double value, double spacing, const char* what) {
    const double cells = value / spacing;
    const double rounded = std::nearbyint(cells);
    if (std::abs(cells - rounded) > kCellTolerance) throw AlignmentError(std::string(what) + " is not on the grid");
    return static_cast<long>(rounded);
}

// Half-width of the region holding the state's amplitude, measured from 0.
double support_radius(const GridState& state) {
    double peak = 0.0;
    for (const cplx& a : state.amplitudes()) peak = std::max(peak, std::norm(a));
    const double floor = peak * 1e-30;
    double radius = 0.0;
    for (std::size_t k = 0; k < state.size(); ++k) {
        if (std::norm(state[k]) > floor) radius = std::max(radius, std::abs(state.spec().coordinate(k)));
    }
    return radius;
}

GridSpec centred_spec(Quadrature axis, double spacing, std::size_t size) {
    return GridSpec{axis, -static_cast<double>(size / 2) * spacing, spacing, size};
}

AncillaMeasurement collapse_at(const TwoModeGrid& joint, std::size_t index, double total) {
    const GridSpec& enc = joint.encoded_spec();
    const GridSpec& anc = joint.ancilla_spec();
    std::vector<cplx> slice(enc.size);
    double mass = 0.0;
    for (std::size_t e = 0; e < enc.size; ++e) {
        slice[e] = joint.at(e, index);
        mass += std::norm(slice[e]);
    }
    if (!(mass > 0.0)) throw DegenerateError("ancilla outcome has zero probability density");
    const double density = mass * enc.spacing / total;
    return {anc.coordinate(index), index, density, normalize(GridState(enc, std::move(slice)))};
}

}  // namespace

TwoModeGrid::TwoModeGrid(GridSpec encoded, GridSpec ancilla, bool ancilla_periodic, std::vector<cplx> amplitudes)
    : encoded_(encoded), ancilla_(ancilla), periodic_(ancilla_periodic), amplitudes_(std::move(amplitudes)) {
    if (encoded_.axis != ancilla_.axis) throw DomainError("joint grid modes must share a quadrature");
    if (std::abs(encoded_.spacing - ancilla_.spacing) > 1e-12 * encoded_.spacing) {
        throw DomainError("joint grid modes must share a spacing");
    }
    if (amplitudes_.size() != encoded_.size * ancilla_.size) throw DomainError("joint amplitude count mismatch");
}

double TwoModeGrid::norm_squared() const noexcept {
    double sum = 0.0;
    for (const cplx& a : amplitudes_) sum += std::norm(a);
    return sum * encoded_.spacing * ancilla_.spacing;
}

TwoModeGrid product_state(const GridState& encoded, const GridState& ancilla, bool ancilla_periodic) {
    std::vector<cplx> amps(encoded.size() * ancilla.size());
    for (std::size_t e = 0; e < encoded.size(); ++e) {
        for (std::size_t a = 0; a < ancilla.size(); ++a) amps[e * ancilla.size() + a] = encoded[e] * ancilla[a];
    }
    return TwoModeGrid(encoded.spec(), ancilla.spec(), ancilla_periodic, std::move(amps));
}

TwoModeGrid sum_gate(const TwoModeGrid& joint, SumDirection direction) {
    const Quadrature needed = direction == SumDirection::position ? Quadrature::position : Quadrature::momentum;
    if (joint.axis() != needed) throw DomainError("SUM direction does not match the joint grid quadrature");
    const GridSpec& enc = joint.encoded_spec();
    const auto na = static_cast<long>(joint.ancilla_spec().size);
    const long first = whole_cells(enc.origin, enc.spacing, "encoded grid origin");
    const long sign = direction == SumDirection::position ? 1 : -1;

    std::vector<cplx> out(joint.amplitudes().size(), 0.0);
    double lost = 0.0;
    for (std::size_t e = 0; e < enc.size; ++e) {
        const long shift = sign * (first + static_cast<long>(e));
        const std::size_t row = e * static_cast<std::size_t>(na);
        for (long a = 0; a < na; ++a) {
            const cplx v = joint.at(e, static_cast<std::size_t>(a));
            long dest = a + shift;
            if (joint.ancilla_periodic()) {
                dest = ((dest % na) + na) % na;
            } else if (dest < 0 || dest >= na) {
                lost += std::norm(v);
                continue;
            }
            out[row + static_cast<std::size_t>(dest)] = v;
        }
    }
    lost *= enc.spacing * joint.ancilla_spec().spacing;
    if (lost > kTruncationMass) throw TruncationError("SUM gate shifts the ancilla out of its window", lost);
    return TwoModeGrid(enc, joint.ancilla_spec(), joint.ancilla_periodic(), std::move(out));
}

AncillaMeasurement measure_ancilla(const TwoModeGrid& joint, std::mt19937_64& rng) {
    const std::size_t na = joint.ancilla_spec().size;
    std::vector<double> marginal(na, 0.0);
    for (std::size_t e = 0; e < joint.encoded_spec().size; ++e) {
        for (std::size_t a = 0; a < na; ++a) marginal[a] += std::norm(joint.at(e, a));
    }
    double total = 0.0;
    for (double m : marginal) total += m;
    if (!(total > 0.0)) throw DegenerateError("joint state is zero");
    const double target = uniform01(rng) * total;
    double running = 0.0;
    std::size_t index = na - 1;
    for (std::size_t a = 0; a < na; ++a) {
        running += marginal[a];
        if (target < running) {
            index = a;
            break;
        }
    }
    while (marginal[index] == 0.0 && index > 0) --index;
    return collapse_at(joint, index, total * joint.encoded_spec().spacing * joint.ancilla_spec().spacing);
}

AncillaMeasurement measure_ancilla(const TwoModeGrid& joint, double value) {
    const GridSpec& anc = joint.ancilla_spec();
    const long index = whole_cells(value - anc.origin, anc.spacing, "ancilla outcome");
    if (index < 0 || index >= static_cast<long>(anc.size)) throw DomainError("ancilla outcome outside the window");
    return collapse_at(joint, static_cast<std::size_t>(index), joint.norm_squared());
}

Syndrome syndrome_to_correction(double measured, double modulus) {
    if (!(modulus > 0.0)) throw DomainError("syndrome modulus must be positive");
    const double shifted = measured + 0.5 * modulus;
    double reduced = shifted - modulus * std::floor(shifted / modulus);
    if (reduced >= modulus) reduced -= modulus;
    const double estimate = reduced - 0.5 * modulus;
    return {measured, estimate, -estimate};
}

GaussianComb encode_superposition(cplx c0, cplx c1, const ProtocolConfig& config) {
    if (std::abs(std::norm(c0) + std::norm(c1) - 1.0) > kCoefficientNormTolerance) {
        throw DomainError("logical amplitudes are not normalized");
    }
    ProtocolConfig cfg = config;
    cfg.mode = PrepMode::postselect;
    cfg.bit = 0;
    const GaussianComb zero = prepare(cfg).state;
    cfg.bit = 1;
    const GaussianComb one = prepare(cfg).state;
    auto combined = superpose(c0, zero, c1, one);
    if (!combined) throw DegenerateError("encoded superposition vanished");
    return normalize(*combined);
}

GaussianComb apply_shift_error(const GaussianComb& state, ShiftError error) {
    return displace(displace(state, error.position, Quadrature::position), error.momentum, Quadrature::momentum);
}

GridState apply_shift_error(const GridState& state, ShiftError error) {
    return displace(displace(state, error.position, Quadrature::position), error.momentum, Quadrature::momentum);
}

AncillaSource AncillaSource::ideal(double width) {
    if (!(width > 0.0)) throw DomainError("ancilla width must be positive");
    AncillaSource s;
    s.kind = Kind::ideal_comb;
    s.ideal_width = width;
    return s;
}

AncillaSource AncillaSource::prepared_from(std::vector<int> bits) {
    for (int b : bits) {
        if (b != 0 && b != 1) throw DomainError("ancilla outcome bits must be 0 or 1");
    }
    if (bits.empty()) throw DomainError("prepared ancilla needs at least one iteration");
    AncillaSource s;
    s.kind = Kind::prepared;
    s.bits = std::move(bits);
    return s;
}

AncillaSource AncillaSource::parse(const std::string& text) {
    if (text == "ideal") return ideal();
    const std::string prefix = "bits:";
    if (text.rfind(prefix, 0) == 0) {
        std::vector<int> bits;
        for (char c : text.substr(prefix.size())) {
            if (c != '0' && c != '1') throw ParseError("ancilla bit pattern must contain only 0 and 1");
            bits.push_back(c - '0');
        }
        if (bits.empty()) throw ParseError("empty ancilla bit pattern");
        return prepared_from(std::move(bits));
    }
    throw ParseError("ancilla must be 'ideal' or 'bits:<pattern>'");
}

GridState build_ancilla(const AncillaSource& source, double modulus, double delta, const GridSpec& spec) {
    if (source.kind == AncillaSource::Kind::ideal_comb) {
        // Periodic comb of equal peaks at every multiple of the modulus.
        const double w = source.ideal_width;
        std::vector<cplx> amps(spec.size);
        for (std::size_t k = 0; k < spec.size; ++k) {
            const double x = spec.coordinate(k);
            const double r = x - modulus * std::nearbyint(x / modulus);
            double sum = 0.0;
            for (int j = -4; j <= 4; ++j) sum += gaussian(r + j * modulus, w);
            amps[k] = sum;
        }
        return normalize(GridState(spec, std::move(amps)));
    }
    // Protocol run at half the modulus, then moved by half the modulus so the
    // peaks sit on multiples of the modulus.
    ProtocolConfig cfg;
    cfg.alpha = 0.5 * modulus;
    cfg.delta = delta;
    cfg.iterations = static_cast<int>(source.bits.size());
    cfg.bit = 0;
    cfg.axis = spec.axis;
    const GaussianComb comb = run_with_outcomes(cfg, source.bits).state;
    return normalize(to_grid(comb, spec));
}

GridRecovery correct_shift(const GridState& pre_error, const GridState& shifted, const GridState& ancilla,
                           bool ancilla_periodic, double modulus, SumDirection direction, std::mt19937_64& rng,
                           std::optional<double> outcome) {
    if (!(pre_error.spec() == shifted.spec())) throw DomainError("pre-error and shifted grids differ");
    const TwoModeGrid joint = sum_gate(product_state(normalize(shifted), ancilla, ancilla_periodic), direction);
    const AncillaMeasurement m = outcome ? measure_ancilla(joint, *outcome) : measure_ancilla(joint, rng);

    Syndrome syndrome{};
    if (direction == SumDirection::position) {
        syndrome = syndrome_to_correction(m.value, modulus);
    } else {
        // p_a picked up -p_e, so the syndrome is the negated reading.
        syndrome = syndrome_to_correction(-m.value, modulus);
        syndrome.measured = m.value;
    }
    GridState corrected = displace(m.collapsed, syndrome.correction, shifted.axis());
    const double fidelity = std::norm(inner_product(normalize(pre_error), corrected));
    return {std::move(corrected), syndrome, fidelity};
}

RecoveryResult recover(const GaussianComb& encoded, ShiftError error, const AncillaSource& source,
                       const RecoveryConfig& config, std::mt19937_64& rng, std::optional<double> outcome) {
    if (!(config.alpha > 0.0) || !(config.delta > 0.0)) throw DomainError("alpha and delta must be positive");
    if (config.cells_per_alpha < 2) throw DomainError("need at least two cells per alpha");
    if (encoded.axis() != Quadrature::position) throw DomainError("encoded state must be a position comb");
    if (!is_power_of_two(config.ancilla_size)) throw DomainError("ancilla grid length must be a power of two");
    const bool momentum = config.quadrature == Quadrature::momentum;
    const double alpha = config.alpha;
    const double modulus = momentum ? kPi / alpha : alpha;
    const double dq = alpha / config.cells_per_alpha;

    // Encoded window: peaks, tails, the error and room for the correction.
    double extent = std::max(std::abs(encoded.peaks().front().center), std::abs(encoded.peaks().back().center)) +
                    kMarginWidths * encoded.width() + std::abs(error.position) + alpha;
    std::size_t enc_size = config.encoded_size;
    if (enc_size == 0) enc_size = pow2_at_least(2.0 * extent / dq, 64);
    if (!is_power_of_two(enc_size) || enc_size < 64) throw DomainError("encoded grid length must be a power of two >= 64");
    const GridSpec enc_q = centred_spec(Quadrature::position, dq, enc_size);
    const double nyquist = kPi / dq;
    if (nyquist < kMarginWidths / encoded.width() + std::abs(error.momentum) + (momentum ? modulus : 0.0)) {
        throw DomainError("grid too coarse for the encoded momentum spread");
    }

    const GridState pre_q = normalize(to_grid(encoded, enc_q));
    const GridState shifted_q = normalize(to_grid(apply_shift_error(encoded, error), enc_q));
    const GridState pre = momentum ? fourier(pre_q) : pre_q;
    const GridState shifted = momentum ? fourier(shifted_q) : shifted_q;
    const double spacing = pre.spec().spacing;
    const Quadrature axis = pre.axis();

    GridState ancilla = [&] {
        if (source.kind == AncillaSource::Kind::ideal_comb) {
            const GridSpec spec = centred_spec(axis, spacing, config.ancilla_size);
            const double periods = spec.extent() / modulus;
            if (std::abs(periods - std::nearbyint(periods)) > kCellTolerance) {
                throw DomainError("periodic ancilla window must hold a whole number of lattice periods");
            }
            return build_ancilla(source, modulus, config.delta, spec);
        }
        // Room for the ancilla comb plus every shift the SUM gate can apply.
        const double anc_extent = 0.5 * modulus * std::ldexp(1.0, static_cast<int>(source.bits.size())) +
                                  kMarginWidths * config.delta + modulus;
        const double cells = 2.0 * (anc_extent + support_radius(shifted)) / spacing;
        return build_ancilla(source, modulus, config.delta,
                             centred_spec(axis, spacing, pow2_at_least(cells, config.ancilla_size)));
    }();
    const bool periodic = source.kind == AncillaSource::Kind::ideal_comb;

    GridRecovery r = correct_shift(pre, shifted, ancilla, periodic, modulus,
                                   momentum ? SumDirection::momentum : SumDirection::position, rng, outcome);

    const double true_shift = momentum ? error.momentum : error.position;
    const double residual = true_shift - r.syndrome.estimate;
    const long lattice_steps = std::lround(residual / modulus);
    GridState corrected = momentum ? fourier(r.corrected, enc_q.origin) : std::move(r.corrected);
    return RecoveryResult{std::move(corrected), pre_q,    r.syndrome, r.fidelity,
                          true_shift,           residual, lattice_steps % 2 != 0};
}

}  // namespace gkp
