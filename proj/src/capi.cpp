#include "gkp/gkp.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "gkp/analysis.hpp"
#include "gkp/errors.hpp"
#include "gkp/io.hpp"
#include "gkp/protocol.hpp"
#include "gkp/recovery.hpp"
#include "gkp/schedule.hpp"

struct gkp_comb {
    gkp::GaussianComb value;
};
struct gkp_grid {
    gkp::GridState value;
};
struct gkp_records {
    std::vector<gkp::OutcomeRecord> value;
};
struct gkp_schedule {
    gkp::PulseSchedule value;
};
struct gkp_rng {
    std::mt19937_64 value;
};

namespace {

thread_local std::string last_error;

gkp_status fail(gkp_status status, const char* message) {
    last_error = message;
    return status;
}

// Runs `body`, translating library exceptions into status codes.
template <class F>
gkp_status guarded(F&& body) {
    try {
        body();
        last_error.clear();
        return GKP_OK;
    } catch (const gkp::TruncationError& e) {
        return fail(GKP_ERR_TRUNCATION, e.what());
    } catch (const gkp::AlignmentError& e) {
        return fail(GKP_ERR_ALIGNMENT, e.what());
    } catch (const gkp::DegenerateError& e) {
        return fail(GKP_ERR_DEGENERATE, e.what());
    } catch (const gkp::ParseError& e) {
        return fail(GKP_ERR_PARSE, e.what());
    } catch (const gkp::DomainError& e) {
        return fail(GKP_ERR_DOMAIN, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(GKP_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::bad_alloc&) {
        return fail(GKP_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(GKP_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(GKP_ERR_INTERNAL, "unknown failure");
    }
}

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

char* copy_string(const std::string& text) {
    char* out = static_cast<char*>(std::malloc(text.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, text.c_str(), text.size() + 1);
    return out;
}

gkp::Quadrature to_axis(gkp_axis axis) {
    require(axis == GKP_POSITION || axis == GKP_MOMENTUM, "unknown axis");
    return axis == GKP_POSITION ? gkp::Quadrature::position : gkp::Quadrature::momentum;
}

gkp_axis from_axis(gkp::Quadrature axis) { return axis == gkp::Quadrature::position ? GKP_POSITION : GKP_MOMENTUM; }

gkp::ProtocolConfig to_config(const gkp_prep_config* c) {
    require(c != nullptr, "config is null");
    gkp::ProtocolConfig out;
    out.alpha = c->alpha;
    out.delta = c->delta;
    out.iterations = c->iterations;
    out.bit = c->bit;
    out.axis = to_axis(c->axis);
    switch (c->mode) {
        case GKP_POSTSELECT: out.mode = gkp::PrepMode::postselect; break;
        case GKP_DETERMINISTIC: out.mode = gkp::PrepMode::deterministic; break;
        case GKP_SAMPLE: out.mode = gkp::PrepMode::sample; break;
        default: throw std::invalid_argument("unknown preparation mode");
    }
    out.seed = c->seed;
    return out;
}

gkp::GridSpec to_spec(const gkp_grid_spec* s) {
    require(s != nullptr, "grid spec is null");
    return gkp::GridSpec{to_axis(s->axis), s->origin, s->spacing, s->size};
}

gkp_grid_spec from_spec(const gkp::GridSpec& s) { return gkp_grid_spec{from_axis(s.axis), s.origin, s.spacing, s.size}; }

const gkp::OutcomeRecord& record_at(const gkp_records* records, size_t index) {
    require(records != nullptr, "records handle is null");
    require(index < records->value.size(), "record index out of range");
    return records->value[index];
}

}  // namespace

extern "C" {

const char* gkp_version(void) { return "0.1.0"; }

const char* gkp_last_error_message(void) { return last_error.c_str(); }

void gkp_string_free(char* text) { std::free(text); }

gkp_status gkp_parse_alpha(const char* text, double* out) {
    return guarded([&] {
        require(text && out, "null argument");
        const std::string s(text);
        if (s == "sqrt(pi/2)") {
            *out = std::sqrt(gkp::kPi / 2.0);
        } else if (s == "sqrt(pi)") {
            *out = std::sqrt(gkp::kPi);
        } else {
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(s, &used);
            } catch (const std::exception&) {
                throw gkp::ParseError("alpha must be sqrt(pi/2), sqrt(pi) or a number");
            }
            if (used != s.size()) throw gkp::ParseError("trailing characters in alpha");
            *out = v;
        }
        if (!(*out > 0.0) || !std::isfinite(*out)) throw gkp::DomainError("alpha must be positive");
    });
}

void gkp_prep_config_default(gkp_prep_config* config) {
    if (!config) return;
    const gkp::ProtocolConfig d;
    *config = gkp_prep_config{d.alpha, d.delta, d.iterations, d.bit, from_axis(d.axis), GKP_POSTSELECT, d.seed};
}

gkp_status gkp_prepare(const gkp_prep_config* config, gkp_records** out) {
    return guarded([&] {
        require(out != nullptr, "out is null");
        *out = new gkp_records{gkp::run(to_config(config))};
    });
}

gkp_status gkp_run_outcomes(const gkp_prep_config* config, const int* bits, size_t count, gkp_records** out) {
    return guarded([&] {
        require(out != nullptr && (bits != nullptr || count == 0), "null argument");
        const gkp::OutcomeRecord r = gkp::run_with_outcomes(to_config(config), std::span<const int>(bits, count));
        *out = new gkp_records{{r}};
    });
}

size_t gkp_records_count(const gkp_records* records) { return records ? records->value.size() : 0; }

gkp_status gkp_records_info(const gkp_records* records, size_t index, double* probability, double* normalization,
                            int* bits, size_t bits_capacity, size_t* bit_count) {
    return guarded([&] {
        const gkp::OutcomeRecord& r = record_at(records, index);
        if (probability) *probability = r.probability;
        if (normalization) *normalization = r.normalization;
        if (bit_count) *bit_count = r.bits.size();
        if (bits) {
            require(bits_capacity >= r.bits.size(), "bit buffer too small");
            std::copy(r.bits.begin(), r.bits.end(), bits);
        }
    });
}

gkp_status gkp_records_state(const gkp_records* records, size_t index, gkp_comb** out) {
    return guarded([&] {
        require(out != nullptr, "out is null");
        *out = new gkp_comb{record_at(records, index).state};
    });
}

void gkp_records_free(gkp_records* records) { delete records; }

gkp_status gkp_squeezed_vacuum(double width, gkp_axis axis, gkp_comb** out) {
    return guarded([&] {
        require(out != nullptr, "out is null");
        *out = new gkp_comb{gkp::squeezed_vacuum(width, to_axis(axis))};
    });
}

gkp_status gkp_comb_displace(const gkp_comb* comb, double amount, gkp_axis axis, gkp_comb** out) {
    return guarded([&] {
        require(comb && out, "null argument");
        *out = new gkp_comb{gkp::displace(comb->value, amount, to_axis(axis))};
    });
}

size_t gkp_comb_peak_count(const gkp_comb* comb) { return comb ? comb->value.peaks().size() : 0; }

gkp_status gkp_comb_peaks(const gkp_comb* comb, double* centers, double* re, double* im, size_t capacity) {
    return guarded([&] {
        require(comb != nullptr, "comb is null");
        const auto& peaks = comb->value.peaks();
        require(capacity >= peaks.size(), "peak buffer too small");
        for (std::size_t i = 0; i < peaks.size(); ++i) {
            if (centers) centers[i] = peaks[i].center;
            if (re) re[i] = peaks[i].coeff.real();
            if (im) im[i] = peaks[i].coeff.imag();
        }
    });
}

double gkp_comb_width(const gkp_comb* comb) { return comb ? comb->value.width() : 0.0; }

gkp_status gkp_comb_overlap(const gkp_comb* a, const gkp_comb* b, double* re, double* im) {
    return guarded([&] {
        require(a && b && re && im, "null argument");
        const gkp::cplx v = gkp::overlap(a->value, b->value);
        *re = v.real();
        *im = v.imag();
    });
}

gkp_status gkp_comb_eval(const gkp_comb* comb, double x, gkp_axis axis, double* re, double* im) {
    return guarded([&] {
        require(comb && re && im, "null argument");
        const gkp::cplx v = gkp::eval(comb->value, x, to_axis(axis));
        *re = v.real();
        *im = v.imag();
    });
}

gkp_status gkp_comb_to_json(const gkp_comb* comb, char** out) {
    return guarded([&] {
        require(comb && out, "null argument");
        *out = copy_string(gkp::comb_to_json(comb->value));
    });
}

gkp_status gkp_comb_from_json(const char* json, gkp_comb** out) {
    return guarded([&] {
        require(json && out, "null argument");
        *out = new gkp_comb{gkp::comb_from_json(json)};
    });
}

gkp_status gkp_encode_superposition(double re0, double im0, double re1, double im1, const gkp_prep_config* config,
                                    gkp_comb** out) {
    return guarded([&] {
        require(out != nullptr, "out is null");
        *out = new gkp_comb{gkp::encode_superposition({re0, im0}, {re1, im1}, to_config(config))};
    });
}

void gkp_comb_free(gkp_comb* comb) { delete comb; }

gkp_status gkp_default_grid(double alpha, int iterations, gkp_axis axis, gkp_grid_spec* out) {
    return guarded([&] {
        require(out != nullptr, "out is null");
        *out = from_spec(gkp::default_grid_spec(alpha, iterations, to_axis(axis)));
    });
}

gkp_status gkp_comb_to_grid(const gkp_comb* comb, const gkp_grid_spec* spec, gkp_grid** out) {
    return guarded([&] {
        require(comb && out, "null argument");
        *out = new gkp_grid{gkp::to_grid(comb->value, to_spec(spec))};
    });
}

gkp_status gkp_grid_fourier(const gkp_grid* grid, gkp_grid** out) {
    return guarded([&] {
        require(grid && out, "null argument");
        *out = new gkp_grid{gkp::fourier(grid->value)};
    });
}

gkp_status gkp_grid_spec_of(const gkp_grid* grid, gkp_grid_spec* out) {
    return guarded([&] {
        require(grid && out, "null argument");
        *out = from_spec(grid->value.spec());
    });
}

gkp_status gkp_grid_amplitudes(const gkp_grid* grid, double* re, double* im, size_t capacity) {
    return guarded([&] {
        require(grid != nullptr, "grid is null");
        const auto amps = grid->value.amplitudes();
        require(capacity >= amps.size(), "amplitude buffer too small");
        for (std::size_t k = 0; k < amps.size(); ++k) {
            if (re) re[k] = amps[k].real();
            if (im) im[k] = amps[k].imag();
        }
    });
}

gkp_status gkp_grid_to_csv(const gkp_grid* grid, char** out) {
    return guarded([&] {
        require(grid && out, "null argument");
        *out = copy_string(gkp::grid_to_csv(grid->value));
    });
}

gkp_status gkp_grid_to_json(const gkp_grid* grid, char** out) {
    return guarded([&] {
        require(grid && out, "null argument");
        *out = copy_string(gkp::grid_to_json(grid->value));
    });
}

void gkp_grid_free(gkp_grid* grid) { delete grid; }

gkp_status gkp_analyze(double alpha, double delta, int iterations, gkp_error_report* out) {
    return guarded([&] {
        require(out != nullptr, "out is null");
        const gkp::ErrorReport r = gkp::analyze(alpha, delta, iterations);
        *out = gkp_error_report{r.alpha,          r.delta,          r.iterations, r.position_error, r.position_bound,
                                r.momentum_error, r.momentum_bound, r.overlap01,  r.mean_energy};
    });
}

gkp_status gkp_erf_tail(double x, double* exact, double* asymptotic, double* fitted_c) {
    return guarded([&] {
        const gkp::ErfTail t = gkp::erf_tail(x);
        if (exact) *exact = t.exact;
        if (asymptotic) *asymptotic = t.asymptotic;
        if (fitted_c) *fitted_c = t.fitted_c;
    });
}

gkp_status gkp_rng_create(uint64_t seed, gkp_rng** out) {
    return guarded([&] {
        require(out != nullptr, "out is null");
        *out = new gkp_rng{std::mt19937_64(seed)};
    });
}

double gkp_rng_uniform(gkp_rng* rng) { return rng ? gkp::uniform01(rng->value) : 0.0; }

void gkp_rng_free(gkp_rng* rng) { delete rng; }

void gkp_recovery_config_default(gkp_recovery_config* config) {
    if (!config) return;
    const gkp::RecoveryConfig d;
    *config = gkp_recovery_config{d.alpha, d.delta, from_axis(d.quadrature), d.cells_per_alpha, d.encoded_size,
                                  d.ancilla_size};
}

gkp_status gkp_recover(const gkp_comb* encoded, double shift_q, double shift_p, const char* ancilla,
                       const gkp_recovery_config* config, gkp_rng* rng, gkp_recovery_result* out,
                       gkp_grid** corrected) {
    return guarded([&] {
        require(encoded && ancilla && config && rng && out, "null argument");
        gkp::RecoveryConfig rc;
        rc.alpha = config->alpha;
        rc.delta = config->delta;
        rc.quadrature = to_axis(config->quadrature);
        rc.cells_per_alpha = config->cells_per_alpha;
        rc.encoded_size = config->encoded_size;
        rc.ancilla_size = config->ancilla_size;
        gkp::RecoveryResult r = gkp::recover(encoded->value, {shift_q, shift_p}, gkp::AncillaSource::parse(ancilla),
                                             rc, rng->value);
        *out = gkp_recovery_result{r.syndrome.measured, r.syndrome.estimate, r.syndrome.correction, r.fidelity,
                                   r.true_shift,        r.residual_shift,    r.logical_failure ? 1 : 0};
        if (corrected) *corrected = new gkp_grid{std::move(r.corrected)};
    });
}

gkp_status gkp_compile(const gkp_prep_config* config, gkp_schedule** out) {
    return guarded([&] {
        require(out != nullptr, "out is null");
        *out = new gkp_schedule{gkp::compile(to_config(config))};
    });
}

size_t gkp_schedule_op_count(const gkp_schedule* schedule) { return schedule ? schedule->value.ops.size() : 0; }

gkp_status gkp_schedule_validate(const gkp_schedule* schedule, char** violations, size_t* count) {
    return guarded([&] {
        require(schedule != nullptr, "schedule is null");
        const auto problems = gkp::validate(schedule->value);
        if (count) *count = problems.size();
        if (violations) {
            std::string joined;
            for (const auto& p : problems) joined += p + "\n";
            *violations = copy_string(joined);
        }
    });
}

gkp_status gkp_schedule_emit(const gkp_schedule* schedule, gkp_format format, char** out) {
    return guarded([&] {
        require(schedule && out, "null argument");
        require(format == GKP_FORMAT_JSON || format == GKP_FORMAT_TEXT, "unknown format");
        *out = copy_string(gkp::emit(schedule->value,
                                     format == GKP_FORMAT_JSON ? gkp::ScheduleFormat::json : gkp::ScheduleFormat::text));
    });
}

gkp_status gkp_schedule_parse(const char* json, gkp_schedule** out) {
    return guarded([&] {
        require(json && out, "null argument");
        *out = new gkp_schedule{gkp::parse_schedule(json)};
    });
}

gkp_status gkp_schedule_interpret(const gkp_schedule* schedule, const int* bits, size_t count, gkp_records** out) {
    return guarded([&] {
        require(schedule && out && (bits != nullptr || count == 0), "null argument");
        *out = new gkp_records{{gkp::interpret(schedule->value, std::span<const int>(bits, count))}};
    });
}

void gkp_schedule_free(gkp_schedule* schedule) { delete schedule; }

}  // extern "C"
