#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "gkp/gkp.h"

namespace {

struct Deleter {
    void operator()(gkp_comb* p) const { gkp_comb_free(p); }
    void operator()(gkp_grid* p) const { gkp_grid_free(p); }
    void operator()(gkp_records* p) const { gkp_records_free(p); }
    void operator()(gkp_schedule* p) const { gkp_schedule_free(p); }
    void operator()(gkp_rng* p) const { gkp_rng_free(p); }
    void operator()(char* p) const { gkp_string_free(p); }
};
template <class T>
using Owned = std::unique_ptr<T, Deleter>;

gkp_prep_config config(int n, int bit = 1) {
    gkp_prep_config c;
    gkp_prep_config_default(&c);
    c.iterations = n;
    c.bit = bit;
    return c;
}

std::string take(char* s) { return Owned<char>(s).get(); }

}  // namespace

TEST(CApi, VersionAndDefaults) {
    EXPECT_STREQ(gkp_version(), "0.1.0");
    const gkp_prep_config c = config(3);
    EXPECT_NEAR(c.alpha, std::sqrt(M_PI / 2), 1e-15);
    EXPECT_EQ(c.delta, 0.15);
    EXPECT_EQ(c.mode, GKP_POSTSELECT);
}

TEST(CApi, ParseAlpha) {
    double a = 0.0;
    ASSERT_EQ(gkp_parse_alpha("sqrt(pi/2)", &a), GKP_OK);
    EXPECT_NEAR(a, std::sqrt(M_PI / 2), 1e-15);
    ASSERT_EQ(gkp_parse_alpha("sqrt(pi)", &a), GKP_OK);
    EXPECT_NEAR(a, std::sqrt(M_PI), 1e-15);
    ASSERT_EQ(gkp_parse_alpha("1.5", &a), GKP_OK);
    EXPECT_EQ(a, 1.5);
    EXPECT_EQ(gkp_parse_alpha("sqrt(2)", &a), GKP_ERR_PARSE);
    EXPECT_NE(std::string(gkp_last_error_message()), "");
    EXPECT_EQ(gkp_parse_alpha(nullptr, &a), GKP_ERR_INVALID_ARGUMENT);
}

TEST(CApi, PrepareReportsRecord) {
    const gkp_prep_config c = config(2);
    gkp_records* raw = nullptr;
    ASSERT_EQ(gkp_prepare(&c, &raw), GKP_OK);
    Owned<gkp_records> records(raw);
    ASSERT_EQ(gkp_records_count(raw), 1u);
    double p = 0, norm = 0;
    int bits[4];
    size_t count = 0;
    ASSERT_EQ(gkp_records_info(raw, 0, &p, &norm, bits, 4, &count), GKP_OK);
    EXPECT_NEAR(p, 0.25, 1e-12);
    EXPECT_EQ(count, 2u);
    EXPECT_EQ(bits[0], 0);
    EXPECT_EQ(gkp_records_info(raw, 1, &p, &norm, bits, 4, &count), GKP_ERR_INVALID_ARGUMENT);
    EXPECT_EQ(gkp_records_info(raw, 0, &p, &norm, bits, 1, &count), GKP_ERR_INVALID_ARGUMENT);

    gkp_comb* state = nullptr;
    ASSERT_EQ(gkp_records_state(raw, 0, &state), GKP_OK);
    Owned<gkp_comb> owned(state);
    ASSERT_EQ(gkp_comb_peak_count(state), 4u);
    std::vector<double> centers(4), re(4), im(4);
    ASSERT_EQ(gkp_comb_peaks(state, centers.data(), re.data(), im.data(), 4), GKP_OK);
    for (int s = 0; s < 4; ++s) EXPECT_NEAR(centers[s], (2 * s - 3) * c.alpha, 1e-12);
    EXPECT_EQ(gkp_comb_peaks(state, centers.data(), re.data(), im.data(), 3), GKP_ERR_INVALID_ARGUMENT);
    EXPECT_EQ(gkp_comb_width(state), 0.15);
}

TEST(CApi, DeterministicEnumeratesBranches) {
    gkp_prep_config c = config(3);
    c.mode = GKP_DETERMINISTIC;
    gkp_records* raw = nullptr;
    ASSERT_EQ(gkp_prepare(&c, &raw), GKP_OK);
    Owned<gkp_records> records(raw);
    ASSERT_EQ(gkp_records_count(raw), 8u);
    double total = 0.0;
    for (size_t i = 0; i < 8; ++i) {
        double p = 0, n = 0;
        size_t count = 0;
        ASSERT_EQ(gkp_records_info(raw, i, &p, &n, nullptr, 0, &count), GKP_OK);
        total += p;
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(CApi, DomainErrorsCarryMessages) {
    gkp_prep_config c = config(2);
    c.delta = -0.1;
    gkp_records* raw = nullptr;
    EXPECT_EQ(gkp_prepare(&c, &raw), GKP_ERR_DOMAIN);
    EXPECT_EQ(raw, nullptr);
    EXPECT_NE(std::string(gkp_last_error_message()).find("delta"), std::string::npos);
    EXPECT_EQ(gkp_prepare(nullptr, &raw), GKP_ERR_INVALID_ARGUMENT);
    gkp_comb* comb = nullptr;
    EXPECT_EQ(gkp_squeezed_vacuum(0.0, GKP_POSITION, &comb), GKP_ERR_DOMAIN);
    const int bad_bits[] = {0, 2};
    EXPECT_EQ(gkp_run_outcomes(&c, bad_bits, 2, &raw), GKP_ERR_DOMAIN);
}

TEST(CApi, CombOperations) {
    gkp_comb* raw = nullptr;
    ASSERT_EQ(gkp_squeezed_vacuum(0.5, GKP_POSITION, &raw), GKP_OK);
    Owned<gkp_comb> vac(raw);
    double re = 0, im = 0;
    ASSERT_EQ(gkp_comb_eval(raw, 0.0, GKP_POSITION, &re, &im), GKP_OK);
    EXPECT_NEAR(re, 1.0 / std::sqrt(0.5 * std::sqrt(M_PI)), 1e-12);
    gkp_comb* moved_raw = nullptr;
    ASSERT_EQ(gkp_comb_displace(raw, 1.0, GKP_POSITION, &moved_raw), GKP_OK);
    Owned<gkp_comb> moved(moved_raw);
    ASSERT_EQ(gkp_comb_overlap(raw, moved_raw, &re, &im), GKP_OK);
    EXPECT_NEAR(re, std::exp(-1.0 / (4 * 0.25)), 1e-12);
    EXPECT_NEAR(im, 0.0, 1e-15);

    char* json = nullptr;
    ASSERT_EQ(gkp_comb_to_json(moved_raw, &json), GKP_OK);
    const std::string text = take(json);
    gkp_comb* back_raw = nullptr;
    ASSERT_EQ(gkp_comb_from_json(text.c_str(), &back_raw), GKP_OK);
    Owned<gkp_comb> back(back_raw);
    ASSERT_EQ(gkp_comb_overlap(moved_raw, back_raw, &re, &im), GKP_OK);
    EXPECT_NEAR(re, 1.0, 1e-12);
    EXPECT_EQ(gkp_comb_from_json("{\"width\":", &back_raw), GKP_ERR_PARSE);

    const gkp_prep_config c = config(2);
    gkp_comb* plus_raw = nullptr;
    ASSERT_EQ(gkp_encode_superposition(M_SQRT1_2, 0, 0, M_SQRT1_2, &c, &plus_raw), GKP_OK);
    Owned<gkp_comb> plus(plus_raw);
    EXPECT_EQ(gkp_comb_peak_count(plus_raw), 8u);
    EXPECT_EQ(gkp_encode_superposition(1, 0, 1, 0, &c, &plus_raw), GKP_ERR_DOMAIN);
}

TEST(CApi, GridExports) {
    const gkp_prep_config c = config(2);
    gkp_records* rec_raw = nullptr;
    ASSERT_EQ(gkp_prepare(&c, &rec_raw), GKP_OK);
    Owned<gkp_records> rec(rec_raw);
    gkp_comb* state_raw = nullptr;
    ASSERT_EQ(gkp_records_state(rec_raw, 0, &state_raw), GKP_OK);
    Owned<gkp_comb> state(state_raw);

    gkp_grid_spec spec;
    ASSERT_EQ(gkp_default_grid(c.alpha, 2, GKP_POSITION, &spec), GKP_OK);
    EXPECT_NEAR(spec.spacing, c.alpha / 64, 1e-15);
    gkp_grid* grid_raw = nullptr;
    ASSERT_EQ(gkp_comb_to_grid(state_raw, &spec, &grid_raw), GKP_OK);
    Owned<gkp_grid> grid(grid_raw);
    gkp_grid* dual_raw = nullptr;
    ASSERT_EQ(gkp_grid_fourier(grid_raw, &dual_raw), GKP_OK);
    Owned<gkp_grid> dual(dual_raw);
    gkp_grid_spec dual_spec;
    ASSERT_EQ(gkp_grid_spec_of(dual_raw, &dual_spec), GKP_OK);
    EXPECT_EQ(dual_spec.axis, GKP_MOMENTUM);
    EXPECT_NEAR(dual_spec.spacing, 2 * M_PI / (spec.size * spec.spacing), 1e-15);

    std::vector<double> re(spec.size), im(spec.size);
    ASSERT_EQ(gkp_grid_amplitudes(grid_raw, re.data(), im.data(), spec.size), GKP_OK);
    double norm = 0.0;
    for (size_t k = 0; k < spec.size; ++k) norm += re[k] * re[k] + im[k] * im[k];
    EXPECT_NEAR(norm * spec.spacing, 1.0, 1e-9);

    char* csv = nullptr;
    ASSERT_EQ(gkp_grid_to_csv(grid_raw, &csv), GKP_OK);
    const std::string text = take(csv);
    EXPECT_EQ(static_cast<size_t>(std::count(text.begin(), text.end(), '\n')), spec.size + 1);

    gkp_grid_spec bad = spec;
    bad.size = 1000;
    EXPECT_EQ(gkp_comb_to_grid(state_raw, &bad, &grid_raw), GKP_ERR_DOMAIN);
}

TEST(CApi, AnalyzeAndTail) {
    gkp_error_report r;
    ASSERT_EQ(gkp_analyze(std::sqrt(M_PI / 2), 0.15, 2, &r), GKP_OK);
    EXPECT_EQ(r.iterations, 2);
    EXPECT_LT(r.position_error, r.position_bound);
    EXPECT_LT(r.momentum_error, r.momentum_bound);
    double exact = 0, asym = 0, c = 0;
    ASSERT_EQ(gkp_erf_tail(2.0, &exact, &asym, &c), GKP_OK);
    EXPECT_NEAR(exact, std::sqrt(M_PI) / 2 * std::erfc(2.0), 1e-14);
    EXPECT_EQ(gkp_analyze(1.0, 0.0, 2, &r), GKP_ERR_DOMAIN);
}

TEST(CApi, Recover) {
    const gkp_prep_config c = config(2, 0);
    gkp_records* rec_raw = nullptr;
    ASSERT_EQ(gkp_prepare(&c, &rec_raw), GKP_OK);
    Owned<gkp_records> rec(rec_raw);
    gkp_comb* enc_raw = nullptr;
    ASSERT_EQ(gkp_records_state(rec_raw, 0, &enc_raw), GKP_OK);
    Owned<gkp_comb> enc(enc_raw);

    gkp_rng* rng_raw = nullptr;
    ASSERT_EQ(gkp_rng_create(5, &rng_raw), GKP_OK);
    Owned<gkp_rng> rng(rng_raw);
    gkp_recovery_config cfg;
    gkp_recovery_config_default(&cfg);
    gkp_recovery_result out;
    gkp_grid* corrected_raw = nullptr;
    ASSERT_EQ(gkp_recover(enc_raw, 0.1, 0.0, "ideal", &cfg, rng_raw, &out, &corrected_raw), GKP_OK);
    Owned<gkp_grid> corrected(corrected_raw);
    EXPECT_EQ(out.true_shift, 0.1);
    EXPECT_EQ(out.correction, -out.estimate);
    EXPECT_GT(out.fidelity, 0.0);
    EXPECT_LE(out.fidelity, 1.0 + 1e-12);
    EXPECT_EQ(gkp_recover(enc_raw, 0.1, 0.0, "perfect", &cfg, rng_raw, &out, nullptr), GKP_ERR_PARSE);
    EXPECT_EQ(gkp_recover(enc_raw, 0.1, 0.0, nullptr, &cfg, rng_raw, &out, nullptr), GKP_ERR_INVALID_ARGUMENT);

    // Same seed gives the same trial.
    gkp_rng* a = nullptr;
    gkp_rng* b = nullptr;
    gkp_rng_create(42, &a);
    gkp_rng_create(42, &b);
    Owned<gkp_rng> oa(a), ob(b);
    gkp_recovery_result ra, rb;
    ASSERT_EQ(gkp_recover(enc_raw, 0.2, 0.0, "ideal", &cfg, a, &ra, nullptr), GKP_OK);
    ASSERT_EQ(gkp_recover(enc_raw, 0.2, 0.0, "ideal", &cfg, b, &rb, nullptr), GKP_OK);
    EXPECT_EQ(ra.measured, rb.measured);
    EXPECT_EQ(ra.fidelity, rb.fidelity);
    const double u = gkp_rng_uniform(a);
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
}

TEST(CApi, Schedules) {
    const gkp_prep_config c = config(3);
    gkp_schedule* raw = nullptr;
    ASSERT_EQ(gkp_compile(&c, &raw), GKP_OK);
    Owned<gkp_schedule> s(raw);
    EXPECT_EQ(gkp_schedule_op_count(raw), 21u);
    char* violations = nullptr;
    size_t count = 99;
    ASSERT_EQ(gkp_schedule_validate(raw, &violations, &count), GKP_OK);
    EXPECT_EQ(take(violations), "");
    EXPECT_EQ(count, 0u);

    char* json = nullptr;
    ASSERT_EQ(gkp_schedule_emit(raw, GKP_FORMAT_JSON, &json), GKP_OK);
    const std::string text = take(json);
    gkp_schedule* back_raw = nullptr;
    ASSERT_EQ(gkp_schedule_parse(text.c_str(), &back_raw), GKP_OK);
    Owned<gkp_schedule> back(back_raw);
    char* again = nullptr;
    ASSERT_EQ(gkp_schedule_emit(back_raw, GKP_FORMAT_JSON, &again), GKP_OK);
    EXPECT_EQ(take(again), text);
    EXPECT_EQ(gkp_schedule_parse("[]", &back_raw), GKP_ERR_PARSE);

    const int bits[] = {1, 0, 1};
    gkp_records* via_pulses = nullptr;
    gkp_records* direct = nullptr;
    ASSERT_EQ(gkp_schedule_interpret(raw, bits, 3, &via_pulses), GKP_OK);
    ASSERT_EQ(gkp_run_outcomes(&c, bits, 3, &direct), GKP_OK);
    Owned<gkp_records> o1(via_pulses), o2(direct);
    double p1, p2, n1, n2;
    size_t k;
    gkp_records_info(via_pulses, 0, &p1, &n1, nullptr, 0, &k);
    gkp_records_info(direct, 0, &p2, &n2, nullptr, 0, &k);
    EXPECT_NEAR(p1, p2, 1e-12);
    EXPECT_NEAR(n1, n2, 1e-12);

    gkp_prep_config empty = config(0);
    EXPECT_EQ(gkp_compile(&empty, &raw), GKP_ERR_DOMAIN);
}
