/*
   Copyright 2026 The dstc-vlc Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "dstc/experiments.hpp"
#include "dstc/error.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace dstc;
using namespace dstc::experiments;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig cfg;
    cfg.scenario.block = 20;
    cfg.n_symbols_total = 200;
    cfg.snr_grid_db = {10, 30};
    cfg.alpha_grid = {0.2, 0.4};
    return cfg;
}

}  // namespace

TEST(SpectralEfficiency, TableCaseOne) {
    const auto e = spectral_efficiency(3, 2, 8, 10);
    EXPECT_NEAR(e.eta_zf, 0.4651, 5e-5);
    EXPECT_NEAR(e.eta_krf, 0.4938, 5e-5);
    EXPECT_NEAR(e.gain_percent, 6.1, 0.1);
}

TEST(SpectralEfficiency, TableCaseFour) {
    const auto e = spectral_efficiency(4, 2, 12, 10);
    EXPECT_NEAR(e.eta_zf, 0.3125, 5e-5);
    EXPECT_NEAR(e.eta_krf, 0.3306, 5e-5);
    EXPECT_NEAR(e.gain_percent, 5.8, 0.1);
}

TEST(SpectralEfficiency, ExactFractions) {
    const auto e = spectral_efficiency(3, 2, 8, 10);
    EXPECT_DOUBLE_EQ(e.eta_zf, 40.0 / 86.0);
    EXPECT_DOUBLE_EQ(e.eta_krf, 40.0 / 81.0);
    EXPECT_NEAR(e.gain_percent, (e.eta_krf / e.eta_zf - 1.0) * 100.0, 1e-12);
}

TEST(SpectralEfficiency, LongBlockLimit) {
    EXPECT_LT(spectral_efficiency(4, 2, 12, 1000000).gain_percent, 0.01);
}

TEST(SpectralEfficiency, MinimalAndInvalid) {
    const auto e = spectral_efficiency(1, 1, 2, 1);
    EXPECT_TRUE(std::isfinite(e.eta_zf) && std::isfinite(e.eta_krf));
    EXPECT_THROW(spectral_efficiency(0, 2, 8, 10), ConfigError);
    EXPECT_THROW(spectral_efficiency(3, 2, 8, -1), ConfigError);
}

TEST(SpectralEfficiency, ReferenceCases) {
    EXPECT_EQ(reference_eta_cases().size(), 5u);
}

TEST(Config, Validation) {
    ExperimentConfig cfg;
    EXPECT_NO_THROW(cfg.validate());
    EXPECT_EQ(cfg.trials_per_point(), 100);
    cfg.n_symbols_total = 150;
    EXPECT_THROW(cfg.validate(), ConfigError);
    cfg = ExperimentConfig{};
    cfg.snr_grid_db.clear();
    EXPECT_THROW(cfg.validate(), ConfigError);
    cfg = ExperimentConfig{};
    cfg.n_trials = 300;
    EXPECT_EQ(cfg.trials_per_point(), 300);
}

TEST(DrawTrial, TrainingRowAndPayload) {
    const auto cfg = small_config();
    const auto d = draw_trial(cfg, 3);
    EXPECT_EQ(d.symbols.rows(), 20);
    EXPECT_EQ(d.symbols.cols(), 8);
    EXPECT_TRUE((d.symbols.row(0).array() == 0.25).all());
    EXPECT_EQ(d.payload.size(), 2u * 19 * 2);
    const auto again = draw_trial(cfg, 3);
    EXPECT_EQ(again.h, d.h);
    EXPECT_EQ(again.payload, d.payload);
    EXPECT_NE(draw_trial(cfg, 4).h, d.h);
}

TEST(RunTrial, NoiselessZeroErrors) {
    auto cfg = small_config();
    cfg.noiseless = true;
    const auto c = dimming::build_dimming_matrix(cfg.scenario.dimming_spec());
    for (std::uint64_t t = 0; t < 10; ++t) {
        const auto out = run_trial(cfg, c, 0.0, t);
        for (const auto& [tag, r] : out.results) {
            EXPECT_FALSE(r.failed) << receivers::to_string(tag) << ": " << r.failure;
            EXPECT_EQ(r.bit_errors, 0) << receivers::to_string(tag);
            EXPECT_EQ(r.bits, 2 * 19 * 2);
            EXPECT_LT(r.nmse, 1e-16);
        }
        EXPECT_GE(out.cond_effective, 1.0);
    }
}

TEST(Sweep, NoiselessBerZero) {
    auto cfg = small_config();
    cfg.noiseless = true;
    for (const auto& p : run_ber_nmse_sweep(cfg)) {
        EXPECT_EQ(p.n_errors, 0);
        EXPECT_EQ(p.ber, 0.0);
        EXPECT_EQ(p.failures, 0);
    }
}

TEST(Sweep, LayoutAndCounts) {
    const auto cfg = small_config();
    const auto pts = run_ber_nmse_sweep(cfg);
    ASSERT_EQ(pts.size(), 6u);
    EXPECT_EQ(pts[0].receiver, ReceiverTag::zf);
    EXPECT_EQ(pts[1].receiver, ReceiverTag::krf);
    EXPECT_EQ(pts[2].receiver, ReceiverTag::plain_csk);
    EXPECT_EQ(pts[3].x, 30.0);
    for (const auto& p : pts) {
        EXPECT_EQ(p.n_trials, 10);
        EXPECT_EQ(p.n_bits + 0LL, (10LL - p.failures) * 19 * 2 * 2);
        EXPECT_EQ(p.ber, p.n_bits ? static_cast<double>(p.n_errors) / p.n_bits : 0.0);
        EXPECT_GE(p.nmse, 0.0);
        EXPECT_GE(p.cond_mean, 1.0);
    }
}

TEST(Sweep, Deterministic) {
    const auto cfg = small_config();
    std::ostringstream a, b;
    write_curve_csv(a, run_ber_nmse_sweep(cfg));
    write_curve_csv(b, run_ber_nmse_sweep(cfg));
    EXPECT_EQ(a.str(), b.str());
    auto other = cfg;
    other.base_seed = 99;
    std::ostringstream c;
    write_curve_csv(c, run_ber_nmse_sweep(other));
    EXPECT_NE(a.str(), c.str());
}

TEST(Sweep, CommonRandomNumbers) {
    // dropping a receiver leaves the others' results unchanged
    auto cfg = small_config();
    const auto all = run_ber_nmse_sweep(cfg);
    cfg.receivers = {ReceiverTag::krf};
    const auto only = run_ber_nmse_sweep(cfg);
    ASSERT_EQ(only.size(), 2u);
    EXPECT_EQ(only[0].n_errors, all[1].n_errors);
    EXPECT_EQ(only[0].nmse, all[1].nmse);
    EXPECT_EQ(only[1].n_errors, all[4].n_errors);
}

TEST(AlphaSweep, SkipsPlainCsk) {
    const auto pts = run_alpha_sweep(small_config());
    ASSERT_EQ(pts.size(), 4u);
    for (const auto& p : pts) EXPECT_NE(p.receiver, ReceiverTag::plain_csk);
    EXPECT_EQ(pts[0].x, 0.2);
    EXPECT_EQ(pts[2].x, 0.4);
}

TEST(AlphaSweep, ZeroAlphaRejected) {
    auto cfg = small_config();
    cfg.alpha_grid = {0.0};
    EXPECT_THROW(run_alpha_sweep(cfg), ConstraintViolationError);
}

TEST(Sweep, DuplicateHadamardColumnsRejected) {
    ExperimentConfig cfg = small_config();
    cfg.scenario.tx_groups = 1;
    cfg.scenario.rx_groups = 1;
    cfg.scenario.states = 8;
    cfg.scenario.columns = {2, 2, 3, 4};
    EXPECT_THROW(run_ber_nmse_sweep(cfg), ConstraintViolationError);
}

TEST(Audit, TableScenario) {
    SystemConfig sc;
    sc.tx_channels = 3;
    sc.tx_groups = 2;
    sc.states = 12;
    const auto a = audit_power_color(sc, csk::default_constellation(3),
                                     dimming::default_chromaticity(3), 10000, 1);
    EXPECT_NEAR(a.power_before, 1.0, 1e-12);
    EXPECT_NEAR(a.power_after, 0.5, 1e-2);
    EXPECT_LT(a.shift_x(), 1e-3);
    EXPECT_LT(a.shift_y(), 1e-3);
}

TEST(Audit, ConstantDimming) {
    SystemConfig sc;
    sc.tx_channels = 3;
    sc.alpha = 0.0;
    const auto a = audit_power_color(sc, csk::default_constellation(3),
                                     dimming::default_chromaticity(3), 1000, 2);
    EXPECT_DOUBLE_EQ(a.power_after, 0.5);
    EXPECT_EQ(a.shift_x(), 0.0);
    EXPECT_EQ(a.shift_y(), 0.0);
}

TEST(Csv, Header) {
    std::ostringstream os;
    CurvePoint p;
    p.x = 6;
    p.receiver = ReceiverTag::krf;
    p.ber = 0.25;
    p.n_bits = 4;
    p.n_errors = 1;
    p.n_trials = 1;
    write_curve_csv(os, {p});
    EXPECT_EQ(os.str(),
              "x,receiver,ber,nmse,cond,n_bits,n_errors,n_trials,failures\n"
              "6,VLC-KRF,0.25,0,0,4,1,1,0\n");
}
