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

#pragma once

#include "dstc/channel.hpp"
#include "dstc/csk.hpp"
#include "dstc/dimming.hpp"
#include "dstc/receivers.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace dstc::experiments {

using receivers::ReceiverTag;

/// Dimensions and physical parameters of one link scenario.
struct SystemConfig {
    int tx_channels = 4;  // K_T
    int tx_groups = 2;    // L_T
    int rx_channels = 4;  // K_R
    int rx_groups = 2;    // L_R
    int states = 12;      // K
    int block = 100;      // N, including the training row
    double level = 0.5;   // P_m
    double alpha = 0.4;
    std::vector<int> columns;  // Hadamard column override, 1-based

    int n_tx() const noexcept { return tx_channels * tx_groups; }
    int n_rx() const noexcept { return rx_channels * rx_groups; }
    dimming::DimmingSpec dimming_spec() const;
    dimming::DimmingSpec dimming_spec(double alpha_override) const;
};

struct ExperimentConfig {
    SystemConfig scenario;
    std::vector<double> snr_grid_db{0, 6, 12, 18, 24, 30, 36};
    std::vector<double> alpha_grid{0.1, 0.2, 0.3, 0.4, 0.5};
    double alpha_snr_db = 20.0;
    long long n_symbols_total = 10000;
    int n_trials = 0;  // lower bound on channel draws per point
    std::uint64_t base_seed = 1;
    std::vector<ReceiverTag> receivers{ReceiverTag::zf, ReceiverTag::krf, ReceiverTag::plain_csk};
    channel::ChannelModel channel_model = channel::ChannelModel::gaussian;
    bool noiseless = false;
    csk::Constellation constellation;   // empty points -> default for K_T
    dimming::ChromaticityTable chromaticity;  // empty -> default for K_T

    void validate() const;
    /// One trial transmits one block of N symbols over a fresh channel.
    int trials_per_point() const;
    csk::Constellation resolved_constellation() const;
    dimming::ChromaticityTable resolved_chromaticity() const;
};

struct ReceiverOutcome {
    bool failed = false;
    std::string failure;
    long long bit_errors = 0;
    long long bits = 0;
    double nmse = 0.0;
};

/// Channel and symbol block of one trial. Row 0 of `symbols` is the known
/// training row; rows 1..N-1 carry `payload`.
struct TrialDraw {
    channel::Matrix h;
    channel::Matrix symbols;
    csk::Bits payload;
};

TrialDraw draw_trial(const ExperimentConfig& cfg, std::uint64_t trial);

/// Everything one trial produced; every receiver saw the same channel,
/// payload and noise draws.
struct TrialOutcome {
    channel::Matrix h;
    double cond_effective = 0.0;  // cond(H_e); cond(H) for plain CSK
    double cond_plain = 0.0;
    std::map<ReceiverTag, ReceiverOutcome> results;
};

/// Deterministic function of (config, C, snr, trial index).
TrialOutcome run_trial(const ExperimentConfig& cfg, const dimming::DimmingMatrix& c,
                       double snr_db, std::uint64_t trial);

struct CurvePoint {
    double x = 0.0;
    ReceiverTag receiver = ReceiverTag::zf;
    double ber = 0.0;
    double nmse = 0.0;         // mean over successful trials
    double nmse_median = 0.0;
    double cond_mean = 0.0;
    long long n_symbols = 0;
    long long n_bits = 0;
    long long n_errors = 0;
    int n_trials = 0;
    int failures = 0;
};

/// Throws IdentifiabilityError when VLC-KRF is enabled and a seeded draw of
/// the scenario fails the Kruskal condition.
void require_identifiable(const ExperimentConfig& cfg, const dimming::DimmingMatrix& c);

/// BER/NMSE per receiver over cfg.snr_grid_db.
std::vector<CurvePoint> run_ber_nmse_sweep(const ExperimentConfig& cfg);

/// BER/NMSE and mean cond(H_e) per receiver over cfg.alpha_grid at
/// cfg.alpha_snr_db. Plain CSK is skipped (it has no alpha).
std::vector<CurvePoint> run_alpha_sweep(const ExperimentConfig& cfg);

struct SpectralEfficiency {
    double eta_zf = 0.0;
    double eta_krf = 0.0;
    double gain_percent = 0.0;
};

/// 2 L_T N / (N K + K_T L_T), 2 L_T N / (N K + 1) and the relative gain.
SpectralEfficiency spectral_efficiency(int tx_channels, int tx_groups, int states, int block);

struct EtaCase {
    int tx_channels;
    int tx_groups;
    int states;
    int block;
};

/// The five (K_T, L_T, K, N) configurations of the published comparison.
std::vector<EtaCase> reference_eta_cases();

struct PowerColorAudit {
    double power_before = 1.0;
    double power_after = 0.0;
    dimming::Chromaticity color_before;
    dimming::Chromaticity color_after;
    long long symbols = 0;

    double shift_x() const;
    double shift_y() const;
};

/// Average power and chromaticity with and without dimming over
/// `symbols` uniformly drawn CSK symbols.
PowerColorAudit audit_power_color(const SystemConfig& scenario,
                                  const csk::Constellation& constellation,
                                  const dimming::ChromaticityTable& chroma, long long symbols,
                                  std::uint64_t seed);

void write_curve_csv(std::ostream& os, const std::vector<CurvePoint>& points);

}  // namespace dstc::experiments
