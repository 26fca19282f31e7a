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
#include "dstc/identifiability.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <ostream>

namespace dstc::experiments {

namespace {

enum Stream : std::uint64_t {
    kChannel = 1,
    kPayload = 2,
    kNoiseData = 3,
    kNoisePilot = 4,
    kPlainPilot = 5,
    kPlainData = 6,
};

csk::Bits draw_bits(std::size_t count, std::uint64_t seed) {
    channel::Engine rng(seed);
    csk::Bits bits(count);
    for (auto& b : bits) b = static_cast<std::uint8_t>(rng() >> 63);
    return bits;
}

// Bit errors over the data rows (everything after the training row).
long long count_bit_errors(const csk::Bits& detected, const csk::Bits& payload,
                           std::size_t offset) {
    long long errors = 0;
    for (std::size_t i = 0; i < payload.size(); ++i)
        errors += detected[offset + i] != payload[i] ? 1 : 0;
    return errors;
}

double nmse(const channel::Matrix& h, const channel::Matrix& h_hat) {
    return (h - h_hat).squaredNorm() / h.squaredNorm();
}

bool enabled(const ExperimentConfig& cfg, ReceiverTag tag) {
    return std::find(cfg.receivers.begin(), cfg.receivers.end(), tag) != cfg.receivers.end();
}

struct Accumulator {
    long long bits = 0;
    long long errors = 0;
    long long symbols = 0;
    int trials = 0;
    int failures = 0;
    std::vector<double> nmse;
};

CurvePoint finish(double x, ReceiverTag tag, const Accumulator& acc, double cond_sum,
                  int cond_count) {
    CurvePoint p;
    p.x = x;
    p.receiver = tag;
    p.n_bits = acc.bits;
    p.n_errors = acc.errors;
    p.n_symbols = acc.symbols;
    p.n_trials = acc.trials;
    p.failures = acc.failures;
    p.ber = acc.bits > 0 ? static_cast<double>(acc.errors) / static_cast<double>(acc.bits)
                         : std::numeric_limits<double>::quiet_NaN();
    if (!acc.nmse.empty()) {
        double sum = 0.0;
        for (double v : acc.nmse) sum += v;
        p.nmse = sum / static_cast<double>(acc.nmse.size());
        std::vector<double> sorted = acc.nmse;
        std::sort(sorted.begin(), sorted.end());
        const std::size_t m = sorted.size();
        p.nmse_median = m % 2 ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
    } else {
        p.nmse = p.nmse_median = std::numeric_limits<double>::quiet_NaN();
    }
    p.cond_mean = cond_count > 0 ? cond_sum / cond_count : std::numeric_limits<double>::quiet_NaN();
    return p;
}

// Runs every trial of one curve point and appends one CurvePoint per receiver.
void sweep_point(const ExperimentConfig& cfg, const dimming::DimmingMatrix& c, double snr_db,
                 double x, const std::vector<ReceiverTag>& tags, std::vector<CurvePoint>& out) {
    std::map<ReceiverTag, Accumulator> acc;
    double cond_eff = 0.0, cond_plain = 0.0;
    int cond_count = 0;
    const int trials = cfg.trials_per_point();
    const long long data_symbols =
        static_cast<long long>(cfg.scenario.block - 1) * cfg.scenario.tx_groups;
    for (int t = 0; t < trials; ++t) {
        const TrialOutcome outcome = run_trial(cfg, c, snr_db, static_cast<std::uint64_t>(t));
        cond_eff += outcome.cond_effective;
        cond_plain += outcome.cond_plain;
        ++cond_count;
        for (ReceiverTag tag : tags) {
            const ReceiverOutcome& r = outcome.results.at(tag);
            Accumulator& a = acc[tag];
            ++a.trials;
            if (r.failed) {
                ++a.failures;
                continue;
            }
            a.bits += r.bits;
            a.errors += r.bit_errors;
            a.symbols += data_symbols;
            a.nmse.push_back(r.nmse);
        }
    }
    for (ReceiverTag tag : tags) {
        const double cond = tag == ReceiverTag::plain_csk ? cond_plain : cond_eff;
        out.push_back(finish(x, tag, acc[tag], cond, cond_count));
    }
}

std::vector<ReceiverTag> ordered_receivers(const ExperimentConfig& cfg, bool with_plain) {
    std::vector<ReceiverTag> tags;
    for (ReceiverTag tag : {ReceiverTag::zf, ReceiverTag::krf, ReceiverTag::plain_csk}) {
        if (tag == ReceiverTag::plain_csk && !with_plain) continue;
        if (enabled(cfg, tag)) tags.push_back(tag);
    }
    return tags;
}

}  // namespace

dimming::DimmingSpec SystemConfig::dimming_spec() const { return dimming_spec(alpha); }

dimming::DimmingSpec SystemConfig::dimming_spec(double alpha_override) const {
    dimming::DimmingSpec spec;
    spec.states = states;
    spec.transmitters = n_tx();
    spec.level = level;
    spec.alpha = alpha_override;
    spec.columns = columns;
    return spec;
}

void ExperimentConfig::validate() const {
    const auto& s = scenario;
    if (s.tx_channels < 1 || s.tx_groups < 1 || s.rx_channels < 1 || s.rx_groups < 1 ||
        s.states < 1)
        throw ConfigError("scenario dimensions must be positive");
    if (s.block < 2) throw ConfigError("block length N must be at least 2 (training row + data)");
    if (snr_grid_db.empty()) throw ConfigError("snr grid is empty");
    if (alpha_grid.empty()) throw ConfigError("alpha grid is empty");
    if (n_symbols_total < 1 || n_symbols_total % s.block != 0)
        throw ConfigError("n_symbols_total must be a positive multiple of N");
    if (receivers.empty()) throw ConfigError("no receivers selected");
    if (enabled(*this, ReceiverTag::plain_csk) && s.n_rx() < s.n_tx())
        throw ConfigError("plain CSK needs K_R L_R >= K_T L_T");
    resolved_constellation().validate();
    resolved_chromaticity().validate();
}

int ExperimentConfig::trials_per_point() const {
    return std::max<long long>(n_trials, n_symbols_total / scenario.block);
}

csk::Constellation ExperimentConfig::resolved_constellation() const {
    if (!constellation.points.empty()) return constellation;
    return csk::default_constellation(scenario.tx_channels);
}

dimming::ChromaticityTable ExperimentConfig::resolved_chromaticity() const {
    if (!chromaticity.channels.empty()) return chromaticity;
    return dimming::default_chromaticity(scenario.tx_channels);
}

TrialDraw draw_trial(const ExperimentConfig& cfg, std::uint64_t trial) {
    const SystemConfig& sc = cfg.scenario;
    const auto constellation = cfg.resolved_constellation();
    const std::uint64_t seed = channel::trial_seed(cfg.base_seed, trial);
    TrialDraw d;
    d.h = channel::draw_channel(sc.n_rx(), sc.n_tx(), cfg.channel_model,
                                channel::stream_seed(seed, kChannel));
    const std::size_t data_rows = static_cast<std::size_t>(sc.block - 1);
    d.payload = draw_bits(2 * data_rows * sc.tx_groups, channel::stream_seed(seed, kPayload));
    d.symbols.resize(sc.block, sc.n_tx());
    d.symbols.row(0) = csk::training_row(constellation, sc.tx_groups);
    d.symbols.bottomRows(data_rows) =
        csk::modulate(d.payload, static_cast<int>(data_rows), sc.tx_groups, constellation).symbols;
    return d;
}

TrialOutcome run_trial(const ExperimentConfig& cfg, const dimming::DimmingMatrix& c,
                       double snr_db, std::uint64_t trial) {
    const SystemConfig& sc = cfg.scenario;
    const auto constellation = cfg.resolved_constellation();
    const std::uint64_t seed = channel::trial_seed(cfg.base_seed, trial);
    const double snr = cfg.noiseless ? std::numeric_limits<double>::infinity() : snr_db;

    TrialDraw draw = draw_trial(cfg, trial);
    TrialOutcome out;
    out.h = std::move(draw.h);
    const channel::Matrix& s = draw.symbols;
    const csk::Bits& payload = draw.payload;
    const std::size_t offset = 2 * static_cast<std::size_t>(sc.tx_groups);

    out.cond_effective = numerics::condition_number(receivers::effective_channel(out.h, c));
    out.cond_plain = numerics::condition_number(out.h);

    const bool zf = enabled(cfg, ReceiverTag::zf);
    const bool krf = enabled(cfg, ReceiverTag::krf);
    if (zf || krf) {
        const auto y = channel::propagate(out.h, dimming::transmit_block(c, s), snr,
                                          channel::stream_seed(seed, kNoiseData));
        if (zf) {
            ReceiverOutcome& r = out.results[ReceiverTag::zf];
            try {
                const channel::Matrix s0 = csk::pilot_block(sc.n_tx());
                const auto y0 = channel::propagate_with_variance(
                    out.h, dimming::transmit_block(c, s0), y.noise_variance,
                    channel::stream_seed(seed, kNoisePilot));
                const auto h_eff = receivers::zf_estimate_channel(receivers::stack_received(y0), s0);
                const auto est = receivers::zf_detect(receivers::stack_received(y), h_eff,
                                                      constellation);
                r.bits = static_cast<long long>(payload.size());
                r.bit_errors = count_bit_errors(est.detected.bits, payload, offset);
                r.nmse = nmse(out.h, receivers::extract_channel(h_eff, c));
            } catch (const Error& e) {
                r.failed = true;
                r.failure = e.what();
            }
        }
        if (krf) {
            ReceiverOutcome& r = out.results[ReceiverTag::krf];
            try {
                const auto est = receivers::krf_detect(y, c, {0, s.row(0)}, constellation);
                r.bits = static_cast<long long>(payload.size());
                r.bit_errors = count_bit_errors(est.detected.bits, payload, offset);
                r.nmse = nmse(out.h, est.h_hat);
            } catch (const Error& e) {
                r.failed = true;
                r.failure = e.what();
            }
        }
    }
    if (enabled(cfg, ReceiverTag::plain_csk)) {
        ReceiverOutcome& r = out.results[ReceiverTag::plain_csk];
        try {
            const auto est = receivers::plain_csk_baseline(
                out.h, s, snr, constellation, channel::stream_seed(seed, kPlainPilot),
                channel::stream_seed(seed, kPlainData));
            r.bits = static_cast<long long>(payload.size());
            r.bit_errors = count_bit_errors(est.detected.bits, payload, offset);
            r.nmse = nmse(out.h, est.h_hat);
        } catch (const Error& e) {
            r.failed = true;
            r.failure = e.what();
        }
    }
    return out;
}

void require_identifiable(const ExperimentConfig& cfg, const dimming::DimmingMatrix& c) {
    if (!enabled(cfg, ReceiverTag::krf)) return;
    const TrialDraw d = draw_trial(cfg, 0);
    const auto report = identifiability::check_uniqueness(d.h, d.symbols, c.values());
    if (!report.unique())
        throw IdentifiabilityError("scenario fails the Kruskal uniqueness condition:\n" +
                                   report.to_text());
}

std::vector<CurvePoint> run_ber_nmse_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    const auto c = dimming::build_dimming_matrix(cfg.scenario.dimming_spec());
    require_identifiable(cfg, c);
    const auto tags = ordered_receivers(cfg, true);
    std::vector<CurvePoint> out;
    for (double snr : cfg.snr_grid_db) sweep_point(cfg, c, snr, snr, tags, out);
    return out;
}

std::vector<CurvePoint> run_alpha_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    const auto tags = ordered_receivers(cfg, false);
    std::vector<CurvePoint> out;
    for (double alpha : cfg.alpha_grid) {
        const auto c = dimming::build_dimming_matrix(cfg.scenario.dimming_spec(alpha));
        require_identifiable(cfg, c);
        sweep_point(cfg, c, cfg.alpha_snr_db, alpha, tags, out);
    }
    return out;
}

SpectralEfficiency spectral_efficiency(int tx_channels, int tx_groups, int states, int block) {
    if (tx_channels < 1 || tx_groups < 1 || states < 1 || block < 1)
        throw ConfigError("spectral_efficiency: all counts must be positive");
    const long long bits = 2LL * tx_groups * block;
    const long long payload_slots = static_cast<long long>(block) * states;
    const long long zf_slots = payload_slots + static_cast<long long>(tx_channels) * tx_groups;
    const long long krf_slots = payload_slots + 1;
    SpectralEfficiency e;
    e.eta_zf = static_cast<double>(bits) / static_cast<double>(zf_slots);
    e.eta_krf = static_cast<double>(bits) / static_cast<double>(krf_slots);
    e.gain_percent = static_cast<double>(zf_slots - krf_slots) / static_cast<double>(krf_slots) * 100.0;
    return e;
}

std::vector<EtaCase> reference_eta_cases() {
    return {{3, 2, 8, 10}, {3, 6, 20, 10}, {3, 10, 32, 10}, {4, 2, 12, 10}, {4, 2, 16, 10}};
}

double PowerColorAudit::shift_x() const { return std::abs(color_after.x - color_before.x); }
double PowerColorAudit::shift_y() const { return std::abs(color_after.y - color_before.y); }

PowerColorAudit audit_power_color(const SystemConfig& scenario,
                                  const csk::Constellation& constellation,
                                  const dimming::ChromaticityTable& chroma, long long symbols,
                                  std::uint64_t seed) {
    if (symbols < 1) throw ConfigError("audit needs at least one symbol");
    const auto bits = draw_bits(2 * static_cast<std::size_t>(symbols) * scenario.tx_groups,
                                channel::stream_seed(seed, kPayload));
    const auto block =
        csk::modulate(bits, static_cast<int>(symbols), scenario.tx_groups, constellation);
    const auto after = scenario.alpha == 0.0
                           ? dimming::DimmingMatrix::constant(scenario.states, scenario.n_tx(),
                                                              scenario.level)
                           : dimming::build_dimming_matrix(scenario.dimming_spec());
    const auto before = dimming::DimmingMatrix::constant(scenario.states, scenario.n_tx(), 1.0);

    PowerColorAudit a;
    a.symbols = symbols;
    a.power_before = dimming::average_power(before, block.symbols);
    a.power_after = dimming::average_power(after, block.symbols);
    a.color_before = dimming::average_chromaticity(before, block.symbols, chroma);
    a.color_after = dimming::average_chromaticity(after, block.symbols, chroma);
    return a;
}

void write_curve_csv(std::ostream& os, const std::vector<CurvePoint>& points) {
    os << "x,receiver,ber,nmse,cond,n_bits,n_errors,n_trials,failures\n";
    const auto flags = os.flags();
    const auto precision = os.precision();
    os << std::setprecision(12);
    for (const auto& p : points) {
        os << p.x << ',' << receivers::to_string(p.receiver) << ',' << p.ber << ',' << p.nmse
           << ',' << p.cond_mean << ',' << p.n_bits << ',' << p.n_errors << ',' << p.n_trials
           << ',' << p.failures << '\n';
    }
    os.flags(flags);
    os.precision(precision);
}

}  // namespace dstc::experiments
