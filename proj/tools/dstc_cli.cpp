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

// Command-line front end: design, simulate, eta, check.

#include "dstc/config.hpp"
#include "dstc/dimming.hpp"
#include "dstc/error.hpp"
#include "dstc/experiments.hpp"
#include "dstc/identifiability.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;
using namespace dstc;

namespace {

constexpr const char* kVersion = "1.0.0";

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kInfeasible = 2,
    kNotUnique = 3,
    kDegenerate = 4,
};

std::string timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << text;
}

nlohmann::json echo_config(const config::RunConfig& rc) {
    const auto& ex = rc.experiment;
    const auto& sc = ex.scenario;
    nlohmann::json j;
    j["scenario"] = {{"tx_channels", sc.tx_channels}, {"tx_groups", sc.tx_groups},
                     {"rx_channels", sc.rx_channels}, {"rx_groups", sc.rx_groups},
                     {"states", sc.states},           {"block", sc.block}};
    j["dimming"] = {{"level", sc.level}, {"alpha", sc.alpha}, {"columns", sc.columns}};
    std::vector<std::string> rx;
    for (auto r : ex.receivers) rx.push_back(receivers::to_string(r));
    j["experiment"] = {{"mode", config::to_string(rc.mode)},
                       {"snr_grid_db", ex.snr_grid_db},
                       {"alpha_grid", ex.alpha_grid},
                       {"alpha_snr_db", ex.alpha_snr_db},
                       {"symbols", ex.n_symbols_total},
                       {"trials_per_point", ex.trials_per_point()},
                       {"seed", ex.base_seed},
                       {"receivers", rx},
                       {"channel_model", channel::to_string(ex.channel_model)},
                       {"noiseless", ex.noiseless}};
    return j;
}

std::string format_design_report(const experiments::SystemConfig& sc,
                                 const dimming::DesignReport& r) {
    std::ostringstream os;
    const double bound = std::min(sc.level, 1.0 - sc.level);
    os << "PASS alpha ≤ min(P_m, 1−P_m)  (alpha " << sc.alpha << ", bound " << bound << ")\n";
    for (const auto& c : r.checks)
        os << (c.passed ? "PASS " : "FAIL ") << c.name << "  (" << c.detail << ")\n";
    os << "rank: " << r.rank << '\n'
       << "kruskal_rank: " << r.kruskal_rank << '\n'
       << "condition_number: " << std::setprecision(10) << r.condition_number << '\n'
       << "verdict: " << (r.all_passed() ? "feasible" : "infeasible") << '\n';
    return os.str();
}

int cmd_design(const std::string& config_path, const std::string& out_dir) {
    const auto rc = config::load_config(config_path);
    const auto& sc = rc.experiment.scenario;
    std::optional<dimming::DimmingMatrix> c;
    try {
        c = dimming::build_dimming_matrix(sc.dimming_spec());
    } catch (const ConstraintViolationError& e) {
        std::cerr << "design infeasible: " << e.what() << '\n';
        return kInfeasible;
    }
    const auto report = dimming::validate_design(*c);

    fs::create_directories(out_dir);
    std::ostringstream csv;
    csv << std::setprecision(17);
    for (Eigen::Index k = 0; k < c->values().rows(); ++k) {
        for (Eigen::Index i = 0; i < c->values().cols(); ++i)
            csv << (i ? "," : "") << c->values()(k, i);
        csv << '\n';
    }
    write_file(fs::path(out_dir) / "dimming_matrix.csv", csv.str());
    const std::string text = format_design_report(sc, report);
    write_file(fs::path(out_dir) / "design_report.txt", text);
    std::cout << text;
    return report.all_passed() ? kOk : kInfeasible;
}

std::string format_summary(const config::RunConfig& rc,
                           const std::vector<experiments::CurvePoint>& ber,
                           const std::vector<experiments::CurvePoint>& alpha) {
    const auto& ex = rc.experiment;
    const auto& sc = ex.scenario;
    std::ostringstream os;
    os << std::setprecision(6);
    os << "scenario: K_T=" << sc.tx_channels << " L_T=" << sc.tx_groups
       << " K_R=" << sc.rx_channels << " L_R=" << sc.rx_groups << " K=" << sc.states
       << " N=" << sc.block << " P_m=" << sc.level << " alpha=" << sc.alpha << '\n';
    os << "trials_per_point: " << ex.trials_per_point() << '\n';

    const auto audit = experiments::audit_power_color(sc, ex.resolved_constellation(),
                                                      ex.resolved_chromaticity(),
                                                      rc.audit_symbols, ex.base_seed);
    os << "power: before " << audit.power_before << " after " << audit.power_after << '\n';
    os << "color: before (" << audit.color_before.x << ", " << audit.color_before.y
       << ") after (" << audit.color_after.x << ", " << audit.color_after.y << ")\n";

    const auto eta = experiments::spectral_efficiency(sc.tx_channels, sc.tx_groups, sc.states,
                                                      sc.block);
    os << std::fixed << std::setprecision(4) << "eta: ZF " << eta.eta_zf << " VLC-KRF "
       << eta.eta_krf << " gain " << eta.gain_percent << "%\n";
    os.unsetf(std::ios::floatfield);
    os << std::setprecision(6);

    auto dump = [&](const char* name, const std::vector<experiments::CurvePoint>& pts) {
        if (pts.empty()) return;
        os << name << ":\n";
        for (const auto& p : pts)
            os << "  x=" << p.x << " " << receivers::to_string(p.receiver) << " ber=" << p.ber
               << " nmse=" << p.nmse << " nmse_median=" << p.nmse_median
               << " cond=" << p.cond_mean << " failures=" << p.failures << "/" << p.n_trials
               << '\n';
    };
    dump("ber_sweep", ber);
    dump("alpha_sweep", alpha);
    return os.str();
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir,
                 std::optional<std::uint64_t> seed, bool noiseless) {
    auto rc = config::load_config(config_path);
    if (seed) rc.experiment.base_seed = *seed;
    if (noiseless) rc.experiment.noiseless = true;

    nlohmann::json manifest;
    manifest["tool"] = "dstc";
    manifest["version"] = kVersion;
    manifest["config_path"] = config_path;
    manifest["config"] = echo_config(rc);
    manifest["start"] = timestamp();

    std::vector<experiments::CurvePoint> ber, alpha;
    try {
        if (rc.mode != config::SimulationMode::alpha)
            ber = experiments::run_ber_nmse_sweep(rc.experiment);
        if (rc.mode != config::SimulationMode::ber)
            alpha = experiments::run_alpha_sweep(rc.experiment);
    } catch (const IdentifiabilityError& e) {
        std::cerr << e.what() << '\n';
        return kNotUnique;
    } catch (const ConstraintViolationError& e) {
        std::cerr << "design infeasible: " << e.what() << '\n';
        return kInfeasible;
    }

    fs::create_directories(out_dir);
    std::vector<std::string> outputs;
    auto emit_csv = [&](const std::string& name, const std::vector<experiments::CurvePoint>& pts) {
        if (pts.empty()) return;
        std::ostringstream os;
        experiments::write_curve_csv(os, pts);
        const auto path = fs::path(out_dir) / name;
        write_file(path, os.str());
        outputs.push_back(path.string());
    };
    emit_csv("ber_curve.csv", ber);
    emit_csv("alpha_curve.csv", alpha);

    const auto summary_path = fs::path(out_dir) / "summary.txt";
    const std::string summary = format_summary(rc, ber, alpha);
    write_file(summary_path, summary);
    outputs.push_back(summary_path.string());
    std::cout << summary;

    const auto manifest_path = fs::path(out_dir) / "manifest.json";
    outputs.push_back(manifest_path.string());
    manifest["outputs"] = outputs;
    manifest["end"] = timestamp();
    write_file(manifest_path, manifest.dump(2) + "\n");

    for (const auto* pts : {&ber, &alpha})
        for (const auto& p : *pts)
            if (p.n_trials > 0 && p.failures == p.n_trials) {
                std::cerr << "every trial failed for " << receivers::to_string(p.receiver)
                          << " at x=" << p.x << '\n';
                return kDegenerate;
            }
    return kOk;
}

void print_eta_row(std::ostream& os, const std::string& label, const experiments::EtaCase& c) {
    const auto e = experiments::spectral_efficiency(c.tx_channels, c.tx_groups, c.states, c.block);
    os << std::left << std::setw(6) << label << std::right << std::setw(5) << c.tx_channels
       << std::setw(5) << c.tx_groups << std::setw(7) << c.tx_channels * c.tx_groups
       << std::setw(5) << c.states << std::setw(5) << c.block << std::fixed
       << std::setprecision(4) << std::setw(10) << e.eta_zf << std::setw(10) << e.eta_krf
       << std::setw(10) << e.gain_percent << '\n';
    os.unsetf(std::ios::floatfield);
}

int cmd_eta(const std::vector<int>& args, bool table2) {
    std::ostringstream os;
    os << std::left << std::setw(6) << "case" << std::right << std::setw(5) << "K_T"
       << std::setw(5) << "L_T" << std::setw(7) << "K_TL_T" << std::setw(5) << "K"
       << std::setw(5) << "N" << std::setw(10) << "eta_ZF" << std::setw(10) << "eta_KRF"
       << std::setw(10) << "gain_%" << '\n';
    if (table2) {
        int i = 1;
        for (const auto& c : experiments::reference_eta_cases())
            print_eta_row(os, std::to_string(i++), c);
    } else {
        if (args.size() != 4) {
            std::cerr << "eta: expect K_T L_T K N (or --table2)\n";
            return kUsage;
        }
        for (int a : args)
            if (a < 1) {
                std::cerr << "eta: all arguments must be positive\n";
                return kUsage;
            }
        print_eta_row(os, "-", {args[0], args[1], args[2], args[3]});
    }
    std::cout << os.str();
    return kOk;
}

int cmd_check(const std::string& config_path, std::optional<std::uint64_t> seed) {
    auto rc = config::load_config(config_path);
    if (seed) rc.experiment.base_seed = *seed;
    const auto& sc = rc.experiment.scenario;
    std::optional<dimming::DimmingMatrix> c;
    try {
        c = dimming::build_dimming_matrix(sc.dimming_spec());
    } catch (const ConstraintViolationError& e) {
        std::cerr << "design infeasible: " << e.what() << '\n';
        return kInfeasible;
    }
    auto draw = experiments::draw_trial(rc.experiment, 0);
    if (rc.check.identity_channel) {
        if (sc.n_rx() != sc.n_tx()) {
            std::cerr << "check: identity channel needs n_rx = n_tx\n";
            return kUsage;
        }
        draw.h = numerics::Matrix::Identity(sc.n_rx(), sc.n_tx());
    }
    if (rc.check.duplicate_column > 0) {
        if (rc.check.duplicate_column > sc.n_tx()) {
            std::cerr << "check: duplicate_h_column outside 1..n_tx\n";
            return kUsage;
        }
        draw.h.col(rc.check.duplicate_column - 1) = draw.h.col(0);
    }
    const auto report = identifiability::check_uniqueness(draw.h, draw.symbols, c->values());
    std::cout << report.to_text();
    return report.unique() ? kOk : kNotUnique;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"DSTC visible-light link simulator and design toolkit"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.footer("Exit codes: 0 ok, 1 usage/config, 2 design infeasible, 3 not identifiable, "
               "4 simulation degenerate.\n\nConfiguration reference:\n" +
               config::reference_config());

    std::string config_path;
    std::string out_dir = "out";
    std::uint64_t seed_value = 0;
    bool noiseless = false;
    bool table2 = false;
    std::vector<int> eta_args;

    auto* design = app.add_subcommand("design", "Build and validate the dimming matrix C");
    design->add_option("--config", config_path, "Configuration file")->required();
    design->add_option("--out", out_dir, "Output directory");

    auto* simulate = app.add_subcommand("simulate", "Run the BER/NMSE and alpha sweeps");
    simulate->add_option("--config", config_path, "Configuration file")->required();
    simulate->add_option("--out", out_dir, "Output directory");
    auto* sim_seed = simulate->add_option("--seed", seed_value, "Override the base seed");
    simulate->add_flag("--noiseless", noiseless, "Disable noise");

    auto* eta = app.add_subcommand("eta", "Spectral efficiency of ZF vs VLC-KRF");
    eta->add_option("values", eta_args, "K_T L_T K N");
    eta->add_flag("--table2", table2, "Print the five reference configurations");

    auto* check = app.add_subcommand("check", "Kruskal uniqueness report for a seeded draw");
    check->add_option("--config", config_path, "Configuration file")->required();
    auto* check_seed = check->add_option("--seed", seed_value, "Override the base seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*design) return cmd_design(config_path, out_dir);
        if (*simulate)
            return cmd_simulate(config_path, out_dir,
                                *sim_seed ? std::optional<std::uint64_t>(seed_value) : std::nullopt,
                                noiseless);
        if (*eta) return cmd_eta(eta_args, table2);
        if (*check)
            return cmd_check(config_path,
                             *check_seed ? std::optional<std::uint64_t>(seed_value) : std::nullopt);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kUsage;
    } catch (const ConstraintViolationError& e) {
        std::cerr << "design infeasible: " << e.what() << '\n';
        return kInfeasible;
    } catch (const IdentifiabilityError& e) {
        std::cerr << e.what() << '\n';
        return kNotUnique;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
